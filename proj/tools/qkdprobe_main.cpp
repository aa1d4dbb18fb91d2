// Command-line front end: run strategy sweeps to CSV, detect resonance
// peaks, evaluate gain/disturbance for a single strategy, and run the
// attenuation-versus-delta study.
//
// Exit codes: 0 success, 2 invalid input, 3 degenerate or empty result.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qkdprobe/qkdprobe.hpp>

namespace {

using namespace qkdprobe;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw InvalidParams("invalid number '" + text + "' in " + what);
    }
    return v;
}

// Accepts "target=<const>", "target=<source>", "target=<const>±<source>"
// and "target=<const>±<coef>*<source>".
ParamTie parse_tie(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw InvalidParams("tie '" + text + "' must have the form target=expr");
    }
    ParamTie tie;
    tie.target = text.substr(0, eq);

    std::string expr = text.substr(eq + 1);
    std::size_t pos = 0;
    bool have_source = false;
    const auto is_ident = [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
               (ch >= '0' && ch <= '9') || ch == '_';
    };
    while (pos < expr.size()) {
        double sign = 1.0;
        if (expr[pos] == '+' || expr[pos] == '-') {
            sign = expr[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        }
        if (pos >= expr.size()) throw InvalidParams("tie '" + text + "' ends in an operator");
        if ((expr[pos] >= '0' && expr[pos] <= '9') || expr[pos] == '.') {
            double v = 0.0;
            const char* first = expr.data() + pos;
            const char* last = expr.data() + expr.size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc{}) throw InvalidParams("tie '" + text + "': bad number");
            pos = static_cast<std::size_t>(res.ptr - expr.data());
            if (pos < expr.size() && expr[pos] == '*') {
                ++pos;
                std::size_t start = pos;
                while (pos < expr.size() && is_ident(expr[pos])) ++pos;
                if (start == pos || have_source) {
                    throw InvalidParams("tie '" + text + "': bad parameter term");
                }
                tie.slope = sign * v;
                tie.source = expr.substr(start, pos - start);
                have_source = true;
            } else {
                tie.offset += sign * v;
            }
        } else if (is_ident(expr[pos])) {
            std::size_t start = pos;
            while (pos < expr.size() && is_ident(expr[pos])) ++pos;
            if (have_source) {
                throw InvalidParams("tie '" + text + "': at most one parameter term");
            }
            tie.slope = sign;
            tie.source = expr.substr(start, pos - start);
            have_source = true;
        } else {
            throw InvalidParams("tie '" + text + "': unexpected character '" +
                                std::string(1, expr[pos]) + "'");
        }
    }
    return tie;
}

std::vector<double> parse_delta_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(item, "--deltas"));
    }
    if (out.empty()) throw InvalidParams("--deltas is empty");
    return out;
}

struct SweepOptions {
    std::string family;
    std::string param;
    double from = 0.0;
    double to = 1.0;
    int steps = 2001;
    std::vector<std::string> ties;
    std::optional<double> a, c, delta, alpha2, beta2, s;
    int threads = 1;
};

void add_family_flags(CLI::App* cmd, SweepOptions& opt) {
    cmd->add_option("--family", opt.family, "Probe family: one-qubit or two-qubit")
        ->required()
        ->check(CLI::IsMember({"one-qubit", "two-qubit"}));
    cmd->add_option("--a", opt.a, "One-qubit amplitude a");
    cmd->add_option("--c", opt.c, "One-qubit amplitude c");
    cmd->add_option("--delta", opt.delta, "Strategy offset delta");
    cmd->add_option("--alpha2", opt.alpha2, "Two-qubit parameter alpha");
    cmd->add_option("--beta2", opt.beta2, "Two-qubit parameter beta");
    cmd->add_option("--s", opt.s, "Two-qubit parameter s");
}

void add_sweep_flags(CLI::App* cmd, SweepOptions& opt) {
    add_family_flags(cmd, opt);
    cmd->add_option("--param", opt.param, "Name of the swept parameter")->required();
    cmd->add_option("--from", opt.from, "Sweep start")->required();
    cmd->add_option("--to", opt.to, "Sweep end")->required();
    cmd->add_option("--steps", opt.steps, "Number of grid points (inclusive of endpoints)");
    cmd->add_option("--tie", opt.ties, "Linear tie, e.g. beta2=1.8-alpha2 (repeatable)");
    cmd->add_option("--threads", opt.threads, "Worker threads for grid evaluation");
}

SweepSpec make_spec(const SweepOptions& opt) {
    SweepSpec spec;
    spec.family = opt.family == "one-qubit" ? ProbeFamily::OneQubit : ProbeFamily::TwoQubit;
    spec.param = opt.param;
    spec.from = opt.from;
    spec.to = opt.to;
    spec.steps = opt.steps;
    const auto put = [&](const char* name, const std::optional<double>& v) {
        if (v) spec.fixed[name] = *v;
    };
    put("a", opt.a);
    put("c", opt.c);
    put("delta", opt.delta);
    put("alpha2", opt.alpha2);
    put("beta2", opt.beta2);
    put("s", opt.s);
    for (const std::string& t : opt.ties) spec.ties.push_back(parse_tie(t));
    return spec;
}

int run_sweep_cmd(const SweepOptions& opt, const std::string& out_path, bool gnuplot) {
    const SweepSpec spec = make_spec(opt);
    const std::vector<SweepRow> rows = run_sweep(spec, opt.threads);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return kExitInvalid;
    }
    write_sweep_csv(out, spec.param, rows);
    out.close();
    if (!out) {
        std::cerr << "error: failed writing '" << out_path << "'\n";
        return kExitInvalid;
    }

    if (gnuplot) {
        const std::string gp_path = out_path + ".gp";
        std::ofstream gp(gp_path, std::ios::binary);
        if (!gp) {
            std::cerr << "error: cannot open '" << gp_path << "' for writing\n";
            return kExitInvalid;
        }
        gp << gnuplot_companion(out_path, spec.param);
    }

    bool all_degenerate = true;
    for (const SweepRow& r : rows) all_degenerate = all_degenerate && r.degenerate;
    if (all_degenerate) {
        std::cerr << "note: every grid point is degenerate\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

int run_peaks_cmd(const std::string& input, const std::string& column, double min_prominence) {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << input << "'\n";
        return kExitInvalid;
    }
    const ParsedSweep parsed = read_sweep_csv(in);
    const PeakReport report = find_peaks(parsed.rows, column, min_prominence);
    for (const Peak& p : report.peaks) {
        std::cout << "location=" << format_number(p.location)
                  << " height=" << format_number(p.height)
                  << " prominence=" << format_number(p.prominence)
                  << " width=" << format_number(p.width) << "\n";
    }
    return kExitOk;
}

int run_gain_cmd(const SweepOptions& opt) {
    const auto need = [&](const char* name, const std::optional<double>& v) {
        if (!v) throw InvalidParams(std::string("missing --") + name + " for this family");
        return *v;
    };

    GainReport gr;
    DisturbanceReport dr;
    PovmKind kind = PovmKind::Custom;
    if (opt.family == "one-qubit") {
        const OneQubitProbeParams p(need("a", opt.a), need("c", opt.c),
                                    need("delta", opt.delta));
        const ProbePair pp = build_one_qubit_probe(p);
        const bool degen = angle_degenerate(p);
        const Povm m = degen ? canonical_povm() : closed_form_povm(p);
        kind = m.kind;
        gr = gain_closed_form(p);
        dr = disturbance(pp, m, gr);
    } else {
        const TwoQubitProbeParams p(need("alpha2", opt.alpha2), need("beta2", opt.beta2),
                                    need("s", opt.s), need("delta", opt.delta));
        const ProbePair pp = build_two_qubit_probe(p);
        const Operator rho_x = partial_trace(outer(pp.X), pp.bob_dim, pp.eve_dim, 2);
        const Operator rho_y = partial_trace(outer(pp.Y), pp.bob_dim, pp.eve_dim, 2);
        const Povm m = helstrom_basis_povm(rho_x, rho_y, 0.5, 0.5);
        kind = m.kind;
        gr = gain_generic(pp, m);
        gr.degenerate = (rho_x - rho_y).frobenius_norm() < 1e-12;
        dr = disturbance(pp, m, gr);
    }

    std::ostringstream os;
    for (std::size_t l = 0; l < gr.q.size(); ++l) {
        os << "q" << l << "=" << format_number(gr.q[l]) << " ";
    }
    for (std::size_t l = 0; l < gr.gain.size(); ++l) {
        os << "G" << l << "=" << format_number(gr.gain[l]) << " ";
    }
    os << "G=" << format_number(gr.G) << " IAE=" << format_number(gr.IAE)
       << " Du=" << format_number(dr.Du) << " Dv=" << format_number(dr.Dv)
       << " D=" << format_number(dr.D)
       << " bound=" << format_number(bound_for_disturbance(dr.D))
       << " measurement=" << to_string(kind) << " degenerate=" << (gr.degenerate ? 1 : 0);
    std::cout << os.str() << "\n";
    return kExitOk;
}

int run_attenuation_cmd(const SweepOptions& opt, const std::string& deltas_text,
                        const std::string& out_path) {
    SweepSpec templ = make_spec(opt);
    const std::vector<double> deltas = parse_delta_list(deltas_text);
    const std::vector<AttenuationRow> rows = attenuation(templ, deltas, opt.threads);
    if (out_path.empty()) {
        write_attenuation_csv(std::cout, rows);
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return kExitInvalid;
    }
    write_attenuation_csv(out, rows);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eavesdropping-probe analysis for BB84: information gain, "
                 "disturbance and resonance detection"};
    app.require_subcommand(1);

    SweepOptions sweep_opt;
    std::string sweep_out;
    bool sweep_gnuplot = false;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    add_sweep_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->required();
    sweep_cmd->add_flag("--gnuplot", sweep_gnuplot, "Also write a gnuplot companion script");

    std::string peaks_input, peaks_column;
    double peaks_min_prominence = 0.0;
    CLI::App* peaks_cmd = app.add_subcommand("peaks", "Detect peaks in a sweep CSV column");
    peaks_cmd->add_option("--input", peaks_input, "Sweep CSV file")->required();
    peaks_cmd->add_option("--column", peaks_column, "Column to analyze")->required();
    peaks_cmd->add_option("--min-prominence", peaks_min_prominence, "Prominence threshold")
        ->check(CLI::NonNegativeNumber);

    SweepOptions gain_opt;
    CLI::App* gain_cmd =
        app.add_subcommand("gain", "Evaluate gain and disturbance for one strategy");
    add_family_flags(gain_cmd, gain_opt);

    SweepOptions att_opt;
    std::string att_deltas;
    std::string att_out;
    CLI::App* att_cmd = app.add_subcommand(
        "attenuation", "Peak prominence of the sweep template across delta values");
    add_sweep_flags(att_cmd, att_opt);
    att_cmd->add_option("--deltas", att_deltas, "Comma-separated delta list")->required();
    att_cmd->add_option("--out", att_out, "Output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_opt, sweep_out, sweep_gnuplot);
        if (peaks_cmd->parsed()) {
            return run_peaks_cmd(peaks_input, peaks_column, peaks_min_prominence);
        }
        if (gain_cmd->parsed()) return run_gain_cmd(gain_opt);
        if (att_cmd->parsed()) return run_attenuation_cmd(att_opt, att_deltas, att_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
