#pragma once

// Parameter sweeps over the probe families, topographic peak detection,
// the attenuation-versus-delta study, and a grid search for the best
// single-qubit strategy at a target disturbance.

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "infodist.hpp"
#include "measurement.hpp"
#include "probes.hpp"
#include "qstate.hpp"

namespace qkdprobe {

enum class ProbeFamily { OneQubit, TwoQubit };

/// A linear parameter tie: target = offset + slope * source, applied at
/// every grid point after the swept value is set.
struct ParamTie {
    std::string target;
    double offset = 0.0;
    double slope = 0.0;
    std::string source;
};

struct SweepSpec {
    ProbeFamily family = ProbeFamily::OneQubit;
    std::string param;
    double from = 0.0;
    double to = 1.0;
    int steps = 2001;
    std::map<std::string, double> fixed;
    std::vector<ParamTie> ties;
};

struct SweepRow {
    double value = 0.0;
    double D = 0.0;
    double Du = 0.0;
    double Dv = 0.0;
    double q0 = 0.0;
    double q1 = 0.0;
    double G = 0.0;
    double IAE = 0.0;
    double bound = 0.0;
    bool degenerate = false;
};

namespace detail {

inline const std::vector<std::string>& family_params(ProbeFamily family) {
    static const std::vector<std::string> one{"a", "c", "delta"};
    static const std::vector<std::string> two{"alpha2", "beta2", "s", "delta"};
    return family == ProbeFamily::OneQubit ? one : two;
}

inline bool is_family_param(ProbeFamily family, const std::string& name) {
    const auto& names = family_params(family);
    return std::find(names.begin(), names.end(), name) != names.end();
}

/// Fully resolved parameter values of one grid point.
using ParamSet = std::map<std::string, double>;

inline ParamSet resolve_grid_point(const SweepSpec& spec, double value) {
    ParamSet ps = spec.fixed;
    ps[spec.param] = value;
    for (const ParamTie& tie : spec.ties) {
        if (tie.source.empty()) { // constant tie
            ps[tie.target] = tie.offset;
            continue;
        }
        auto it = ps.find(tie.source);
        if (it == ps.end()) {
            throw InvalidParams("sweep: tie source '" + tie.source + "' has no value");
        }
        ps[tie.target] = tie.offset + tie.slope * it->second;
    }
    for (const auto& [name, val] : ps) {
        if (!(val >= 0.0 && val <= 1.0)) {
            throw InvalidParams(name + " = " + std::to_string(val) +
                                " outside [0,1] at grid point " + spec.param + " = " +
                                std::to_string(value));
        }
    }
    for (const std::string& name : family_params(spec.family)) {
        if (ps.find(name) == ps.end()) {
            throw InvalidParams("sweep: parameter '" + name + "' is not set");
        }
    }
    return ps;
}

inline void validate_spec(const SweepSpec& spec) {
    if (spec.steps < 2) throw InvalidParams("sweep: steps must be at least 2");
    if (!(spec.from < spec.to)) throw InvalidParams("sweep: requires from < to");
    if (!is_family_param(spec.family, spec.param)) {
        throw InvalidParams("sweep: unknown swept parameter '" + spec.param + "'");
    }
    for (const auto& [name, val] : spec.fixed) {
        if (!is_family_param(spec.family, name)) {
            throw InvalidParams("sweep: unknown fixed parameter '" + name + "'");
        }
        (void)val;
    }
    for (const ParamTie& tie : spec.ties) {
        if (!is_family_param(spec.family, tie.target) ||
            (!tie.source.empty() && !is_family_param(spec.family, tie.source))) {
            throw InvalidParams("sweep: tie references an unknown parameter");
        }
        if (tie.target == spec.param) {
            throw InvalidParams("sweep: tie target cannot be the swept parameter");
        }
    }
}

inline SweepRow evaluate_one_qubit(const ParamSet& ps, double value) {
    const OneQubitProbeParams p(ps.at("a"), ps.at("c"), ps.at("delta"));
    const ProbePair pp = build_one_qubit_probe(p);
    const bool degen = angle_degenerate(p);
    const Povm m = degen ? canonical_povm() : closed_form_povm(p);
    const GainReport gr = gain_closed_form(p);
    const DisturbanceReport dr = disturbance(pp, m, gr);
    SweepRow row;
    row.value = value;
    row.D = dr.D;
    row.Du = dr.Du;
    row.Dv = dr.Dv;
    row.q0 = gr.q[0];
    row.q1 = gr.q[1];
    row.G = gr.G;
    row.IAE = gr.IAE;
    row.bound = bound_for_disturbance(dr.D);
    row.degenerate = degen;
    return row;
}

inline SweepRow evaluate_two_qubit(const ParamSet& ps, double value) {
    const TwoQubitProbeParams p(ps.at("alpha2"), ps.at("beta2"), ps.at("s"), ps.at("delta"));
    const ProbePair pp = build_two_qubit_probe(p);
    const Operator rho_x = partial_trace(outer(pp.X), pp.bob_dim, pp.eve_dim, 2);
    const Operator rho_y = partial_trace(outer(pp.Y), pp.bob_dim, pp.eve_dim, 2);
    const bool degen = (rho_x - rho_y).frobenius_norm() < 1e-12;
    const Povm m = helstrom_basis_povm(rho_x, rho_y, 0.5, 0.5);
    const GainReport gr = gain_generic(pp, m);
    const DisturbanceReport dr = disturbance(pp, m, gr);
    SweepRow row;
    row.value = value;
    row.D = dr.D;
    row.Du = dr.Du;
    row.Dv = dr.Dv;
    for (std::size_t l = 0; l < gr.q.size(); ++l) {
        (m.guess[l] == 0 ? row.q0 : row.q1) += gr.q[l];
    }
    row.G = gr.G;
    row.IAE = gr.IAE;
    row.bound = bound_for_disturbance(dr.D);
    row.degenerate = degen;
    return row;
}

} // namespace detail

/// Evaluate the sweep on a uniform grid inclusive of both endpoints.
/// Grid points are independent; with threads > 1 they are evaluated in
/// parallel and assembled in index order, so the output is identical for
/// every thread count. Degenerate points are flagged, not dropped.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1) {
    detail::validate_spec(spec);

    const int n = spec.steps;
    std::vector<double> values(static_cast<std::size_t>(n));
    std::vector<detail::ParamSet> points(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double v = spec.from + (spec.to - spec.from) * k / (n - 1);
        values[static_cast<std::size_t>(k)] = v;
        points[static_cast<std::size_t>(k)] = detail::resolve_grid_point(spec, v);
    }

    std::vector<SweepRow> rows(static_cast<std::size_t>(n));
    const auto eval_range = [&](int lo, int hi) {
        for (int k = lo; k < hi; ++k) {
            const auto& ps = points[static_cast<std::size_t>(k)];
            const double v = values[static_cast<std::size_t>(k)];
            rows[static_cast<std::size_t>(k)] = spec.family == ProbeFamily::OneQubit
                                                    ? detail::evaluate_one_qubit(ps, v)
                                                    : detail::evaluate_two_qubit(ps, v);
        }
    };

    if (threads <= 1) {
        eval_range(0, n);
        return rows;
    }

    const int workers = std::min(threads, n);
    const int chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                eval_range(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

struct Peak {
    std::size_t index = 0;
    double location = 0.0;
    double height = 0.0;
    double prominence = 0.0;
    double width = 0.0; // measured at height - prominence/2
};

struct PeakReport {
    std::string column;
    double min_prominence = 0.0;
    std::vector<Peak> peaks;
};

namespace detail {

inline double SweepRow::*column_member(const std::string& name) {
    static const std::map<std::string, double SweepRow::*> cols{
        {"value", &SweepRow::value}, {"D", &SweepRow::D},   {"Du", &SweepRow::Du},
        {"Dv", &SweepRow::Dv},       {"q0", &SweepRow::q0}, {"q1", &SweepRow::q1},
        {"G", &SweepRow::G},         {"IAE", &SweepRow::IAE}, {"bound", &SweepRow::bound}};
    auto it = cols.find(name);
    if (it == cols.end()) throw InvalidParams("unknown column '" + name + "'");
    return it->second;
}

} // namespace detail

/// Topographic peak detection on a sampled curve. A peak is an interior
/// strict local maximum; its prominence is the height minus the higher of
/// the two flanking minima, each taken between the peak and the nearest
/// higher point (or the end of the data). Only peaks with prominence
/// strictly above min_prominence are reported.
inline PeakReport find_peaks(const std::vector<SweepRow>& rows, const std::string& column,
                             double min_prominence) {
    if (rows.size() < 3) throw InvalidParams("find_peaks: needs at least 3 rows");
    double SweepRow::*col = detail::column_member(column);

    const std::size_t n = rows.size();
    const auto y = [&](std::size_t i) { return rows[i].*col; };
    const auto x = [&](std::size_t i) { return rows[i].value; };

    PeakReport report;
    report.column = column;
    report.min_prominence = min_prominence;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y(i) > y(i - 1) && y(i) > y(i + 1))) continue;

        double left_min = y(i);
        for (std::size_t j = i; j-- > 0;) {
            if (y(j) > y(i)) break;
            left_min = std::min(left_min, y(j));
        }
        double right_min = y(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y(j) > y(i)) break;
            right_min = std::min(right_min, y(j));
        }
        const double prominence = y(i) - std::max(left_min, right_min);
        if (!(prominence > min_prominence)) continue;

        const double level = y(i) - 0.5 * prominence;
        double x_left = x(0);
        for (std::size_t j = i; j-- > 0;) {
            if (y(j) <= level) {
                const double frac = (level - y(j)) / (y(j + 1) - y(j));
                x_left = x(j) + frac * (x(j + 1) - x(j));
                break;
            }
        }
        double x_right = x(n - 1);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y(j) <= level) {
                const double frac = (level - y(j)) / (y(j - 1) - y(j));
                x_right = x(j) - frac * (x(j) - x(j - 1));
                break;
            }
        }

        Peak p;
        p.index = i;
        p.location = x(i);
        p.height = y(i);
        p.prominence = prominence;
        p.width = std::abs(x_right - x_left);
        report.peaks.push_back(p);
    }
    return report;
}

struct AttenuationRow {
    double delta = 0.0;
    double max_prominence = 0.0;
};

/// Re-run the sweep template at each delta and report the largest D-column
/// peak prominence (0 when the curve has no peak).
inline std::vector<AttenuationRow> attenuation(const SweepSpec& templ,
                                               const std::vector<double>& deltas,
                                               int threads = 1) {
    if (templ.param == "delta") {
        throw InvalidParams("attenuation: the template must not sweep delta");
    }
    std::vector<AttenuationRow> out;
    for (double dl : deltas) {
        SweepSpec spec = templ;
        spec.fixed["delta"] = dl;
        const std::vector<SweepRow> rows = run_sweep(spec, threads);
        const PeakReport report = find_peaks(rows, "D", 0.0);
        AttenuationRow row;
        row.delta = dl;
        for (const Peak& p : report.peaks) {
            row.max_prominence = std::max(row.max_prominence, p.prominence);
        }
        out.push_back(row);
    }
    return out;
}

struct BestStrategy {
    OneQubitProbeParams params;
    double iae = 0.0;
    double gap = 0.0; // optimal_bound at the winning point's disturbance, minus iae
};

/// Grid search over (a, c) at delta = 0 restricted to the band
/// |D(a,c) - targetD| < 0.5/resolution; returns the point of maximum
/// Alice-Eve mutual information and its gap below the optimal bound.
/// The gap is measured against the bound at the winning point's own
/// disturbance: the band has finite width, and referencing the target
/// disturbance instead would let the band width (bound slope times
/// 0.5/resolution) swamp the gap itself.
inline BestStrategy best_single_qubit_strategy(double target_disturbance, int resolution) {
    if (!(target_disturbance > 0.0 && target_disturbance <= 0.5)) {
        throw InvalidParams("best_single_qubit_strategy: target must lie in (0, 1/2]");
    }
    if (resolution < 2) {
        throw InvalidParams("best_single_qubit_strategy: resolution must be at least 2");
    }
    const double tol = 0.5 / resolution;

    bool found = false;
    double best_iae = -1.0;
    double best_a = 0.0, best_c = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double a = static_cast<double>(i) / (resolution - 1);
        const double b = std::sqrt(1.0 - a * a);
        for (int j = 0; j < resolution; ++j) {
            const double c = static_cast<double>(j) / (resolution - 1);
            const double d = std::sqrt(1.0 - c * c);
            const double dist = 0.5 * (1.0 - a * c - b * d);
            if (std::abs(dist - target_disturbance) >= tol) continue;
            const GainReport gr = gain_closed_form(OneQubitProbeParams(a, c, 0.0));
            if (gr.IAE > best_iae) {
                best_iae = gr.IAE;
                best_a = a;
                best_c = c;
                found = true;
            }
        }
    }
    if (!found) {
        throw NoFeasiblePoint("best_single_qubit_strategy: no grid point within " +
                              std::to_string(tol) + " of target disturbance");
    }
    const OneQubitProbeParams best(best_a, best_c, 0.0);
    const double bound = optimal_bound(std::min(disturbance_delta0(best), 0.5));
    return BestStrategy{best, best_iae, bound - best_iae};
}

} // namespace qkdprobe
