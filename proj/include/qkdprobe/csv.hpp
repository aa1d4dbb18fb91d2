#pragma once

// CSV serialization of sweep results and the attenuation study, plus the
// companion gnuplot script. Numbers are printed with 12 significant digits
// through std::to_chars, so output is byte-identical across runs, locales
// and thread counts.

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "sweep.hpp"

namespace qkdprobe {

inline constexpr std::string_view kSweepCsvHeader =
    "param,value,D,Du,Dv,q0,q1,G,IAE,bound,degenerate";
inline constexpr std::string_view kAttenuationCsvHeader = "delta,maxProminence";

inline std::string format_number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline void write_sweep_csv(std::ostream& os, std::string_view param_name,
                            const std::vector<SweepRow>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        os << param_name << ',' << format_number(r.value) << ',' << format_number(r.D) << ','
           << format_number(r.Du) << ',' << format_number(r.Dv) << ',' << format_number(r.q0)
           << ',' << format_number(r.q1) << ',' << format_number(r.G) << ','
           << format_number(r.IAE) << ',' << format_number(r.bound) << ','
           << (r.degenerate ? '1' : '0') << '\n';
    }
}

inline void write_attenuation_csv(std::ostream& os, const std::vector<AttenuationRow>& rows) {
    os << kAttenuationCsvHeader << '\n';
    for (const AttenuationRow& r : rows) {
        os << format_number(r.delta) << ',' << format_number(r.max_prominence) << '\n';
    }
}

struct ParsedSweep {
    std::string param_name;
    std::vector<SweepRow> rows;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline double parse_csv_number(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw InvalidParams("malformed CSV: bad number '" + field + "' on line " +
                            std::to_string(line_no));
    }
    return v;
}

} // namespace detail

/// Parse a CSV produced by write_sweep_csv. Throws InvalidParams on any
/// header or field mismatch.
inline ParsedSweep read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidParams("malformed CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepCsvHeader) {
        throw InvalidParams("malformed CSV: unexpected header '" + line + "'");
    }

    ParsedSweep out;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 11) {
            throw InvalidParams("malformed CSV: expected 11 fields on line " +
                                std::to_string(line_no));
        }
        if (out.rows.empty()) {
            out.param_name = fields[0];
        } else if (fields[0] != out.param_name) {
            throw InvalidParams("malformed CSV: inconsistent param column on line " +
                                std::to_string(line_no));
        }
        SweepRow r;
        r.value = detail::parse_csv_number(fields[1], line_no);
        r.D = detail::parse_csv_number(fields[2], line_no);
        r.Du = detail::parse_csv_number(fields[3], line_no);
        r.Dv = detail::parse_csv_number(fields[4], line_no);
        r.q0 = detail::parse_csv_number(fields[5], line_no);
        r.q1 = detail::parse_csv_number(fields[6], line_no);
        r.G = detail::parse_csv_number(fields[7], line_no);
        r.IAE = detail::parse_csv_number(fields[8], line_no);
        r.bound = detail::parse_csv_number(fields[9], line_no);
        if (fields[10] == "0") {
            r.degenerate = false;
        } else if (fields[10] == "1") {
            r.degenerate = true;
        } else {
            throw InvalidParams("malformed CSV: bad degenerate flag on line " +
                                std::to_string(line_no));
        }
        out.rows.push_back(r);
    }
    return out;
}

/// A small gnuplot script plotting D, Du and Dv of a sweep CSV.
inline std::string gnuplot_companion(std::string_view csv_path, std::string_view param_name) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel '" << param_name << "'\n"
       << "set ylabel 'disturbance'\n"
       << "plot '" << csv_path << "' using 2:3 with lines title 'D', \\\n"
       << "     '" << csv_path << "' using 2:4 with lines title 'Du', \\\n"
       << "     '" << csv_path << "' using 2:5 with lines title 'Dv'\n";
    return os.str();
}

} // namespace qkdprobe
