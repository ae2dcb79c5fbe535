#pragma once

// Result rows and their CSV / JSON serializations, plus the custom-family
// file reader.
//
// Column order: parameters (ASCII order), exact_risk, mc_mean, mc_ci_lo,
// mc_ci_hi, bounds (ASCII order), one <bound>_vacuous flag per bound,
// seed, runtime_ms, then mc_within_ci, derived metrics (ASCII order) and
// error. The header is the union over all rows; absent fields are empty
// in CSV and null in JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "l1mm/bounds.hpp"
#include "l1mm/dist_core.hpp"
#include "l1mm/error.hpp"
#include "l1mm/montecarlo.hpp"

namespace l1mm {

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct ReportRow {
    std::map<std::string, ParamValue> params;
    std::optional<double> exact_risk;
    std::optional<McRiskEstimate> mc;
    std::map<std::string, BoundValue> bounds;
    std::optional<std::uint64_t> seed;
    std::optional<double> runtime_ms;
    std::optional<bool> mc_within_ci;
    std::map<std::string, double> metrics;
    std::vector<std::string> errors;
};

struct RiskReport {
    std::vector<ReportRow> rows;
};

enum class OutputFormat { csv, json };

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace detail {

enum class ColumnKind { param, exact, mc_mean, mc_lo, mc_hi, bound, vacuous, seed, runtime, within, metric, error };

struct Column {
    std::string name;
    ColumnKind kind;
    std::string key;  // parameter, bound or metric name
};

inline std::vector<Column> columns_of(const RiskReport& report) {
    std::set<std::string> params, bounds, metrics;
    for (const ReportRow& r : report.rows) {
        for (const auto& [k, v] : r.params) params.insert(k);
        for (const auto& [k, v] : r.bounds) bounds.insert(k);
        for (const auto& [k, v] : r.metrics) metrics.insert(k);
    }
    std::vector<Column> cols;
    for (const auto& p : params) cols.push_back({p, ColumnKind::param, p});
    cols.push_back({"exact_risk", ColumnKind::exact, {}});
    cols.push_back({"mc_mean", ColumnKind::mc_mean, {}});
    cols.push_back({"mc_ci_lo", ColumnKind::mc_lo, {}});
    cols.push_back({"mc_ci_hi", ColumnKind::mc_hi, {}});
    for (const auto& b : bounds) cols.push_back({b, ColumnKind::bound, b});
    for (const auto& b : bounds) cols.push_back({b + "_vacuous", ColumnKind::vacuous, b});
    cols.push_back({"seed", ColumnKind::seed, {}});
    cols.push_back({"runtime_ms", ColumnKind::runtime, {}});
    cols.push_back({"mc_within_ci", ColumnKind::within, {}});
    for (const auto& m : metrics) cols.push_back({m, ColumnKind::metric, m});
    cols.push_back({"error", ColumnKind::error, {}});
    return cols;
}

inline std::string join_errors(const std::vector<std::string>& errs) {
    std::string out;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        if (i) out += "; ";
        out += errs[i];
    }
    return out;
}

// Cell text for CSV; nullopt means an empty field.
inline std::optional<std::string> csv_cell(const ReportRow& r, const Column& c) {
    auto num = [](const std::optional<double>& v) -> std::optional<std::string> {
        if (!v) return std::nullopt;
        return format_number(*v);
    };
    switch (c.kind) {
        case ColumnKind::param: {
            const auto it = r.params.find(c.key);
            if (it == r.params.end()) return std::nullopt;
            return std::visit(
                [](const auto& v) -> std::string {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::string>) {
                        return v;
                    } else if constexpr (std::is_same_v<T, double>) {
                        return format_number(v);
                    } else {
                        return std::to_string(v);
                    }
                },
                it->second);
        }
        case ColumnKind::exact: return num(r.exact_risk);
        case ColumnKind::mc_mean: return r.mc ? num(r.mc->mean) : std::nullopt;
        case ColumnKind::mc_lo: return r.mc ? num(r.mc->ci_lo) : std::nullopt;
        case ColumnKind::mc_hi: return r.mc ? num(r.mc->ci_hi) : std::nullopt;
        case ColumnKind::bound: {
            const auto it = r.bounds.find(c.key);
            if (it == r.bounds.end()) return std::nullopt;
            return format_number(it->second.value);
        }
        case ColumnKind::vacuous: {
            const auto it = r.bounds.find(c.key);
            if (it == r.bounds.end()) return std::nullopt;
            return std::string(it->second.vacuous ? "true" : "false");
        }
        case ColumnKind::seed:
            if (!r.seed) return std::nullopt;
            return std::to_string(*r.seed);
        case ColumnKind::runtime: return num(r.runtime_ms);
        case ColumnKind::within:
            if (!r.mc_within_ci) return std::nullopt;
            return std::string(*r.mc_within_ci ? "true" : "false");
        case ColumnKind::metric: {
            const auto it = r.metrics.find(c.key);
            if (it == r.metrics.end()) return std::nullopt;
            return format_number(it->second);
        }
        case ColumnKind::error:
            if (r.errors.empty()) return std::nullopt;
            return join_errors(r.errors);
    }
    return std::nullopt;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline nlohmann::ordered_json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

inline nlohmann::ordered_json json_cell(const ReportRow& r, const Column& c) {
    using nlohmann::ordered_json;
    auto num = [](const std::optional<double>& v) -> ordered_json {
        if (!v) return nullptr;
        return json_number(*v);
    };
    switch (c.kind) {
        case ColumnKind::param: {
            const auto it = r.params.find(c.key);
            if (it == r.params.end()) return nullptr;
            return std::visit(
                [](const auto& v) -> ordered_json {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        return json_number(v);
                    } else {
                        return v;
                    }
                },
                it->second);
        }
        case ColumnKind::exact: return num(r.exact_risk);
        case ColumnKind::mc_mean: return r.mc ? num(r.mc->mean) : nullptr;
        case ColumnKind::mc_lo: return r.mc ? num(r.mc->ci_lo) : nullptr;
        case ColumnKind::mc_hi: return r.mc ? num(r.mc->ci_hi) : nullptr;
        case ColumnKind::bound: {
            const auto it = r.bounds.find(c.key);
            if (it == r.bounds.end()) return nullptr;
            return json_number(it->second.value);
        }
        case ColumnKind::vacuous: {
            const auto it = r.bounds.find(c.key);
            if (it == r.bounds.end()) return nullptr;
            return it->second.vacuous;
        }
        case ColumnKind::seed:
            if (!r.seed) return nullptr;
            return *r.seed;
        case ColumnKind::runtime: return num(r.runtime_ms);
        case ColumnKind::within:
            if (!r.mc_within_ci) return nullptr;
            return *r.mc_within_ci;
        case ColumnKind::metric: {
            const auto it = r.metrics.find(c.key);
            if (it == r.metrics.end()) return nullptr;
            return json_number(it->second);
        }
        case ColumnKind::error:
            if (r.errors.empty()) return nullptr;
            return join_errors(r.errors);
    }
    return nullptr;
}

}  // namespace detail

inline std::vector<std::string> report_header(const RiskReport& report) {
    std::vector<std::string> names;
    for (const auto& c : detail::columns_of(report)) names.push_back(c.name);
    return names;
}

inline void write_csv(std::ostream& os, const RiskReport& report) {
    const auto cols = detail::columns_of(report);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].name;
    os << '\n';
    for (const ReportRow& r : report.rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ',';
            if (auto cell = detail::csv_cell(r, cols[i])) os << detail::csv_escape(*cell);
        }
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const RiskReport& report) {
    const auto cols = detail::columns_of(report);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ReportRow& r : report.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& c : cols) obj[c.name] = detail::json_cell(r, c);
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

inline void write_report(std::ostream& os, const RiskReport& report, OutputFormat format) {
    if (format == OutputFormat::csv) {
        write_csv(os, report);
    } else {
        write_json(os, report);
    }
}

inline std::string render_report(const RiskReport& report, OutputFormat format) {
    std::ostringstream os;
    write_report(os, report, format);
    return os.str();
}

/// Reads "value multiplicity" lines ('#' starts a comment, blank lines
/// ignored). The masses must sum to 1 within 1e-9.
inline CompressedFamily parse_family(std::istream& in, const std::string& source = "<input>") {
    std::vector<Atom> atoms;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << source << ":" << lineno << ": " << what;
        throw InputError(os.str());
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) fail("expected 'value multiplicity'");
        if (ls >> extra) fail("unexpected trailing field '" + extra + "'");
        double value = 0, mult = 0;
        try {
            std::size_t pa = 0, pb = 0;
            value = std::stod(a, &pa);
            mult = std::stod(b, &pb);
            if (pa != a.size() || pb != b.size()) fail("malformed number");
        } catch (const std::logic_error&) {
            fail("malformed number");
        }
        if (!std::isfinite(value) || value < 0.0 || value > 1.0) fail("value must lie in [0,1]");
        if (!std::isfinite(mult) || mult < 1.0 || std::floor(mult) != mult) {
            fail("multiplicity must be a positive integer");
        }
        atoms.push_back({value, mult});
    }
    if (atoms.empty()) {
        lineno = 0;
        fail("no atoms");
    }
    try {
        return CompressedFamily(std::move(atoms));
    } catch (const DomainError& e) {
        throw InputError(source + ": " + e.what());
    }
}

inline CompressedFamily parse_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open family file '" + path + "'");
    return parse_family(in, path);
}

}  // namespace l1mm
