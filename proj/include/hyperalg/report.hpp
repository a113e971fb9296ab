#ifndef HYPERALG_REPORT_HPP
#define HYPERALG_REPORT_HPP

// Experiment reports: a header echoing the run, one row of unsigned integers
// per trial, aggregates recomputed from the rows, analytic references with
// their formulas, guard flags, and a free-form `results` object.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperalg/construct.hpp"
#include "hyperalg/error.hpp"

namespace hyperalg {

using Json = nlohmann::ordered_json;

struct Statistic {
    std::string name;
    double mean = 0;
    double stderr_ = 0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;

    friend bool operator==(const Statistic&, const Statistic&) = default;
};

struct Reference {
    std::string name;
    double value = 0;
    std::string formula;

    friend bool operator==(const Reference&, const Reference&) = default;
};

struct Flag {
    std::string name;
    bool value = false;
    std::string note;

    friend bool operator==(const Flag&, const Flag&) = default;
};

struct TrialReport {
    std::string kind;
    std::optional<ModelParams> params;
    std::string field;
    std::uint64_t master_seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<Statistic> aggregates;
    std::vector<Reference> references;
    std::vector<Flag> flags;
    Json results = Json::object();

    std::size_t trials() const noexcept { return rows.size(); }

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return i;
        }
        fail(ErrorCode::BadInputs, "no column '" + name + "'");
    }

    const Statistic& statistic(const std::string& name) const {
        for (const auto& s : aggregates) {
            if (s.name == name) return s;
        }
        fail(ErrorCode::BadInputs, "no aggregate '" + name + "'");
    }

    const Reference& reference(const std::string& name) const {
        for (const auto& r : references) {
            if (r.name == name) return r;
        }
        fail(ErrorCode::BadInputs, "no reference '" + name + "'");
    }

    bool flag(const std::string& name) const {
        for (const auto& f : flags) {
            if (f.name == name) return f.value;
        }
        fail(ErrorCode::BadInputs, "no flag '" + name + "'");
    }

    friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

// Mean and standard error (sample deviation / sqrt(n)) of each column.  The
// "trial" and "seed" bookkeeping columns are skipped.
inline std::vector<Statistic> compute_aggregates(const std::vector<std::string>& columns,
                                                 const std::vector<std::vector<std::uint64_t>>& rows) {
    std::vector<Statistic> out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == "trial" || columns[c] == "seed") continue;
        Statistic s;
        s.name = columns[c];
        const double n = static_cast<double>(rows.size());
        if (!rows.empty()) {
            double sum = 0;
            s.min = rows[0][c];
            s.max = rows[0][c];
            for (const auto& row : rows) {
                sum += static_cast<double>(row[c]);
                s.min = std::min(s.min, row[c]);
                s.max = std::max(s.max, row[c]);
            }
            s.mean = sum / n;
            if (rows.size() > 1) {
                double ss = 0;
                for (const auto& row : rows) {
                    const double d = static_cast<double>(row[c]) - s.mean;
                    ss += d * d;
                }
                s.stderr_ = std::sqrt(ss / (n - 1) / n);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline void finalize(TrialReport& report) { report.aggregates = compute_aggregates(report.columns, report.rows); }

inline Json params_to_json(const ModelParams& p) {
    return Json{{"model", std::string(1, model_tag(p.model))},
                {"r", p.r},
                {"inputs", p.inputs},
                {"q", p.q},
                {"h", p.h},
                {"b", p.b},
                {"t_sum", p.t_sum},
                {"s", p.s},
                {"m", p.m},
                {"ell", p.ell},
                {"npolys", p.npolys},
                {"block_dim", p.block_dim},
                {"d_paper", p.d_paper},
                {"d_used", p.d_used},
                {"degree_overridden", p.degree_overridden},
                {"N", p.N},
                {"total_vertices", p.total_vertices}};
}

inline ModelParams params_from_json(const Json& j) {
    ModelParams p;
    p.model = parse_model(j.at("model").get<std::string>());
    p.r = j.at("r").get<std::size_t>();
    p.inputs = j.at("inputs").get<std::vector<std::size_t>>();
    p.q = j.at("q").get<std::uint64_t>();
    p.h = j.at("h").get<std::size_t>();
    p.b = j.at("b").get<std::size_t>();
    p.t_sum = j.at("t_sum").get<std::size_t>();
    p.s = j.at("s").get<std::size_t>();
    p.m = j.at("m").get<std::size_t>();
    p.ell = j.at("ell").get<std::size_t>();
    p.npolys = j.at("npolys").get<std::size_t>();
    p.block_dim = j.at("block_dim").get<std::size_t>();
    p.d_paper = j.at("d_paper").get<std::size_t>();
    p.d_used = j.at("d_used").get<std::size_t>();
    p.degree_overridden = j.at("degree_overridden").get<bool>();
    p.N = j.at("N").get<std::uint64_t>();
    p.total_vertices = j.at("total_vertices").get<std::uint64_t>();
    return p;
}

inline Json to_json(const TrialReport& r) {
    Json j;
    j["format"] = "hyperalg-report v1";
    j["kind"] = r.kind;
    j["params"] = r.params ? params_to_json(*r.params) : Json(nullptr);
    j["field"] = r.field;
    j["master_seed"] = r.master_seed;
    j["trials"] = r.trials();
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    Json aggs = Json::array();
    for (const auto& s : r.aggregates) {
        aggs.push_back({{"name", s.name}, {"mean", s.mean}, {"stderr", s.stderr_}, {"min", s.min}, {"max", s.max}});
    }
    j["aggregates"] = aggs;
    Json refs = Json::array();
    for (const auto& x : r.references) refs.push_back({{"name", x.name}, {"value", x.value}, {"formula", x.formula}});
    j["references"] = refs;
    Json flags = Json::array();
    for (const auto& f : r.flags) flags.push_back({{"name", f.name}, {"value", f.value}, {"note", f.note}});
    j["flags"] = flags;
    j["results"] = r.results;
    return j;
}

inline TrialReport report_from_json(const Json& j) {
    if (j.value("format", "") != "hyperalg-report v1") fail(ErrorCode::ParseError, "not a hyperalg-report v1 document");
    TrialReport r;
    r.kind = j.at("kind").get<std::string>();
    if (!j.at("params").is_null()) r.params = params_from_json(j.at("params"));
    r.field = j.at("field").get<std::string>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    r.rows = j.at("rows").get<std::vector<std::vector<std::uint64_t>>>();
    for (const auto& s : j.at("aggregates")) {
        r.aggregates.push_back({s.at("name").get<std::string>(), s.at("mean").get<double>(),
                                s.at("stderr").get<double>(), s.at("min").get<std::uint64_t>(),
                                s.at("max").get<std::uint64_t>()});
    }
    for (const auto& x : j.at("references")) {
        r.references.push_back(
            {x.at("name").get<std::string>(), x.at("value").get<double>(), x.at("formula").get<std::string>()});
    }
    for (const auto& f : j.at("flags")) {
        r.flags.push_back({f.at("name").get<std::string>(), f.at("value").get<bool>(), f.at("note").get<std::string>()});
    }
    r.results = j.at("results");
    return r;
}

inline std::string report_json(const TrialReport& r) { return to_json(r).dump(2) + "\n"; }

inline TrialReport parse_report_json(const std::string& text) {
    try {
        return report_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("report JSON: ") + e.what());
    }
}

// Header row of column names, then one row per trial.
inline std::string report_csv(const TrialReport& r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
    out += "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + std::to_string(row[i]);
        out += "\n";
    }
    return out;
}

enum class ReportFormat { json, csv };

inline ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    fail(ErrorCode::ConfigError, "format: expected json or csv, got '" + s + "'");
}

inline std::string render(const TrialReport& r, ReportFormat f) {
    return f == ReportFormat::json ? report_json(r) : report_csv(r);
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

inline void emit_report(const TrialReport& r, ReportFormat f, const std::string& path) { write_file(path, render(r, f)); }

} // namespace hyperalg

#endif // HYPERALG_REPORT_HPP
