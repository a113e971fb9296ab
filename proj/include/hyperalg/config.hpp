#ifndef HYPERALG_CONFIG_HPP
#define HYPERALG_CONFIG_HPP

// Run configuration: a flat key=value text file.  '#' starts a comment line,
// blank lines are ignored, lists are comma separated and an empty value means
// "unset" for optional fields.  Command-line flags override file values.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperalg/construct.hpp"
#include "hyperalg/error.hpp"

namespace hyperalg {

struct RunConfig {
    std::string model;                          // A, B or C
    std::size_t r = 2;
    std::vector<std::size_t> s;                 // model A part sizes
    std::size_t t = 2;                          // model B input; block dimension for lemma22
    std::size_t ell = 2;                        // model C
    std::vector<std::uint64_t> q;               // first entry for single-field commands
    std::size_t h = 1;
    std::optional<std::size_t> degree_override;
    std::optional<std::uint64_t> threshold;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string out;                            // empty: stdout
    std::string graph_out;                      // analyze: cleaned graph
    std::string input;                          // analyze: read this HGR file instead of building
    std::string format = "json";
    std::size_t threads = 1;
    bool strict = false;
    std::size_t d = 8;                          // lemma22
    std::size_t usize = 2;                      // lemma22
    std::uint64_t samples = 0;                  // lemma22 Monte Carlo samples
    std::size_t exponent = 1;                   // moments
    std::string only;                           // verify: comma list of criteria

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& key, const std::string& what) {
    fail(ErrorCode::ConfigError, "field '" + key + "': " + what);
}

inline std::uint64_t config_uint(const std::string& key, const std::string& v) {
    if (v.empty() || v.size() > 19 || v.find_first_not_of("0123456789") != std::string::npos) {
        config_fail(key, "expected a non-negative integer, got '" + v + "'");
    }
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        config_fail(key, "integer out of range: '" + v + "'");
    }
}

template <class T>
std::vector<T> config_list(const std::string& key, const std::string& v) {
    std::vector<T> out;
    if (v.empty()) return out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) out.push_back(static_cast<T>(config_uint(key, item)));
    if (v.back() == ',') config_fail(key, "trailing comma");
    return out;
}

inline bool config_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    config_fail(key, "expected true or false, got '" + v + "'");
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace detail

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "model",   "r",      "s",      "t",      "ell",     "q",      "h",     "degree_override",
        "threshold", "trials", "seed", "out",    "graph_out", "input", "format", "threads",
        "strict",  "d",      "usize",  "samples", "exponent", "only"};
    return keys;
}

// Sets one field from its text form; errors name the field.
inline void set_field(RunConfig& c, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "model") {
        if (!value.empty() && value != "A" && value != "B" && value != "C") config_fail(key, "expected A, B or C");
        c.model = value;
    } else if (key == "r") {
        c.r = config_uint(key, value);
    } else if (key == "s") {
        c.s = config_list<std::size_t>(key, value);
    } else if (key == "t") {
        c.t = config_uint(key, value);
    } else if (key == "ell") {
        c.ell = config_uint(key, value);
    } else if (key == "q") {
        c.q = config_list<std::uint64_t>(key, value);
    } else if (key == "h") {
        c.h = config_uint(key, value);
    } else if (key == "degree_override") {
        c.degree_override = value.empty() ? std::nullopt : std::optional<std::size_t>(config_uint(key, value));
    } else if (key == "threshold") {
        c.threshold = value.empty() ? std::nullopt : std::optional<std::uint64_t>(config_uint(key, value));
    } else if (key == "trials") {
        c.trials = config_uint(key, value);
    } else if (key == "seed") {
        c.seed = config_uint(key, value);
    } else if (key == "out") {
        c.out = value;
    } else if (key == "graph_out") {
        c.graph_out = value;
    } else if (key == "input") {
        c.input = value;
    } else if (key == "format") {
        if (value != "json" && value != "csv") config_fail(key, "expected json or csv");
        c.format = value;
    } else if (key == "threads") {
        c.threads = config_uint(key, value);
        if (c.threads == 0) config_fail(key, "must be >= 1");
    } else if (key == "strict") {
        c.strict = config_bool(key, value);
    } else if (key == "d") {
        c.d = config_uint(key, value);
    } else if (key == "usize") {
        c.usize = config_uint(key, value);
    } else if (key == "samples") {
        c.samples = config_uint(key, value);
    } else if (key == "exponent") {
        c.exponent = config_uint(key, value);
    } else if (key == "only") {
        (void)config_list<std::size_t>(key, value);
        c.only = value;
    } else {
        fail(ErrorCode::ConfigError, "unknown field '" + key + "'");
    }
}

inline std::string get_field(const RunConfig& c, const std::string& key) {
    using detail::join;
    if (key == "model") return c.model;
    if (key == "r") return std::to_string(c.r);
    if (key == "s") return join(c.s);
    if (key == "t") return std::to_string(c.t);
    if (key == "ell") return std::to_string(c.ell);
    if (key == "q") return join(c.q);
    if (key == "h") return std::to_string(c.h);
    if (key == "degree_override") return c.degree_override ? std::to_string(*c.degree_override) : "";
    if (key == "threshold") return c.threshold ? std::to_string(*c.threshold) : "";
    if (key == "trials") return std::to_string(c.trials);
    if (key == "seed") return std::to_string(c.seed);
    if (key == "out") return c.out;
    if (key == "graph_out") return c.graph_out;
    if (key == "input") return c.input;
    if (key == "format") return c.format;
    if (key == "threads") return std::to_string(c.threads);
    if (key == "strict") return c.strict ? "true" : "false";
    if (key == "d") return std::to_string(c.d);
    if (key == "usize") return std::to_string(c.usize);
    if (key == "samples") return std::to_string(c.samples);
    if (key == "exponent") return std::to_string(c.exponent);
    if (key == "only") return c.only;
    fail(ErrorCode::ConfigError, "unknown field '" + key + "'");
}

inline std::string serialize_config(const RunConfig& c) {
    std::string out;
    for (const auto& key : config_keys()) out += key + "=" + get_field(c, key) + "\n";
    return out;
}

// Starts from `base` (defaults unless given) and applies every line.
inline RunConfig parse_config(const std::string& text, RunConfig base = {}) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            fail(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = detail::trim(trimmed.substr(0, eq));
        const std::string value = detail::trim(trimmed.substr(eq + 1));
        try {
            set_field(base, key, value);
        } catch (const Error& e) {
            fail(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

inline std::vector<std::size_t> model_inputs(const RunConfig& c, Model m) {
    switch (m) {
        case Model::A:
            if (c.s.empty()) detail::config_fail("s", "model A needs part sizes (--s)");
            return c.s;
        case Model::B: return {c.t};
        case Model::C: return {c.ell};
    }
    return {};
}

inline Model config_model(const RunConfig& c) {
    if (c.model.empty()) detail::config_fail("model", "required");
    return parse_model(c.model);
}

inline std::uint64_t config_q(const RunConfig& c) {
    if (c.q.empty()) detail::config_fail("q", "required");
    return c.q.front();
}

inline ModelParams config_params(const RunConfig& c) {
    const Model m = config_model(c);
    return make_params(m, c.r, model_inputs(c, m), config_q(c), c.h, c.degree_override);
}

} // namespace hyperalg

#endif // HYPERALG_CONFIG_HPP
