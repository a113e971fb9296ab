#ifndef HYPERALG_CLI_HPP
#define HYPERALG_CLI_HPP

// Command-line front end.  Exit codes: 0 success, 1 a check failed (verify,
// or a guard violation under --strict), 2 usage, config or input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "hyperalg/analysis.hpp"
#include "hyperalg/config.hpp"
#include "hyperalg/construct.hpp"
#include "hyperalg/hypergraph.hpp"
#include "hyperalg/lab.hpp"
#include "hyperalg/report.hpp"

namespace hyperalg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Context {
    RunConfig config;
    std::ostream& out;
    std::ostream& err;
};

inline void emit(Context& ctx, const std::string& text) {
    if (ctx.config.out.empty()) {
        ctx.out << text;
    } else {
        write_file(ctx.config.out, text);
    }
}

// Human-readable summary lines go to stdout when the artifact goes to a
// file, and to stderr when the artifact itself is on stdout.
inline std::ostream& summary(Context& ctx) { return ctx.config.out.empty() ? ctx.err : ctx.out; }

// Warns about failed guards; under --strict they are fatal.
inline bool check_guards(Context& ctx, const std::vector<Flag>& flags) {
    bool ok = true;
    for (const auto& f : flags) {
        if (f.name.rfind("guard_", 0) == 0 && !f.value) {
            ctx.err << (ctx.config.strict ? "error" : "warning") << ": vanishing-lemma guard " << f.name
                    << " fails (" << f.note << ")\n";
            ok = false;
        }
    }
    return ok || !ctx.config.strict;
}

inline int emit_report(Context& ctx, const TrialReport& report) {
    if (!check_guards(ctx, report.flags)) return exit_failed;
    emit(ctx, render(report, parse_format(ctx.config.format)));
    return exit_ok;
}

inline std::uint64_t threshold_of(const RunConfig& c) {
    if (!c.threshold) fail(ErrorCode::ConfigError, "field 'threshold': required for this command");
    return *c.threshold;
}

inline int cmd_construct(Context& ctx) {
    const auto p = config_params(ctx.config);
    const auto built = build_multi(p, Field::of_order(p.q), ctx.config.seed, ctx.config.threads);
    emit(ctx, serialize(built.graph));
    summary(ctx) << "constructed " << describe_model(p) << ": " << built.graph.n() << " vertices, "
                 << built.graph.edge_count() << " edges, " << multi_edges(built.graph).size() << " multi-edges\n";
    return exit_ok;
}

inline Json certificate_json(const Certificate& c, const std::vector<VertexId>& original_id) {
    return Json{{"status", to_string(c.status)},
                {"threshold", c.threshold},
                {"structures_found", c.structures_found},
                {"removed_vertices", c.removed_vertices},
                {"edges_before", c.edges_before},
                {"multi_edges_dropped", c.multi_edges_dropped},
                {"edges_after", c.edges_after},
                {"redetected", c.redetected ? Json(*c.redetected) : Json(nullptr)},
                {"oracle", c.oracle},
                {"oracle_copies", c.oracle_copies ? Json(*c.oracle_copies) : Json(nullptr)},
                {"original_id", original_id}};
}

inline int cmd_analyze(Context& ctx) {
    const auto& c = ctx.config;
    const auto p = config_params(c);
    const std::uint64_t threshold = threshold_of(c);
    MultiHypergraph g = c.input.empty() ? build_multi(p, Field::of_order(p.q), c.seed, c.threads).graph
                                        : parse_hgr(read_file(c.input));
    if (g.r() != p.r) fail(ErrorCode::ShapeMismatch, "input graph uniformity differs from r");
    const auto res = cleanup(g, p.model, p, threshold);
    TrialReport report;
    report.kind = "analyze";
    report.params = p;
    report.field = Field::of_order(p.q).describe();
    report.master_seed = c.seed;
    report.columns = {"trial",        "seed",           "edges", "distinct_sets", "multi_edges", "bad_structures",
                      "removed_vertices", "post_cleanup_edges", "certificate"};
    const auto& cert = res.certificate;
    report.rows.push_back({0, c.seed, g.edge_count(), g.multiplicities().size(), multi_edges(g).size(),
                           cert.structures_found, cert.removed_vertices.size(), cert.edges_after,
                           status_code(cert.status)});
    finalize(report);
    report.references = analytic_references(p);
    report.flags = lemma_guards(p);
    report.results["input"] = c.input.empty() ? "constructed" : "file";
    report.results["certificate"] = certificate_json(cert, res.original_id);
    if (!c.graph_out.empty()) write_file(c.graph_out, serialize(res.graph));
    summary(ctx) << "cleanup at threshold " << threshold << ": " << cert.structures_found << " structures, "
                 << cert.removed_vertices.size() << " vertices removed, " << cert.edges_before << " -> "
                 << cert.edges_after << " edges, " << to_string(cert.status) << "\n";
    return emit_report(ctx, report);
}

inline int cmd_lemma22(Context& ctx) {
    const auto& c = ctx.config;
    const Field field = Field::of_order(config_q(c));
    TrialReport report;
    report.kind = "lemma22";
    report.field = field.describe();
    report.master_seed = c.seed;
    report.columns = {"trial", "seed", "usize", "rank", "guards_hold", "lemma_holds"};
    std::vector<PointTuple> first;
    std::optional<ExactProbability> first_exact;
    std::uint64_t guarded = 0, holds = 0;
    for (std::size_t i = 0; i < std::max<std::size_t>(c.trials, 1); ++i) {
        const std::uint64_t seed = trial_seed(c.seed, i);
        RngStream s(seed);
        const auto U = sample_tuples(field, c.r, c.t, c.usize, s);
        const auto res = vanishing_prob_exact(field, c.r, c.t, c.d, U);
        if (i == 0) {
            first = U;
            first_exact = res;
        }
        guarded += res.guards_hold;
        holds += res.guards_hold && res.lemma_holds;
        report.rows.push_back({i, seed, res.usize, res.exponent, res.guards_hold, res.lemma_holds});
    }
    finalize(report);
    report.flags.push_back({"guard_all_cases", guarded == report.rows.size(),
                            std::to_string(guarded) + " of " + std::to_string(report.rows.size()) +
                                " sampled U satisfy C(|U|,2) < q, C(|V|,2) < q, |U| <= d"});
    report.flags.push_back({"lemma_holds", holds == guarded, "rank = |U| in every guarded case"});
    report.results["shape"] = {{"r", c.r}, {"t", c.t}, {"d", c.d}, {"usize", c.usize}};
    report.results["exact_first"] = first_exact->text();
    report.results["exact_value_first"] = first_exact->value();
    auto& log = summary(ctx);
    log << "exact P[f vanishes on U] = " << first_exact->text() << " (rank " << first_exact->exponent
        << ", |U| = " << c.usize << ")\n";
    log << "rank = |U| in " << holds << " of " << guarded << " guarded cases (" << report.rows.size()
        << " sampled)\n";
    if (c.samples > 0) {
        const auto mc = vanishing_prob_mc(field, c.r, c.t, c.d, first, c.samples, derive_stream_id(c.seed, {'M'}),
                                          c.threads);
        const double dev = mc.stderr_() > 0 ? (mc.frequency() - first_exact->value()) / mc.stderr_() : 0.0;
        report.results["monte_carlo"] = {{"samples", mc.samples},
                                         {"hits", mc.hits},
                                         {"frequency", mc.frequency()},
                                         {"stderr", mc.stderr_()},
                                         {"deviation_in_stderr", dev}};
        log << "Monte Carlo: " << mc.hits << "/" << mc.samples << " = " << mc.frequency() << " (" << dev
            << " stderr from exact)\n";
    }
    if (holds != guarded) {
        emit(ctx, render(report, parse_format(c.format)));
        ctx.err << "error: rank below |U| in a guarded case\n";
        return exit_failed;
    }
    return emit_report(ctx, report);
}

inline int cmd_dichotomy(Context& ctx) {
    const auto p = config_params(ctx.config);
    const auto hist = dichotomy_probe(p, Field::of_order(p.q), ctx.config.trials, ctx.config.seed, ctx.config.threads);
    const auto report = to_report(hist);
    summary(ctx) << "dichotomy: " << hist.frequencies.size() << " distinct values over " << hist.trials
                 << " trials; max below q/2: "
                 << (hist.max_below_half ? std::to_string(*hist.max_below_half) : std::string("none"))
                 << ", min at/above q/2: "
                 << (hist.min_at_or_above_half ? std::to_string(*hist.min_at_or_above_half) : std::string("none"))
                 << "\n";
    return emit_report(ctx, report);
}

inline int cmd_moments(Context& ctx) {
    const auto& c = ctx.config;
    const Model m = config_model(c);
    if (c.q.empty()) fail(ErrorCode::ConfigError, "field 'q': required");
    if (c.q.size() == 1) {
        const auto p = config_params(c);
        const auto report = moment_estimate(p, Field::of_order(p.q), c.exponent, c.trials, c.seed, c.threads);
        summary(ctx) << "moment " << c.exponent << ": " << report.statistic("powered").mean << " +- "
                     << report.statistic("powered").stderr_ << "\n";
        return emit_report(ctx, report);
    }
    TrialReport report;
    report.kind = "moments";
    report.master_seed = c.seed;
    report.columns = {"q", "trial", "seed", "completions", "powered"};
    Json trend = Json::array();
    for (auto q : c.q) {
        const auto p = make_params(m, c.r, model_inputs(c, m), q, c.h, c.degree_override);
        if (!report.params) report.params = p;
        const auto rep = moment_estimate(p, Field::of_order(q), c.exponent, c.trials, derive_stream_id(c.seed, {q}),
                                         c.threads);
        for (const auto& row : rep.rows) {
            std::vector<std::uint64_t> r{q};
            r.insert(r.end(), row.begin(), row.end());
            report.rows.push_back(std::move(r));
        }
        for (const auto& f : rep.flags) report.flags.push_back({f.name + "_q" + std::to_string(q), f.value, f.note});
        trend.push_back({{"q", q},
                         {"mean", rep.statistic("powered").mean},
                         {"stderr", rep.statistic("powered").stderr_}});
        summary(ctx) << "q=" << q << " moment " << c.exponent << ": " << rep.statistic("powered").mean << " +- "
                     << rep.statistic("powered").stderr_ << "\n";
    }
    finalize(report);
    report.results["exponent"] = c.exponent;
    report.results["trend"] = trend;
    return emit_report(ctx, report);
}

inline int cmd_expect(Context& ctx) {
    const auto& c = ctx.config;
    const auto p = config_params(c);
    const auto report = expectation_suite(p, Field::of_order(p.q), c.trials, c.seed, c.threads, c.threshold);
    summary(ctx) << "mean edges " << report.statistic("edges").mean << " +- " << report.statistic("edges").stderr_
                 << " (expected " << report.reference("expected_edges").value << "), mean multi-edges "
                 << report.statistic("multi_edges").mean << " (bound " << report.reference("multi_edge_bound").value
                 << ")\n";
    return emit_report(ctx, report);
}

inline int cmd_scaling(Context& ctx) {
    const auto& c = ctx.config;
    const Model m = config_model(c);
    const auto fit = scaling_fit(m, c.r, model_inputs(c, m), c.q, c.h, c.trials, c.seed, threshold_of(c), c.threads,
                                 c.degree_override);
    auto& log = summary(ctx);
    for (const auto& pt : fit.points) {
        log << "q=" << pt.q << " n=" << pt.vertices << " mean edges " << pt.mean_edges << ", after cleanup "
            << pt.mean_post_cleanup << "\n";
    }
    log << "slope " << fit.slope << " (theorem exponent " << fit.target << ")\n";
    return emit_report(ctx, fit.report);
}

inline int cmd_verify(Context& ctx, bool seed_given) {
    const auto& c = ctx.config;
    acceptance::Settings st;
    if (seed_given) st.seed = c.seed;
    st.threads = c.threads;
    std::vector<std::size_t> only;
    if (!c.only.empty()) {
        std::istringstream in(c.only);
        std::string item;
        while (std::getline(in, item, ',')) only.push_back(std::stoul(item));
    }
    std::ostream& log = ctx.out;
    const auto outcomes = acceptance::run_all(st, only, log);
    const bool all = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.pass; });
    if (!c.out.empty()) {
        TrialReport report;
        report.kind = "verify";
        report.master_seed = st.seed;
        report.columns = {"criterion", "pass"};
        Json list = Json::array();
        for (const auto& o : outcomes) {
            report.rows.push_back({static_cast<std::uint64_t>(o.id), o.pass ? 1u : 0u});
            list.push_back({{"criterion", o.id}, {"name", o.name}, {"pass", o.pass}, {"detail", o.detail}});
        }
        finalize(report);
        report.results["outcomes"] = list;
        report.results["all_pass"] = all;
        write_file(c.out, render(report, parse_format(c.format)));
    }
    log << (all ? "all selected criteria pass" : "some criteria FAILED") << "\n";
    return all ? exit_ok : exit_failed;
}

inline std::string flag_name(const std::string& key) {
    std::string s = key;
    std::replace(s.begin(), s.end(), '_', '-');
    return "--" + s;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"hyperalg: random algebraic hypergraph constructions and experiments"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1, 1);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"construct", "build the h-layer multi-hypergraph and write it in HGR v1 format"},
        {"analyze", "detect bad structures, run the deletion step and certify the result"},
        {"lemma22", "exact (rank) and Monte Carlo vanishing probabilities"},
        {"dichotomy", "histogram of single-layer completion counts"},
        {"moments", "moments of completion counts, optionally over several q"},
        {"expect", "edge and multi-edge counts against their expected values"},
        {"scaling", "log-log slope of post-cleanup edges against vertex count"},
        {"verify", "run the acceptance suite"}};
    std::map<std::string, std::string> raw;
    std::string config_path;
    bool strict = false;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->set_help_flag("--help", "print this help and exit");
        sub->add_option("--config", config_path, "key=value configuration file");
        for (const auto& key : config_keys()) {
            if (key == "strict") continue;
            sub->add_option(detail::flag_name(key), raw[key], "override config field '" + key + "'");
        }
        sub->add_flag("--strict", strict, "treat vanishing-lemma guard violations as failures");
        subs[name] = sub;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }
    std::string command;
    CLI::App* sub = nullptr;
    for (const auto& [name, s] : subs) {
        if (s->parsed()) {
            command = name;
            sub = s;
        }
    }
    detail::Context ctx{RunConfig{}, out, err};
    try {
        if (!config_path.empty()) ctx.config = parse_config(detail::read_file(config_path));
        for (const auto& key : config_keys()) {
            if (key != "strict" && sub->count(detail::flag_name(key)) > 0) set_field(ctx.config, key, raw[key]);
        }
        if (strict) ctx.config.strict = true;
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        if (command == "construct") return detail::cmd_construct(ctx);
        if (command == "analyze") return detail::cmd_analyze(ctx);
        if (command == "lemma22") return detail::cmd_lemma22(ctx);
        if (command == "dichotomy") return detail::cmd_dichotomy(ctx);
        if (command == "moments") return detail::cmd_moments(ctx);
        if (command == "expect") return detail::cmd_expect(ctx);
        if (command == "scaling") return detail::cmd_scaling(ctx);
        if (command == "verify") return detail::cmd_verify(ctx, sub->count("--seed") > 0);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::GuardViolation ? exit_failed : exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace hyperalg::cli

#endif // HYPERALG_CLI_HPP
