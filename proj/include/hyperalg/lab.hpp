#ifndef HYPERALG_LAB_HPP
#define HYPERALG_LAB_HPP

// Experiments: exact and sampled vanishing probabilities, expectation suites
// over repeated constructions, completion moments, the small/large dichotomy
// probe and scaling fits.  Every trial draws from streams derived from
// (master seed, trial index), so results are independent of thread count.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperalg/analysis.hpp"
#include "hyperalg/construct.hpp"
#include "hyperalg/gf.hpp"
#include "hyperalg/parallel.hpp"
#include "hyperalg/report.hpp"
#include "hyperalg/rng.hpp"
#include "hyperalg/sympoly.hpp"

namespace hyperalg {

using PointTuple = std::vector<Point>;

struct ExactProbability {
    std::uint64_t q = 0;
    std::size_t exponent = 0;  // rank of the evaluation matrix
    std::size_t usize = 0;
    bool guards_hold = false;  // C(|U|,2) < q, C(|V|,2) < q, |U| <= d
    bool lemma_holds = true;   // rank == |U| whenever the guards hold

    double value() const { return std::pow(static_cast<double>(q), -static_cast<double>(exponent)); }
    std::string text() const { return exponent == 0 ? "1" : std::to_string(q) + "^-" + std::to_string(exponent); }
};

// P[f vanishes on every tuple of U] for f uniform over the symmetric
// polynomials of the given shape.  Vanishing is a system of linear equations
// on the orbit coefficients, so the probability is exactly q^-rank.
inline ExactProbability vanishing_prob_exact(const Field& field, std::size_t r, std::size_t t, std::size_t d,
                                             const std::vector<PointTuple>& U) {
    const OrbitBasis basis(r, t, d);
    std::set<PointTuple> seen;
    std::set<Point> points;
    FqMatrix m(U.size(), basis.size());
    m.entries.clear();
    for (const auto& tuple : U) {
        auto key = tuple;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) fail(ErrorCode::BadInputs, "tuples in U must be distinct as unordered sets");
        for (const auto& p : tuple) points.insert(p);
        const auto row = evaluation_row(field, basis, tuple);
        m.entries.insert(m.entries.end(), row.begin(), row.end());
    }
    ExactProbability out;
    out.q = field.q();
    out.usize = U.size();
    out.exponent = rank(field, std::move(m));
    out.guards_hold = binomial(U.size(), 2) < field.q() && binomial(points.size(), 2) < field.q() && U.size() <= d;
    out.lemma_holds = !out.guards_hold || out.exponent == U.size();
    return out;
}

struct MonteCarloEstimate {
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;

    double frequency() const { return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0; }
    double stderr_() const {
        if (samples < 2) return 0.0;
        const double f = frequency();
        return std::sqrt(f * (1 - f) / static_cast<double>(samples));
    }
};

// Samples polynomials and evaluates them directly (no linear algebra).
inline MonteCarloEstimate vanishing_prob_mc(const Field& field, std::size_t r, std::size_t t, std::size_t d,
                                            const std::vector<PointTuple>& U, std::uint64_t samples,
                                            std::uint64_t seed, std::size_t threads = 1) {
    auto basis = std::make_shared<const OrbitBasis>(r, t, d);
    std::vector<std::uint8_t> hit(samples, 0);
    parallel_for(samples, threads, [&](std::size_t i) {
        RngStream stream(derive_stream_id(seed, {'V', i}));
        const auto f = sample_symmetric(field, basis, stream);
        bool all = true;
        for (const auto& tuple : U) {
            if (evaluate(f, tuple).value != 0) {
                all = false;
                break;
            }
        }
        hit[i] = all ? 1 : 0;
    });
    MonteCarloEstimate out;
    out.samples = samples;
    for (auto h : hit) out.hits += h;
    return out;
}

// |U| tuples of r distinct points, distinct as unordered sets, drawn from a
// pool of distinct random points.  The pool is the largest size with
// C(pool,2) < q when that leaves room for |U| tuples, so the guards of the
// vanishing lemma hold whenever they can; otherwise it is just large enough.
inline std::vector<PointTuple> sample_tuples(const Field& field, std::size_t r, std::size_t t, std::size_t usize,
                                             RngStream& stream) {
    const std::uint64_t space = detail::checked_pow(field.q(), t, max_vector_count);
    std::size_t pool = r;
    while (binomial(pool + 1, 2) < field.q() && pool + 1 <= space) ++pool;
    while (binomial(pool, r) < usize && pool + 1 <= space) ++pool;
    if (binomial(pool, r) < usize || pool > space) fail(ErrorCode::BadInputs, "not enough distinct tuples for |U|");
    std::vector<Point> points;
    while (points.size() < pool) {
        Point p(t);
        for (auto& c : p) c = FieldElement{stream.uniform(static_cast<std::uint32_t>(field.q()))};
        if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(std::move(p));
    }
    std::set<std::vector<std::size_t>> chosen;
    std::vector<PointTuple> U;
    while (U.size() < usize) {
        std::vector<std::size_t> idx;
        while (idx.size() < r) {
            const std::size_t k = stream.uniform(static_cast<std::uint32_t>(pool));
            if (std::find(idx.begin(), idx.end(), k) == idx.end()) idx.push_back(k);
        }
        auto key = idx;
        std::sort(key.begin(), key.end());
        if (!chosen.insert(key).second) continue;
        PointTuple tuple;
        for (auto k : idx) tuple.push_back(points[k]);
        U.push_back(std::move(tuple));
    }
    return U;
}

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    return derive_stream_id(master_seed, {'T', trial});
}

// Polynomials of every layer of one trial: [layer][poly].  The default source
// uses the same streams as build_multi, so direct counts and counts on the
// built graph describe the same random object.
using PolySource = std::function<std::vector<std::vector<SymmetricPolynomial>>(std::uint64_t trial_seed)>;

inline PolySource sampled_polynomials(const ModelParams& p, const Field& field) {
    auto basis = std::make_shared<const OrbitBasis>(p.r, p.block_dim, p.d_used);
    return [p, field, basis](std::uint64_t seed) {
        std::vector<std::vector<SymmetricPolynomial>> out(p.h);
        for (std::size_t layer = 0; layer < p.h; ++layer) {
            for (std::size_t i = 0; i < p.npolys; ++i) {
                RngStream stream(layer_stream_id(p, seed, layer, i));
                out[layer].push_back(sample_symmetric(field, basis, stream));
            }
        }
        return out;
    };
}

inline MultiHypergraph graph_from_polynomials(const ModelParams& p, const Field& field,
                                              const std::vector<std::vector<SymmetricPolynomial>>& layers) {
    const VectorTable vertices(field, p.block_dim);
    std::vector<MultiHypergraph> built;
    for (const auto& polys : layers) built.push_back(layer_from_polynomials(p, vertices, polys));
    return union_of(built);
}

// A: s_1 + ... + s_{r-1} distinct vertices (parts in order); B: t(r-1)
// distinct vertices (blocks in order); C: an ordered pair of distinct vertices.
inline std::vector<VertexId> sample_sequence(const ModelParams& p, RngStream& stream) {
    std::size_t len = 2;
    if (p.model == Model::A) len = p.t_sum;
    if (p.model == Model::B) len = p.inputs.at(0) * (p.r - 1);
    if (len >= p.total_vertices) fail(ErrorCode::InfeasibleSize, "sequence longer than the vertex set");
    std::vector<VertexId> seq;
    while (seq.size() < len) {
        const auto v = static_cast<VertexId>(stream.uniform(static_cast<std::uint32_t>(p.total_vertices)));
        if (std::find(seq.begin(), seq.end(), v) == seq.end()) seq.push_back(v);
    }
    return seq;
}

// Completion counts straight from the polynomials (models A/B): for every
// vertex u outside the sequence, the product over required sets X of the
// number of layers whose polynomials all vanish on X + u.  With
// `single_layer` only layer 0 is used.
inline std::uint64_t direct_completions(const ModelParams& p, const VectorTable& vertices,
                                        const std::vector<std::vector<SymmetricPolynomial>>& layers,
                                        const std::vector<VertexId>& seq, bool single_layer = false) {
    if (p.model == Model::C) fail(ErrorCode::BadInputs, "direct completions are defined for models A and B");
    const auto sets = required_sets(p.model, p, seq);
    const std::size_t n = vertices.size();
    std::vector<std::vector<std::uint32_t>> mult(sets.size(), std::vector<std::uint32_t>(n, 0));
    const std::size_t used_layers = single_layer ? 1 : layers.size();
    for (std::size_t layer = 0; layer < used_layers; ++layer) {
        const ContractionCache cache(layers[layer], vertices);
        for (std::size_t k = 0; k < sets.size(); ++k) {
            std::vector<Contraction> partial;
            for (std::size_t f = 0; f < cache.polynomial_count(); ++f) {
                Contraction c = cache.root(f);
                for (VertexId v : sets[k]) c = cache.contract(c, v);
                partial.push_back(std::move(c));
            }
            for (std::size_t u = 0; u < n; ++u) {
                bool vanish = true;
                for (std::size_t f = 0; f < partial.size() && vanish; ++f) vanish = cache.finish(partial[f], u).value == 0;
                if (vanish) ++mult[k][u];
            }
        }
    }
    std::uint64_t total = 0;
    for (std::size_t u = 0; u < n; ++u) {
        if (std::find(seq.begin(), seq.end(), static_cast<VertexId>(u)) != seq.end()) continue;
        std::uint64_t prod = 1;
        for (std::size_t k = 0; k < sets.size() && prod; ++k) prod *= mult[k][u];
        total += prod;
    }
    return total;
}

// Sizes entering the vanishing lemma for one copy of the pattern: |U| edges
// through a completion vertex on |V| vertices.
struct PatternSize {
    std::size_t edges = 0;
    std::size_t vertices = 0;
};

inline PatternSize pattern_size(const ModelParams& p) {
    switch (p.model) {
        case Model::A: return {p.b, p.t_sum + 1};
        case Model::B: return {p.inputs.at(0), p.inputs.at(0) * (p.r - 1) + 1};
        case Model::C: return {p.ell, p.ell * (p.r - 1) + 1};
    }
    return {};
}

inline std::vector<Flag> lemma_guards(const ModelParams& p, std::size_t copies = 1) {
    const auto ps = pattern_size(p);
    const std::size_t u = ps.edges * copies;
    const std::size_t v = ps.vertices * copies;
    return {
        {"guard_edges", binomial(u, 2) < p.q, "C(|U|,2) < q with |U| = " + std::to_string(u)},
        {"guard_vertices", binomial(v, 2) < p.q, "C(|V|,2) < q with |V| <= " + std::to_string(v)},
        {"guard_degree", u <= p.d_used, "|U| <= d with d = " + std::to_string(p.d_used)},
    };
}

inline bool guards_hold(const std::vector<Flag>& flags) {
    for (const auto& f : flags) {
        if (f.name.rfind("guard_", 0) == 0 && !f.value) return false;
    }
    return true;
}

inline std::string describe_model(const ModelParams& p) {
    std::string s(1, model_tag(p.model));
    s += " r=" + std::to_string(p.r) + " inputs=";
    for (std::size_t i = 0; i < p.inputs.size(); ++i) s += (i ? "," : "") + std::to_string(p.inputs[i]);
    s += " q=" + std::to_string(p.q) + " h=" + std::to_string(p.h) + " d=" + std::to_string(p.d_used);
    return s;
}

inline double expected_edges(const ModelParams& p) {
    return static_cast<double>(p.h) * candidate_tuples(p) * edge_probability(p);
}

// Expected number of vertex sets lying in at least two layers is at most
// candidates * sum_{i>=2} C(h,i) P[edge]^i.
inline double multi_edge_bound(const ModelParams& p) {
    double sum = 0;
    for (std::size_t i = 2; i <= p.h; ++i) {
        sum += static_cast<double>(binomial(p.h, i)) * std::pow(edge_probability(p), static_cast<double>(i));
    }
    return candidate_tuples(p) * sum;
}

inline std::vector<Reference> analytic_references(const ModelParams& p) {
    if (p.model == Model::C) {
        return {{"edge_probability", edge_probability(p), "q^-(l(r-1)-1)"},
                {"expected_edges", expected_edges(p), "h*q^(l+1) = h*N^r*q^-(l(r-1)-1)"},
                {"multi_edge_bound", multi_edge_bound(p), "N^r * sum_{i=2..h} C(h,i)*q^(-i(l(r-1)-1))"}};
    }
    return {{"edge_probability", edge_probability(p), "1/q"},
            {"expected_edges", expected_edges(p), "(h/q)*C(N,r)"},
            {"multi_edge_bound", multi_edge_bound(p), "C(N,r) * sum_{i=2..h} C(h,i)*q^-i"}};
}

inline std::uint64_t status_code(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::Certified: return 0;
        case CertificateStatus::NotCertified: return 1;
        case CertificateStatus::Violated: return 2;
    }
    return 1;
}

// Repeated h-layer constructions.  With a threshold each trial also runs the
// deletion step and records the certificate status (0 certified, 1 counted
// but not certified, 2 violated).
inline TrialReport expectation_suite(const ModelParams& p, const Field& field, std::size_t trials,
                                     std::uint64_t master_seed, std::size_t threads = 1,
                                     std::optional<std::uint64_t> threshold = std::nullopt) {
    TrialReport report;
    report.kind = "expect";
    report.params = p;
    report.field = field.describe();
    report.master_seed = master_seed;
    report.columns = {"trial", "seed", "edges", "distinct_sets", "multi_edges"};
    if (threshold) {
        for (const char* c : {"bad_structures", "removed_vertices", "post_cleanup_edges", "certificate"}) {
            report.columns.push_back(c);
        }
    }
    report.rows.resize(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        const std::uint64_t seed = trial_seed(master_seed, i);
        const auto built = build_multi(p, field, seed);
        std::vector<std::uint64_t> row{i, seed, built.graph.edge_count(), built.graph.multiplicities().size(),
                                       multi_edges(built.graph).size()};
        if (threshold) {
            const auto c = cleanup(built.graph, p.model, p, *threshold);
            row.push_back(c.certificate.structures_found);
            row.push_back(c.certificate.removed_vertices.size());
            row.push_back(c.certificate.edges_after);
            row.push_back(status_code(c.certificate.status));
        }
        report.rows[i] = std::move(row);
    });
    finalize(report);
    report.references = analytic_references(p);
    report.flags = lemma_guards(p);

    const auto& edges = report.statistic("edges");
    const auto& multi = report.statistic("multi_edges");
    const double ref = report.reference("expected_edges").value;
    const double bound = report.reference("multi_edge_bound").value;
    report.results["edges_relative_deviation"] = ref > 0 ? (edges.mean - ref) / ref : 0.0;
    report.results["edges_deviation_in_stderr"] = edges.stderr_ > 0 ? (edges.mean - ref) / edges.stderr_ : 0.0;
    report.results["multi_edges_within_bound"] = multi.mean <= bound + 3 * multi.stderr_;
    report.results["edge_rate_mean"] = edges.mean / (static_cast<double>(p.h) * candidate_tuples(p));
    report.results["edge_rate_stderr"] = edges.stderr_ / (static_cast<double>(p.h) * candidate_tuples(p));
    if (threshold) {
        report.results["threshold"] = *threshold;
        std::uint64_t certified = 0;
        const auto col = report.column("certificate");
        for (const auto& row : report.rows) certified += row[col] == 0;
        report.results["certified_trials"] = certified;
    }
    return report;
}

// Per trial: a random sequence (A/B) or vertex pair (C), fresh polynomials,
// and its completion count (A/B, summed over layer types) or number of Berge
// paths of length <= l (C), raised to `exponent`.
inline TrialReport moment_estimate(const ModelParams& p, const Field& field, std::size_t exponent, std::size_t trials,
                                   std::uint64_t master_seed, std::size_t threads = 1,
                                   std::optional<PolySource> source = std::nullopt) {
    detail::check_field(p, field);
    const PolySource polys = source ? *source : sampled_polynomials(p, field);
    const VectorTable vertices(field, p.block_dim);
    TrialReport report;
    report.kind = "moments";
    report.params = p;
    report.field = field.describe();
    report.master_seed = master_seed;
    report.columns = {"trial", "seed", "completions", "powered"};
    report.rows.resize(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        const std::uint64_t seed = trial_seed(master_seed, i);
        RngStream stream(derive_stream_id(seed, {'S'}));
        const auto seq = sample_sequence(p, stream);
        const auto layers = polys(seed);
        std::uint64_t count = 0;
        if (p.model == Model::C) {
            const auto g = graph_from_polynomials(p, field, layers);
            count = berge_paths(g, seq[0], seq[1], p.ell);
        } else {
            count = direct_completions(p, vertices, layers, seq);
        }
        std::uint64_t powered = 1;
        for (std::size_t e = 0; e < exponent; ++e) powered *= count;
        report.rows[i] = {i, seed, count, powered};
    });
    finalize(report);
    report.flags = lemma_guards(p, std::max<std::size_t>(exponent, 1));
    report.results["exponent"] = exponent;
    report.results["moment"] = report.statistic("powered").mean;
    report.results["moment_stderr"] = report.statistic("powered").stderr_;
    if (p.model == Model::A && p.h == 1) {
        // Each completion needs b independent edges: E = (N - |seq|) / q^b.
        const double first = (static_cast<double>(p.N) - static_cast<double>(p.t_sum)) /
                             std::pow(static_cast<double>(p.q), static_cast<double>(p.b));
        report.references.push_back({"first_moment", first, "(N - (s_1+...+s_{r-1})) / q^b"});
    }
    return report;
}

struct MomentPoint {
    std::uint64_t q = 0;
    double mean = 0;
    double stderr_ = 0;
};

// The same moment at several field orders, one derived master seed per q.
inline std::vector<MomentPoint> moment_trend(Model model, std::size_t r, const std::vector<std::size_t>& inputs,
                                             const std::vector<std::uint64_t>& qs, std::size_t h,
                                             std::size_t exponent, std::size_t trials, std::uint64_t master_seed,
                                             std::size_t threads = 1,
                                             std::optional<std::size_t> degree_override = std::nullopt) {
    std::vector<MomentPoint> out;
    for (auto q : qs) {
        const auto p = make_params(model, r, inputs, q, h, degree_override);
        const auto rep = moment_estimate(p, Field::of_order(q), exponent, trials, derive_stream_id(master_seed, {q}),
                                         threads);
        out.push_back({q, rep.statistic("powered").mean, rep.statistic("powered").stderr_});
    }
    return out;
}

struct DichotomyHistogram {
    ModelParams params;
    std::uint64_t master_seed = 0;
    std::uint64_t trials = 0;
    std::map<std::uint64_t, std::uint64_t> frequencies;  // |W| -> count
    std::vector<std::uint64_t> per_trial;
    double cutoff = 0;  // q/2
    std::optional<std::uint64_t> max_below_half;
    std::optional<std::uint64_t> min_at_or_above_half;
    // Integers strictly between max_below_half and q/2 with no observation.
    std::uint64_t empty_band_lo = 0;
    std::uint64_t empty_band_hi = 0;  // inclusive; lo > hi means empty band
    // Longest run of unobserved integers between the smallest and largest observation.
    std::uint64_t largest_gap_lo = 0;
    std::uint64_t largest_gap_hi = 0;
    std::uint64_t largest_gap = 0;

    std::uint64_t frequency_total() const {
        std::uint64_t s = 0;
        for (const auto& [v, f] : frequencies) s += f;
        return s;
    }
};

inline void summarize(DichotomyHistogram& hist) {
    hist.frequencies.clear();
    for (auto w : hist.per_trial) ++hist.frequencies[w];
    hist.trials = hist.per_trial.size();
    hist.cutoff = static_cast<double>(hist.params.q) / 2.0;
    hist.max_below_half.reset();
    hist.min_at_or_above_half.reset();
    for (const auto& [v, f] : hist.frequencies) {
        if (2 * v < hist.params.q) {
            hist.max_below_half = v;
        } else if (!hist.min_at_or_above_half) {
            hist.min_at_or_above_half = v;
        }
    }
    // Smallest integer >= q/2 is ceil(q/2).
    const std::uint64_t half_ceil = (hist.params.q + 1) / 2;
    hist.empty_band_lo = hist.max_below_half ? *hist.max_below_half + 1 : 0;
    hist.empty_band_hi = half_ceil == 0 ? 0 : half_ceil - 1;
    hist.largest_gap = 0;
    hist.largest_gap_lo = hist.largest_gap_hi = 0;
    std::optional<std::uint64_t> prev;
    for (const auto& [v, f] : hist.frequencies) {
        if (prev && v - *prev - 1 > hist.largest_gap) {
            hist.largest_gap = v - *prev - 1;
            hist.largest_gap_lo = *prev + 1;
            hist.largest_gap_hi = v - 1;
        }
        prev = v;
    }
}

// Per trial: a random sequence and its completion count within one layer.
inline DichotomyHistogram dichotomy_probe(const ModelParams& p, const Field& field, std::size_t trials,
                                          std::uint64_t master_seed, std::size_t threads = 1,
                                          std::optional<PolySource> source = std::nullopt) {
    if (p.model == Model::C) fail(ErrorCode::BadInputs, "the dichotomy probe is defined for models A and B");
    detail::check_field(p, field);
    const PolySource polys = source ? *source : sampled_polynomials(p, field);
    const VectorTable vertices(field, p.block_dim);
    DichotomyHistogram hist;
    hist.params = p;
    hist.master_seed = master_seed;
    hist.per_trial.resize(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        const std::uint64_t seed = trial_seed(master_seed, i);
        RngStream stream(derive_stream_id(seed, {'S'}));
        const auto seq = sample_sequence(p, stream);
        hist.per_trial[i] = direct_completions(p, vertices, polys(seed), seq, true);
    });
    summarize(hist);
    return hist;
}

inline TrialReport to_report(const DichotomyHistogram& hist) {
    TrialReport report;
    report.kind = "dichotomy";
    report.params = hist.params;
    report.field = Field::of_order(hist.params.q).describe();
    report.master_seed = hist.master_seed;
    report.columns = {"trial", "seed", "completions"};
    for (std::size_t i = 0; i < hist.per_trial.size(); ++i) {
        report.rows.push_back({i, trial_seed(hist.master_seed, i), hist.per_trial[i]});
    }
    finalize(report);
    report.flags = lemma_guards(hist.params);
    Json freq = Json::array();
    for (const auto& [v, f] : hist.frequencies) freq.push_back({{"value", v}, {"frequency", f}});
    Json& r = report.results;
    r["histogram"] = freq;
    r["frequency_total"] = hist.frequency_total();
    r["cutoff"] = hist.cutoff;
    r["max_below_half"] = hist.max_below_half ? Json(*hist.max_below_half) : Json(nullptr);
    r["min_at_or_above_half"] = hist.min_at_or_above_half ? Json(*hist.min_at_or_above_half) : Json(nullptr);
    r["empty_middle_band"] = {{"from", hist.empty_band_lo},
                              {"to", hist.empty_band_hi},
                              {"width", hist.empty_band_hi >= hist.empty_band_lo
                                            ? hist.empty_band_hi - hist.empty_band_lo + 1
                                            : 0}};
    r["largest_gap"] = {{"from", hist.largest_gap_lo}, {"to", hist.largest_gap_hi}, {"width", hist.largest_gap}};
    return report;
}

struct ScalingPoint {
    std::uint64_t q = 0;
    std::uint64_t vertices = 0;
    double mean_edges = 0;
    double mean_post_cleanup = 0;
    double stderr_post_cleanup = 0;
};

struct ScalingFit {
    std::vector<ScalingPoint> points;
    double slope = 0;
    double intercept = 0;
    double target = 0;
    TrialReport report;
};

inline double theorem_exponent(const ModelParams& p) {
    switch (p.model) {
        case Model::A: return static_cast<double>(p.r) - 1.0 / static_cast<double>(p.b);
        case Model::B: return static_cast<double>(p.r) - 1.0 / static_cast<double>(p.inputs.at(0));
        case Model::C: return 1.0 + 1.0 / static_cast<double>(p.ell);
    }
    return 0;
}

inline constexpr std::size_t min_scaling_points = 3;

// Least-squares slope of log(mean post-cleanup edges) against log(vertex
// count) over the given field orders.
inline ScalingFit scaling_fit(Model model, std::size_t r, const std::vector<std::size_t>& inputs,
                              const std::vector<std::uint64_t>& qs, std::size_t h, std::size_t trials,
                              std::uint64_t master_seed, std::uint64_t threshold, std::size_t threads = 1,
                              std::optional<std::size_t> degree_override = std::nullopt) {
    std::set<std::uint64_t> distinct(qs.begin(), qs.end());
    if (distinct.size() < min_scaling_points) {
        fail(ErrorCode::InsufficientPoints, "scaling fit needs at least " + std::to_string(min_scaling_points) +
                                                " distinct field orders");
    }
    if (trials == 0) fail(ErrorCode::InsufficientPoints, "scaling fit needs at least one trial");
    ScalingFit fit;
    TrialReport& report = fit.report;
    report.kind = "scaling";
    report.master_seed = master_seed;
    report.columns = {"q", "trial", "seed", "edges", "post_cleanup_edges"};
    for (auto q : qs) {
        const auto p = make_params(model, r, inputs, q, h, degree_override);
        if (!report.params) report.params = p;
        const Field field = Field::of_order(q);
        std::vector<std::vector<std::uint64_t>> rows(trials);
        parallel_for(trials, threads, [&](std::size_t i) {
            const std::uint64_t seed = derive_stream_id(master_seed, {'Q', q, i});
            const auto built = build_multi(p, field, seed);
            const auto c = cleanup(built.graph, model, p, threshold, false);
            rows[i] = {q, i, seed, built.graph.edge_count(), c.certificate.edges_after};
        });
        ScalingPoint pt;
        pt.q = q;
        pt.vertices = p.total_vertices;
        const auto stats = compute_aggregates(report.columns, rows);
        for (const auto& s : stats) {
            if (s.name == "edges") pt.mean_edges = s.mean;
            if (s.name == "post_cleanup_edges") {
                pt.mean_post_cleanup = s.mean;
                pt.stderr_post_cleanup = s.stderr_;
            }
        }
        if (pt.mean_post_cleanup <= 0) {
            fail(ErrorCode::InsufficientPoints, "no edges survive cleanup at q=" + std::to_string(q));
        }
        fit.points.push_back(pt);
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        fit.target = theorem_exponent(p);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(fit.points.size());
    for (const auto& pt : fit.points) {
        const double x = std::log(static_cast<double>(pt.vertices));
        const double y = std::log(pt.mean_post_cleanup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    if (denom == 0) fail(ErrorCode::InsufficientPoints, "vertex counts do not vary");
    fit.slope = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / k;

    finalize(report);
    Json pts = Json::array();
    for (const auto& pt : fit.points) {
        pts.push_back({{"q", pt.q},
                       {"vertices", pt.vertices},
                       {"mean_edges", pt.mean_edges},
                       {"mean_post_cleanup_edges", pt.mean_post_cleanup},
                       {"stderr_post_cleanup_edges", pt.stderr_post_cleanup}});
    }
    report.results["threshold"] = threshold;
    report.results["points"] = pts;
    report.results["slope"] = fit.slope;
    report.results["intercept"] = fit.intercept;
    report.results["target_exponent"] = fit.target;
    report.references.push_back({"target_exponent", fit.target,
                                 model == Model::C ? "1 + 1/l" : (model == Model::A ? "r - 1/b" : "r - 1/t")});
    return fit;
}

} // namespace hyperalg

#endif // HYPERALG_LAB_HPP
