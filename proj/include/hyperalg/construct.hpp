#ifndef HYPERALG_CONSTRUCT_HPP
#define HYPERALG_CONSTRUCT_HPP

// The three random algebraic hypergraph models and their h-layer unions.
//
//   A  complete r-partite forbidden pattern.  Inputs s_1..s_{r-1};
//      b = prod s_i, t = sum s_i, s = b(t-1)+2, d = b*s.  Vertices GF(q)^b;
//      an r-set is an edge iff one random symmetric polynomial vanishes on it.
//   B  complete bipartite r-uniform pattern.  Input t;
//      m = (r-1)t^2 - t + 2, d = m*t.  Vertices GF(q)^t, same edge rule.
//   C  Berge theta pattern.  Input l; d = r*l^2, l(r-1)-1 polynomials.
//      r copies of GF(q)^l; a transversal is an edge iff all polynomials vanish.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperalg/error.hpp"
#include "hyperalg/gf.hpp"
#include "hyperalg/hypergraph.hpp"
#include "hyperalg/parallel.hpp"
#include "hyperalg/rng.hpp"
#include "hyperalg/sympoly.hpp"

namespace hyperalg {

enum class Model { A, B, C };

inline char model_tag(Model m) noexcept { return m == Model::A ? 'A' : (m == Model::B ? 'B' : 'C'); }

inline Model parse_model(const std::string& s) {
    if (s == "A" || s == "a") return Model::A;
    if (s == "B" || s == "b") return Model::B;
    if (s == "C" || s == "c") return Model::C;
    fail(ErrorCode::BadInputs, "unknown model '" + s + "'");
}

inline constexpr std::uint64_t max_tuple_count = 1u << 28;

struct ModelParams {
    Model model = Model::A;
    std::size_t r = 2;
    std::vector<std::size_t> inputs;  // s_1..s_{r-1} (A), {t} (B), {l} (C)
    std::uint64_t q = 2;
    std::size_t h = 1;

    std::size_t b = 0;       // A: prod s_i
    std::size_t t_sum = 0;   // A: sum s_i
    std::size_t s = 0;       // A: b(t-1)+2
    std::size_t m = 0;       // B: (r-1)t^2 - t + 2
    std::size_t ell = 0;     // C
    std::size_t npolys = 1;  // polynomials per layer
    std::size_t block_dim = 0;
    std::size_t d_paper = 0;
    std::size_t d_used = 0;
    bool degree_overridden = false;
    std::uint64_t N = 0;               // vertices per copy of GF(q)^block_dim
    std::uint64_t total_vertices = 0;  // N for A/B, r*N for C

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) {
        out *= base;
        if (out > cap) return cap + 1;
    }
    return out;
}

inline std::uint64_t tuple_count(const ModelParams& p) {
    if (p.model == Model::C) return checked_pow(p.N, p.r, max_tuple_count);
    return binomial(p.N, p.r);
}

} // namespace detail

// Derives every model parameter.  With no override the degree is the one the
// construction prescribes; an override replaces it (reduced-degree mode) and
// is flagged.  Throws InfeasibleSize when the sizes exceed the desk-scale guards.
inline ModelParams make_params(Model model, std::size_t r, std::vector<std::size_t> inputs, std::uint64_t q,
                               std::size_t h, std::optional<std::size_t> degree_override = std::nullopt) {
    if (r < 2) fail(ErrorCode::BadInputs, "r must be >= 2");
    if (h < 1) fail(ErrorCode::BadInputs, "h must be >= 1");
    // Validates q as a prime power within the order guard.
    (void)Field::of_order(q);

    ModelParams p;
    p.model = model;
    p.r = r;
    p.inputs = inputs;
    p.q = q;
    p.h = h;
    switch (model) {
        case Model::A: {
            if (inputs.size() != r - 1) fail(ErrorCode::BadInputs, "model A needs r-1 part sizes");
            p.b = 1;
            for (auto si : inputs) {
                if (si == 0) fail(ErrorCode::BadInputs, "part sizes must be >= 1");
                p.b *= si;
                p.t_sum += si;
            }
            p.s = p.b * (p.t_sum - 1) + 2;
            p.d_paper = p.b * p.s;
            p.block_dim = p.b;
            break;
        }
        case Model::B: {
            if (inputs.size() != 1 || inputs[0] == 0) fail(ErrorCode::BadInputs, "model B needs t >= 1");
            const std::size_t t = inputs[0];
            p.m = (r - 1) * t * t - t + 2;
            p.d_paper = p.m * t;
            p.block_dim = t;
            break;
        }
        case Model::C: {
            if (inputs.size() != 1 || inputs[0] == 0) fail(ErrorCode::BadInputs, "model C needs l >= 1");
            p.ell = inputs[0];
            if (p.ell * (r - 1) < 2) fail(ErrorCode::BadInputs, "model C needs l(r-1) >= 2");
            p.d_paper = r * p.ell * p.ell;
            p.npolys = p.ell * (r - 1) - 1;
            p.block_dim = p.ell;
            break;
        }
    }
    p.degree_overridden = degree_override.has_value();
    p.d_used = degree_override.value_or(p.d_paper);

    const std::string hint = degree_override ? "" : " (try a degree override)";
    p.N = detail::checked_pow(q, p.block_dim, max_vector_count);
    if (p.N > max_vector_count) fail(ErrorCode::InfeasibleSize, "q^dim exceeds 2^24");
    p.total_vertices = model == Model::C ? r * p.N : p.N;
    if (p.total_vertices > max_vector_count) fail(ErrorCode::InfeasibleSize, "vertex count exceeds 2^24");
    const std::uint64_t basis = binomial(p.block_dim + p.d_used, p.block_dim);
    if (basis > max_basis_size) fail(ErrorCode::InfeasibleSize, "monomial basis exceeds 2^22" + hint);
    if (binomial(basis + r - 1, r) > max_orbit_count) {
        fail(ErrorCode::InfeasibleSize, "orbit count exceeds 2^24" + hint);
    }
    const std::uint64_t classes = std::min<std::uint64_t>(basis, p.N);
    if (detail::checked_pow(classes, r, max_folded_tensor) > max_folded_tensor) {
        fail(ErrorCode::InfeasibleSize, "folded coefficient tensor exceeds 2^26" + hint);
    }
    if (detail::tuple_count(p) > max_tuple_count) fail(ErrorCode::InfeasibleSize, "too many candidate r-tuples");
    return p;
}

// Analytic per-tuple edge probability of one layer: 1/q for A/B, q^{1-l(r-1)} for C.
inline double edge_probability(const ModelParams& p) {
    double prob = 1.0;
    for (std::size_t i = 0; i < p.npolys; ++i) prob /= static_cast<double>(p.q);
    return prob;
}

// Candidate r-sets per layer: C(N, r) for A/B, N^r transversals for C.
inline double candidate_tuples(const ModelParams& p) {
    if (p.model == Model::C) {
        double out = 1.0;
        for (std::size_t i = 0; i < p.r; ++i) out *= static_cast<double>(p.N);
        return out;
    }
    return static_cast<double>(binomial(p.N, p.r));
}

struct LayerBundle {
    std::shared_ptr<const OrbitBasis> basis;
    std::vector<std::vector<SymmetricPolynomial>> polynomials;  // [layer][poly]
    std::vector<std::vector<std::uint64_t>> stream_ids;         // [layer][poly]
    std::vector<SimpleHypergraph> layers;
};

namespace detail {

// Calls visit(tuple) for every tuple on which all cached polynomials vanish.
// Positions range over [0, n); with `increasing` the tuple is strictly
// increasing (r-subsets), otherwise unrestricted.
template <class Visit>
void for_each_vanishing_tuple(const ContractionCache& cache, std::size_t n, bool increasing, Visit&& visit) {
    const std::size_t r = cache.r();
    const std::size_t polys = cache.polynomial_count();
    std::vector<std::vector<Contraction>> stack(polys, std::vector<Contraction>(r));
    for (std::size_t f = 0; f < polys; ++f) stack[f][0] = cache.root(f);
    std::vector<std::size_t> tuple(r);

    auto rec = [&](auto&& self, std::size_t level, std::size_t lo) -> void {
        if (level + 1 == r) {
            for (std::size_t v = lo; v < n; ++v) {
                bool vanish = true;
                for (std::size_t f = 0; f < polys && vanish; ++f) vanish = cache.finish(stack[f][level], v).value == 0;
                if (vanish) {
                    tuple[level] = v;
                    visit(static_cast<const std::vector<std::size_t>&>(tuple));
                }
            }
            return;
        }
        for (std::size_t v = lo; v < n; ++v) {
            tuple[level] = v;
            for (std::size_t f = 0; f < polys; ++f) {
                stack[f][level + 1].order = r - level - 1;
                cache.contract_into(stack[f][level], v, stack[f][level + 1].data);
            }
            self(self, level + 1, increasing ? v + 1 : 0);
        }
    };
    rec(rec, 0, 0);
}

inline void check_field(const ModelParams& p, const Field& field) {
    if (field.q() != p.q) fail(ErrorCode::FieldMismatch, "field order differs from params.q");
}

} // namespace detail

// The layer defined by already-sampled polynomials.  Models A/B use every
// r-subset of GF(q)^dim; model C uses transversals of r part-major copies.
inline SimpleHypergraph layer_from_polynomials(const ModelParams& p, const VectorTable& vertices,
                                               std::span<const SymmetricPolynomial> polys) {
    const ContractionCache cache(polys, vertices);
    const std::size_t n = vertices.size();
    if (p.model == Model::C) {
        SimpleHypergraph g(p.r * n, p.r, 1, p.r);
        detail::for_each_vanishing_tuple(cache, n, false, [&](const std::vector<std::size_t>& tuple) {
            VertexSet e(p.r);
            for (std::size_t i = 0; i < p.r; ++i) e[i] = static_cast<VertexId>(i * n + tuple[i]);
            g.add_edge(0, std::move(e));
        });
        return g;
    }
    SimpleHypergraph g(n, p.r, 1, 0);
    detail::for_each_vanishing_tuple(cache, n, true, [&](const std::vector<std::size_t>& tuple) {
        g.add_edge(0, VertexSet(tuple.begin(), tuple.end()));
    });
    return g;
}

template <CoefficientStream Stream>
SimpleHypergraph build_layer(const ModelParams& p, const Field& field, Stream& stream) {
    detail::check_field(p, field);
    auto basis = std::make_shared<const OrbitBasis>(p.r, p.block_dim, p.d_used);
    const VectorTable vertices(field, p.block_dim);
    std::vector<SymmetricPolynomial> polys;
    for (std::size_t i = 0; i < p.npolys; ++i) polys.push_back(sample_symmetric(field, basis, stream));
    return layer_from_polynomials(p, vertices, polys);
}

template <CoefficientStream Stream>
SimpleHypergraph build_layer_a(const ModelParams& p, const Field& field, Stream& stream) {
    if (p.model != Model::A) fail(ErrorCode::BadInputs, "params are not model A");
    return build_layer(p, field, stream);
}

template <CoefficientStream Stream>
SimpleHypergraph build_layer_b(const ModelParams& p, const Field& field, Stream& stream) {
    if (p.model != Model::B) fail(ErrorCode::BadInputs, "params are not model B");
    return build_layer(p, field, stream);
}

template <CoefficientStream Stream>
SimpleHypergraph build_layer_c(const ModelParams& p, const Field& field, Stream& stream) {
    if (p.model != Model::C) fail(ErrorCode::BadInputs, "params are not model C");
    return build_layer(p, field, stream);
}

// Stream for polynomial `poly` of layer `layer`.
inline std::uint64_t layer_stream_id(const ModelParams& p, std::uint64_t master_seed, std::size_t layer,
                                     std::size_t poly) {
    return derive_stream_id(master_seed, {static_cast<std::uint64_t>(model_tag(p.model)), layer, poly});
}

struct MultiBuild {
    MultiHypergraph graph;
    LayerBundle bundle;
};

// h independent layers (each from its own derived streams) and their union.
inline MultiBuild build_multi(const ModelParams& p, const Field& field, std::uint64_t master_seed,
                              std::size_t threads = 1) {
    detail::check_field(p, field);
    LayerBundle bundle;
    bundle.basis = std::make_shared<const OrbitBasis>(p.r, p.block_dim, p.d_used);
    const VectorTable vertices(field, p.block_dim);
    bundle.polynomials.resize(p.h);
    bundle.stream_ids.resize(p.h);
    std::vector<std::optional<SimpleHypergraph>> built(p.h);
    parallel_for(p.h, threads, [&](std::size_t layer) {
        std::vector<SymmetricPolynomial> polys;
        std::vector<std::uint64_t> ids;
        for (std::size_t i = 0; i < p.npolys; ++i) {
            const std::uint64_t id = layer_stream_id(p, master_seed, layer, i);
            RngStream stream(id);
            polys.push_back(sample_symmetric(field, bundle.basis, stream));
            ids.push_back(id);
        }
        built[layer] = layer_from_polynomials(p, vertices, polys);
        bundle.polynomials[layer] = std::move(polys);
        bundle.stream_ids[layer] = std::move(ids);
    });
    for (auto& g : built) bundle.layers.push_back(std::move(*g));
    MultiHypergraph graph = union_of(bundle.layers);
    return {std::move(graph), std::move(bundle)};
}

} // namespace hyperalg

#endif // HYPERALG_CONSTRUCT_HPP
