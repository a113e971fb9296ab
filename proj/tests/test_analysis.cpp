#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "acceptance.hpp"
#include "hyperalg/analysis.hpp"
#include "oracle.hpp"

using namespace hyperalg;
using acceptance::random_multigraph;

namespace {

SimpleHypergraph single(std::size_t n, std::size_t r, const std::vector<VertexSet>& edges) {
    SimpleHypergraph g(n, r);
    for (const auto& e : edges) g.add_edge(0, e);
    return g;
}

SimpleHypergraph complete(std::size_t n, std::size_t r) {
    SimpleHypergraph g(n, r);
    VertexSet e(r);
    std::function<void(std::size_t, VertexId)> rec = [&](std::size_t k, VertexId lo) {
        if (k == r) {
            g.add_edge(0, e);
            return;
        }
        for (VertexId v = lo; v < n; ++v) {
            e[k] = v;
            rec(k + 1, v + 1);
        }
    };
    rec(0, 0);
    return g;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::BadInputs;
}

// A params object with the given shape; only r and inputs matter to the detectors.
ModelParams shape(Model m, std::size_t r, std::vector<std::size_t> inputs) {
    ModelParams p;
    p.model = m;
    p.r = r;
    p.inputs = std::move(inputs);
    if (m == Model::C) p.ell = p.inputs[0];
    return p;
}

bool canonical(Model m, const ModelParams& p, const std::vector<VertexId>& seq) {
    std::vector<VertexSet> parts;
    if (m == Model::A) {
        std::size_t pos = 0;
        for (auto s : p.inputs) {
            parts.emplace_back(seq.begin() + pos, seq.begin() + pos + s);
            pos += s;
        }
        for (const auto& part : parts) {
            if (!std::is_sorted(part.begin(), part.end())) return false;
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                if (parts[i].size() == parts[j].size() && parts[i].front() > parts[j].front()) return false;
            }
        }
        return true;
    }
    const std::size_t w = p.r - 1;
    for (std::size_t j = 0; j < seq.size(); j += w) parts.emplace_back(seq.begin() + j, seq.begin() + j + w);
    for (const auto& part : parts) {
        if (!std::is_sorted(part.begin(), part.end())) return false;
    }
    return std::is_sorted(parts.begin(), parts.end()) && std::adjacent_find(parts.begin(), parts.end()) == parts.end();
}

// Every canonical sequence of distinct vertices whose type-enumerated
// completion count reaches the threshold.
std::set<std::pair<std::vector<VertexId>, std::uint64_t>> brute_bad(const MultiHypergraph& g, Model m,
                                                                   const ModelParams& p, std::uint64_t threshold) {
    std::size_t len = 0;
    if (m == Model::A) {
        for (auto s : p.inputs) len += s;
    } else {
        len = p.inputs[0] * (p.r - 1);
    }
    std::set<std::pair<std::vector<VertexId>, std::uint64_t>> out;
    std::vector<VertexId> seq;
    std::function<void()> rec = [&] {
        if (seq.size() == len) {
            if (!canonical(m, p, seq)) return;
            const auto c = oracle::type_enumerated_completions(g, required_sets(m, p, seq), seq);
            if (c >= threshold) out.insert({seq, c});
            return;
        }
        for (VertexId v = 0; v < g.n(); ++v) {
            if (std::find(seq.begin(), seq.end(), v) != seq.end()) continue;
            seq.push_back(v);
            rec();
            seq.pop_back();
        }
    };
    rec();
    return out;
}

} // namespace

TEST(CompleteCounts, Examples) {
    const auto k4 = complete(4, 3);
    EXPECT_EQ(k4.edge_count(), 4u);
    EXPECT_EQ(count_complete_rpartite(k4, {1, 1, 1}), 4u);
    EXPECT_EQ(count_complete_rpartite(k4, {1, 1, 2}), 6u);
    EXPECT_EQ(count_complete_bipartite_r(k4, 2, 1), 6u);
    EXPECT_EQ(count_complete_rpartite(SimpleHypergraph(6, 3), {1, 2, 2}), 0u);
    EXPECT_EQ(count_complete_bipartite_r(single(5, 3, {{1, 2, 3}, {1, 2, 4}}), 2, 1), 1u);
}

TEST(CompleteCounts, Errors) {
    const auto k4 = complete(4, 3);
    EXPECT_EQ(code_of([&] { count_complete_rpartite(k4, {1, 0, 1}); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([&] { count_complete_rpartite(k4, {1, 1}); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([&] { count_complete_rpartite(k4, {5, 5, 5}); }), ErrorCode::SearchTooLarge);
    EXPECT_EQ(code_of([&] { count_complete_bipartite_r(k4, 0, 1); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([&] { count_complete_bipartite_r(k4, 1, 0); }), ErrorCode::BadInputs);
}

TEST(CompleteCounts, MatchBruteForce) {
    RngStream s(2024);
    for (int i = 0; i < 60; ++i) {
        const std::size_t r = 2 + s.uniform(2);
        const std::size_t n = 5 + s.uniform(4);
        const auto g = random_multigraph(s, n, r, 1, 4 + s.uniform(r == 2 ? 16 : 30));
        std::vector<std::size_t> sizes(r);
        for (auto& x : sizes) x = 1 + s.uniform(2);
        EXPECT_EQ(count_complete_rpartite(g, sizes), oracle::brute_complete_rpartite(g, sizes));
        const std::size_t a = 1 + s.uniform(3), b = 1 + s.uniform(2);
        EXPECT_EQ(count_complete_bipartite_r(g, a, b), oracle::brute_complete_bipartite_r(g, a, b));
    }
}

TEST(BadSequences, Edgeless) {
    const SimpleHypergraph g(9, 2);
    const auto p = shape(Model::A, 2, {2});
    EXPECT_TRUE(bad_sequences(g, Model::A, p, 1).empty());
    EXPECT_TRUE(bad_sequences(g, Model::B, shape(Model::B, 2, {2}), 1).empty());
}

TEST(BadSequences, CompleteGraph) {
    const std::size_t n = 9;
    const auto g = complete(n, 2);
    const auto p = shape(Model::A, 2, {2});
    const auto bad = bad_sequences(g, Model::A, p, n - 2);
    EXPECT_EQ(bad.size(), n * (n - 1) / 2);
    for (const auto& b : bad) EXPECT_EQ(b.completions, n - 2);
    EXPECT_TRUE(bad_sequences(g, Model::A, p, n - 1).empty());
}

TEST(BadSequences, Errors) {
    const auto g = complete(5, 2);
    EXPECT_EQ(code_of([&] { bad_sequences(g, Model::A, shape(Model::A, 2, {1}), 0); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([&] { bad_sequences(g, Model::C, shape(Model::C, 2, {2}), 1); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([&] { bad_sequences(g, Model::A, shape(Model::A, 3, {1, 1}), 1); }), ErrorCode::ShapeMismatch);
}

// The detector lists exactly the canonical sequences the brute-force search
// finds, with completion counts equal to the sum over layer types.
TEST(BadSequences, MatchBruteForceOnRandomMultigraphs) {
    RngStream s(31337);
    const std::vector<std::pair<Model, ModelParams>> shapes = {
        {Model::A, shape(Model::A, 2, {2})},   {Model::A, shape(Model::A, 3, {1, 1})},
        {Model::A, shape(Model::A, 3, {1, 2})}, {Model::A, shape(Model::A, 3, {2, 1})},
        {Model::B, shape(Model::B, 2, {2})},   {Model::B, shape(Model::B, 3, {2})},
    };
    std::size_t found = 0;
    for (const auto& [m, p] : shapes) {
        for (int i = 0; i < 12; ++i) {
            const std::size_t n = 6 + s.uniform(3);
            const std::size_t layers = 1 + s.uniform(2);
            const auto g = random_multigraph(s, n, p.r, layers, 8 + s.uniform(p.r == 2 ? 20 : 40));
            const std::uint64_t threshold = 1 + s.uniform(3);
            std::set<std::pair<std::vector<VertexId>, std::uint64_t>> got;
            for (const auto& b : bad_sequences(g, m, p, threshold)) {
                EXPECT_EQ(b.completions, sequence_completions(g, m, p, b.vertices));
                got.insert({b.vertices, b.completions});
            }
            EXPECT_EQ(got, brute_bad(g, m, p, threshold));
            found += got.size();
        }
    }
    EXPECT_GT(found, 100u);
}

TEST(BadSequences, SortedByCompletions) {
    RngStream s(5);
    const auto g = random_multigraph(s, 10, 2, 2, 40);
    const auto bad = bad_sequences(g, Model::A, shape(Model::A, 2, {2}), 1);
    ASSERT_FALSE(bad.empty());
    for (std::size_t i = 1; i < bad.size(); ++i) EXPECT_GE(bad[i - 1].completions, bad[i].completions);
}

TEST(Berge, Examples) {
    const auto two = single(5, 3, {{0, 1, 2}, {1, 3, 4}});
    EXPECT_EQ(berge_paths(two, 0, 3, 2), 1u);
    EXPECT_EQ(berge_paths(two, 0, 3, 1), 0u);
    const auto one = single(3, 3, {{0, 1, 2}});
    EXPECT_EQ(berge_paths(one, 0, 1, 1), 1u);
    EXPECT_EQ(berge_paths(one, 0, 1, 2), 1u);
    MultiHypergraph par(3, 3, 2);
    par.add_edge(0, {0, 1, 2});
    par.add_edge(1, {0, 1, 2});
    EXPECT_EQ(berge_paths(par, 0, 1, 1), 2u);
    EXPECT_EQ(code_of([&] { berge_paths(one, 1, 1, 2); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([&] { berge_paths(one, 0, 1, 0); }), ErrorCode::BadInputs);
}

TEST(Berge, MatchNaiveEnumerator) {
    RngStream s(808);
    for (int i = 0; i < 40; ++i) {
        const std::size_t r = 2 + s.uniform(2);
        const auto g = random_multigraph(s, 6 + s.uniform(4), r, 1 + s.uniform(2), 6 + s.uniform(12));
        const std::size_t len = 1 + s.uniform(3);
        const Incidence inc(g);
        for (VertexId x = 0; x < g.n(); ++x) {
            const auto counts = berge_path_counts(inc, x, len);
            for (VertexId y = 0; y < g.n(); ++y) {
                if (x == y) continue;
                ASSERT_EQ(counts[y], oracle::naive_berge_paths(g, x, y, len).size());
            }
        }
    }
}

TEST(BadPairs, Examples) {
    EXPECT_TRUE(bad_pairs(SimpleHypergraph(5, 3), 2, 1).empty());
    const auto two = single(5, 3, {{0, 1, 2}, {1, 3, 4}});
    const auto pairs = bad_pairs(two, 2, 1);
    EXPECT_NE(std::find(pairs.begin(), pairs.end(), BadPair{0, 3, 1}), pairs.end());
    for (const auto& bp : pairs) {
        EXPECT_LT(bp.x, bp.y);
        EXPECT_EQ(bp.paths, berge_paths(two, bp.x, bp.y, 2));
    }
    EXPECT_TRUE(bad_pairs(two, 2, 1000000000).empty());
}

TEST(Theta, Examples) {
    const auto path = single(7, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}});
    EXPECT_FALSE(contains_berge_theta(path, 2, 2).found);
    EXPECT_FALSE(contains_berge_theta(SimpleHypergraph(8, 3), 2, 2).found);
    // x=0 a=1 y=2 b=3, private vertices 4..7.
    const auto theta = single(8, 3, {{0, 1, 4}, {1, 2, 5}, {0, 3, 6}, {3, 2, 7}});
    const auto v = contains_berge_theta(theta, 2, 2);
    ASSERT_TRUE(v.found);
    ASSERT_EQ(v.witness.size(), 2u);
    std::set<Edge> used;
    for (const auto& path : v.witness) {
        ASSERT_EQ(path.cores.size(), 3u);
        EXPECT_EQ(path.cores.front(), v.witness[0].cores.front());
        EXPECT_EQ(path.cores.back(), v.witness[0].cores.back());
        for (std::size_t i = 0; i < path.edges.size(); ++i) {
            const auto& e = path.edges[i].vertices;
            EXPECT_TRUE(std::binary_search(e.begin(), e.end(), path.cores[i]));
            EXPECT_TRUE(std::binary_search(e.begin(), e.end(), path.cores[i + 1]));
            EXPECT_TRUE(used.insert(path.edges[i]).second);
        }
    }
    EXPECT_NE(v.witness[0].cores[1], v.witness[1].cores[1]);
    EXPECT_FALSE(contains_berge_theta(theta, 2, 3).found);
}

TEST(Theta, MatchNaiveSearch) {
    RngStream s(4242);
    for (int i = 0; i < 60; ++i) {
        const std::size_t r = 2 + s.uniform(2);
        const auto g = random_multigraph(s, 6 + s.uniform(3), r, 1, 4 + s.uniform(r == 2 ? 10 : 8));
        const std::size_t len = 1 + s.uniform(3);
        const std::size_t t = 1 + s.uniform(3);
        EXPECT_EQ(contains_berge_theta(g, len, t).found, oracle::naive_theta(g, len, t))
            << serialize(g) << " len=" << len << " t=" << t;
    }
}

TEST(Cleanup, Examples) {
    const SimpleHypergraph empty(9, 2);
    const auto p = shape(Model::A, 2, {2});
    const auto c = cleanup(empty, Model::A, p, 3);
    EXPECT_EQ(c.graph, empty);
    EXPECT_EQ(c.certificate.structures_found, 0u);
    EXPECT_EQ(c.certificate.status, CertificateStatus::Certified);

    MultiHypergraph twice(9, 2, 2);
    twice.add_edge(0, {0, 1});
    twice.add_edge(1, {0, 1});
    const auto d = cleanup(twice, Model::A, p, 3);
    EXPECT_EQ(d.graph.edge_count(), 0u);
    EXPECT_EQ(d.certificate.multi_edges_dropped, 1u);
    EXPECT_EQ(d.certificate.edges_before, 2u);
}

// Output is free of structures at the threshold, keeps only the survivors'
// single-layer edges, and deletes exactly the smallest vertex of each structure.
TEST(Cleanup, SoundOnRandomMultigraphs) {
    RngStream s(99);
    const std::vector<std::pair<Model, ModelParams>> shapes = {
        {Model::A, shape(Model::A, 2, {2})},
        {Model::A, shape(Model::A, 3, {1, 1})},
        {Model::B, shape(Model::B, 3, {2})},
        {Model::C, shape(Model::C, 3, {2})},
        {Model::C, shape(Model::C, 2, {3})},
    };
    std::size_t removed = 0;
    for (const auto& [m, p] : shapes) {
        for (int i = 0; i < 10; ++i) {
            const auto g = random_multigraph(s, 10 + s.uniform(4), p.r, 1 + s.uniform(2), 10 + s.uniform(30));
            const std::uint64_t threshold = 2 + s.uniform(3);
            const auto c = cleanup(g, m, p, threshold);
            EXPECT_NE(c.certificate.status, CertificateStatus::Violated);
            if (c.certificate.redetected) {
                EXPECT_EQ(*c.certificate.redetected, 0u);
            }
            if (m == Model::C) {
                EXPECT_TRUE(bad_pairs(c.graph, p.ell, threshold).empty());
            } else {
                EXPECT_TRUE(bad_sequences(c.graph, m, p, threshold).empty());
            }
            EXPECT_TRUE(c.graph.is_simple());
            EXPECT_EQ(c.graph.n() + c.certificate.removed_vertices.size(), g.n());
            for (const auto& e : c.graph.edges()) {
                VertexSet orig;
                for (VertexId v : e.vertices) orig.push_back(c.original_id[v]);
                EXPECT_EQ(g.multiplicity(orig), 1u);
            }
            std::set<VertexId> expect;
            if (m == Model::C) {
                for (const auto& bp : bad_pairs(g, p.ell, threshold)) expect.insert(bp.x);
            } else {
                for (const auto& b : bad_sequences(g, m, p, threshold)) expect.insert(b.first_vertex());
            }
            EXPECT_EQ(std::vector<VertexId>(expect.begin(), expect.end()), c.certificate.removed_vertices);
            removed += expect.size();
        }
    }
    EXPECT_GT(removed, 20u);
}

// Raising the threshold never removes more vertices.
TEST(Cleanup, MonotoneInThreshold) {
    RngStream s(7);
    const auto p = shape(Model::A, 2, {2});
    for (int i = 0; i < 10; ++i) {
        const auto g = random_multigraph(s, 12, 2, 2, 40);
        std::size_t prev = g.n();
        for (std::uint64_t th = 1; th <= 6; ++th) {
            const auto c = cleanup(g, Model::A, p, th, false);
            EXPECT_LE(c.certificate.removed_vertices.size(), prev);
            prev = c.certificate.removed_vertices.size();
        }
    }
}

TEST(Cleanup, StatusText) {
    EXPECT_EQ(to_string(CertificateStatus::Certified), "certified");
    EXPECT_EQ(to_string(CertificateStatus::NotCertified), "counted, not certified");
    EXPECT_EQ(to_string(CertificateStatus::Violated), "violated");
}
