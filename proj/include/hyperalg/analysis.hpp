#ifndef HYPERALG_ANALYSIS_HPP
#define HYPERALG_ANALYSIS_HPP

// Forbidden-structure detectors and the deletion step.
//
// Completion counts work on the multi-hypergraph: a completion vertex u of a
// fixed sequence contributes the product, over the pattern's required
// (r-1)-sets X, of multiplicity(X + u).  That product is the number of layer
// assignments ("types") under which u completes the pattern, so the count is
// the type-summed total.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperalg/construct.hpp"
#include "hyperalg/error.hpp"
#include "hyperalg/hypergraph.hpp"

namespace hyperalg {

inline constexpr std::uint64_t max_search_nodes = 1ull << 36;

// (r-1)-set -> [(u, multiplicity of set + u)], u ascending.
using WeightedLink = std::vector<std::pair<VertexId, std::uint32_t>>;
using LinkMap = std::map<VertexSet, WeightedLink>;

inline LinkMap build_links(const MultiHypergraph& g) {
    std::map<VertexSet, std::map<VertexId, std::uint32_t>> tmp;
    for (const auto& [set, mult] : g.multiplicities()) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            VertexSet rest;
            rest.reserve(set.size() - 1);
            for (std::size_t j = 0; j < set.size(); ++j) {
                if (j != i) rest.push_back(set[j]);
            }
            tmp[rest][set[i]] = mult;
        }
    }
    LinkMap out;
    for (auto& [x, m] : tmp) out.emplace(x, WeightedLink(m.begin(), m.end()));
    return out;
}

namespace detail {

inline const WeightedLink& link_of(const LinkMap& links, const VertexSet& x) {
    static const WeightedLink empty;
    auto it = links.find(x);
    return it == links.end() ? empty : it->second;
}

// Pointwise product on the common support of two weighted links.
inline std::vector<std::pair<VertexId, std::uint64_t>> multiply(
    const std::vector<std::pair<VertexId, std::uint64_t>>& acc, const WeightedLink& link) {
    std::vector<std::pair<VertexId, std::uint64_t>> out;
    auto a = acc.begin();
    auto b = link.begin();
    while (a != acc.end() && b != link.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            out.emplace_back(a->first, a->second * b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

inline std::vector<std::pair<VertexId, std::uint64_t>> as_support(const WeightedLink& link) {
    return {link.begin(), link.end()};
}

inline std::uint64_t nominal_product(const std::vector<std::uint64_t>& factors) {
    std::uint64_t out = 1;
    for (auto f : factors) {
        if (f != 0 && out > max_search_nodes / f) return max_search_nodes + 1;
        out *= f;
    }
    return out;
}

inline VertexSet sorted_set(VertexSet v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Transversals of parts[0..k) x {v}.
inline std::vector<VertexSet> transversals_with(const std::vector<std::vector<VertexId>>& parts, std::size_t k,
                                                VertexId v) {
    std::vector<VertexSet> out{{v}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<VertexSet> next;
        for (const auto& partial : out) {
            for (VertexId w : parts[i]) {
                auto x = partial;
                x.push_back(w);
                next.push_back(std::move(x));
            }
        }
        out = std::move(next);
    }
    for (auto& x : out) std::sort(x.begin(), x.end());
    return out;
}

// Enumerates choices of disjoint parts with the given sizes (parts of equal
// size ordered by their smallest vertex), maintaining the weighted support:
// u -> product over complete transversals X of multiplicity(X + u).  Calls
// leaf(parts, support) once every part is full.  Transversals exist only once
// the last part receives vertices, so pruning starts there.
template <class Leaf>
void enumerate_parts(const LinkMap& links, std::size_t n, const std::vector<std::size_t>& sizes, Leaf&& leaf) {
    const std::size_t k = sizes.size();
    std::vector<std::vector<VertexId>> parts(k);
    std::vector<bool> used(n, false);
    using Support = std::vector<std::pair<VertexId, std::uint64_t>>;

    auto rec = [&](auto&& self, std::size_t part, VertexId lo, const Support* support) -> void {
        if (parts[part].size() == sizes[part]) {
            if (part + 1 == k) {
                leaf(static_cast<const std::vector<std::vector<VertexId>>&>(parts), *support);
                return;
            }
            VertexId next_lo = 0;
            for (std::size_t i = 0; i <= part; ++i) {
                if (sizes[i] == sizes[part + 1]) next_lo = std::max<VertexId>(next_lo, parts[i].front() + 1);
            }
            self(self, part + 1, next_lo, support);
            return;
        }
        for (VertexId v = lo; v < n; ++v) {
            if (used[v]) continue;
            // Equal-size ordering: the first vertex of a part is its minimum.
            if (parts[part].empty()) {
                bool ok = true;
                for (std::size_t i = 0; i < part; ++i) {
                    if (sizes[i] == sizes[part] && parts[i].front() >= v) ok = false;
                }
                if (!ok) continue;
            }
            Support next;
            const Support* next_ptr = support;
            if (part + 1 == k) {
                bool first = support == nullptr;
                for (const auto& x : transversals_with(parts, part, v)) {
                    const auto& link = link_of(links, x);
                    if (first) {
                        next = as_support(link);
                        first = false;
                    } else {
                        next = multiply(next_ptr == &next ? next : *next_ptr, link);
                    }
                    next_ptr = &next;
                    if (next.empty()) break;
                }
                if (next.empty()) continue;
            }
            used[v] = true;
            parts[part].push_back(v);
            self(self, part, v + 1, next_ptr);
            parts[part].pop_back();
            used[v] = false;
        }
    };
    rec(rec, 0, 0, nullptr);
}

} // namespace detail

// Copies of K^{(r)}_{s_1..s_r}: unordered choices of disjoint parts of the
// given sizes, parts of equal size interchangeable, with every transversal an
// edge.  Edges of any multiplicity count as present.
inline std::uint64_t count_complete_rpartite(const MultiHypergraph& g, std::vector<std::size_t> sizes) {
    if (sizes.size() != g.r()) fail(ErrorCode::BadInputs, "need one part size per uniformity");
    std::size_t total = 0;
    for (auto s : sizes) {
        if (s == 0) fail(ErrorCode::BadInputs, "degenerate pattern: part size 0");
        total += s;
    }
    if (total > 12) fail(ErrorCode::SearchTooLarge, "sum of part sizes exceeds 12");
    std::sort(sizes.begin(), sizes.end());
    const std::size_t last = sizes.back();
    std::vector<std::size_t> head(sizes.begin(), sizes.end() - 1);
    std::vector<std::uint64_t> nominal;
    for (auto s : head) nominal.push_back(binomial(g.n(), s));
    if (detail::nominal_product(nominal) > max_search_nodes) fail(ErrorCode::SearchTooLarge, "part enumeration too large");

    const LinkMap links = build_links(g);
    std::uint64_t count = 0;
    const bool tie = head.back() == last;
    detail::enumerate_parts(links, g.n(), head, [&](const auto& parts, const auto& support) {
        std::vector<bool> in_seq(g.n(), false);
        for (const auto& p : parts) {
            for (VertexId v : p) in_seq[v] = true;
        }
        // With a size tie the last part must start after every tied part's minimum.
        VertexId lo = 0;
        if (tie) {
            for (std::size_t i = 0; i < head.size(); ++i) {
                if (head[i] == last) lo = std::max<VertexId>(lo, parts[i].front() + 1);
            }
        }
        std::uint64_t k = 0;
        for (const auto& [u, w] : support) {
            if (!in_seq[u] && u >= lo) ++k;
        }
        count += binomial(k, last);
    });
    return count;
}

// Copies of K^{(r)}_{s,t}: t pairwise disjoint (r-1)-sets X_i (unordered) and
// an s-set Y disjoint from them with every X_i + y an edge.
inline std::uint64_t count_complete_bipartite_r(const MultiHypergraph& g, std::size_t s, std::size_t t) {
    if (s == 0 || t == 0) fail(ErrorCode::BadInputs, "degenerate pattern: s or t is 0");
    const LinkMap links = build_links(g);
    std::vector<const std::pair<const VertexSet, WeightedLink>*> xs;
    for (const auto& entry : links) {
        if (entry.second.size() >= s) xs.push_back(&entry);
    }
    if (binomial(xs.size(), t) > max_search_nodes) fail(ErrorCode::SearchTooLarge, "too many (r-1)-set collections");
    std::uint64_t count = 0;
    std::vector<bool> used(g.n(), false);
    using Support = std::vector<std::pair<VertexId, std::uint64_t>>;
    auto rec = [&](auto&& self, std::size_t start, std::size_t chosen, const Support& support) -> void {
        if (chosen == t) {
            std::uint64_t k = 0;
            for (const auto& [u, w] : support) {
                if (!used[u]) ++k;
            }
            count += binomial(k, s);
            return;
        }
        for (std::size_t i = start; i < xs.size(); ++i) {
            const auto& [x, link] = *xs[i];
            if (std::any_of(x.begin(), x.end(), [&](VertexId v) { return used[v]; })) continue;
            Support next = chosen == 0 ? detail::as_support(link) : detail::multiply(support, link);
            if (next.size() < s) continue;
            for (VertexId v : x) used[v] = true;
            self(self, i + 1, chosen + 1, next);
            for (VertexId v : x) used[v] = false;
        }
    };
    rec(rec, 0, 0, {});
    return count;
}

struct BadSequence {
    Model model = Model::A;
    std::vector<VertexId> vertices;  // A: parts concatenated; B: X_1..X_t concatenated
    std::uint64_t completions = 0;

    VertexId first_vertex() const { return *std::min_element(vertices.begin(), vertices.end()); }

    friend bool operator==(const BadSequence&, const BadSequence&) = default;
};

// Required (r-1)-sets of a sequence: all transversals of the parts (model A)
// or the t consecutive blocks of r-1 vertices (model B).
inline std::vector<VertexSet> required_sets(Model model, const ModelParams& p, const std::vector<VertexId>& seq) {
    std::vector<VertexSet> out;
    if (model == Model::A) {
        std::vector<std::vector<VertexId>> parts;
        std::size_t pos = 0;
        for (auto si : p.inputs) {
            parts.emplace_back(seq.begin() + pos, seq.begin() + pos + si);
            pos += si;
        }
        out = {{}};
        for (const auto& part : parts) {
            std::vector<VertexSet> next;
            for (const auto& x : out) {
                for (VertexId v : part) {
                    auto y = x;
                    y.push_back(v);
                    next.push_back(std::move(y));
                }
            }
            out = std::move(next);
        }
    } else {
        const std::size_t w = p.r - 1;
        for (std::size_t j = 0; j + w <= seq.size(); j += w) out.emplace_back(seq.begin() + j, seq.begin() + j + w);
    }
    for (auto& x : out) std::sort(x.begin(), x.end());
    return out;
}

// Sum over u outside the sequence of prod_X multiplicity(X + u).
inline std::uint64_t sequence_completions(const MultiHypergraph& g, Model model, const ModelParams& p,
                                          const std::vector<VertexId>& seq) {
    const auto sets = required_sets(model, p, seq);
    std::uint64_t total = 0;
    for (VertexId u = 0; u < g.n(); ++u) {
        if (std::find(seq.begin(), seq.end(), u) != seq.end()) continue;
        std::uint64_t prod = 1;
        for (const auto& x : sets) {
            auto e = x;
            e.push_back(u);
            prod *= g.multiplicity(std::move(e));
            if (prod == 0) break;
        }
        total += prod;
    }
    return total;
}

namespace detail {

inline void sort_bad(std::vector<BadSequence>& out) {
    std::sort(out.begin(), out.end(), [](const BadSequence& a, const BadSequence& b) {
        if (a.completions != b.completions) return a.completions > b.completions;
        return a.vertices < b.vertices;
    });
}

} // namespace detail

// Every sequence with at least `threshold` completions, listed once per
// pattern copy: vertices within a part (A) are increasing and equal-size parts
// are ordered by their minimum; blocks (B) are increasing sets in increasing
// lexicographic order.  Sorted by completions, descending.
inline std::vector<BadSequence> bad_sequences(const MultiHypergraph& g, Model model, const ModelParams& p,
                                              std::uint64_t threshold) {
    if (threshold == 0) fail(ErrorCode::BadInputs, "threshold must be >= 1");
    if (model == Model::C) fail(ErrorCode::BadInputs, "model C uses bad_pairs");
    if (g.r() != p.r) fail(ErrorCode::ShapeMismatch, "graph uniformity differs from params.r");
    const LinkMap links = build_links(g);
    std::vector<BadSequence> out;

    if (model == Model::A) {
        std::vector<std::uint64_t> nominal;
        for (auto si : p.inputs) nominal.push_back(binomial(g.n(), si));
        if (detail::nominal_product(nominal) > max_search_nodes) fail(ErrorCode::SearchTooLarge, "sequence space too large");
        detail::enumerate_parts(links, g.n(), p.inputs, [&](const auto& parts, const auto& support) {
            std::vector<VertexId> seq;
            for (const auto& part : parts) seq.insert(seq.end(), part.begin(), part.end());
            std::uint64_t total = 0;
            for (const auto& [u, w] : support) {
                if (std::find(seq.begin(), seq.end(), u) == seq.end()) total += w;
            }
            if (total >= threshold) out.push_back({model, std::move(seq), total});
        });
    } else {
        const std::size_t t = p.inputs.at(0);
        std::vector<const std::pair<const VertexSet, WeightedLink>*> xs;
        for (const auto& entry : links) xs.push_back(&entry);
        if (binomial(xs.size(), t) > max_search_nodes) fail(ErrorCode::SearchTooLarge, "sequence space too large");
        std::vector<bool> used(g.n(), false);
        std::vector<VertexId> seq;
        using Support = std::vector<std::pair<VertexId, std::uint64_t>>;
        auto rec = [&](auto&& self, std::size_t start, std::size_t chosen, const Support& support) -> void {
            if (chosen == t) {
                std::uint64_t total = 0;
                for (const auto& [u, w] : support) {
                    if (!used[u]) total += w;
                }
                if (total >= threshold) out.push_back({model, seq, total});
                return;
            }
            for (std::size_t i = start; i < xs.size(); ++i) {
                const auto& [x, link] = *xs[i];
                if (std::any_of(x.begin(), x.end(), [&](VertexId v) { return used[v]; })) continue;
                Support next = chosen == 0 ? detail::as_support(link) : detail::multiply(support, link);
                if (next.empty()) continue;
                for (VertexId v : x) used[v] = true;
                seq.insert(seq.end(), x.begin(), x.end());
                self(self, i + 1, chosen + 1, next);
                seq.resize(seq.size() - x.size());
                for (VertexId v : x) used[v] = false;
            }
        };
        rec(rec, 0, 0, {});
    }
    detail::sort_bad(out);
    return out;
}

// Flat edge list plus vertex -> incident edge indices.  Parallel edges from
// different layers are distinct entries.
struct Incidence {
    std::vector<Edge> edges;
    std::vector<std::vector<std::uint32_t>> incident;

    explicit Incidence(const MultiHypergraph& g) : edges(g.edges().begin(), g.edges().end()), incident(g.n()) {
        for (std::uint32_t i = 0; i < edges.size(); ++i) {
            for (VertexId v : edges[i].vertices) incident[v].push_back(i);
        }
    }
};

// counts[y] = number of Berge paths of length 1..max_len from x to y.  A path
// is a sequence of distinct core vertices joined by distinct edges, each edge
// containing its two consecutive cores.
inline std::vector<std::uint64_t> berge_path_counts(const Incidence& inc, VertexId x, std::size_t max_len) {
    const std::size_t n = inc.incident.size();
    std::vector<std::uint64_t> counts(n, 0);
    std::vector<bool> core(n, false);
    std::vector<bool> used(inc.edges.size(), false);
    core[x] = true;
    auto rec = [&](auto&& self, VertexId at, std::size_t depth) -> void {
        for (std::uint32_t e : inc.incident[at]) {
            if (used[e]) continue;
            for (VertexId w : inc.edges[e].vertices) {
                if (core[w]) continue;
                ++counts[w];
                if (depth + 1 < max_len) {
                    used[e] = true;
                    core[w] = true;
                    self(self, w, depth + 1);
                    core[w] = false;
                    used[e] = false;
                }
            }
        }
    };
    if (max_len > 0) rec(rec, x, 0);
    return counts;
}

inline std::uint64_t berge_paths(const MultiHypergraph& g, VertexId x, VertexId y, std::size_t max_len) {
    if (x == y) fail(ErrorCode::BadInputs, "endpoints must differ");
    if (max_len == 0) fail(ErrorCode::BadInputs, "maximum length must be >= 1");
    if (x >= g.n() || y >= g.n()) fail(ErrorCode::BadInputs, "endpoint out of range");
    return berge_path_counts(Incidence(g), x, max_len)[y];
}

struct BadPair {
    VertexId x = 0;
    VertexId y = 0;
    std::uint64_t paths = 0;

    friend bool operator==(const BadPair&, const BadPair&) = default;
};

inline std::vector<BadPair> bad_pairs(const MultiHypergraph& g, std::size_t max_len, std::uint64_t threshold) {
    if (threshold == 0) fail(ErrorCode::BadInputs, "threshold must be >= 1");
    if (max_len == 0) fail(ErrorCode::BadInputs, "maximum length must be >= 1");
    if (g.n() > (1u << 16)) fail(ErrorCode::SearchTooLarge, "all-pairs scan limited to 2^16 vertices");
    const Incidence inc(g);
    std::vector<BadPair> out;
    for (VertexId x = 0; x < g.n(); ++x) {
        const auto counts = berge_path_counts(inc, x, max_len);
        for (VertexId y = x + 1; y < g.n(); ++y) {
            if (counts[y] >= threshold) out.push_back({x, y, counts[y]});
        }
    }
    std::sort(out.begin(), out.end(), [](const BadPair& a, const BadPair& b) {
        if (a.paths != b.paths) return a.paths > b.paths;
        return std::pair(a.x, a.y) < std::pair(b.x, b.y);
    });
    return out;
}

struct BergePath {
    std::vector<VertexId> cores;  // x, interior..., y
    std::vector<Edge> edges;
};

struct ThetaVerdict {
    bool found = false;
    std::vector<BergePath> witness;
};

inline constexpr std::size_t max_theta_paths_per_pair = 1u << 16;

// Exhaustive search for t Berge paths of length exactly `len` between common
// endpoints, with pairwise disjoint interior cores and all len*t edges distinct.
inline ThetaVerdict contains_berge_theta(const MultiHypergraph& g, std::size_t len, std::size_t t) {
    if (len == 0 || t == 0) fail(ErrorCode::BadInputs, "length and path count must be >= 1");
    if (g.n() > 4096) fail(ErrorCode::SearchTooLarge, "theta search limited to 4096 vertices");
    const Incidence inc(g);
    const std::size_t n = g.n();
    struct RawPath {
        std::vector<VertexId> cores;
        std::vector<std::uint32_t> edges;
    };
    for (VertexId x = 0; x < n; ++x) {
        // All paths of length exactly len from x, grouped by endpoint.
        std::map<VertexId, std::vector<RawPath>> by_end;
        std::vector<bool> core(n, false);
        std::vector<bool> used(inc.edges.size(), false);
        RawPath cur{{x}, {}};
        core[x] = true;
        std::size_t total = 0;
        auto rec = [&](auto&& self, VertexId at) -> void {
            for (std::uint32_t e : inc.incident[at]) {
                if (used[e]) continue;
                for (VertexId w : inc.edges[e].vertices) {
                    if (core[w]) continue;
                    cur.cores.push_back(w);
                    cur.edges.push_back(e);
                    if (cur.edges.size() == len) {
                        if (w > x) {
                            by_end[w].push_back(cur);
                            if (++total > max_theta_paths_per_pair * 64) {
                                fail(ErrorCode::SearchTooLarge, "too many candidate paths");
                            }
                        }
                    } else {
                        used[e] = true;
                        core[w] = true;
                        self(self, w);
                        core[w] = false;
                        used[e] = false;
                    }
                    cur.cores.pop_back();
                    cur.edges.pop_back();
                }
            }
        };
        rec(rec, x);

        for (const auto& [y, paths] : by_end) {
            if (paths.size() < t) continue;
            if (paths.size() > max_theta_paths_per_pair) fail(ErrorCode::SearchTooLarge, "too many paths for one pair");
            std::vector<bool> core_used(n, false);
            std::vector<bool> edge_used(inc.edges.size(), false);
            std::vector<std::size_t> chosen;
            auto pick = [&](auto&& self, std::size_t start) -> bool {
                if (chosen.size() == t) return true;
                for (std::size_t i = start; i + (t - chosen.size()) <= paths.size(); ++i) {
                    const auto& path = paths[i];
                    bool ok = true;
                    for (std::size_t k = 1; k + 1 < path.cores.size() && ok; ++k) ok = !core_used[path.cores[k]];
                    for (std::size_t k = 0; k < path.edges.size() && ok; ++k) ok = !edge_used[path.edges[k]];
                    if (!ok) continue;
                    for (std::size_t k = 1; k + 1 < path.cores.size(); ++k) core_used[path.cores[k]] = true;
                    for (auto e : path.edges) edge_used[e] = true;
                    chosen.push_back(i);
                    if (self(self, i + 1)) return true;
                    chosen.pop_back();
                    for (std::size_t k = 1; k + 1 < path.cores.size(); ++k) core_used[path.cores[k]] = false;
                    for (auto e : path.edges) edge_used[e] = false;
                }
                return false;
            };
            if (pick(pick, 0)) {
                ThetaVerdict verdict{true, {}};
                for (auto i : chosen) {
                    BergePath bp;
                    bp.cores = paths[i].cores;
                    for (auto e : paths[i].edges) bp.edges.push_back(inc.edges[e]);
                    verdict.witness.push_back(std::move(bp));
                }
                return verdict;
            }
        }
    }
    return {};
}

enum class CertificateStatus { Certified, NotCertified, Violated };

inline std::string to_string(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::Certified: return "certified";
        case CertificateStatus::NotCertified: return "counted, not certified";
        case CertificateStatus::Violated: return "violated";
    }
    return "unknown";
}

struct Certificate {
    std::uint64_t threshold = 0;
    std::uint64_t structures_found = 0;
    std::vector<VertexId> removed_vertices;  // original ids, ascending
    std::uint64_t edges_before = 0;          // edge lines, counting each layer
    std::uint64_t multi_edges_dropped = 0;   // vertex sets of multiplicity >= 2
    std::uint64_t edges_after = 0;
    std::optional<std::uint64_t> redetected;     // structures at threshold in the output
    std::optional<std::uint64_t> oracle_copies;  // forbidden copies found exhaustively
    std::string oracle;                          // which check produced oracle_copies
    CertificateStatus status = CertificateStatus::NotCertified;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct CleanupResult {
    SimpleHypergraph graph;
    std::vector<VertexId> original_id;
    Certificate certificate;
};

inline constexpr std::uint64_t max_theta_oracle_threshold = 4;

// Drops all multiple edges and removes the smallest vertex of every structure
// at or above the threshold (one pass over the pre-deletion list).  The
// certificate re-runs the detector on the output and, when feasible, an
// exhaustive freeness oracle: no K_{s_1..s_{r-1},P} (A), no K^{(r)}_{P,t} (B),
// no Berge theta with P paths (C).
inline CleanupResult cleanup(const MultiHypergraph& g, Model model, const ModelParams& p, std::uint64_t threshold,
                             bool certify = true) {
    Certificate cert;
    cert.threshold = threshold;
    cert.edges_before = g.edge_count();
    cert.multi_edges_dropped = multi_edges(g).size();

    std::set<VertexId> removed;
    if (model == Model::C) {
        const auto pairs = bad_pairs(g, p.ell, threshold);
        cert.structures_found = pairs.size();
        for (const auto& bp : pairs) removed.insert(bp.x);
    } else {
        const auto seqs = bad_sequences(g, model, p, threshold);
        cert.structures_found = seqs.size();
        for (const auto& s : seqs) removed.insert(s.first_vertex());
    }
    cert.removed_vertices.assign(removed.begin(), removed.end());
    Deletion del = delete_vertices(g, removed, true);
    cert.edges_after = del.graph.edge_count();

    if (certify) {
        try {
            if (model == Model::C) {
                cert.redetected = bad_pairs(del.graph, p.ell, threshold).size();
            } else {
                cert.redetected = bad_sequences(del.graph, model, p, threshold).size();
            }
            if (model == Model::A) {
                auto sizes = p.inputs;
                sizes.push_back(threshold);
                cert.oracle = "count_complete_rpartite";
                cert.oracle_copies = count_complete_rpartite(del.graph, sizes);
            } else if (model == Model::B) {
                cert.oracle = "count_complete_bipartite_r";
                cert.oracle_copies = count_complete_bipartite_r(del.graph, threshold, p.inputs.at(0));
            } else if (threshold <= max_theta_oracle_threshold) {
                cert.oracle = "contains_berge_theta";
                cert.oracle_copies = contains_berge_theta(del.graph, p.ell, threshold).found ? 1 : 0;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SearchTooLarge) throw;
        }
    }
    if ((cert.redetected && *cert.redetected > 0) || (cert.oracle_copies && *cert.oracle_copies > 0)) {
        cert.status = CertificateStatus::Violated;
    } else if (cert.redetected && cert.oracle_copies) {
        cert.status = CertificateStatus::Certified;
    } else {
        cert.status = CertificateStatus::NotCertified;
    }
    return {std::move(del.graph), std::move(del.original_id), std::move(cert)};
}

} // namespace hyperalg

#endif // HYPERALG_ANALYSIS_HPP
