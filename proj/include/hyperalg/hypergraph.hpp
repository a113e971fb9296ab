#ifndef HYPERALG_HYPERGRAPH_HPP
#define HYPERALG_HYPERGRAPH_HPP

// r-uniform multi-hypergraphs whose edges carry a layer label.  A vertex set
// may appear once per layer; its multiplicity is the number of layers that
// contain it.  A hypergraph with a single layer is simple.
//
// In partite mode (partite == r) the n vertices split into r equal parts
// indexed part-major, and every edge has exactly one vertex per part.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperalg/error.hpp"

namespace hyperalg {

using VertexId = std::uint32_t;
using VertexSet = std::vector<VertexId>;  // sorted ascending

struct Edge {
    std::uint32_t layer = 0;
    VertexSet vertices;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class MultiHypergraph {
public:
    MultiHypergraph(std::size_t n, std::size_t r, std::size_t layers = 1, std::size_t partite = 0)
        : n_(n), r_(r), layers_(layers), partite_(partite) {
        if (r == 0) fail(ErrorCode::BadInputs, "uniformity must be >= 1");
        if (layers == 0) fail(ErrorCode::BadInputs, "layer count must be >= 1");
        if (partite != 0 && (partite != r || n % r != 0)) {
            fail(ErrorCode::BadInputs, "partite mode needs partite == r and r | n");
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t layers() const noexcept { return layers_; }
    std::size_t partite() const noexcept { return partite_; }
    bool is_simple() const noexcept { return layers_ == 1; }
    std::size_t part_size() const noexcept { return partite_ ? n_ / partite_ : n_; }
    std::size_t part_of(VertexId v) const noexcept { return partite_ ? v / part_size() : 0; }

    // Returns false (and changes nothing) if the (layer, set) pair is already present.
    bool add_edge(std::uint32_t layer, VertexSet vertices) {
        std::sort(vertices.begin(), vertices.end());
        validate(layer, vertices);
        auto [it, inserted] = edges_.insert(Edge{layer, vertices});
        if (inserted) ++multiplicity_[it->vertices];
        return inserted;
    }

    bool contains(std::uint32_t layer, const VertexSet& sorted_vertices) const {
        return edges_.count(Edge{layer, sorted_vertices}) > 0;
    }

    // Edges ordered by (layer, vertices).
    const std::set<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::size_t multiplicity(VertexSet vertices) const {
        std::sort(vertices.begin(), vertices.end());
        auto it = multiplicity_.find(vertices);
        return it == multiplicity_.end() ? 0 : it->second;
    }

    // Distinct vertex sets with their multiplicities, sorted.
    const std::map<VertexSet, std::uint32_t>& multiplicities() const noexcept { return multiplicity_; }

    friend bool operator==(const MultiHypergraph& a, const MultiHypergraph& b) {
        return a.n_ == b.n_ && a.r_ == b.r_ && a.layers_ == b.layers_ && a.partite_ == b.partite_ &&
               a.edges_ == b.edges_;
    }

private:
    void validate(std::uint32_t layer, const VertexSet& v) const {
        if (layer >= layers_) fail(ErrorCode::ShapeMismatch, "layer id out of range");
        if (v.size() != r_) fail(ErrorCode::ShapeMismatch, "edge size != r");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] >= n_) fail(ErrorCode::ShapeMismatch, "vertex id out of range");
            if (i > 0 && v[i] == v[i - 1]) fail(ErrorCode::ShapeMismatch, "repeated vertex in edge");
        }
        if (partite_) {
            // Sorted part-major ids: one per part means part_of(v[i]) == i.
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (part_of(v[i]) != i) fail(ErrorCode::ShapeMismatch, "edge is not a transversal of the parts");
            }
        }
    }

    std::size_t n_, r_, layers_, partite_;
    std::set<Edge> edges_;
    std::map<VertexSet, std::uint32_t> multiplicity_;
};

using SimpleHypergraph = MultiHypergraph;

// Layer i of the result is the single layer of the i-th input.
inline MultiHypergraph union_of(const std::vector<MultiHypergraph>& layers) {
    if (layers.empty()) fail(ErrorCode::ShapeMismatch, "no layers");
    const auto& first = layers.front();
    MultiHypergraph out(first.n(), first.r(), layers.size(), first.partite());
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& g = layers[i];
        if (g.n() != first.n() || g.r() != first.r() || g.partite() != first.partite()) {
            fail(ErrorCode::ShapeMismatch, "layers differ in n, r or partite structure");
        }
        if (!g.is_simple()) fail(ErrorCode::ShapeMismatch, "union inputs must be simple");
        for (const auto& e : g.edges()) out.add_edge(static_cast<std::uint32_t>(i), e.vertices);
    }
    return out;
}

inline std::vector<VertexSet> multi_edges(const MultiHypergraph& g) {
    std::vector<VertexSet> out;
    for (const auto& [set, mult] : g.multiplicities()) {
        if (mult >= 2) out.push_back(set);
    }
    return out;
}

struct Deletion {
    SimpleHypergraph graph;
    std::vector<VertexId> original_id;  // new id -> old id
};

// Removes the given vertices and every edge meeting them, then either drops
// every vertex set of multiplicity >= 2 (drop_multi) or keeps one copy of it.
// Survivors are relabelled compactly in increasing order.  Partite structure
// is kept only when every part loses the same number of vertices.
inline Deletion delete_vertices(const MultiHypergraph& g, const std::set<VertexId>& removed, bool drop_multi) {
    for (VertexId v : removed) {
        if (v >= g.n()) fail(ErrorCode::BadInputs, "deleted vertex out of range");
    }
    std::vector<VertexId> new_id(g.n(), 0);
    std::vector<VertexId> original;
    std::vector<bool> gone(g.n(), false);
    for (VertexId v : removed) gone[v] = true;
    for (VertexId v = 0; v < g.n(); ++v) {
        if (!gone[v]) {
            new_id[v] = static_cast<VertexId>(original.size());
            original.push_back(v);
        }
    }
    std::size_t partite = 0;
    if (g.partite()) {
        std::vector<std::size_t> lost(g.partite(), 0);
        for (VertexId v : removed) ++lost[g.part_of(v)];
        if (std::all_of(lost.begin(), lost.end(), [&](std::size_t x) { return x == lost.front(); })) {
            partite = g.partite();
        }
    }
    SimpleHypergraph out(original.size(), g.r(), 1, partite);
    for (const auto& [set, mult] : g.multiplicities()) {
        if (drop_multi && mult >= 2) continue;
        if (std::any_of(set.begin(), set.end(), [&](VertexId v) { return gone[v]; })) continue;
        VertexSet mapped;
        mapped.reserve(set.size());
        for (VertexId v : set) mapped.push_back(new_id[v]);
        out.add_edge(0, std::move(mapped));
    }
    return {std::move(out), std::move(original)};
}

// HGR v1: "HGR v1", then "n=<n> r=<r> layers=<h> partite=<0|r>", then one
// line "e <layer> v1 ... vr" per edge, vertices ascending, lines ordered by
// (layer, v1, ..., vr) numerically.  LF endings, no trailing whitespace.
inline std::string serialize(const MultiHypergraph& g) {
    std::string out = "HGR v1\n";
    out += "n=" + std::to_string(g.n()) + " r=" + std::to_string(g.r()) + " layers=" + std::to_string(g.layers()) +
           " partite=" + std::to_string(g.partite()) + "\n";
    for (const auto& e : g.edges()) {
        out += "e " + std::to_string(e.layer);
        for (VertexId v : e.vertices) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.size() > 18 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        parse_fail(line, "expected a non-negative integer, got '" + tok + "'");
    }
    return std::stoull(tok);
}

inline std::uint64_t parse_key(const std::string& tok, const std::string& key, std::size_t line) {
    if (tok.rfind(key + "=", 0) != 0) parse_fail(line, "expected '" + key + "=<int>'");
    return parse_uint(tok.substr(key.size() + 1), line);
}

} // namespace detail

inline MultiHypergraph parse_hgr(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    auto tokens = [](const std::string& s) {
        std::vector<std::string> out;
        std::istringstream in(s);
        std::string tok;
        while (in >> tok) out.push_back(tok);
        return out;
    };
    if (lines.empty() || lines[0] != "HGR v1") detail::parse_fail(1, "missing 'HGR v1' header");
    if (lines.size() < 2) detail::parse_fail(2, "missing shape line");
    const auto head = tokens(lines[1]);
    if (head.size() != 4) detail::parse_fail(2, "shape line needs n, r, layers, partite");
    const auto n = detail::parse_key(head[0], "n", 2);
    const auto r = detail::parse_key(head[1], "r", 2);
    const auto layers = detail::parse_key(head[2], "layers", 2);
    const auto partite = detail::parse_key(head[3], "partite", 2);
    if (n > UINT32_MAX) detail::parse_fail(2, "n too large");
    std::optional<MultiHypergraph> g;
    try {
        g.emplace(n, r, layers, partite);
    } catch (const Error& e) {
        detail::parse_fail(2, e.what());
    }
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto tok = tokens(lines[i]);
        if (tok.empty() || tok[0] != "e") detail::parse_fail(lineno, "expected an edge line 'e <layer> ...'");
        if (tok.size() != r + 2) detail::parse_fail(lineno, "edge line needs a layer and r vertices");
        const auto layer = detail::parse_uint(tok[1], lineno);
        VertexSet verts;
        for (std::size_t j = 2; j < tok.size(); ++j) {
            const auto v = detail::parse_uint(tok[j], lineno);
            if (v >= n) detail::parse_fail(lineno, "vertex id " + tok[j] + " out of range");
            verts.push_back(static_cast<VertexId>(v));
        }
        if (layer >= layers) detail::parse_fail(lineno, "layer id out of range");
        try {
            if (!g->add_edge(static_cast<std::uint32_t>(layer), std::move(verts))) {
                detail::parse_fail(lineno, "duplicate edge");
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError) throw;
            detail::parse_fail(lineno, e.what());
        }
    }
    return std::move(*g);
}

} // namespace hyperalg

#endif // HYPERALG_HYPERGRAPH_HPP
