#include <algorithm>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "hyperalg/rng.hpp"
#include "hyperalg/sympoly.hpp"

using namespace hyperalg;

namespace {

FieldElement el(std::uint32_t v) { return FieldElement{v}; }

Point random_point(const Field& f, std::size_t t, RngStream& s) {
    Point p(t);
    for (auto& c : p) c = el(s.uniform(f.q()));
    return p;
}

FieldElement monomial_value(const Field& f, const BlockMonomial& m, const Point& x) {
    FieldElement v = f.one();
    for (std::size_t j = 0; j < m.exps.size(); ++j) v = f.mul(v, f.pow(x[j], m.exps[j]));
    return v;
}

// Sum over every ordered r-tuple of block monomials of its orbit coefficient
// times the product of the block values.  Shares nothing with evaluate().
FieldElement brute_evaluate(const SymmetricPolynomial& f, const std::vector<Point>& pts) {
    const Field& field = f.field();
    const auto& mons = f.basis().monomials();
    const std::size_t r = f.r();
    std::vector<std::uint32_t> idx(r, 0);
    FieldElement total = field.zero();
    while (true) {
        auto key = idx;
        std::sort(key.begin(), key.end());
        FieldElement term = f.coefficient(f.basis().index_of(key));
        for (std::size_t i = 0; i < r; ++i) term = field.mul(term, monomial_value(field, mons[idx[i]], pts[i]));
        total = field.add(total, term);
        std::size_t k = 0;
        while (k < r && ++idx[k] == mons.size()) idx[k++] = 0;
        if (k == r) break;
    }
    return total;
}

} // namespace

TEST(Monomials, Basis) {
    const auto b = monomial_basis(1, 2);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0].exps, std::vector<std::uint32_t>{0});
    EXPECT_EQ(b[1].exps, std::vector<std::uint32_t>{1});
    EXPECT_EQ(b[2].exps, std::vector<std::uint32_t>{2});
    EXPECT_EQ(monomial_basis(2, 8).size(), 45u);
    EXPECT_EQ(monomial_basis(2, 0).size(), 1u);
}

TEST(Monomials, GradedOrderAndDistinct) {
    const auto b = monomial_basis(3, 4);
    EXPECT_EQ(b.size(), binomial(7, 3));
    for (std::size_t i = 1; i < b.size(); ++i) {
        EXPECT_LE(b[i - 1].degree(), b[i].degree());
        if (b[i - 1].degree() == b[i].degree()) {
            EXPECT_GT(b[i - 1].exps, b[i].exps);
        }
    }
}

TEST(Orbits, Counts) {
    EXPECT_EQ(OrbitBasis(1, 2, 8).size(), 45u);
    EXPECT_EQ(OrbitBasis(2, 2, 8).size(), (45u * 45u + 45u) / 2);
    EXPECT_EQ(OrbitBasis(2, 1, 1).size(), 3u);
    // Multisets of size r from m monomials.
    for (std::size_t r = 1; r <= 4; ++r) {
        for (std::size_t d = 0; d <= 3; ++d) {
            const OrbitBasis ob(r, 2, d);
            EXPECT_EQ(ob.size(), binomial(ob.monomial_count() + r - 1, r));
        }
    }
}

TEST(Orbits, IndexRoundTrip) {
    const OrbitBasis ob(3, 2, 2);
    for (std::size_t i = 0; i < ob.size(); ++i) {
        const auto rep = ob.representative(i);
        std::vector<std::uint32_t> v(rep.begin(), rep.end());
        EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
        EXPECT_EQ(ob.index_of(v), i);
        std::reverse(v.begin(), v.end());
        EXPECT_EQ(ob.index_of(v), i);
    }
    const auto orbits = orbit_basis(2, 1, 1);
    ASSERT_EQ(orbits.size(), 3u);
    EXPECT_EQ(orbits[1].members().size(), 2u);
}

TEST(Sampling, Deterministic) {
    const Field f = Field::make(3);
    RngStream a(42), b(42);
    EXPECT_EQ(sample_symmetric(f, 2, 2, 2, a), sample_symmetric(f, 2, 2, 2, b));
}

TEST(Sampling, ConstantVanishesWithProbabilityOneOverQ) {
    const Field f = Field::make(5);
    auto basis = std::make_shared<const OrbitBasis>(2, 1, 0);
    const int n = 5000;
    int zero = 0;
    for (int i = 0; i < n; ++i) {
        RngStream s(derive_stream_id(3, {static_cast<std::uint64_t>(i)}));
        zero += sample_symmetric(f, basis, s).is_zero();
    }
    const double p = 0.2, sd = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(zero) / n, p, 5 * sd);
}

TEST(Evaluate, Examples) {
    const Field f = Field::make(5);
    auto basis = std::make_shared<const OrbitBasis>(2, 1, 1);
    SymmetricPolynomial zero(f, basis);
    const std::vector<Point> pts = {{el(2)}, {el(3)}};
    EXPECT_EQ(evaluate(zero, pts), f.zero());

    SymmetricPolynomial c(f, basis);
    c.set_coefficient(0, el(4));
    EXPECT_EQ(evaluate(c, pts), el(4));

    // x^1 x^2: the orbit of monomial pair (x, x).
    SymmetricPolynomial xy(f, basis);
    xy.set_coefficient(basis->index_of(std::vector<std::uint32_t>{1, 1}), f.one());
    EXPECT_EQ(evaluate(xy, pts), el(1));

    // Orbit of (1, x) contributes x^1 + x^2.
    SymmetricPolynomial sum(f, basis);
    sum.set_coefficient(basis->index_of(std::vector<std::uint32_t>{0, 1}), f.one());
    EXPECT_EQ(evaluate(sum, pts), el(0));
}

TEST(Evaluate, Errors) {
    const Field f = Field::make(5);
    auto basis = std::make_shared<const OrbitBasis>(2, 2, 1);
    SymmetricPolynomial g(f, basis);
    const std::vector<Point> one = {{el(1), el(2)}};
    EXPECT_THROW(evaluate(g, one), Error);
    const std::vector<Point> shape = {{el(1)}, {el(2)}};
    EXPECT_THROW(evaluate(g, shape), Error);
}

TEST(Evaluate, RowOfZeroTuple) {
    const Field f = Field::make(7);
    const OrbitBasis ob(3, 2, 3);
    const std::vector<Point> pts(3, Point(2, f.zero()));
    const auto row = evaluation_row(f, ob, pts);
    ASSERT_EQ(row.size(), ob.size());
    EXPECT_EQ(row[0], f.one());
    for (std::size_t i = 1; i < row.size(); ++i) EXPECT_EQ(row[i], f.zero());
}

TEST(Evaluate, RowForLinearPairs) {
    const Field f = Field::make(7);
    const OrbitBasis ob(2, 1, 1);
    const std::vector<Point> pts = {{el(2)}, {el(5)}};
    const auto row = evaluation_row(f, ob, pts);
    ASSERT_EQ(row.size(), 3u);
    EXPECT_EQ(row[0], el(1));
    EXPECT_EQ(row[1], el(0));   // 2 + 5
    EXPECT_EQ(row[2], el(3));   // 10 mod 7
}

// evaluate, the evaluation row and the brute-force sum agree, and values do
// not depend on the order of the points.
class EvaluateConsistency : public ::testing::TestWithParam<std::tuple<int, int, int, int>> {};

TEST_P(EvaluateConsistency, AgreesWithOracles) {
    const auto [q, r, t, d] = GetParam();
    const Field f = Field::of_order(static_cast<std::uint64_t>(q));
    auto basis = std::make_shared<const OrbitBasis>(r, t, d);
    RngStream s(derive_stream_id(99, {static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(r),
                                      static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(d)}));
    for (int i = 0; i < 100; ++i) {
        const auto poly = sample_symmetric(f, basis, s);
        std::vector<Point> pts;
        for (int k = 0; k < r; ++k) pts.push_back(random_point(f, static_cast<std::size_t>(t), s));
        const FieldElement v = evaluate(poly, pts);
        EXPECT_EQ(v, f.dot(poly.coefficients(), evaluation_row(f, *basis, pts)));
        if (i < 20) {
            EXPECT_EQ(v, brute_evaluate(poly, pts));
        }
        auto perm = pts;
        std::reverse(perm.begin(), perm.end());
        std::rotate(perm.begin(), perm.begin() + 1, perm.end());
        EXPECT_EQ(evaluate(poly, perm), v);
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, EvaluateConsistency,
                         ::testing::Values(std::tuple{5, 2, 1, 3}, std::tuple{7, 2, 2, 4}, std::tuple{4, 3, 2, 2},
                                           std::tuple{9, 3, 1, 4}, std::tuple{3, 4, 1, 2}, std::tuple{11, 2, 2, 8}));

TEST(Cache, MatchesDirectEvaluation) {
    for (const auto& [q, r, t, d] : {std::tuple{5, 2, 2, 4}, std::tuple{4, 3, 1, 5}, std::tuple{7, 3, 2, 3},
                                     std::tuple{3, 2, 2, 8}}) {
        const Field f = Field::of_order(static_cast<std::uint64_t>(q));
        auto basis = std::make_shared<const OrbitBasis>(r, t, d);
        RngStream s(derive_stream_id(5, {static_cast<std::uint64_t>(q)}));
        std::vector<SymmetricPolynomial> polys;
        for (int i = 0; i < 2; ++i) polys.push_back(sample_symmetric(f, basis, s));
        const VectorTable verts(f, static_cast<std::size_t>(t));
        const ContractionCache cache = build_cache(polys, verts);
        EXPECT_EQ(cache.polynomial_count(), 2u);
        EXPECT_LE(cache.classes(), basis->monomial_count());
        for (int i = 0; i < 1000; ++i) {
            std::vector<std::size_t> ids;
            std::vector<Point> pts;
            for (int k = 0; k < r; ++k) {
                ids.push_back(s.uniform(static_cast<std::uint32_t>(verts.size())));
                const auto v = verts[ids.back()];
                pts.emplace_back(v.begin(), v.end());
            }
            for (std::size_t p = 0; p < polys.size(); ++p) {
                ASSERT_EQ(cache.evaluate(p, ids), evaluate(polys[p], pts));
            }
        }
    }
}

TEST(Cache, RejectsMixedShapes) {
    const Field f = Field::make(5);
    RngStream s(1);
    std::vector<SymmetricPolynomial> polys = {sample_symmetric(f, 2, 1, 2, s), sample_symmetric(f, 2, 1, 3, s)};
    EXPECT_THROW(ContractionCache(polys, VectorTable(f, 1)), Error);
}
