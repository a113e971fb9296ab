#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hyperalg/gf.hpp"
#include "hyperalg/rng.hpp"

using namespace hyperalg;

namespace {

FieldElement el(std::uint32_t v) { return FieldElement{v}; }

// Rank as log_q of the row-space size, by enumerating all combinations.
std::size_t brute_rank(const Field& f, const FqMatrix& m) {
    std::set<std::vector<std::uint32_t>> space;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < m.rows; ++i) combos *= f.q();
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::vector<FieldElement> v(m.cols, f.zero());
        std::uint64_t c = code;
        for (std::size_t i = 0; i < m.rows; ++i) {
            const FieldElement a = el(static_cast<std::uint32_t>(c % f.q()));
            c /= f.q();
            for (std::size_t j = 0; j < m.cols; ++j) v[j] = f.add(v[j], f.mul(a, m.at(i, j)));
        }
        std::vector<std::uint32_t> key;
        for (auto x : v) key.push_back(x.value);
        space.insert(key);
    }
    std::size_t r = 0;
    for (std::size_t s = 1; s < space.size(); s *= f.q()) ++r;
    return r;
}

} // namespace

TEST(Field, PrimeField) {
    const Field f = Field::make(5);
    EXPECT_EQ(f.q(), 5u);
    EXPECT_TRUE(f.is_prime_field());
    EXPECT_EQ(f.mul(el(3), el(4)), el(2));
}

TEST(Field, Gf4Multiplication) {
    const Field f = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    EXPECT_EQ(f.q(), 4u);
    EXPECT_EQ(f.mul(el(2), el(2)), el(3));
    EXPECT_EQ(f.inv(el(2)), el(3));
}

TEST(Field, ReducibleModulusRejected) {
    try {
        Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1});
        FAIL() << "expected Reducible";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Reducible);
    }
    try {
        Field::make(5, 2, std::vector<std::uint32_t>{1, 0, 1});
        FAIL() << "expected Reducible";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Reducible);
    }
}

TEST(Field, InputErrors) {
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::BadInputs;
    };
    EXPECT_EQ(code_of([] { Field::make(6); }), ErrorCode::NotPrime);
    EXPECT_EQ(code_of([] { Field::of_order(6); }), ErrorCode::BadInputs);
    EXPECT_EQ(code_of([] { Field::of_order(1u << 17); }), ErrorCode::OrderTooLarge);
    const Field f = Field::make(7);
    EXPECT_EQ(code_of([&] { f.inv(f.zero()); }), ErrorCode::DivisionByZero);
}

TEST(Field, CharacteristicTwo) {
    const Field f = Field::make(2);
    EXPECT_EQ(f.add(el(1), el(1)), el(0));
}

TEST(Field, OfOrderPicksExtension) {
    const Field f = Field::of_order(9);
    EXPECT_EQ(f.p(), 3u);
    EXPECT_EQ(f.k(), 2u);
    EXPECT_EQ(f, Field::make(3, 2));
}

// Axioms checked exhaustively on every small field, covering both the table
// and the schoolbook arithmetic paths.
class FieldAxioms : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FieldAxioms, HoldExhaustively) {
    const Field f = Field::of_order(GetParam());
    const std::uint32_t q = f.q();
    for (std::uint32_t a = 0; a < q; ++a) {
        EXPECT_EQ(f.add(el(a), f.neg(el(a))), f.zero());
        EXPECT_EQ(f.mul(el(a), f.one()), el(a));
        if (a) {
            EXPECT_EQ(f.mul(el(a), f.inv(el(a))), f.one());
        }
        EXPECT_EQ(f.pow(el(a), q), el(a));
        for (std::uint32_t b = 0; b < q; ++b) {
            EXPECT_EQ(f.add(el(a), el(b)), f.add(el(b), el(a)));
            EXPECT_EQ(f.mul(el(a), el(b)), f.mul(el(b), el(a)));
            EXPECT_EQ(f.sub(f.add(el(a), el(b)), el(b)), el(a));
            for (std::uint32_t c = 0; c < q; c += 1 + q / 7) {
                EXPECT_EQ(f.mul(el(a), f.add(el(b), el(c))), f.add(f.mul(el(a), el(b)), f.mul(el(a), el(c))));
                EXPECT_EQ(f.mul(f.mul(el(a), el(b)), el(c)), f.mul(el(a), f.mul(el(b), el(c))));
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(SmallOrders, FieldAxioms, ::testing::Values(2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49));

TEST(Field, LargeOrderInverse) {
    for (std::uint64_t q : {257ull, 512ull, 65536ull, 65521ull}) {
        const Field f = Field::of_order(q);
        RngStream s(q);
        for (int i = 0; i < 200; ++i) {
            const FieldElement a = el(1 + s.uniform(f.q() - 1));
            EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
        }
    }
}

TEST(Rank, Examples) {
    const Field f7 = Field::make(7);
    FqMatrix id(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = f7.one();
    EXPECT_EQ(rank(f7, id), 3u);

    const Field f3 = Field::make(3);
    EXPECT_EQ(rank(f3, FqMatrix(2, 5)), 0u);

    FqMatrix m(2, 2);
    m.at(0, 0) = el(1);
    m.at(0, 1) = el(2);
    m.at(1, 0) = el(2);
    m.at(1, 1) = el(1);
    EXPECT_EQ(rank(f3, m), 1u);
}

TEST(Rank, MatchesRowSpaceEnumeration) {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
        const Field f = Field::of_order(q);
        RngStream s(derive_stream_id(11, {q}));
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t rows = 1 + s.uniform(4);
            const std::size_t cols = 1 + s.uniform(5);
            FqMatrix m(rows, cols);
            for (auto& e : m.entries) e = el(s.uniform(3) == 0 ? 0 : s.uniform(f.q()));
            EXPECT_EQ(rank(f, m), brute_rank(f, m));
        }
    }
}

TEST(Vectors, Enumeration) {
    const Field f2 = Field::make(2);
    const VectorTable t(f2, 2);
    ASSERT_EQ(t.size(), 4u);
    const std::vector<std::vector<std::uint32_t>> expect = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(t[i][0].value, expect[i][0]);
        EXPECT_EQ(t[i][1].value, expect[i][1]);
        EXPECT_EQ(t.index_of(t[i]), i);
    }
    const Field f3 = Field::make(3);
    const VectorTable t1(f3, 1);
    ASSERT_EQ(t1.size(), 3u);
    for (std::uint32_t i = 0; i < 3; ++i) EXPECT_EQ(t1[i][0].value, i);
    const VectorTable t2(f3, 2);
    EXPECT_EQ(t2[5][0].value, 2u);
    EXPECT_EQ(t2[5][1].value, 1u);
}

TEST(Vectors, TooMany) {
    try {
        VectorTable(Field::of_order(65536), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooManyVectors);
    }
}
