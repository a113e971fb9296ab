#ifndef HYPERALG_GF_HPP
#define HYPERALG_GF_HPP

// Arithmetic in GF(p^k) for q = p^k <= 2^16, plus rank over GF(q) and the
// canonical enumeration of GF(q)^dim.
//
// An element of GF(p^k) is a polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1}
// modulo a monic irreducible of degree k.  Its canonical encoding is the
// integer sum c_i p^i, so for prime fields the encoding is the residue itself.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperalg/error.hpp"

namespace hyperalg {

struct FieldElement {
    std::uint32_t value = 0;

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

enum class ArithOp { add, sub, mul, inv, neg };

inline constexpr std::uint64_t max_field_order = 1u << 16;
inline constexpr std::uint64_t max_vector_count = 1u << 24;
inline constexpr std::uint64_t table_threshold = 256;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

using Poly = std::vector<std::uint32_t>;  // coefficients over GF(p), low degree first

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic divisor, over GF(p).
inline Poly poly_mod(Poly a, const Poly& monic, std::uint32_t p) {
    trim(a);
    const std::size_t dm = monic.size() - 1;
    while (a.size() > dm && !a.empty()) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>(
                (a[shift + i] + static_cast<std::uint64_t>(p - lead) * monic[i]) % p);
        }
        trim(a);
    }
    return a;
}

// True iff no monic polynomial of degree 1..deg/2 divides it.
inline bool is_irreducible(const Poly& monic, std::uint32_t p) {
    const std::size_t deg = monic.size() - 1;
    for (std::size_t j = 1; 2 * j <= deg; ++j) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < j; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly divisor(j + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < j; ++i) {
                divisor[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            divisor[j] = 1;
            if (poly_mod(monic, divisor, p).empty()) return false;
        }
    }
    return true;
}

struct Tables {
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> mul;
};

} // namespace detail

// GF(p^k).  Immutable after construction; copies share the lookup tables.
class Field {
public:
    // Validates the inputs; when `modulus` is omitted the smallest monic
    // irreducible of degree k is chosen, ordering candidates by the integer
    // encoding of their lower coefficients.
    static Field make(std::uint32_t p, std::uint32_t k = 1,
                      std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        if (k == 0) fail(ErrorCode::BadInputs, "extension degree must be >= 1");
        if (!detail::is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            q *= p;
            if (q > max_field_order) {
                fail(ErrorCode::OrderTooLarge,
                     std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^16");
            }
        }
        detail::Poly mod;
        if (modulus) {
            mod = *modulus;
            if (mod.size() != k + 1 || mod.back() != 1) {
                fail(ErrorCode::BadInputs, "modulus must be monic of degree k");
            }
            for (auto c : mod) {
                if (c >= p) fail(ErrorCode::BadInputs, "modulus coefficient out of range");
            }
            if (!detail::is_irreducible(mod, p)) {
                fail(ErrorCode::Reducible, "supplied modulus factors over GF(p)");
            }
        } else {
            for (std::uint64_t code = 0;; ++code) {
                detail::Poly cand(k + 1, 0);
                std::uint64_t c = code;
                for (std::uint32_t i = 0; i < k; ++i) {
                    cand[i] = static_cast<std::uint32_t>(c % p);
                    c /= p;
                }
                cand[k] = 1;
                if (detail::is_irreducible(cand, p)) {
                    mod = std::move(cand);
                    break;
                }
            }
        }
        return Field(p, k, static_cast<std::uint32_t>(q), std::move(mod));
    }

    // Accepts a prime power q and uses the default modulus.
    static Field of_order(std::uint64_t q) {
        if (q < 2) fail(ErrorCode::BadInputs, "field order must be >= 2");
        if (q > max_field_order) fail(ErrorCode::OrderTooLarge, std::to_string(q) + " exceeds 2^16");
        std::uint32_t p = 2;
        while (q % p != 0) ++p;
        std::uint32_t k = 0;
        std::uint64_t rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        if (rest != 1) fail(ErrorCode::BadInputs, std::to_string(q) + " is not a prime power");
        return make(p, k);
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t q() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return k_ == 1; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const noexcept { return {0}; }
    FieldElement one() const noexcept { return {1}; }

    FieldElement element(std::uint64_t encoding) const {
        if (encoding >= q_) fail(ErrorCode::FieldMismatch, "encoding outside [0, q)");
        return {static_cast<std::uint32_t>(encoding)};
    }

    bool contains(FieldElement a) const noexcept { return a.value < q_; }

    FieldElement add(FieldElement a, FieldElement b) const noexcept {
        if (k_ == 1) {
            const std::uint32_t s = a.value + b.value;
            return {s >= p_ ? s - p_ : s};
        }
        if (tables_) return {tables_->add[a.value * q_ + b.value]};
        return {digit_add(a.value, b.value)};
    }

    FieldElement neg(FieldElement a) const noexcept { return {neg_[a.value]}; }

    FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const noexcept {
        if (k_ == 1) {
            return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value % p_)};
        }
        if (tables_) return {tables_->mul[a.value * q_ + b.value]};
        return {schoolbook_mul(a.value, b.value)};
    }

    FieldElement inv(FieldElement a) const {
        if (a.value == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
        return {inv_[a.value]};
    }

    FieldElement pow(FieldElement a, std::uint64_t e) const noexcept {
        FieldElement result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    // Checked entry point: validates membership of both operands.
    FieldElement arith(FieldElement a, FieldElement b, ArithOp op) const {
        if (!contains(a) || !contains(b)) fail(ErrorCode::FieldMismatch, "operand not in this field");
        switch (op) {
            case ArithOp::add: return add(a, b);
            case ArithOp::sub: return sub(a, b);
            case ArithOp::mul: return mul(a, b);
            case ArithOp::inv: return inv(a);
            case ArithOp::neg: return neg(a);
        }
        return zero();
    }

    // sum_i a[i] * b[i]
    FieldElement dot(std::span<const FieldElement> a, std::span<const FieldElement> b) const noexcept {
        const std::size_t n = std::min(a.size(), b.size());
        if (k_ == 1) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += static_cast<std::uint64_t>(a[i].value) * b[i].value;
                if (acc >= (1ull << 63)) acc %= p_;
            }
            return {static_cast<std::uint32_t>(acc % p_)};
        }
        FieldElement acc = zero();
        for (std::size_t i = 0; i < n; ++i) acc = add(acc, mul(a[i], b[i]));
        return acc;
    }

    friend bool operator==(const Field& x, const Field& y) noexcept {
        return x.p_ == y.p_ && x.k_ == y.k_ && x.modulus_ == y.modulus_;
    }

    std::string describe() const {
        std::string s = "GF(" + std::to_string(q_) + ")";
        if (k_ > 1) {
            s += " mod ";
            bool first = true;
            for (std::size_t i = modulus_.size(); i-- > 0;) {
                if (modulus_[i] == 0) continue;
                if (!first) s += "+";
                first = false;
                if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
                if (i >= 1) s += "x";
                if (i >= 2) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    Field(std::uint32_t p, std::uint32_t k, std::uint32_t q, std::vector<std::uint32_t> modulus)
        : p_(p), k_(k), q_(q), modulus_(std::move(modulus)) {
        neg_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) neg_[a] = digit_neg(a);
        if (k_ > 1 && q_ <= table_threshold) {
            auto t = std::make_shared<detail::Tables>();
            t->add.resize(static_cast<std::size_t>(q_) * q_);
            t->mul.resize(static_cast<std::size_t>(q_) * q_);
            for (std::uint32_t a = 0; a < q_; ++a) {
                for (std::uint32_t b = 0; b < q_; ++b) {
                    t->add[a * q_ + b] = static_cast<std::uint16_t>(digit_add(a, b));
                    t->mul[a * q_ + b] = static_cast<std::uint16_t>(schoolbook_mul(a, b));
                }
            }
            tables_ = std::move(t);
        }
        inv_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; ++a) inv_[a] = pow({a}, q_ - 2).value;
    }

    std::uint32_t digit_add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            const std::uint32_t d = (a % p_ + b % p_) % p_;
            out += d * scale;
            scale *= p_;
            a /= p_;
            b /= p_;
        }
        return out;
    }

    std::uint32_t digit_neg(std::uint32_t a) const noexcept {
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            const std::uint32_t d = (p_ - a % p_) % p_;
            out += d * scale;
            scale *= p_;
            a /= p_;
        }
        return out;
    }

    std::uint32_t schoolbook_mul(std::uint32_t a, std::uint32_t b) const {
        detail::Poly x(k_), y(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            x[i] = a % p_;
            a /= p_;
            y[i] = b % p_;
            b /= p_;
        }
        detail::Poly prod(2 * k_ - 1, 0);
        for (std::uint32_t i = 0; i < k_; ++i) {
            for (std::uint32_t j = 0; j < k_; ++j) {
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p_);
            }
        }
        const detail::Poly rem = detail::poly_mod(std::move(prod), modulus_, p_);
        std::uint32_t out = 0, scale = 1;
        for (std::size_t i = 0; i < rem.size(); ++i) {
            out += rem[i] * scale;
            scale *= p_;
        }
        return out;
    }

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> inv_;
    std::shared_ptr<const detail::Tables> tables_;
};

// Dense row-major matrix over GF(q).
struct FqMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FieldElement> entries;

    FqMatrix() = default;
    FqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    FieldElement& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    FieldElement at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// Rank by Gaussian elimination.  Takes the matrix by value and reduces it in place.
inline std::size_t rank(const Field& field, FqMatrix m) {
    if (m.entries.size() != m.rows * m.cols) fail(ErrorCode::DimensionMismatch, "entries != rows*cols");
    for (auto e : m.entries) {
        if (!field.contains(e)) fail(ErrorCode::FieldMismatch, "matrix entry not in field");
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows && m.at(pivot, c).value == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        }
        const FieldElement scale = field.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = field.mul(m.at(r, j), scale);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            const FieldElement factor = m.at(i, c);
            if (factor.value == 0) continue;
            const FieldElement negf = field.neg(factor);
            for (std::size_t j = c; j < m.cols; ++j) {
                m.at(i, j) = field.add(m.at(i, j), field.mul(negf, m.at(r, j)));
            }
        }
        ++r;
    }
    return r;
}

// All q^dim vectors of GF(q)^dim in canonical order: coordinate j of vector i
// is the j-th base-q digit of i (little-endian).
class VectorTable {
public:
    VectorTable(const Field& field, std::size_t dim) : q_(field.q()), dim_(dim) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dim; ++i) {
            count *= q_;
            if (count > max_vector_count) {
                fail(ErrorCode::TooManyVectors, "q^dim exceeds 2^24");
            }
        }
        count_ = static_cast<std::size_t>(count);
        data_.resize(count_ * dim_);
        for (std::size_t i = 0; i < count_; ++i) {
            std::size_t rest = i;
            for (std::size_t j = 0; j < dim_; ++j) {
                data_[i * dim_ + j] = {static_cast<std::uint32_t>(rest % q_)};
                rest /= q_;
            }
        }
    }

    std::size_t size() const noexcept { return count_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const FieldElement> operator[](std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }

    std::size_t index_of(std::span<const FieldElement> v) const {
        if (v.size() != dim_) fail(ErrorCode::DimensionMismatch, "vector length != dim");
        std::size_t idx = 0;
        for (std::size_t j = dim_; j-- > 0;) {
            if (v[j].value >= q_) fail(ErrorCode::FieldMismatch, "coordinate not in field");
            idx = idx * q_ + v[j].value;
        }
        return idx;
    }

private:
    std::uint32_t q_;
    std::size_t dim_;
    std::size_t count_ = 0;
    std::vector<FieldElement> data_;
};

inline VectorTable enumerate_vectors(const Field& field, std::size_t dim) {
    return VectorTable(field, dim);
}

} // namespace hyperalg

#endif // HYPERALG_GF_HPP
