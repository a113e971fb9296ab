#ifndef HYPERALG_SYMPOLY_HPP
#define HYPERALG_SYMPOLY_HPP

// Symmetric polynomials in r blocks of t variables with degree <= d in each
// block.  A block monomial is an exponent vector of length t with sum <= d;
// an r-tuple of block monomials is one monomial of the full polynomial.
// Permuting blocks acts on these tuples, and a symmetric polynomial carries
// exactly one coefficient per orbit.  The orbit of a tuple is identified by
// its sorted (lexicographically least) member.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hyperalg/error.hpp"
#include "hyperalg/gf.hpp"

namespace hyperalg {

inline constexpr std::uint64_t max_basis_size = 1u << 22;
inline constexpr std::uint64_t max_orbit_count = 1u << 24;
inline constexpr std::uint64_t max_folded_tensor = 1u << 26;

using Point = std::vector<FieldElement>;

// Exact C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(result);
}

struct BlockMonomial {
    std::vector<std::uint32_t> exps;

    std::uint32_t degree() const noexcept {
        std::uint32_t s = 0;
        for (auto e : exps) s += e;
        return s;
    }

    friend bool operator==(const BlockMonomial&, const BlockMonomial&) = default;
};

// Graded-lexicographic: by total degree, then exponent vectors in descending
// lexicographic order (x_1 before x_2).
inline std::vector<BlockMonomial> monomial_basis(std::size_t t, std::size_t d) {
    if (t == 0) fail(ErrorCode::BadInputs, "block length t must be >= 1");
    if (binomial(t + d, t) > max_basis_size) {
        fail(ErrorCode::BasisTooLarge, "C(t+d, t) exceeds 2^22");
    }
    std::vector<BlockMonomial> out;
    std::vector<std::uint32_t> exps(t, 0);
    auto fill = [&](auto&& self, std::size_t pos, std::uint32_t remaining) -> void {
        if (pos + 1 == t) {
            exps[pos] = remaining;
            out.push_back({exps});
            return;
        }
        for (std::uint32_t e = remaining + 1; e-- > 0;) {
            exps[pos] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    for (std::uint32_t deg = 0; deg <= d; ++deg) fill(fill, 0, deg);
    return out;
}

struct MonomialOrbit {
    std::vector<std::uint32_t> representative;  // non-decreasing monomial indices

    // Distinct rearrangements of the representative, in lexicographic order.
    std::vector<std::vector<std::uint32_t>> members() const {
        std::vector<std::vector<std::uint32_t>> out;
        auto perm = representative;
        do {
            out.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    }

    friend bool operator==(const MonomialOrbit&, const MonomialOrbit&) = default;
};

// The orbits of [monomial_basis(t, d)]^r under block permutation, indexed in
// lexicographic order of their representatives.
class OrbitBasis {
public:
    OrbitBasis(std::size_t r, std::size_t t, std::size_t d)
        : r_(r), t_(t), d_(d), monomials_(monomial_basis(t, d)) {
        if (r == 0) fail(ErrorCode::BadInputs, "r must be >= 1");
        m_ = monomials_.size();
        const std::uint64_t count = binomial(m_ + r - 1, r);
        if (count > max_orbit_count) fail(ErrorCode::BasisTooLarge, "orbit count exceeds 2^24");
        count_ = static_cast<std::size_t>(count);
        reps_.reserve(count_ * r_);
        std::vector<std::uint32_t> tuple(r_, 0);
        auto gen = [&](auto&& self, std::size_t pos, std::uint32_t lo) -> void {
            if (pos == r_) {
                reps_.insert(reps_.end(), tuple.begin(), tuple.end());
                return;
            }
            for (std::uint32_t v = lo; v < m_; ++v) {
                tuple[pos] = v;
                self(self, pos + 1, v);
            }
        };
        gen(gen, 0, 0);
        binom_.assign((m_ + r_ + 1) * (r_ + 2), 0);
        for (std::size_t n = 0; n <= m_ + r_; ++n) {
            for (std::size_t k = 0; k <= r_ + 1; ++k) binom_[n * (r_ + 2) + k] = binomial(n, k);
        }
    }

    std::size_t r() const noexcept { return r_; }
    std::size_t t() const noexcept { return t_; }
    std::size_t d() const noexcept { return d_; }
    std::size_t monomial_count() const noexcept { return m_; }
    std::size_t size() const noexcept { return count_; }
    const std::vector<BlockMonomial>& monomials() const noexcept { return monomials_; }

    std::span<const std::uint32_t> representative(std::size_t i) const {
        return {reps_.data() + i * r_, r_};
    }

    MonomialOrbit orbit(std::size_t i) const {
        auto rep = representative(i);
        return {{rep.begin(), rep.end()}};
    }

    // Index of the orbit containing `tuple`, which must already be sorted.
    std::size_t index_of_sorted(std::span<const std::uint32_t> tuple) const noexcept {
        std::size_t idx = 0;
        std::uint32_t lo = 0;
        for (std::size_t k = 0; k < r_; ++k) {
            const std::size_t n = r_ - k - 1;
            idx += choose(m_ - lo + n, n + 1) - choose(m_ - tuple[k] + n, n + 1);
            lo = tuple[k];
        }
        return idx;
    }

    std::size_t index_of(std::span<const std::uint32_t> tuple) const {
        if (tuple.size() != r_) fail(ErrorCode::DimensionMismatch, "tuple length != r");
        std::vector<std::uint32_t> sorted(tuple.begin(), tuple.end());
        std::sort(sorted.begin(), sorted.end());
        if (!sorted.empty() && sorted.back() >= m_) fail(ErrorCode::BadInputs, "monomial index out of range");
        return index_of_sorted(sorted);
    }

private:
    std::uint64_t choose(std::size_t n, std::size_t k) const noexcept { return binom_[n * (r_ + 2) + k]; }

    std::size_t r_, t_, d_;
    std::vector<BlockMonomial> monomials_;
    std::size_t m_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint32_t> reps_;
    std::vector<std::uint64_t> binom_;
};

inline std::vector<MonomialOrbit> orbit_basis(std::size_t r, std::size_t t, std::size_t d) {
    OrbitBasis basis(r, t, d);
    std::vector<MonomialOrbit> out;
    out.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(basis.orbit(i));
    return out;
}

template <class S>
concept CoefficientStream = requires(S s, std::uint32_t bound) {
    { s.uniform(bound) } -> std::convertible_to<std::uint32_t>;
};

class SymmetricPolynomial {
public:
    SymmetricPolynomial(Field field, std::shared_ptr<const OrbitBasis> basis)
        : field_(std::move(field)), basis_(std::move(basis)), coeffs_(basis_->size()) {}

    const Field& field() const noexcept { return field_; }
    const OrbitBasis& basis() const noexcept { return *basis_; }
    std::shared_ptr<const OrbitBasis> shared_basis() const noexcept { return basis_; }
    std::size_t r() const noexcept { return basis_->r(); }
    std::size_t t() const noexcept { return basis_->t(); }
    std::size_t d() const noexcept { return basis_->d(); }

    std::span<const FieldElement> coefficients() const noexcept { return coeffs_; }
    FieldElement coefficient(std::size_t orbit) const { return coeffs_.at(orbit); }

    void set_coefficient(std::size_t orbit, FieldElement c) {
        if (!field_.contains(c)) fail(ErrorCode::FieldMismatch, "coefficient not in field");
        coeffs_.at(orbit) = c;
    }

    bool is_zero() const noexcept {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](FieldElement c) { return c.value == 0; });
    }

    friend bool operator==(const SymmetricPolynomial& a, const SymmetricPolynomial& b) {
        return a.field_ == b.field_ && a.r() == b.r() && a.t() == b.t() && a.d() == b.d() &&
               a.coeffs_ == b.coeffs_;
    }

private:
    Field field_;
    std::shared_ptr<const OrbitBasis> basis_;
    std::vector<FieldElement> coeffs_;
};

// One uniform draw per orbit, in orbit order.  The constant term is its own
// orbit, so the value at any fixed tuple is uniform on GF(q).
template <CoefficientStream Stream>
SymmetricPolynomial sample_symmetric(const Field& field, std::shared_ptr<const OrbitBasis> basis,
                                     Stream& stream) {
    SymmetricPolynomial f(field, std::move(basis));
    const std::size_t n = f.basis().size();
    for (std::size_t i = 0; i < n; ++i) {
        f.set_coefficient(i, FieldElement{static_cast<std::uint32_t>(stream.uniform(field.q()))});
    }
    return f;
}

template <CoefficientStream Stream>
SymmetricPolynomial sample_symmetric(const Field& field, std::size_t r, std::size_t t, std::size_t d,
                                     Stream& stream) {
    return sample_symmetric(field, std::make_shared<const OrbitBasis>(r, t, d), stream);
}

// Values of every block monomial at one point of GF(q)^t.
inline std::vector<FieldElement> monomial_values(const Field& field, const std::vector<BlockMonomial>& monomials,
                                                 std::span<const FieldElement> point) {
    std::size_t max_exp = 0;
    for (const auto& m : monomials) max_exp = std::max<std::size_t>(max_exp, m.degree());
    const std::size_t t = point.size();
    std::vector<FieldElement> powers(t * (max_exp + 1));
    for (std::size_t j = 0; j < t; ++j) {
        FieldElement acc = field.one();
        for (std::size_t e = 0; e <= max_exp; ++e) {
            powers[j * (max_exp + 1) + e] = acc;
            acc = field.mul(acc, point[j]);
        }
    }
    std::vector<FieldElement> out(monomials.size());
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        FieldElement v = field.one();
        for (std::size_t j = 0; j < t; ++j) v = field.mul(v, powers[j * (max_exp + 1) + monomials[i].exps[j]]);
        out[i] = v;
    }
    return out;
}

namespace detail {

inline void check_points(const Field& field, std::size_t r, std::size_t t, std::span<const Point> points) {
    if (points.size() != r) fail(ErrorCode::DimensionMismatch, "expected r points");
    for (const auto& p : points) {
        if (p.size() != t) fail(ErrorCode::DimensionMismatch, "point length != t");
        for (auto c : p) {
            if (!field.contains(c)) fail(ErrorCode::FieldMismatch, "coordinate not in field");
        }
    }
}

} // namespace detail

// Direct evaluation: sum over every r-tuple of block monomials of the orbit
// coefficient times the product of monomial values.
inline FieldElement evaluate(const SymmetricPolynomial& f, std::span<const Point> points) {
    const Field& field = f.field();
    const OrbitBasis& basis = f.basis();
    detail::check_points(field, basis.r(), basis.t(), points);
    const std::size_t r = basis.r();
    const std::size_t m = basis.monomial_count();
    std::vector<std::vector<FieldElement>> values;
    values.reserve(r);
    for (const auto& p : points) values.push_back(monomial_values(field, basis.monomials(), p));

    std::vector<std::uint32_t> tuple(r), sorted(r);
    FieldElement total = field.zero();
    auto walk = [&](auto&& self, std::size_t pos, FieldElement partial) -> void {
        if (partial.value == 0) return;
        if (pos == r) {
            sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            const FieldElement c = f.coefficient(basis.index_of_sorted(sorted));
            total = field.add(total, field.mul(c, partial));
            return;
        }
        for (std::uint32_t i = 0; i < m; ++i) {
            tuple[pos] = i;
            self(self, pos + 1, field.mul(partial, values[pos][i]));
        }
    };
    walk(walk, 0, field.one());
    return total;
}

// Row of the linear map coefficients -> value at `points`: entry for an orbit
// is the sum over its members of the product of monomial values.
inline std::vector<FieldElement> evaluation_row(const Field& field, const OrbitBasis& basis,
                                                std::span<const Point> points) {
    detail::check_points(field, basis.r(), basis.t(), points);
    const std::size_t r = basis.r();
    std::vector<std::vector<FieldElement>> values;
    values.reserve(r);
    for (const auto& p : points) values.push_back(monomial_values(field, basis.monomials(), p));

    std::vector<FieldElement> row(basis.size());
    std::vector<std::uint32_t> perm(r);
    for (std::size_t o = 0; o < basis.size(); ++o) {
        auto rep = basis.representative(o);
        perm.assign(rep.begin(), rep.end());
        FieldElement entry = field.zero();
        do {
            FieldElement prod = field.one();
            for (std::size_t k = 0; k < r && prod.value != 0; ++k) prod = field.mul(prod, values[k][perm[k]]);
            entry = field.add(entry, prod);
        } while (std::next_permutation(perm.begin(), perm.end()));
        row[o] = entry;
    }
    return row;
}

// Partially contracted coefficient tensor: order k, each axis of length R.
struct Contraction {
    std::size_t order = 0;
    std::vector<FieldElement> data;

    FieldElement scalar() const { return data.at(0); }
};

// Evaluates a family of polynomials (same field, r, t, d) over a fixed vertex
// set of GF(q)^t.  Block monomials whose value columns agree on every vertex
// are merged, and each polynomial's coefficients are folded into a dense
// symmetric tensor over the merged classes.  A value is then computed by
// contracting one vertex at a time, which lets callers share work across
// tuples with a common prefix.
class ContractionCache {
public:
    ContractionCache(std::span<const SymmetricPolynomial> polys, const VectorTable& vertices) {
        if (polys.empty()) fail(ErrorCode::BadInputs, "no polynomials");
        field_ = std::make_unique<Field>(polys.front().field());
        const OrbitBasis& basis = polys.front().basis();
        for (const auto& f : polys) {
            if (!(f.field() == *field_)) fail(ErrorCode::FieldMismatch, "polynomials over different fields");
            if (f.r() != basis.r() || f.t() != basis.t() || f.d() != basis.d()) {
                fail(ErrorCode::ShapeMismatch, "polynomials differ in (r, t, d)");
            }
        }
        if (vertices.dim() != basis.t()) fail(ErrorCode::DimensionMismatch, "vertex dimension != t");
        r_ = basis.r();
        m_ = basis.monomial_count();
        n_ = vertices.size();

        monomial_values_.resize(n_ * m_);
        for (std::size_t v = 0; v < n_; ++v) {
            auto vals = hyperalg::monomial_values(*field_, basis.monomials(), vertices[v]);
            std::copy(vals.begin(), vals.end(), monomial_values_.begin() + v * m_);
        }

        // Merge identical columns.
        std::map<std::vector<std::uint32_t>, std::uint32_t> seen;
        column_class_.resize(m_);
        std::vector<std::uint32_t> column(n_);
        for (std::size_t j = 0; j < m_; ++j) {
            for (std::size_t v = 0; v < n_; ++v) column[v] = monomial_values_[v * m_ + j].value;
            auto [it, inserted] = seen.emplace(column, static_cast<std::uint32_t>(seen.size()));
            column_class_[j] = it->second;
            if (inserted) class_column_.push_back(static_cast<std::uint32_t>(j));
        }
        classes_ = class_column_.size();
        std::uint64_t tensor = 1;
        for (std::size_t k = 0; k < r_; ++k) {
            tensor *= classes_;
            if (tensor > max_folded_tensor) fail(ErrorCode::BasisTooLarge, "folded tensor exceeds 2^26");
        }
        tensor_size_ = static_cast<std::size_t>(tensor);

        class_values_.resize(n_ * classes_);
        for (std::size_t v = 0; v < n_; ++v) {
            for (std::size_t c = 0; c < classes_; ++c) {
                class_values_[v * classes_ + c] = monomial_values_[v * m_ + class_column_[c]];
            }
        }

        tensors_.reserve(polys.size());
        for (const auto& f : polys) tensors_.push_back(fold(f));
    }

    const Field& field() const noexcept { return *field_; }
    std::size_t polynomial_count() const noexcept { return tensors_.size(); }
    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t classes() const noexcept { return classes_; }
    std::size_t r() const noexcept { return r_; }

    std::span<const FieldElement> monomial_values(std::size_t v) const {
        return {monomial_values_.data() + v * m_, m_};
    }

    std::span<const FieldElement> class_values(std::size_t v) const {
        return {class_values_.data() + v * classes_, classes_};
    }

    Contraction root(std::size_t poly) const { return {r_, tensors_.at(poly)}; }

    // Contract the leading axis with vertex v.
    Contraction contract(const Contraction& c, std::size_t v) const {
        if (c.order == 0) fail(ErrorCode::DimensionMismatch, "contraction already scalar");
        const std::size_t stride = c.data.size() / classes_;
        Contraction out{c.order - 1, std::vector<FieldElement>(stride)};
        contract_into(c, v, out.data);
        return out;
    }

    // Same as contract(), writing into a caller-provided buffer of the right size.
    void contract_into(const Contraction& c, std::size_t v, std::vector<FieldElement>& out) const {
        const Field& field = *field_;
        const std::size_t stride = c.data.size() / classes_;
        out.resize(stride);
        auto e = class_values(v);
        if (field.is_prime_field()) {
            thread_local std::vector<std::uint64_t> scratch;
            scratch.assign(stride, 0);
            for (std::size_t i = 0; i < classes_; ++i) {
                const std::uint64_t w = e[i].value;
                if (w == 0) continue;
                const FieldElement* row = c.data.data() + i * stride;
                for (std::size_t j = 0; j < stride; ++j) scratch[j] += w * row[j].value;
            }
            const std::uint64_t p = field.p();
            for (std::size_t j = 0; j < stride; ++j) out[j] = {static_cast<std::uint32_t>(scratch[j] % p)};
        } else {
            std::fill(out.begin(), out.end(), field.zero());
            for (std::size_t i = 0; i < classes_; ++i) {
                if (e[i].value == 0) continue;
                const FieldElement* row = c.data.data() + i * stride;
                for (std::size_t j = 0; j < stride; ++j) out[j] = field.add(out[j], field.mul(e[i], row[j]));
            }
        }
    }

    // Value of the final axis at v, for an order-1 contraction.
    FieldElement finish(const Contraction& c, std::size_t v) const {
        if (c.order != 1) fail(ErrorCode::DimensionMismatch, "finish() needs an order-1 contraction");
        return field_->dot(c.data, class_values(v));
    }

    FieldElement evaluate(std::size_t poly, std::span<const std::size_t> vertex_ids) const {
        if (vertex_ids.size() != r_) fail(ErrorCode::DimensionMismatch, "expected r vertices");
        Contraction c = root(poly);
        for (std::size_t k = 0; k + 1 < r_; ++k) c = contract(c, vertex_ids[k]);
        return finish(c, vertex_ids[r_ - 1]);
    }

private:
    std::vector<FieldElement> fold(const SymmetricPolynomial& f) const {
        const Field& field = *field_;
        const OrbitBasis& basis = f.basis();
        std::vector<FieldElement> tensor(tensor_size_);
        std::vector<std::uint32_t> perm(r_);
        for (std::size_t o = 0; o < basis.size(); ++o) {
            const FieldElement c = f.coefficient(o);
            if (c.value == 0) continue;
            auto rep = basis.representative(o);
            perm.assign(rep.begin(), rep.end());
            do {
                std::size_t idx = 0;
                for (std::size_t k = 0; k < r_; ++k) idx = idx * classes_ + column_class_[perm[k]];
                tensor[idx] = field.add(tensor[idx], c);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return tensor;
    }

    std::unique_ptr<Field> field_;
    std::size_t r_ = 0, m_ = 0, n_ = 0, classes_ = 0, tensor_size_ = 0;
    std::vector<FieldElement> monomial_values_;
    std::vector<std::uint32_t> column_class_;
    std::vector<std::uint32_t> class_column_;
    std::vector<FieldElement> class_values_;
    std::vector<std::vector<FieldElement>> tensors_;
};

inline ContractionCache build_cache(std::span<const SymmetricPolynomial> polys, const VectorTable& vertices) {
    return ContractionCache(polys, vertices);
}

} // namespace hyperalg

#endif // HYPERALG_SYMPOLY_HPP
