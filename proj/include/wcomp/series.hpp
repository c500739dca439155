/**
 * @file series.hpp
 * @brief Truncated multivariate power series over a graded-lex monomial basis.
 *
 * Series of N variables are truncated at total degree D. Monomials are
 * ordered by total degree and, within one degree, by exponent tuples in
 * descending lexicographic order, so z_1 precedes z_2: for N = 2 the basis
 * starts 1, z1, z2, z1^2, z1 z2, z2^2, ... Every matrix indexed by monomials
 * uses this order.
 *
 * Truncation at degree D is a ring homomorphism, so products, powers and
 * substitutions of series whose inner arguments vanish at the origin are
 * exact in every retained coefficient.
 */

#pragma once

#include "wcomp/lfmap.hpp"
#include "wcomp/types.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

namespace wcomp {

/// Exponent tuple alpha; |alpha| is the total degree.
struct MultiIndex {
    std::vector<int> exps;

    int dim() const { return static_cast<int>(exps.size()); }
    int degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
    bool operator==(const MultiIndex&) const = default;
    auto operator<=>(const MultiIndex&) const = default;
};

inline double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// alpha! = prod_j alpha_j!
inline double multi_factorial(const MultiIndex& alpha)
{
    double f = 1.0;
    for (int e : alpha.exps) f *= factorial(e);
    return f;
}

/// prod_j z_j^{alpha_j}
inline Complex monomial(const MultiIndex& alpha, const CVec& z)
{
    Complex v(1.0);
    for (int j = 0; j < alpha.dim(); ++j)
        for (int e = 0; e < alpha.exps[static_cast<std::size_t>(j)]; ++e) v *= z(j);
    return v;
}

namespace detail {

inline void enumerate_degree(int dim, int remaining, std::vector<int>& prefix, std::vector<MultiIndex>& out)
{
    if (static_cast<int>(prefix.size()) == dim - 1) {
        prefix.push_back(remaining);
        out.push_back({prefix});
        prefix.pop_back();
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        prefix.push_back(e);
        enumerate_degree(dim, remaining - e, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// All monomials of N variables with total degree <= D, graded-lex ordered.
inline std::vector<MultiIndex> grlex_indices(int dim, int degree)
{
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    for (int d = 0; d <= degree; ++d) detail::enumerate_degree(dim, d, prefix, out);
    return out;
}

inline std::size_t basis_size(int dim, int degree)
{
    // binom(N + D, N)
    double v = 1.0;
    for (int i = 1; i <= dim; ++i) v = v * (degree + i) / i;
    return static_cast<std::size_t>(std::llround(v));
}

class MonomialBasis {
public:
    MonomialBasis(int dim, int degree) : dim_(dim), degree_(degree), indices_(grlex_indices(dim, degree))
    {
        if (dim < 1) throw Error(ErrorKind::DimensionMismatch, "series dimension must be >= 1");
        if (degree < 0) throw Error(ErrorKind::PreconditionViolated, "degree cap must be >= 0");
        for (std::size_t i = 0; i < indices_.size(); ++i) rank_.emplace(indices_[i].exps, static_cast<int>(i));
        const auto n = indices_.size();
        product_.assign(n * n, -1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (indices_[i].degree() + indices_[j].degree() > degree_) continue;
                std::vector<int> sum(indices_[i].exps);
                for (int k = 0; k < dim_; ++k) sum[static_cast<std::size_t>(k)] += indices_[j].exps[static_cast<std::size_t>(k)];
                product_[i * n + j] = rank_.at(sum);
            }
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& at(std::size_t i) const { return indices_[i]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    /// Position of alpha, or -1 if |alpha| > D.
    int rank(const MultiIndex& alpha) const
    {
        auto it = rank_.find(alpha.exps);
        return it == rank_.end() ? -1 : it->second;
    }

    /// Position of alpha_i + alpha_j, or -1 when the sum is truncated.
    int product_rank(std::size_t i, std::size_t j) const { return product_[i * indices_.size() + j]; }

    /// Number of basis elements of total degree <= d.
    std::size_t leading_size(int d) const
    {
        if (d < 0) return 0;
        if (d >= degree_) return indices_.size();
        return basis_size(dim_, d);
    }

private:
    int dim_;
    int degree_;
    std::vector<MultiIndex> indices_;
    std::map<std::vector<int>, int> rank_;
    std::vector<int> product_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

/// Shared, cached basis for (N, D).
inline BasisPtr monomial_basis(int dim, int degree)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, BasisPtr> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{dim, degree}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(dim, degree);
    return slot;
}

class PowerSeries {
public:
    explicit PowerSeries(BasisPtr basis) : basis_(std::move(basis)), coeffs_(CVec::Zero(static_cast<Eigen::Index>(basis_->size()))) {}
    PowerSeries(BasisPtr basis, CVec coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs))
    {
        require_same_dim(coeffs_.size(), static_cast<Eigen::Index>(basis_->size()), "series coefficients");
    }

    static PowerSeries constant(int dim, int degree, Complex c)
    {
        PowerSeries s(monomial_basis(dim, degree));
        s.coeffs_(0) = c;
        return s;
    }

    /// z_j (0-based j); the zero series when D = 0.
    static PowerSeries variable(int dim, int degree, int j)
    {
        PowerSeries s(monomial_basis(dim, degree));
        if (degree >= 1) {
            MultiIndex e{std::vector<int>(static_cast<std::size_t>(dim), 0)};
            e.exps[static_cast<std::size_t>(j)] = 1;
            s.coeffs_(s.basis_->rank(e)) = 1.0;
        }
        return s;
    }

    /// c0 + <z, v> = c0 + sum_j conj(v_j) z_j
    static PowerSeries linear_form(int degree, Complex c0, const CVec& v)
    {
        const int n = static_cast<int>(v.size());
        PowerSeries s = constant(n, degree, c0);
        for (int j = 0; j < n; ++j) s += variable(n, degree, j) * std::conj(v(j));
        return s;
    }

    const BasisPtr& basis() const { return basis_; }
    int dim() const { return basis_->dim(); }
    int degree_cap() const { return basis_->degree(); }
    const CVec& coeffs() const { return coeffs_; }
    CVec& coeffs() { return coeffs_; }

    Complex coeff(const MultiIndex& alpha) const
    {
        int r = basis_->rank(alpha);
        return r < 0 ? Complex(0.0) : coeffs_(r);
    }

    void set_coeff(const MultiIndex& alpha, Complex v)
    {
        int r = basis_->rank(alpha);
        if (r < 0) throw Error(ErrorKind::DimensionMismatch, "monomial exceeds the degree cap");
        coeffs_(r) = v;
    }

    Complex operator()(const CVec& z) const
    {
        require_same_dim(z.size(), dim(), "series argument");
        Complex acc(0.0);
        for (std::size_t i = 0; i < basis_->size(); ++i)
            if (coeffs_(static_cast<Eigen::Index>(i)) != Complex(0.0))
                acc += coeffs_(static_cast<Eigen::Index>(i)) * monomial(basis_->at(i), z);
        return acc;
    }

    PowerSeries& operator+=(const PowerSeries& rhs)
    {
        check_compatible(rhs);
        coeffs_ += rhs.coeffs_;
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& rhs)
    {
        check_compatible(rhs);
        coeffs_ -= rhs.coeffs_;
        return *this;
    }
    PowerSeries& operator*=(Complex k)
    {
        coeffs_ *= k;
        return *this;
    }

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, Complex k) { return a *= k; }
    friend PowerSeries operator*(Complex k, PowerSeries a) { return a *= k; }

    /// Truncated Cauchy product.
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b)
    {
        a.check_compatible(b);
        PowerSeries out(a.basis_);
        const auto n = a.basis_->size();
        for (std::size_t i = 0; i < n; ++i) {
            const Complex ai = a.coeffs_(static_cast<Eigen::Index>(i));
            if (ai == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const int r = a.basis_->product_rank(i, j);
                if (r < 0) continue;
                out.coeffs_(r) += ai * b.coeffs_(static_cast<Eigen::Index>(j));
            }
        }
        return out;
    }

    /// d/dz_j (0-based j), kept on the same basis.
    PowerSeries derivative(int j) const
    {
        PowerSeries out(basis_);
        for (std::size_t i = 0; i < basis_->size(); ++i) {
            const MultiIndex& alpha = basis_->at(i);
            const int e = alpha.exps[static_cast<std::size_t>(j)];
            if (e == 0) continue;
            MultiIndex lower = alpha;
            lower.exps[static_cast<std::size_t>(j)] -= 1;
            out.coeffs_(basis_->rank(lower)) += static_cast<double>(e) * coeffs_(static_cast<Eigen::Index>(i));
        }
        return out;
    }

    /// Largest total degree carrying a nonzero coefficient (-1 for zero).
    int effective_degree() const
    {
        int d = -1;
        for (std::size_t i = 0; i < basis_->size(); ++i)
            if (coeffs_(static_cast<Eigen::Index>(i)) != Complex(0.0)) d = std::max(d, basis_->at(i).degree());
        return d;
    }

private:
    void check_compatible(const PowerSeries& other) const
    {
        if (basis_->dim() != other.basis_->dim() || basis_->degree() != other.basis_->degree())
            throw Error(ErrorKind::DimensionMismatch, "series operands differ in dimension or degree cap");
    }

    BasisPtr basis_;
    CVec coeffs_;
};

inline PowerSeries add(const PowerSeries& a, const PowerSeries& b) { return a + b; }
inline PowerSeries mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }
inline PowerSeries scale(const PowerSeries& a, Complex k) { return a * k; }

/// s^k by repeated truncated multiplication.
inline PowerSeries power(const PowerSeries& s, int k)
{
    if (k < 0) throw Error(ErrorKind::PreconditionViolated, "negative series power");
    PowerSeries out = PowerSeries::constant(s.dim(), s.degree_cap(), 1.0);
    for (int i = 0; i < k; ++i) out = out * s;
    return out;
}

enum class BallCheck { Enforce, Formal };

/// (1 - <z, c>)^{-m} = sum_k binom(m-1+k, k) <z, c>^k, multinomially expanded:
/// coefficient of z^alpha is binom(m-1+|alpha|, |alpha|) |alpha|!/alpha! conj(c)^alpha.
inline PowerSeries expand_reciprocal_linear(const CVec& c, int m, int degree, BallCheck check = BallCheck::Enforce)
{
    if (check == BallCheck::Enforce && !(c.norm() < 1.0))
        throw Error(ErrorKind::NotInBall, "reciprocal expansion needs |c| < 1");
    if (m < 0) throw Error(ErrorKind::PreconditionViolated, "negative reciprocal power");
    const int n = static_cast<int>(c.size());
    PowerSeries s(monomial_basis(n, degree));
    const CVec cbar = c.conjugate();
    for (std::size_t i = 0; i < s.basis()->size(); ++i) {
        const MultiIndex& alpha = s.basis()->at(i);
        const int k = alpha.degree();
        // binom(m-1+k, k) * k! / alpha!  ==  (m-1+k)! / ((m-1)! alpha!)  for m >= 1
        double w = 1.0;
        if (m == 0) {
            w = (k == 0) ? 1.0 : 0.0;
        } else {
            for (int t = 1; t <= k; ++t) w *= static_cast<double>(m - 1 + t);
            w /= multi_factorial(alpha);
        }
        s.coeffs()(static_cast<Eigen::Index>(i)) = w * monomial(alpha, cbar);
    }
    return s;
}

/// ln(1 / (1 - <z, c>)) = sum_{k>=1} <z, c>^k / k, without the constant term:
/// coefficient of z^alpha is (|alpha|-1)!/alpha! conj(c)^alpha.
inline PowerSeries expand_log_reciprocal(const CVec& c, int degree, BallCheck check = BallCheck::Enforce)
{
    if (check == BallCheck::Enforce && !(c.norm() < 1.0))
        throw Error(ErrorKind::NotInBall, "log expansion needs |c| < 1");
    const int n = static_cast<int>(c.size());
    PowerSeries s(monomial_basis(n, degree));
    const CVec cbar = c.conjugate();
    for (std::size_t i = 1; i < s.basis()->size(); ++i) {
        const MultiIndex& alpha = s.basis()->at(i);
        const double w = factorial(alpha.degree() - 1) / multi_factorial(alpha);
        s.coeffs()(static_cast<Eigen::Index>(i)) = w * monomial(alpha, cbar);
    }
    return s;
}

/// Component series of (A z + B) / (<z, C> + D): the affine numerator times
/// 1/D * (1 - <z, -C/conj(D)>)^{-1}.
inline std::vector<PowerSeries> map_component_series(const LinearFractionalMap& phi, int degree)
{
    const Complex d = phi.d();
    if (std::abs(d) <= kDenominatorEps)
        throw Error(ErrorKind::DenominatorVanishesAtOrigin, "map denominator vanishes at the origin");
    const int n = phi.dim();
    PowerSeries recip = expand_reciprocal_linear(-phi.c() / std::conj(d), 1, degree, BallCheck::Formal) * (1.0 / d);
    std::vector<PowerSeries> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        PowerSeries num = PowerSeries::constant(n, degree, phi.b()(j));
        for (int k = 0; k < n; ++k) num += PowerSeries::variable(n, degree, k) * phi.a()(j, k);
        out.push_back(num * recip);
    }
    return out;
}

/// outer(inner_1, ..., inner_N) truncated. Exact in retained coefficients
/// when every inner series vanishes at the origin.
inline PowerSeries compose_series(const PowerSeries& outer, const std::vector<PowerSeries>& inner)
{
    if (static_cast<int>(inner.size()) != outer.dim())
        throw Error(ErrorKind::DimensionMismatch, "substitution needs one series per variable");
    const int n = inner.empty() ? 0 : inner.front().dim();
    const int degree = outer.degree_cap();
    PowerSeries out = PowerSeries::constant(n, degree, 0.0);
    const auto& basis = *outer.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Complex c = outer.coeffs()(static_cast<Eigen::Index>(i));
        if (c == Complex(0.0)) continue;
        PowerSeries term = PowerSeries::constant(n, degree, c);
        for (int j = 0; j < outer.dim(); ++j)
            term = term * power(inner[static_cast<std::size_t>(j)], basis.at(i).exps[static_cast<std::size_t>(j)]);
        out += term;
    }
    return out;
}

}  // namespace wcomp
