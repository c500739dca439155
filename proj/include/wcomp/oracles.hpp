/**
 * @file oracles.hpp
 * @brief Reference computations that do not share code paths with the
 *        library: exact-integer kernel coefficients and finite differences.
 */

#pragma once

#include "wcomp/space.hpp"

#include <cstdint>
#include <functional>

namespace wcomp::oracle {

inline std::uint64_t binomial(int n, int k)
{
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// |alpha|! / alpha! as a product of binomials.
inline std::uint64_t multinomial(const MultiIndex& alpha)
{
    std::uint64_t r = 1;
    int running = 0;
    for (int e : alpha.exps) {
        running += e;
        r *= binomial(running, e);
    }
    return r;
}

/// Reciprocal of the coefficient of z^alpha conj(w)^alpha in the kernel, obtained
/// by expanding <z,w>^k with the multinomial theorem:
///   Hardy:     (1-t)^{-N} = sum_k C(N-1+k, k) t^k
///   Dirichlet: 1 - ln(1-t) = 1 + sum_{k>=1} t^k / k
inline double monomial_norm_sq(const SpaceKind& space, const MultiIndex& alpha)
{
    const int k = alpha.degree();
    if (k == 0) return 1.0;
    const auto multi = static_cast<double>(multinomial(alpha));
    if (space.kind == SpaceType::Hardy)
        return 1.0 / (static_cast<double>(binomial(space.dim - 1 + k, k)) * multi);
    return static_cast<double>(k) / multi;
}

using Scalar = std::function<Complex(const CVec&)>;

inline Complex fd_first(const Scalar& f, const CVec& x, int k, double h)
{
    CVec e = CVec::Zero(x.size());
    e(k) = h;
    return (f(x + e) - f(x - e)) / (2.0 * h);
}

inline Complex fd_second(const Scalar& f, const CVec& x, int k, int l, double h)
{
    CVec ek = CVec::Zero(x.size());
    CVec el = CVec::Zero(x.size());
    ek(k) = h;
    el(l) = h;
    if (k == l) return (f(x + ek) - 2.0 * f(x) + f(x - ek)) / (h * h);
    return (f(x + ek + el) - f(x + ek - el) - f(x - ek + el) + f(x - ek - el)) / (4.0 * h * h);
}

inline PowerSeries random_polynomial(Rng& rng, int dim, int degree)
{
    const auto basis = monomial_basis(dim, degree);
    CVec c(static_cast<Eigen::Index>(basis->size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = random_complex(rng);
    return {basis, c};
}

/// z -> psi(z) f(phi(z))
inline Scalar weighted_composition(const WeightSpec& psi, const LinearFractionalMap& phi, const PowerSeries& f)
{
    return [psi, phi, f](const CVec& z) { return eval_weight(psi, z) * f(phi(z)); };
}

}  // namespace wcomp::oracle
