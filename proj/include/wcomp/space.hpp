/**
 * @file space.hpp
 * @brief Reproducing kernels of the Dirichlet space D(B_N) and the Hardy
 *        space H^2(B_N), derivative kernels, and adjoint actions on them.
 *
 * The Dirichlet inner product is the one induced by its kernel
 * K_w(z) = 1 + ln(1/(1 - <z,w>)), i.e. the monomials are orthogonal with
 * ||z^alpha||^2 = alpha!/(|alpha|-1)! for alpha != 0 and ||1|| = 1. The
 * gradient-integral norm is equivalent but not equal.
 */

#pragma once

#include "wcomp/lfmap.hpp"
#include "wcomp/series.hpp"
#include "wcomp/weight.hpp"

#include <string>
#include <vector>

namespace wcomp {

enum class SpaceType { Dirichlet, Hardy };

struct SpaceKind {
    SpaceType kind;
    int dim;

    SpaceKind(SpaceType k, int n) : kind(k), dim(n)
    {
        if (n < 1) throw Error(ErrorKind::DimensionMismatch, "space dimension must be >= 1");
    }

    static SpaceKind dirichlet(int n) { return {SpaceType::Dirichlet, n}; }
    static SpaceKind hardy(int n) { return {SpaceType::Hardy, n}; }

    bool operator==(const SpaceKind&) const = default;
};

inline std::string to_string(SpaceType t) { return t == SpaceType::Dirichlet ? "dirichlet" : "hardy"; }

namespace detail {

inline Complex checked_pairing(const CVec& z, const CVec& w)
{
    require_same_dim(z.size(), w.size(), "kernel arguments");
    const Complex t = inner(z, w);
    if (!(std::abs(t) < 1.0)) throw Error(ErrorKind::OutOfDomain, "|<z,w>| must be < 1");
    return t;
}

inline void require_interior(const CVec& w, const char* what)
{
    if (!(w.norm() < 1.0)) throw Error(ErrorKind::OutOfDomain, std::string(what) + " must lie in the open ball");
}

}  // namespace detail

/// K_w(z): 1 + ln(1/(1-<z,w>)) on the Dirichlet space, (1-<z,w>)^{-N} on Hardy.
inline Complex kernel_eval(const SpaceKind& space, const CVec& w, const CVec& z)
{
    require_same_dim(z.size(), space.dim, "kernel argument");
    const Complex t = detail::checked_pairing(z, w);
    if (space.kind == SpaceType::Dirichlet) return 1.0 - std::log(1.0 - t);
    return std::pow(1.0 - t, -space.dim);
}

/// ||K_w||^2 = K_w(w).
inline double kernel_norm_sq(const SpaceKind& space, const CVec& w)
{
    detail::require_interior(w, "kernel point");
    return kernel_eval(space, w, w).real();
}

/// Dirichlet kernel for d/dz_j at w: z_j / (1 - <z,w>). `j` is 0-based.
inline Complex deriv_kernel_eval(const CVec& w, int j, const CVec& z)
{
    const Complex t = detail::checked_pairing(z, w);
    return z(j) / (1.0 - t);
}

/// Dirichlet kernel for d^2/(dz_i dz_j) at w: z_i z_j / (1 - <z,w>)^2.
inline Complex second_deriv_kernel_eval(const CVec& w, int i, int j, const CVec& z)
{
    const Complex t = detail::checked_pairing(z, w);
    const Complex u = 1.0 - t;
    return z(i) * z(j) / (u * u);
}

/// ||z^alpha||^2 in the kernel-induced inner product: the reciprocal of the
/// coefficient of z^alpha conj(w)^alpha in K_w(z).
inline double monomial_norm_sq(const SpaceKind& space, const MultiIndex& alpha)
{
    const int k = alpha.degree();
    if (k == 0) return 1.0;
    if (space.kind == SpaceType::Dirichlet) return multi_factorial(alpha) / factorial(k - 1);
    // (N-1)! alpha! / (N-1+k)!
    double v = multi_factorial(alpha);
    for (int t = 1; t <= k; ++t) v /= static_cast<double>(space.dim - 1 + t);
    return v;
}

inline Eigen::VectorXd monomial_norms(const SpaceKind& space, const MonomialBasis& basis)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = std::sqrt(monomial_norm_sq(space, basis.at(i)));
    return out;
}

/// <f, g> for polynomials given by their coefficients.
inline Complex inner_product(const SpaceKind& space, const PowerSeries& f, const PowerSeries& g)
{
    if (f.basis() != g.basis()) throw Error(ErrorKind::DimensionMismatch, "inner product of series on different bases");
    Complex acc(0.0);
    for (std::size_t i = 0; i < f.basis()->size(); ++i) {
        const auto e = static_cast<Eigen::Index>(i);
        acc += f.coeffs()(e) * std::conj(g.coeffs()(e)) * monomial_norm_sq(space, f.basis()->at(i));
    }
    return acc;
}

/// Taylor expansion of K_w in z up to degree D.
inline PowerSeries kernel_series(const SpaceKind& space, const CVec& w, int degree)
{
    detail::require_interior(w, "kernel point");
    if (space.kind == SpaceType::Dirichlet)
        return PowerSeries::constant(space.dim, degree, 1.0) + expand_log_reciprocal(w, degree);
    return expand_reciprocal_linear(w, space.dim, degree);
}

inline PowerSeries deriv_kernel_series(const CVec& w, int j, int degree)
{
    detail::require_interior(w, "kernel point");
    const int n = static_cast<int>(w.size());
    return PowerSeries::variable(n, degree, j) * expand_reciprocal_linear(w, 1, degree);
}

inline PowerSeries second_deriv_kernel_series(const CVec& w, int i, int j, int degree)
{
    detail::require_interior(w, "kernel point");
    const int n = static_cast<int>(w.size());
    return PowerSeries::variable(n, degree, i) * PowerSeries::variable(n, degree, j) *
           expand_reciprocal_linear(w, 2, degree);
}

/// Which kernel: evaluation, first partial D_i, or second partial D_{i,j}.
struct KernelDirective {
    enum class Order { Value, First, Second };

    CVec point;
    Order order = Order::Value;
    int i = 0;
    int j = 0;

    static KernelDirective value(CVec w) { return {std::move(w), Order::Value, 0, 0}; }
    static KernelDirective first(CVec w, int i) { return {std::move(w), Order::First, i, 0}; }
    static KernelDirective second(CVec w, int i, int j) { return {std::move(w), Order::Second, i, j}; }
};

struct KernelTerm {
    Complex coeff;
    KernelDirective directive;
};

using KernelCombination = std::vector<KernelTerm>;

/// Evaluates sum_t coeff_t K_t(z) on the Dirichlet space.
inline Complex eval_combination(const KernelCombination& terms, const CVec& z)
{
    const SpaceKind space = SpaceKind::dirichlet(static_cast<int>(z.size()));
    Complex acc(0.0);
    for (const auto& t : terms) {
        const auto& d = t.directive;
        switch (d.order) {
        case KernelDirective::Order::Value: acc += t.coeff * kernel_eval(space, d.point, z); break;
        case KernelDirective::Order::First: acc += t.coeff * deriv_kernel_eval(d.point, d.i, z); break;
        case KernelDirective::Order::Second: acc += t.coeff * second_deriv_kernel_eval(d.point, d.i, d.j, z); break;
        }
    }
    return acc;
}

/// <f, sum_t coeff_t K_t> = sum_t conj(coeff_t) (D_t f)(point_t) for a polynomial f.
inline Complex pair_with(const PowerSeries& f, const KernelCombination& terms)
{
    Complex acc(0.0);
    for (const auto& t : terms) {
        const auto& d = t.directive;
        Complex value;
        switch (d.order) {
        case KernelDirective::Order::Value: value = f(d.point); break;
        case KernelDirective::Order::First: value = f.derivative(d.i)(d.point); break;
        case KernelDirective::Order::Second: value = f.derivative(d.i).derivative(d.j)(d.point); break;
        }
        acc += std::conj(t.coeff) * value;
    }
    return acc;
}

/// W^* K_w = conj(psi(w)) K_{phi(w)}, returned as (conj(psi(w)), phi(w)).
struct ScaledKernel {
    Complex coeff;
    CVec point;
};

inline ScaledKernel adjoint_on_kernel(const WeightSpec& psi, const LinearFractionalMap& phi, const CVec& w)
{
    detail::require_interior(w, "kernel point");
    CVec image = phi(w);
    detail::require_interior(image, "phi(w)");
    return {std::conj(eval_weight(psi, w)), std::move(image)};
}

/// W^* K_a^{D_k} = conj(d psi/dz_k (a)) K_{phi(a)}
///               + conj(psi(a)) sum_j conj(d phi_j/dz_k (a)) K_{phi(a)}^{D_j}.
inline KernelCombination adjoint_on_deriv_kernel(const WeightSpec& psi, const LinearFractionalMap& phi, const CVec& a,
                                                 int k)
{
    detail::require_interior(a, "kernel point");
    const CVec p = phi(a);
    detail::require_interior(p, "phi(a)");
    const CVec grad = weight_gradient(psi, a);
    const CMat jac = phi.jacobian(a);
    const Complex psi_a = eval_weight(psi, a);
    KernelCombination out;
    out.push_back({std::conj(grad(k)), KernelDirective::value(p)});
    for (int j = 0; j < phi.dim(); ++j)
        out.push_back({std::conj(psi_a) * std::conj(jac(j, k)), KernelDirective::first(p, j)});
    return out;
}

/// W^* K_a^{D_{k,l}} (0-based k, l; defaults to the (1,1) pair). Groups:
///   conj(psi_kl) K + conj(psi_k) sum_j conj(phi_j,l) K^{D_j} + conj(psi_l) sum_j conj(phi_j,k) K^{D_j}
///   + conj(psi) sum_j conj(phi_j,kl) K^{D_j} + conj(psi) sum_{i,j} conj(phi_i,k phi_j,l) K^{D_ij}.
/// For k = l the two first-derivative weight groups merge into the factor 2.
inline KernelCombination adjoint_on_second_deriv_kernel(const WeightSpec& psi, const LinearFractionalMap& phi,
                                                        const CVec& a, int k = 0, int l = 0)
{
    detail::require_interior(a, "kernel point");
    const CVec p = phi(a);
    detail::require_interior(p, "phi(a)");
    const int n = phi.dim();
    const Complex psi_a = eval_weight(psi, a);
    const CVec grad = weight_gradient(psi, a);
    const CMat hess = weight_hessian(psi, a);
    const CMat jac = phi.jacobian(a);

    KernelCombination out;
    out.push_back({std::conj(hess(k, l)), KernelDirective::value(p)});
    for (int j = 0; j < n; ++j) {
        const Complex c = std::conj(grad(k)) * std::conj(jac(j, l)) + std::conj(grad(l)) * std::conj(jac(j, k));
        out.push_back({c, KernelDirective::first(p, j)});
    }
    for (int j = 0; j < n; ++j)
        out.push_back({std::conj(psi_a) * std::conj(phi.hessian(a, j, k, l)), KernelDirective::first(p, j)});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.push_back({std::conj(psi_a) * std::conj(jac(i, k)) * std::conj(jac(j, l)),
                           KernelDirective::second(p, i, j)});
    return out;
}

}  // namespace wcomp
