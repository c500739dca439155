/**
 * @file weight.hpp
 * @brief Closed-form multipliers psi used by weighted composition operators.
 */

#pragma once

#include "wcomp/series.hpp"
#include "wcomp/types.hpp"

#include <variant>

namespace wcomp {

namespace weight {

/// psi(z) = c
struct Constant {
    Complex c;
};

/// psi(z) = a1 / (1 - <z, conj(a0)>)^power
struct KernelPower {
    Complex a1;
    CVec a0;
    int power;
};

/// psi(z) = mu (1 - |a|^2)^{power/2} / (1 - <z, a>)^power
struct NormalizedKernel {
    Complex mu;
    CVec a;
    int power;
};

}  // namespace weight

using WeightSpec = std::variant<weight::Constant, weight::KernelPower, weight::NormalizedKernel>;

/// Every supported weight written as coef * (1 - <z, v>)^{-power}.
struct KernelPowerForm {
    Complex coef;
    CVec v;
    int power;

    bool is_constant(double tol = 1e-12) const { return power == 0 || v.norm() <= tol; }
};

inline KernelPowerForm canonical_form(const WeightSpec& psi, int dim)
{
    return std::visit(
        [dim](const auto& w) -> KernelPowerForm {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, weight::Constant>) {
                return {w.c, CVec::Zero(dim), 0};
            } else if constexpr (std::is_same_v<T, weight::KernelPower>) {
                require_same_dim(w.a0.size(), dim, "weight a0");
                return {w.a1, w.a0.conjugate(), w.power};
            } else {
                require_same_dim(w.a.size(), dim, "weight a");
                const double r2 = w.a.squaredNorm();
                return {w.mu * std::pow(1.0 - r2, 0.5 * w.power), w.a, w.power};
            }
        },
        psi);
}

/// Parameter vector whose norm must stay below 1 (empty for constants).
inline CVec weight_center(const WeightSpec& psi)
{
    if (auto* k = std::get_if<weight::KernelPower>(&psi)) return k->a0;
    if (auto* n = std::get_if<weight::NormalizedKernel>(&psi)) return n->a;
    return {};
}

inline bool is_constant_weight(const WeightSpec& psi, int dim) { return canonical_form(psi, dim).is_constant(); }

inline Complex eval_weight(const WeightSpec& psi, const CVec& z)
{
    const auto f = canonical_form(psi, static_cast<int>(z.size()));
    if (f.power == 0) return f.coef;
    const Complex u = 1.0 - inner(z, f.v);
    if (std::abs(u) < kDenominatorEps) throw Error(ErrorKind::DenominatorVanishes, "weight denominator vanishes");
    return f.coef * std::pow(u, -f.power);
}

/// d psi / d z_k, for all k.
inline CVec weight_gradient(const WeightSpec& psi, const CVec& z)
{
    const int n = static_cast<int>(z.size());
    const auto f = canonical_form(psi, n);
    if (f.power == 0) return CVec::Zero(n);
    const Complex u = 1.0 - inner(z, f.v);
    return f.coef * static_cast<double>(f.power) * std::pow(u, -f.power - 1) * f.v.conjugate();
}

/// d^2 psi / (d z_k d z_l)
inline CMat weight_hessian(const WeightSpec& psi, const CVec& z)
{
    const int n = static_cast<int>(z.size());
    const auto f = canonical_form(psi, n);
    if (f.power == 0) return CMat::Zero(n, n);
    const Complex u = 1.0 - inner(z, f.v);
    const CVec vb = f.v.conjugate();
    return f.coef * static_cast<double>(f.power) * static_cast<double>(f.power + 1) * std::pow(u, -f.power - 2) *
           (vb * vb.transpose());
}

/// Truncated Taylor expansion of psi at the origin.
inline PowerSeries weight_series(const WeightSpec& psi, int dim, int degree)
{
    const CVec center = weight_center(psi);
    if (center.size() > 0 && !(center.norm() < 1.0))
        throw Error(ErrorKind::NotInBall, "weight parameter must lie in the open ball");
    const auto f = canonical_form(psi, dim);
    if (f.power == 0) return PowerSeries::constant(dim, degree, f.coef);
    return expand_reciprocal_linear(f.v, f.power, degree) * f.coef;
}

}  // namespace wcomp
