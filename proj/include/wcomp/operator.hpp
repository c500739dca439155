/**
 * @file operator.hpp
 * @brief Finite compressions of weighted composition operators, anti-linear
 *        conjugations, and residual checks for complex symmetry, Hermitian,
 *        unitary and normal behaviour.
 *
 * Compressions P_D W P_D are written on the orthonormal monomial basis
 * e_alpha = z^alpha / ||z^alpha|| (graded-lex order). Conjugations are
 * anti-linear maps v -> M conj(v) on the same coordinates.
 *
 * PlainJ and JCU preserve each homogeneous block, so they commute with P_D
 * and every complex-symmetry identity of the full operator survives
 * compression exactly. W_{Psi,Phi} J does not preserve degree; its
 * compression converges only strongly, so its residuals are measured on a
 * fixed low-degree probe block and the kernel-level check is the reference.
 */

#pragma once

#include "wcomp/lfmap.hpp"
#include "wcomp/sampling.hpp"
#include "wcomp/series.hpp"
#include "wcomp/space.hpp"
#include "wcomp/weight.hpp"

#include <variant>
#include <vector>

namespace wcomp {

inline constexpr double kExactTol = 1e-9;
inline constexpr double kConjugationEnforceTol = 1e-6;
inline constexpr int kDefaultProbeDegree = 1;

struct WeightedCompositionSpec {
    SpaceKind space;
    WeightSpec psi;
    LinearFractionalMap phi;
};

namespace conjugation {

/// f -> conj(f(conj z))
struct PlainJ {};

/// f -> (J f)(U z) = conj(f(conj(U z))), i.e. C_{Uz} J, for U unitary symmetric.
struct JCU {
    CMat u;
};

/// f -> Psi (J f) o Phi, i.e. W_{Psi,Phi} J.
struct WPhiJ {
    WeightSpec psi;
    LinearFractionalMap phi;
};

}  // namespace conjugation

using ConjugationSpec = std::variant<conjugation::PlainJ, conjugation::JCU, conjugation::WPhiJ>;

inline const char* conjugation_name(const ConjugationSpec& c)
{
    switch (c.index()) {
    case 0: return "J";
    case 1: return "JCU";
    default: return "WPhiJ";
    }
}

struct OperatorCompression {
    SpaceKind space;
    int degree;
    BasisPtr basis;
    CMat matrix;
    /// psi constant and phi linear: the compression is an exact block of W.
    bool degree_preserving;
};

struct AntiLinearCompression {
    CMat m;
    BasisPtr basis;
    /// True when the conjugation commutes with P_D.
    bool exact;
};

inline bool is_degree_preserving(const WeightedCompositionSpec& w)
{
    auto lin = linear_part(w.phi);
    return is_constant_weight(w.psi, w.space.dim) && lin && lin->affine_slack <= 1e-12;
}

/// Column beta holds the coefficients of psi * phi^beta, rescaled to
/// orthonormal coordinates: entry(alpha, beta) = coeff_alpha ||z^alpha|| / ||z^beta||.
inline OperatorCompression build_compression(const WeightedCompositionSpec& w, int degree)
{
    const int n = w.space.dim;
    require_same_dim(w.phi.dim(), n, "map dimension vs space");
    const BasisPtr basis = monomial_basis(n, degree);
    const PowerSeries psi = weight_series(w.psi, n, degree);
    const auto comps = map_component_series(w.phi, degree);
    const Eigen::VectorXd norms = monomial_norms(w.space, *basis);

    const auto size = basis->size();
    std::vector<PowerSeries> powers;
    powers.reserve(size);
    powers.push_back(PowerSeries::constant(n, degree, 1.0));
    for (std::size_t r = 1; r < size; ++r) {
        MultiIndex beta = basis->at(r);
        int j = 0;
        while (beta.exps[static_cast<std::size_t>(j)] == 0) ++j;
        beta.exps[static_cast<std::size_t>(j)] -= 1;
        powers.push_back(powers[static_cast<std::size_t>(basis->rank(beta))] * comps[static_cast<std::size_t>(j)]);
    }

    CMat t(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t b = 0; b < size; ++b) {
        const PowerSeries column = psi * powers[b];
        const auto cb = static_cast<Eigen::Index>(b);
        for (Eigen::Index a = 0; a < t.rows(); ++a) t(a, cb) = column.coeffs()(a) * norms(a) / norms(cb);
    }
    return {w.space, degree, basis, std::move(t), is_degree_preserving(w)};
}

struct ConjugationResiduals {
    double involution;  // ||M conj(M) - I||_F
    double isometry;    // ||M^* M - I||_F
    int probe_degree;   // -1 when measured on the full compression
};

inline CMat leading_block(const CMat& m, std::size_t n)
{
    const auto k = static_cast<Eigen::Index>(n);
    return m.topLeftCorner(k, k);
}

/// Residuals on the full matrix when `probe_degree` < 0, otherwise on the
/// leading block of total degree <= probe_degree.
inline ConjugationResiduals conjugation_residuals(const AntiLinearCompression& c, int probe_degree = -1)
{
    CMat inv = c.m * c.m.conjugate();
    CMat iso = c.m.adjoint() * c.m;
    if (probe_degree >= 0) {
        const auto k = c.basis->leading_size(probe_degree);
        inv = leading_block(inv, k);
        iso = leading_block(iso, k);
    }
    const auto id = CMat::Identity(inv.rows(), inv.cols());
    return {(inv - id).norm(), (iso - id).norm(), probe_degree};
}

inline void validate_unitary_symmetric(const CMat& u, double tol = 1e-10)
{
    if (u.rows() != u.cols()) throw Error(ErrorKind::InvalidConjugation, "U must be square");
    const auto id = CMat::Identity(u.rows(), u.cols());
    if ((u * u.adjoint() - id).norm() > tol) throw Error(ErrorKind::InvalidConjugation, "U is not unitary");
    if ((u - u.transpose()).norm() > tol) throw Error(ErrorKind::InvalidConjugation, "U is not symmetric");
}

inline AntiLinearCompression build_conjugation(const ConjugationSpec& spec, const SpaceKind& space, int degree)
{
    const BasisPtr basis = monomial_basis(space.dim, degree);
    const auto size = static_cast<Eigen::Index>(basis->size());
    AntiLinearCompression out{CMat::Identity(size, size), basis, true};
    if (std::holds_alternative<conjugation::JCU>(spec)) {
        const CMat& u = std::get<conjugation::JCU>(spec).u;
        require_same_dim(u.rows(), space.dim, "conjugation matrix");
        validate_unitary_symmetric(u);
        out.m = build_compression({space, weight::Constant{1.0}, LinearFractionalMap::linear(u)}, degree).matrix;
    } else if (std::holds_alternative<conjugation::WPhiJ>(spec)) {
        const auto& c = std::get<conjugation::WPhiJ>(spec);
        out.m = build_compression({space, c.psi, c.phi}, degree).matrix;
        out.exact = false;
        return out;
    }
    const auto r = conjugation_residuals(out);
    if (r.involution > kConjugationEnforceTol || r.isometry > kConjugationEnforceTol)
        throw Error(ErrorKind::InvalidConjugation, "conjugation fails the involution/isometry laws");
    return out;
}

/// ||T M - M T^T||_F / ||T||_F: the finite form of T C = C T^* for C = M o conj.
inline double symmetry_residual_matrix(const OperatorCompression& t, const AntiLinearCompression& c,
                                       int probe_degree = -1)
{
    require_same_dim(t.matrix.rows(), c.m.rows(), "compression vs conjugation");
    CMat r = t.matrix * c.m - c.m * t.matrix.transpose();
    if (probe_degree >= 0) r = leading_block(r, t.basis->leading_size(probe_degree));
    const double scale = t.matrix.norm();
    return scale == 0.0 ? r.norm() : r.norm() / scale;
}

inline double hermitian_residual(const OperatorCompression& t)
{
    const double scale = t.matrix.norm();
    const double r = (t.matrix - t.matrix.adjoint()).norm();
    return scale == 0.0 ? r : r / scale;
}

/// ||T^* T - I||_F, optionally on the leading probe block. Only the
/// degree-preserving case is exact.
inline double unitary_residual(const OperatorCompression& t, int probe_degree = -1)
{
    CMat g = t.matrix.adjoint() * t.matrix;
    if (probe_degree >= 0) g = leading_block(g, t.basis->leading_size(probe_degree));
    return (g - CMat::Identity(g.rows(), g.cols())).norm();
}

inline double normal_residual(const OperatorCompression& t)
{
    const double scale = t.matrix.squaredNorm();
    const CMat c = t.matrix.adjoint() * t.matrix - t.matrix * t.matrix.adjoint();
    return scale == 0.0 ? c.norm() : c.norm() / scale;
}

/// (C K_v)(x) for the three conjugation kinds. Kernels have real Taylor
/// coefficients, so J K_v = K_{conj v}.
inline Complex conjugated_kernel_eval(const ConjugationSpec& c, const SpaceKind& space, const CVec& v, const CVec& x)
{
    const CVec vbar = v.conjugate();
    if (std::holds_alternative<conjugation::PlainJ>(c)) return kernel_eval(space, vbar, x);
    if (const auto* jcu = std::get_if<conjugation::JCU>(&c)) return kernel_eval(space, vbar, jcu->u * x);
    const auto& wj = std::get<conjugation::WPhiJ>(c);
    return eval_weight(wj.psi, x) * kernel_eval(space, vbar, wj.phi(x));
}

using SamplePairs = std::vector<std::pair<CVec, CVec>>;

/// max over samples of |(W C K_w)(z) - (C W^* K_w)(z)| / (1 + |K_w(z)|),
/// every factor evaluated in closed form.
inline double kernel_symmetry_residual(const WeightedCompositionSpec& w, const ConjugationSpec& c,
                                       const SamplePairs& samples)
{
    double worst = 0.0;
    for (const auto& [z, pt] : samples) {
        const auto adj = adjoint_on_kernel(w.psi, w.phi, pt);
        const Complex lhs = eval_weight(w.psi, z) * conjugated_kernel_eval(c, w.space, pt, w.phi(z));
        const Complex rhs = std::conj(adj.coeff) * conjugated_kernel_eval(c, w.space, adj.point, z);
        const double scale = 1.0 + std::abs(kernel_eval(w.space, pt, z));
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

/// max over samples of |(W K_w)(z) - (W^* K_w)(z)| / (1 + |K_w(z)|).
inline double kernel_hermitian_residual(const WeightedCompositionSpec& w, const SamplePairs& samples)
{
    double worst = 0.0;
    for (const auto& [z, pt] : samples) {
        const auto adj = adjoint_on_kernel(w.psi, w.phi, pt);
        const Complex lhs = eval_weight(w.psi, z) * kernel_eval(w.space, pt, w.phi(z));
        const Complex rhs = adj.coeff * kernel_eval(w.space, adj.point, z);
        const double scale = 1.0 + std::abs(kernel_eval(w.space, pt, z));
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

}  // namespace wcomp
