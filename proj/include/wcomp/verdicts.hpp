/**
 * @file verdicts.hpp
 * @brief Executable classification predicates and constructors for weighted
 *        composition operators on the Dirichlet and Hardy spaces of the ball.
 *
 * A predicate returns a Verdict listing every condition it tested with the
 * measured residual and tolerance, so a failing verdict names the first
 * violated condition together with its numeric slack.
 */

#pragma once

#include "wcomp/operator.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wcomp {

inline constexpr double kLinearTol = 1e-12;
inline constexpr double kMatrixTol = 1e-10;
inline constexpr double kRealTol = 1e-12;
inline constexpr double kSingularTol = 1e-12;

/// One tested identity lhs = rhs; `residual` is ||lhs - rhs|| or the
/// measured violation for inequality and qualitative conditions.
struct Condition {
    std::string name;
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;

    bool ok() const { return residual <= tolerance; }
    /// Positive when satisfied, negative by the amount of violation.
    double slack() const { return tolerance - residual; }
};

struct Verdict {
    std::string theorem;
    bool holds = false;
    std::vector<Condition> conditions;
    std::map<std::string, double> diagnostics;

    /// First failing condition, if any.
    const Condition* witness() const
    {
        for (const auto& c : conditions)
            if (!c.ok()) return &c;
        return nullptr;
    }

    Verdict& add(Condition c)
    {
        conditions.push_back(std::move(c));
        return *this;
    }

    Verdict& finish()
    {
        holds = witness() == nullptr;
        return *this;
    }
};

namespace detail {

inline Condition matrix_identity(std::string name, const CMat& lhs, const CMat& rhs, double tol)
{
    return {std::move(name), lhs.norm(), rhs.norm(), (lhs - rhs).norm(), tol};
}

inline Condition vector_identity(std::string name, const CVec& lhs, const CVec& rhs, double tol)
{
    return {std::move(name), lhs.norm(), rhs.norm(), (lhs - rhs).norm(), tol};
}

inline Condition scalar_bound(std::string name, double value, double bound, double tol)
{
    return {std::move(name), value, bound, std::max(0.0, value - bound), tol};
}

inline Condition measured(std::string name, double value, double tol) { return {std::move(name), value, 0.0, value, tol}; }

inline void require_space(const WeightedCompositionSpec& w, SpaceType t)
{
    if (w.space.kind != t)
        throw Error(ErrorKind::WrongSpace, "predicate requires the " + to_string(t) + " space");
}

inline void require_symmetric(const CMat& a, const char* what)
{
    if ((a - a.transpose()).norm() > kMatrixTol) throw Error(ErrorKind::NotSymmetric, std::string(what) + " is not symmetric");
}

/// Distance of psi from a constant: the norm of its kernel-power direction.
inline double weight_variation(const WeightSpec& psi, int dim)
{
    const auto f = canonical_form(psi, dim);
    return f.power == 0 ? 0.0 : f.v.norm();
}

/// max(|B|, |C|) of the associated matrix normalized to D = 1; 1 when D vanishes.
inline double affine_slack(const LinearFractionalMap& phi)
{
    const auto lin = linear_part(phi);
    return lin ? lin->affine_slack : 1.0;
}

inline CMat derivative_at_origin(const LinearFractionalMap& phi) { return phi.jacobian(CVec::Zero(phi.dim())); }

/// Shared part of the Dirichlet classifications: constant psi, linear phi.
inline void dirichlet_form_conditions(Verdict& v, const WeightedCompositionSpec& w)
{
    v.add(measured("psi constant", weight_variation(w.psi, w.space.dim), kLinearTol));
    v.add(measured("phi linear", affine_slack(w.phi), kLinearTol));
}

}  // namespace detail

/// Criterion: W is J-symmetric on the Dirichlet space iff psi = c and
/// phi(z) = S z with S symmetric, ||S|| <= 1.
inline Verdict classify_dirichlet_J(const WeightedCompositionSpec& w)
{
    detail::require_space(w, SpaceType::Dirichlet);
    Verdict v{"dirichlet_J", false, {}, {}};
    detail::dirichlet_form_conditions(v, w);
    const CMat s = detail::derivative_at_origin(w.phi);
    v.add(detail::matrix_identity("S = S^T", s, s.transpose(), kMatrixTol));
    v.add(detail::scalar_bound("||S|| <= 1", spectral_norm(s), 1.0, kMatrixTol));
    return v.finish();
}

/// Criterion: W is (C_{Uz} J)-symmetric on the Dirichlet space iff psi = c and
/// phi(z) = S conj(U) z with S symmetric, ||S|| <= 1, S conj(U) = conj(U) S.
///
/// The diagnostic "realized condition" is ||conj(S) U^2 - U^2 S^*||, the exact
/// requirement for the conjugation f -> (Jf)(Uz). It is implied by the
/// commutation conditions and coincides with them unless U has eigenvalues +-lambda
/// or S takes the special non-symmetric form it permits.
inline Verdict classify_dirichlet_JCU(const WeightedCompositionSpec& w, const CMat& u)
{
    detail::require_space(w, SpaceType::Dirichlet);
    require_same_dim(u.rows(), w.space.dim, "U");
    validate_unitary_symmetric(u);
    Verdict v{"dirichlet_JCU", false, {}, {}};
    detail::dirichlet_form_conditions(v, w);
    const CMat ubar = u.conjugate();
    const CMat s = detail::derivative_at_origin(w.phi) * u;
    v.add(detail::matrix_identity("S = S^T", s, s.transpose(), kMatrixTol));
    v.add(detail::scalar_bound("||S|| <= 1", spectral_norm(s), 1.0, kMatrixTol));
    v.add(detail::matrix_identity("S conj(U) = conj(U) S", s * ubar, ubar * s, kMatrixTol));
    const CMat u2 = u * u;
    v.diagnostics["realized condition"] = (s.conjugate() * u2 - u2 * s.adjoint()).norm();
    return v.finish();
}

/// Criterion: W is Hermitian on the Dirichlet space iff psi = c real and
/// phi(z) = H z with H Hermitian; boundedness adds ||H|| <= 1.
inline Verdict classify_dirichlet_hermitian(const WeightedCompositionSpec& w)
{
    detail::require_space(w, SpaceType::Dirichlet);
    Verdict v{"dirichlet_hermitian", false, {}, {}};
    detail::dirichlet_form_conditions(v, w);
    const Complex c = eval_weight(w.psi, CVec::Zero(w.space.dim));
    v.add(detail::measured("c real", std::abs(c.imag()), kRealTol * std::max(1.0, std::abs(c))));
    const CMat h = detail::derivative_at_origin(w.phi);
    v.add(detail::matrix_identity("H = H^*", h, h.adjoint(), kMatrixTol));
    v.add(detail::scalar_bound("||H|| <= 1", spectral_norm(h), 1.0, kMatrixTol));
    return v.finish();
}

/// The Hardy-space family psi = a1 / (1 - <z, conj(a0)>)^N,
/// phi = (a0 - A z) / (1 - <z, conj(a0)>) with A symmetric.
struct HardyFamily {
    Complex a1;
    CVec a0;
    CMat a;

    WeightSpec psi() const { return weight::KernelPower{a1, a0, static_cast<int>(a0.size())}; }
    LinearFractionalMap phi() const { return {-a, a0, -a0.conjugate(), Complex(1.0)}; }
    WeightedCompositionSpec spec() const { return {SpaceKind::hardy(static_cast<int>(a0.size())), psi(), phi()}; }
};

/// Recovers (a1, a0, A) from a symbol pair, or throws UnsupportedFamily.
inline HardyFamily extract_hardy_family(const WeightedCompositionSpec& w, double tol = kMatrixTol)
{
    const int n = w.space.dim;
    const auto form = canonical_form(w.psi, n);
    if (form.power != 0 && form.power != n && !form.is_constant())
        throw Error(ErrorKind::UnsupportedFamily, "weight power must equal the dimension");
    const Complex d = w.phi.d();
    if (std::abs(d) <= kDenominatorEps) throw Error(ErrorKind::UnsupportedFamily, "phi(0) is undefined");
    const CVec a0 = w.phi.b() / d;
    const CMat a = -w.phi.a() / d;
    const CVec c = w.phi.c() / std::conj(d);
    if ((c + a0.conjugate()).norm() > tol)
        throw Error(ErrorKind::UnsupportedFamily, "phi denominator is not 1 - <z, conj(phi(0))>");
    const CVec v = form.is_constant() ? CVec::Zero(n) : form.v;
    if ((v - a0.conjugate()).norm() > tol)
        throw Error(ErrorKind::UnsupportedFamily, "weight pole does not match phi(0)");
    return {form.coef, a0, a};
}

/// Criterion: W is unitary iff a1 = lambda (1-|a0|^2)^{N/2},
/// conj(A) A - conj(a0) a0^T = (1-|a0|^2) I and A conj(a0) = a0;
/// for a0 = 0, iff |a1| = 1 and A unitary.
/// Diagnostics carry the Krein multiplier of m_phi and the three identities
/// |k|^2 (A^*A - conj(a0) conj(a0)^*) = I, |k|^2 (conj(a0) - A^* a0) = 0,
/// |k|^2 (a0^* a0 - 1) = -1 it must satisfy when phi is an automorphism.
inline Verdict hardy_unitary_check(Complex a1, const CVec& a0, const CMat& a)
{
    detail::require_symmetric(a, "A");
    require_same_dim(a.rows(), a0.size(), "A vs a0");
    const auto n = a.rows();
    const double r2 = a0.squaredNorm();
    const CMat id = CMat::Identity(n, n);
    Verdict v{"hardy_unitary", false, {}, {}};
    if (r2 == 0.0) {
        v.add({"|a1| = 1", std::abs(a1), 1.0, std::abs(std::abs(a1) - 1.0), kMatrixTol});
        v.add(detail::matrix_identity("A^* A = I", a.adjoint() * a, id, kMatrixTol));
    } else {
        const double target = std::pow(1.0 - r2, 0.5 * static_cast<double>(n));
        v.add({"|a1| = (1-|a0|^2)^(N/2)", std::abs(a1), target, std::abs(std::abs(a1) - target), kMatrixTol});
        v.add(detail::matrix_identity("conj(A) A - conj(a0) a0^T = (1-|a0|^2) I",
                                      a.conjugate() * a - a0.conjugate() * a0.transpose(), (1.0 - r2) * id, kMatrixTol));
        v.add(detail::vector_identity("A conj(a0) = a0", a * a0.conjugate(), a0, kMatrixTol));
    }
    const HardyFamily fam{a1, a0, a};
    if (const auto k2 = krein_multiplier(fam.phi().assoc_matrix())) {
        v.diagnostics["|k|^2"] = *k2;
        v.diagnostics["gram residual"] = (*k2 * (a.adjoint() * a - a0.conjugate() * a0.conjugate().adjoint()) - id).norm();
        v.diagnostics["center residual"] = (*k2 * (a0.conjugate() - a.adjoint() * a0)).norm();
        v.diagnostics["normalization residual"] = std::abs(*k2 * (r2 - 1.0) + 1.0);
    }
    return v.finish();
}

/// Criterion: W is Hermitian iff a1, a0 and A are real.
inline Verdict hardy_hermitian_check(Complex a1, const CVec& a0, const CMat& a)
{
    detail::require_symmetric(a, "A");
    Verdict v{"hardy_hermitian", false, {}, {}};
    v.add(detail::measured("a1 real", std::abs(a1.imag()), kRealTol));
    v.add(detail::measured("a0 real", a0.imag().cwiseAbs().maxCoeff(), kRealTol));
    v.add(detail::measured("A real", a.imag().cwiseAbs().maxCoeff(), kRealTol));
    return v.finish();
}

namespace unitary_jsym {

/// Psi = lambda, Phi = U z.
struct ConstantRotation {
    Complex lambda;
    CMat u;
};

/// Psi = mu (1-|a|^2)^{N/2} / (1 - <z,a>)^N, Phi = U (a - T z) / (1 - <z,a>).
struct KernelAutomorphism {
    Complex mu;
    CVec a;
    CMat u;
};

}  // namespace unitary_jsym

using UnitaryJsymChoice = std::variant<unitary_jsym::ConstantRotation, unitary_jsym::KernelAutomorphism>;

struct SymbolPair {
    WeightSpec psi;
    LinearFractionalMap phi;
};

/// Self-adjoint T = sqrt(1-|a|^2) I + (1 - sqrt(1-|a|^2)) a a^* / |a|^2 of
/// the involution phi_a; equals make_heart_matrix(a) for real a.
inline CMat involution_matrix(const CVec& a)
{
    return -make_involution(a).a();
}

/// Unitary and J-symmetric pair (Psi, Phi); throws PreconditionViolated
/// listing each failed requirement.
inline SymbolPair build_unitary_Jsym(const UnitaryJsymChoice& choice)
{
    std::vector<std::string> failed;
    auto check_u = [&](const CMat& u) {
        const auto id = CMat::Identity(u.rows(), u.cols());
        if (u.rows() != u.cols() || (u * u.adjoint() - id).norm() > kMatrixTol) failed.emplace_back("U unitary");
        if (u.rows() == u.cols() && (u - u.transpose()).norm() > kMatrixTol) failed.emplace_back("U symmetric");
    };
    auto raise = [&] {
        std::string msg = "unmet preconditions:";
        for (const auto& f : failed) msg += " [" + f + "]";
        throw Error(ErrorKind::PreconditionViolated, msg);
    };

    if (const auto* rot = std::get_if<unitary_jsym::ConstantRotation>(&choice)) {
        if (std::abs(std::abs(rot->lambda) - 1.0) > kMatrixTol) failed.emplace_back("|lambda| = 1");
        check_u(rot->u);
        if (!failed.empty()) raise();
        return {weight::Constant{rot->lambda}, LinearFractionalMap::linear(rot->u)};
    }

    const auto& ka = std::get<unitary_jsym::KernelAutomorphism>(choice);
    const int n = static_cast<int>(ka.a.size());
    if (std::abs(std::abs(ka.mu) - 1.0) > kMatrixTol) failed.emplace_back("|mu| = 1");
    if (!(ka.a.norm() < 1.0)) failed.emplace_back("||a|| < 1");
    check_u(ka.u);
    if (ka.u.rows() != n) failed.emplace_back("U matches dim(a)");
    if (!failed.empty()) raise();
    if ((ka.u * ka.a - ka.a.conjugate()).norm() > kMatrixTol) failed.emplace_back("U a = conj(a)");
    const CMat t = involution_matrix(ka.a);
    const CMat ut = ka.u * t;
    if ((ut - ut.transpose()).norm() > kMatrixTol) failed.emplace_back("U T symmetric");
    if (!failed.empty()) raise();
    return {weight::NormalizedKernel{ka.mu, ka.a, n}, LinearFractionalMap(-ut, ka.u * ka.a, -ka.a, Complex(1.0))};
}

/// Transformed symbols for which W_{psi~, phi~} is C-symmetric, given a
/// J-symmetric pair from the Hardy family:
///   C = C_{Uz} J:       psi~ = psi o U,          phi~ = phi o U
///   C = W_{Psi,Phi} J:  psi~ = Psi * (psi o Phi), phi~ = phi o Phi
/// The weighted case stays closed form when the pole of Psi matches the
/// denominator of Phi, as it does for every pair from build_unitary_Jsym.
inline SymbolPair conjugate_symbols(const WeightedCompositionSpec& w, const ConjugationSpec& c)
{
    const int n = w.space.dim;
    const HardyFamily fam = extract_hardy_family(w);
    detail::require_symmetric(fam.a, "A");

    if (std::holds_alternative<conjugation::PlainJ>(c)) return {w.psi, w.phi};

    if (const auto* jcu = std::get_if<conjugation::JCU>(&c)) {
        validate_unitary_symmetric(jcu->u);
        // 1 - <Uz, conj(a0)> = 1 - <z, U^* conj(a0)>
        const CVec a0 = jcu->u.transpose() * fam.a0;
        return {weight::KernelPower{fam.a1, a0, n}, compose(w.phi, LinearFractionalMap::linear(jcu->u))};
    }

    const auto& wj = std::get<conjugation::WPhiJ>(c);
    const auto outer = canonical_form(wj.psi, n);
    const auto& big_phi = wj.phi;
    const Complex d = big_phi.d();
    if (outer.power != n) throw Error(ErrorKind::UnsupportedFamily, "Psi must be a kernel power of order N");
    // Denominator of Phi must be d (1 - <z, v>) with v the pole direction of Psi.
    if ((big_phi.c() + outer.v * std::conj(d)).norm() > kMatrixTol)
        throw Error(ErrorKind::UnsupportedFamily, "Psi pole does not match the denominator of Phi");
    // psi(Phi(z)) = a1 den^N / (den - a0^T (A_Phi z + B_Phi))^N; den^N cancels Psi's pole.
    const Complex delta = d - (fam.a0.transpose() * big_phi.b())(0);
    if (std::abs(delta) <= kDenominatorEps) throw Error(ErrorKind::UnsupportedFamily, "transformed weight is singular");
    const CVec lin = big_phi.c() - (big_phi.a().transpose() * fam.a0).conjugate();
    const CVec pole = -lin / std::conj(delta);
    const Complex coef = outer.coef * fam.a1 * std::pow(d / delta, n);
    return {weight::KernelPower{coef, pole.conjugate(), n}, compose(w.phi, big_phi)};
}

/// Result of the affine-map criterion, with the objects it derived.
struct AffineSymmetry {
    Verdict verdict;
    CVec b;
};

/// Criterion: for sigma(z) = A z + c with A symmetric, b = (I-A)^{-1} c real in
/// the ball and A b = lambda b, C_sigma is J W_{psi_b, phi_b}-symmetric.
/// Because b is real, J commutes with W_{psi_b, phi_b}, so the kernel
/// diagnostic uses the W_{Psi,Phi} J conjugation.
inline AffineSymmetry jw_affine_symmetry_check(const CMat& a, const CVec& c, const SamplePairs& samples)
{
    detail::require_symmetric(a, "A");
    require_same_dim(a.rows(), c.size(), "A vs c");
    const auto n = a.rows();
    const CMat ima = CMat::Identity(n, n) - a;
    if (std::abs(ima.determinant()) < kSingularTol) throw Error(ErrorKind::SingularIminusA, "1 is an eigenvalue of A");
    const CVec b = ima.partialPivLu().solve(c);

    Verdict v{"jw_affine", false, {}, {}};
    v.add(detail::measured("b real", b.imag().norm(), kMatrixTol * std::max(1.0, b.norm())));
    v.add(detail::scalar_bound("||b|| < 1", b.norm(), 1.0 - std::numeric_limits<double>::epsilon(), 0.0));
    const CVec ab = a * b;
    const double bb = b.squaredNorm();
    const Complex rayleigh = bb == 0.0 ? Complex(0.0) : b.dot(ab) / bb;
    v.add({"A b collinear with b", ab.norm(), (rayleigh * b).norm(), (ab - rayleigh * b).norm(),
           kMatrixTol * std::max(1.0, spectral_norm(a) * b.norm())});
    v.finish();
    v.diagnostics["lambda_re"] = rayleigh.real();
    v.diagnostics["lambda_im"] = rayleigh.imag();

    if (v.holds) {
        const CVec br = b.real().cast<Complex>();
        const CMat t = make_heart_matrix(br);
        v.diagnostics["Tc = c residual"] = (t * c - c).norm();
        v.diagnostics["AT = TA residual"] = (a * t - t * a).norm();
        const WeightedCompositionSpec w{SpaceKind::hardy(static_cast<int>(n)), weight::Constant{1.0},
                                        LinearFractionalMap::affine(a, c)};
        const conjugation::WPhiJ conj{weight::NormalizedKernel{1.0, br, static_cast<int>(n)}, make_involution(br)};
        v.diagnostics["kernel residual"] = kernel_symmetry_residual(w, conj, samples);
    }
    return {std::move(v), b};
}

/// Criterion: with psi = a1 / (1 - <Uz, conj(a0)>)^N and
/// phi = (a0 - A U z) / (1 - <Uz, conj(a0)>), W is normal iff
///   (i)  conj(UA) A U - conj(U a0) a0^T U = A conj(A) - a0 a0^*
///   (ii) conj(UA) a0 - conj(U a0) = A conj(a0) - a0.
/// The diagnostics give the independent route through associated matrices:
/// m_{phi o sigma} = k m_{sigma o phi} with k = 1.
inline Verdict hardy_normality_check(Complex a1, const CVec& a0, const CMat& a, const CMat& u)
{
    std::vector<std::string> failed;
    if ((a - a.transpose()).norm() > kMatrixTol) failed.emplace_back("A symmetric");
    const auto id = CMat::Identity(u.rows(), u.cols());
    if ((u * u.adjoint() - id).norm() > kMatrixTol || (u - u.transpose()).norm() > kMatrixTol)
        failed.emplace_back("U unitary symmetric");
    if (!(a0.norm() < 1.0)) failed.emplace_back("||a0|| < 1");
    if (a1 == Complex(0.0)) failed.emplace_back("a1 != 0");
    if (!failed.empty()) {
        std::string msg = "unmet preconditions:";
        for (const auto& f : failed) msg += " [" + f + "]";
        throw Error(ErrorKind::PreconditionViolated, msg);
    }

    const CMat ua_bar = (u * a).conjugate();
    const CVec ua0_bar = (u * a0).conjugate();
    Verdict v{"hardy_normality", false, {}, {}};
    v.add(detail::matrix_identity("conj(UA) A U - conj(U a0) a0^T U = A conj(A) - a0 a0^*",
                                  ua_bar * a * u - ua0_bar * a0.transpose() * u,
                                  a * a.conjugate() - a0 * a0.adjoint(), kMatrixTol));
    v.add(detail::vector_identity("conj(UA) a0 - conj(U a0) = A conj(a0) - a0", ua_bar * a0 - ua0_bar,
                                  a * a0.conjugate() - a0, kMatrixTol));
    v.finish();

    const LinearFractionalMap phi(-a * u, a0, -ua0_bar, Complex(1.0));
    const LinearFractionalMap sigma = adjoint_map(phi);
    const auto p = proportionality(compose(phi, sigma).assoc_matrix().matrix(), compose(sigma, phi).assoc_matrix().matrix());
    const bool commutes = p.residual <= kMatrixTol && std::abs(p.k - 1.0) <= kMatrixTol;
    v.diagnostics["k_re"] = p.k.real();
    v.diagnostics["k_im"] = p.k.imag();
    v.diagnostics["commutation residual"] = p.residual;
    v.diagnostics["maps commute"] = commutes ? 1.0 : 0.0;
    v.diagnostics["routes agree"] = commutes == v.holds ? 1.0 : 0.0;
    return v;
}

/// Symbols of the normality theorem as a Hardy-space spec.
inline WeightedCompositionSpec normality_symbols(Complex a1, const CVec& a0, const CMat& a, const CMat& u)
{
    const int n = static_cast<int>(a0.size());
    return {SpaceKind::hardy(n), weight::KernelPower{a1, u.transpose() * a0, n},
            LinearFractionalMap(-a * u, a0, -(u * a0).conjugate(), Complex(1.0))};
}


/// Recovers (a1, a0, A) of the normality family for a given U, or throws
/// UnsupportedFamily.
inline HardyFamily extract_normality_family(const WeightedCompositionSpec& w, const CMat& u, double tol = kMatrixTol)
{
    const int n = w.space.dim;
    require_same_dim(u.rows(), n, "U");
    const Complex d = w.phi.d();
    if (std::abs(d) <= kDenominatorEps) throw Error(ErrorKind::UnsupportedFamily, "phi(0) is undefined");
    const CVec a0 = w.phi.b() / d;
    const CMat a = -w.phi.a() / d * u.adjoint();
    if ((w.phi.c() / std::conj(d) + (u * a0).conjugate()).norm() > tol)
        throw Error(ErrorKind::UnsupportedFamily, "phi denominator is not 1 - <Uz, conj(phi(0))>");
    const auto form = canonical_form(w.psi, n);
    const CVec pole = (u.transpose() * a0).conjugate();
    if (form.is_constant() ? pole.norm() > tol : (form.power != n || (form.v - pole).norm() > tol))
        throw Error(ErrorKind::UnsupportedFamily, "weight is not a1 / (1 - <Uz, conj(a0)>)^N");
    return {form.coef, a0, a};
}

}  // namespace wcomp
