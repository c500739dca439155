/**
 * @file lfmap.hpp
 * @brief Linear fractional maps of C^N and their associated matrices.
 *
 * A map phi(z) = (A z + B) / (<z, C> + D) is stored by its four blocks and
 * corresponds to the (N+1)x(N+1) matrix [[A, B], [C^*, D]] acting on
 * homogeneous coordinates (z, 1). Composition of maps is the product of
 * associated matrices; associated matrices are meaningful only up to a
 * nonzero scalar.
 */

#pragma once

#include "wcomp/sampling.hpp"
#include "wcomp/types.hpp"

#include <optional>

namespace wcomp {

inline constexpr double kDenominatorEps = 1e-13;
inline constexpr double kKreinTol = 1e-10;
inline constexpr double kProportionalTol = 1e-10;
inline constexpr int kSelfMapSamples = 200;
inline constexpr double kSelfMapRadius = 0.99;
inline constexpr std::uint64_t kSelfMapSeed = 0x5E1F;

/// (N+1)x(N+1) matrix [[A, B], [C^*, D]], defined up to a nonzero scalar.
class AssocMatrix {
public:
    explicit AssocMatrix(CMat m) : m_(std::move(m))
    {
        if (m_.rows() != m_.cols() || m_.rows() < 2)
            throw Error(ErrorKind::DimensionMismatch, "associated matrix must be square of size >= 2");
    }

    const CMat& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()) - 1; }

    /// Scaled so the bottom-right entry is 1 when it is not negligible,
    /// otherwise so the first nonzero entry in row-major order is 1.
    AssocMatrix normalized() const
    {
        const int n = dim();
        Complex pivot = m_(n, n);
        if (std::abs(pivot) <= 1e-12) {
            const double floor = 1e-12 * m_.cwiseAbs().maxCoeff();
            pivot = Complex(0.0);
            for (int i = 0; i <= n && pivot == Complex(0.0); ++i)
                for (int j = 0; j <= n; ++j)
                    if (std::abs(m_(i, j)) > floor) {
                        pivot = m_(i, j);
                        break;
                    }
        }
        if (pivot == Complex(0.0)) return *this;
        return AssocMatrix(m_ / pivot);
    }

    AssocMatrix operator*(const AssocMatrix& rhs) const
    {
        require_same_dim(m_.rows(), rhs.m_.rows(), "associated matrix product");
        return AssocMatrix(m_ * rhs.m_);
    }

private:
    CMat m_;
};

/// Best scalar k with `lhs ~ k * rhs` in the least-squares sense, and the
/// relative Frobenius residual of that fit.
struct Proportionality {
    Complex k;
    double residual;
};

inline Proportionality proportionality(const CMat& lhs, const CMat& rhs)
{
    require_same_dim(lhs.rows(), rhs.rows(), "proportionality");
    const double rr = rhs.squaredNorm();
    if (rr == 0.0) return {Complex(0.0), lhs.norm() == 0.0 ? 0.0 : 1.0};
    // <lhs, rhs>_F / <rhs, rhs>_F
    Complex k = (rhs.adjoint() * lhs).trace() / rr;
    const double scale = std::max(lhs.norm(), (k * rhs).norm());
    const double res = scale == 0.0 ? 0.0 : (lhs - k * rhs).norm() / scale;
    return {k, res};
}

inline bool proportional(const AssocMatrix& a, const AssocMatrix& b, double tol = kProportionalTol)
{
    auto p = proportionality(a.matrix(), b.matrix());
    return std::abs(p.k) > 0.0 && p.residual <= tol;
}

class LinearFractionalMap {
public:
    LinearFractionalMap(CMat a, CVec b, CVec c, Complex d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d)
    {
        const auto n = a_.rows();
        if (n < 1 || a_.cols() != n || b_.size() != n || c_.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "linear fractional map blocks have inconsistent sizes");
        if (a_.norm() == 0.0 && b_.norm() == 0.0 && c_.norm() == 0.0 && d_ == Complex(0.0))
            throw Error(ErrorKind::PreconditionViolated, "all coefficients of the map are zero");
    }

    static LinearFractionalMap identity(int n)
    {
        return linear(CMat::Identity(n, n));
    }

    static LinearFractionalMap linear(const CMat& s)
    {
        const auto n = s.rows();
        return {s, CVec::Zero(n), CVec::Zero(n), Complex(1.0)};
    }

    /// z -> A z + c
    static LinearFractionalMap affine(const CMat& a, const CVec& c)
    {
        return {a, c, CVec::Zero(a.rows()), Complex(1.0)};
    }

    static LinearFractionalMap from_assoc(const AssocMatrix& m)
    {
        const int n = m.dim();
        const CMat& x = m.matrix();
        CMat a = x.topLeftCorner(n, n);
        CVec b = x.topRightCorner(n, 1);
        CVec c = x.bottomLeftCorner(1, n).adjoint();
        return {a, b, c, x(n, n)};
    }

    int dim() const { return static_cast<int>(a_.rows()); }
    const CMat& a() const { return a_; }
    const CVec& b() const { return b_; }
    const CVec& c() const { return c_; }
    Complex d() const { return d_; }

    Complex denominator(const CVec& z) const { return inner(z, c_) + d_; }

    CVec operator()(const CVec& z, double eps = kDenominatorEps) const
    {
        require_same_dim(z.size(), dim(), "map argument");
        const Complex den = denominator(z);
        if (std::abs(den) < eps)
            throw Error(ErrorKind::DenominatorVanishes, "denominator <z,C> + D vanishes");
        return (a_ * z + b_) / den;
    }

    AssocMatrix assoc_matrix() const
    {
        const int n = dim();
        CMat m(n + 1, n + 1);
        m.topLeftCorner(n, n) = a_;
        m.topRightCorner(n, 1) = b_;
        m.bottomLeftCorner(1, n) = c_.adjoint();
        m(n, n) = d_;
        return AssocMatrix(std::move(m));
    }

    /// Complex Jacobian: J(j, k) = d phi_j / d z_k at z.
    CMat jacobian(const CVec& z) const
    {
        const Complex den = denominator(z);
        if (std::abs(den) < kDenominatorEps)
            throw Error(ErrorKind::DenominatorVanishes, "denominator vanishes in jacobian");
        CVec num = a_ * z + b_;
        CVec cbar = c_.conjugate();
        return a_ / den - (num * cbar.transpose()) / (den * den);
    }

    /// d^2 phi_j / (d z_k d z_l) at z.
    Complex hessian(const CVec& z, int j, int k, int l) const
    {
        const Complex den = denominator(z);
        if (std::abs(den) < kDenominatorEps)
            throw Error(ErrorKind::DenominatorVanishes, "denominator vanishes in hessian");
        const Complex num = (a_.row(j) * z)(0) + b_(j);
        const Complex ck = std::conj(c_(k));
        const Complex cl = std::conj(c_(l));
        return -(a_(j, k) * cl + a_(j, l) * ck) / (den * den) + 2.0 * num * ck * cl / (den * den * den);
    }

private:
    CMat a_;
    CVec b_;
    CVec c_;
    Complex d_;
};

inline CVec eval_map(const LinearFractionalMap& phi, const CVec& z, double eps = kDenominatorEps)
{
    return phi(z, eps);
}

inline AssocMatrix assoc_matrix(const LinearFractionalMap& phi) { return phi.assoc_matrix(); }

/// sigma(z) = (A^* z - C) / (<z, -B> + conj(D)), associated matrix
/// [[A^*, -C], [-B^*, conj(D)]] = J m^* J with J = diag(I, -1).
inline LinearFractionalMap adjoint_map(const LinearFractionalMap& phi)
{
    return {phi.a().adjoint(), -phi.c(), -phi.b(), std::conj(phi.d())};
}

/// outer o inner
inline LinearFractionalMap compose(const LinearFractionalMap& outer, const LinearFractionalMap& inner_map)
{
    require_same_dim(outer.dim(), inner_map.dim(), "compose");
    return LinearFractionalMap::from_assoc(outer.assoc_matrix() * inner_map.assoc_matrix());
}

inline CMat krein_form(int n)
{
    CMat j = CMat::Identity(n + 1, n + 1);
    j(n, n) = -1.0;
    return j;
}

/// |k|^2 > 0 with |k|^2 * m^* J m = J for J = diag(I_N, -1), or nothing when
/// m is not a positive multiple of a Krein isometry.
inline std::optional<double> krein_multiplier(const AssocMatrix& m, double tol = kKreinTol)
{
    const int n = m.dim();
    const CMat j = krein_form(n);
    const CMat g = m.matrix().adjoint() * j * m.matrix();
    // least-squares fit g ~ s J
    const double s = (j * g).trace().real() / static_cast<double>(n + 1);
    if (!(s > 0.0)) return std::nullopt;
    const double scale = g.norm();
    if (scale == 0.0 || (g - s * j).norm() > tol * scale) return std::nullopt;
    return 1.0 / s;
}

/// Krein test plus a sampled self-map check on the closed ball of radius 0.99.
inline bool is_automorphism(const LinearFractionalMap& phi)
{
    if (!krein_multiplier(phi.assoc_matrix())) return false;
    Rng rng(kSelfMapSeed);
    for (int i = 0; i < kSelfMapSamples; ++i) {
        CVec z = (i % 2 == 0) ? random_ball_point(rng, phi.dim(), kSelfMapRadius)
                              : random_sphere_point(rng, phi.dim(), kSelfMapRadius);
        try {
            if (!(phi(z).norm() < 1.0)) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

/// Involutive automorphism exchanging 0 and a:
///   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>),  s_a = sqrt(1 - |a|^2).
inline LinearFractionalMap make_involution(const CVec& a)
{
    const auto n = a.size();
    const double r2 = a.squaredNorm();
    if (!(r2 < 1.0)) throw Error(ErrorKind::NotInBall, "involution parameter must lie in the open ball");
    const double s = std::sqrt(1.0 - r2);
    CMat p = CMat::Zero(n, n);
    if (r2 > 0.0) p = a * a.adjoint() / r2;
    CMat q = CMat::Identity(n, n) - p;
    return {-(p + s * q), a, -a, Complex(1.0)};
}

/// T = sqrt(1-|b|^2) I + (1 - sqrt(1-|b|^2)) b b^T / |b|^2, with T = I at b = 0.
/// Uses the plain transpose; for real b this is the self-adjoint matrix of phi_b.
inline CMat make_heart_matrix(const CVec& b)
{
    const auto n = b.size();
    const double r2 = b.squaredNorm();
    if (!(r2 < 1.0)) throw Error(ErrorKind::NotInBall, "heart matrix parameter must lie in the open ball");
    if (r2 == 0.0) return CMat::Identity(n, n);
    const double s = std::sqrt(1.0 - r2);
    return s * CMat::Identity(n, n) + (1.0 - s) * (b * b.transpose()) / r2;
}

/// Linear part S of phi when phi is linear after normalization (B = C = 0).
struct LinearPart {
    CMat s;
    double affine_slack;  // max(|B|, |C|) of the normalized matrix
};

inline std::optional<LinearPart> linear_part(const LinearFractionalMap& phi)
{
    if (std::abs(phi.d()) <= 1e-12) return std::nullopt;
    const Complex d = phi.d();
    return LinearPart{phi.a() / d, std::max((phi.b() / d).norm(), (phi.c() / std::conj(d)).norm())};
}

}  // namespace wcomp
