/**
 * @file sampling.hpp
 * @brief Seeded generators for interior points and structured random matrices.
 *
 * All generators draw from a caller-owned std::mt19937_64, so a fixed seed
 * reproduces the same sample set on every run.
 */

#pragma once

#include "wcomp/types.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace wcomp {

/// Default seed for kernel-level sample sets.
inline constexpr std::uint64_t kDefaultSampleSeed = 0xB411;
inline constexpr double kDefaultSampleRadius = 0.6;
inline constexpr int kDefaultSampleCount = 100;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex random_complex(Rng& rng, double scale = 1.0)
{
    double re = uniform(rng, -scale, scale);
    double im = uniform(rng, -scale, scale);
    return {re, im};
}

/// Point drawn componentwise-uniformly from the cube and rejected until it
/// lies in the open ball of the given radius.
inline CVec random_ball_point(Rng& rng, int dim, double radius)
{
    CVec z(dim);
    for (;;) {
        for (int j = 0; j < dim; ++j) z(j) = random_complex(rng, radius);
        if (z.norm() < radius) return z;
    }
}

/// Point with norm exactly `radius` and uniformly random direction.
inline CVec random_sphere_point(Rng& rng, int dim, double radius)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVec z(dim);
    for (;;) {
        for (int j = 0; j < dim; ++j) z(j) = Complex(gauss(rng), gauss(rng));
        double n = z.norm();
        if (n > 1e-8) return z * (radius / n);
    }
}

inline CVec random_real_ball_point(Rng& rng, int dim, double radius)
{
    CVec z(dim);
    for (;;) {
        for (int j = 0; j < dim; ++j) z(j) = uniform(rng, -radius, radius);
        if (z.norm() < radius) return z;
    }
}

/// Sample pairs (z, w) for kernel identities.
inline std::vector<std::pair<CVec, CVec>> sample_pairs(int dim, int count = kDefaultSampleCount,
                                                       std::uint64_t seed = kDefaultSampleSeed,
                                                       double radius = kDefaultSampleRadius)
{
    Rng rng(seed);
    std::vector<std::pair<CVec, CVec>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        CVec z = random_ball_point(rng, dim, radius);
        CVec w = random_ball_point(rng, dim, radius);
        out.emplace_back(std::move(z), std::move(w));
    }
    return out;
}

inline CMat random_complex_matrix(Rng& rng, int rows, int cols, double scale = 1.0)
{
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng, scale);
    return m;
}

inline Eigen::MatrixXd random_orthogonal(Rng& rng, int n)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    return q;
}

/// Complex symmetric matrix with spectral norm exactly `norm`.
inline CMat random_symmetric(Rng& rng, int n, double norm)
{
    CMat x = random_complex_matrix(rng, n, n);
    CMat s = 0.5 * (x + x.transpose());
    return s * (norm / spectral_norm(s));
}

inline Eigen::MatrixXd random_real_symmetric(Rng& rng, int n, double norm)
{
    Eigen::MatrixXd x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = uniform(rng, -1.0, 1.0);
    Eigen::MatrixXd s = 0.5 * (x + x.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    double r = es.eigenvalues().cwiseAbs().maxCoeff();
    return s * (norm / r);
}

/// Unitary symmetric matrix Q diag(e^{i theta}) Q^T with Q real orthogonal.
/// Every unitary symmetric matrix admits this form.
inline CMat random_unitary_symmetric(Rng& rng, int n)
{
    Eigen::MatrixXd q = random_orthogonal(rng, n);
    CVec phases(n);
    for (int j = 0; j < n; ++j) phases(j) = std::polar(1.0, uniform(rng, 0.0, 2.0 * M_PI));
    return q.cast<Complex>() * phases.asDiagonal() * q.transpose().cast<Complex>();
}

inline CMat random_unitary(Rng& rng, int n)
{
    CMat x = random_complex_matrix(rng, n, n);
    Eigen::HouseholderQR<CMat> qr(x);
    CMat q = qr.householderQ();
    return q;
}

}  // namespace wcomp
