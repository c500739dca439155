/**
 * @file types.hpp
 * @brief Scalar, vector and matrix aliases, the error type, and small
 *        linear-algebra helpers shared by every wcomp module.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace wcomp {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
    DenominatorVanishes,
    DenominatorVanishesAtOrigin,
    NotInBall,
    OutOfDomain,
    DimensionMismatch,
    InvalidConjugation,
    WrongSpace,
    NotSymmetric,
    SingularIminusA,
    PreconditionViolated,
    UnsupportedFamily,
    SchemaError,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::DenominatorVanishesAtOrigin: return "DenominatorVanishesAtOrigin";
    case ErrorKind::NotInBall: return "NotInBall";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidConjugation: return "InvalidConjugation";
    case ErrorKind::WrongSpace: return "WrongSpace";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::SingularIminusA: return "SingularIminusA";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `path()` is a JSON pointer for
/// schema errors and empty otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string path = {})
        : std::runtime_error(std::string(to_string(kind)) + ": " + message)
        , kind_(kind)
        , path_(std::move(path))
    {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& path() const noexcept { return path_; }

private:
    ErrorKind kind_;
    std::string path_;
};

/// Euclidean inner product <z, w> = sum_j z_j conj(w_j), linear in z.
inline Complex inner(const CVec& z, const CVec& w)
{
    return w.dot(z);  // Eigen's dot conjugates its receiver
}

inline double frob(const CMat& m) { return m.norm(); }

inline double spectral_norm(const CMat& m)
{
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

inline bool is_finite(const CVec& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
    return true;
}

inline CMat transpose(const CMat& m) { return m.transpose(); }
inline CMat adjoint(const CMat& m) { return m.adjoint(); }

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b)
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace wcomp
