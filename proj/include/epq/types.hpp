#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace epq {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr Complex kI{0.0, 1.0};

// Two-qubit product basis ordering used by every 4-dimensional object in
// this library: {|ff>, |fe>, |ef>, |ee>}.
enum BasisIndex : int { kFF = 0, kFE = 1, kEF = 2, kEE = 3 };

// Numerical failures map to CLI exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergence : NumericError {
    using NumericError::NumericError;
};
struct StepSizeTooLarge : NumericError {
    using NumericError::NumericError;
};
struct AmbiguousCluster : NumericError {
    using NumericError::NumericError;
};

// Invalid inputs and out-of-domain requests map to CLI exit code 2.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionTooLarge : DomainError {
    using DomainError::DomainError;
};
struct AtExceptionalPoint : DomainError {
    using DomainError::DomainError;
};
struct ZeroState : DomainError {
    using DomainError::DomainError;
};
struct NotADensityMatrix : DomainError {
    using DomainError::DomainError;
};
struct AmplitudesNotEqual : DomainError {
    using DomainError::DomainError;
};

}  // namespace epq
