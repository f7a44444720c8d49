#pragma once

#include <array>

#include "epq/types.hpp"

namespace epq {

/// The fixed maximally entangled basis used for the coefficient-projection
/// form of the pure-state concurrence:
///   e1 = (|ff> + |ee>)/sqrt(2)      e2 = i(|ff> - |ee>)/sqrt(2)
///   e3 = i(|fe> + |ef>)/sqrt(2)     e4 = (|fe> - |ef>)/sqrt(2)
const std::array<Vec4, 4>& bell_basis();

/// C = 2 |alpha delta - beta zeta| / ||psi||^2.  Valid for unnormalized
/// input; throws ZeroState on the zero vector.
double concurrence_pure(const Vec4& psi);

/// Coefficients c_j = <e_j|psi>.  |sum_j c_j^2| / ||psi||^2 equals
/// concurrence_pure(psi).
std::array<Complex, 4> bell_projection(const Vec4& psi);

/// Wootters concurrence of a two-qubit density matrix.
///
/// The input is trace-normalized internally (rho -> rho / tr rho) before the
/// computation; the master equation used in this library has a non-Hermitian
/// drift and does not preserve the trace.  Hermiticity and positivity are
/// enforced to 1e-8 (eigenvalues may undershoot zero by at most 1e-10 and
/// are clamped), otherwise NotADensityMatrix.
double concurrence_mixed(const Mat4& rho);

/// Same quantity from the square roots of the eigenvalues of rho rho~
/// (the non-Hermitian product route).  Kept as an independent cross-check
/// of concurrence_mixed.
double concurrence_mixed_product_route(const Mat4& rho);

}  // namespace epq
