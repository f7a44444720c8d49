#pragma once

#include <array>

#include "epq/types.hpp"

namespace epq {

// First-order biorthogonal perturbation theory for two identical resonant
// qubits in the preserving phase (eta = sqrt(16 Omega^2 - gamma^2) > 0),
// with the coupling J as the perturbation.
//
// Convention for left states: each basis member stores the dual-space ket
// |bar>; the bra acts through the standard conjugating inner product, so the
// expansion coefficient of a state psi is bar.dot(psi).

/// Right/dual pair with its eigenvalue.
struct BiorthState {
    Complex eigenvalue;
    Vec4 right;
    Vec4 dual;
};

/// Eigensystem of the uncoupled (J = 0) pair: the non-degenerate |--> and
/// |++> product states and the degenerate {|-+>, |+->} pair at -i gamma/2,
/// biorthonormalized so dual_j.dot(right_k) = delta_jk.
struct UnperturbedBasis {
    BiorthState mm;  // --
    BiorthState pp;  // ++
    BiorthState mp;  // -+
    BiorthState pm;  // +-
};

/// Degeneracy lift: the antisymmetric/symmetric combinations diagonalizing
/// the coupling inside the degenerate subspace, plus that 2x2 submatrix and
/// its eigenvalues {-J, J - 16 J Omega^2 / eta^2}.
struct DegenerateLift {
    BiorthState psi1;  // (|-+> - |+->)/sqrt(2), parameter independent
    BiorthState psi2;  // (|-+> + |+->)/sqrt(2)
    Eigen::Matrix2d submatrix;
    double eig_1 = 0.0;  // -J
    double eig_2 = 0.0;  // J - 16 J Omega^2 / eta^2
};

/// The perturbed basis {Lambda_k, |Psi_k>, |bar Psi_k>}, first order in J.
struct BiorthogonalBasis {
    double gamma = 0.0, omega = 0.0, coupling = 0.0;
    BiorthState s1;  // Lambda_1 = -J - i gamma/2 (exact)
    BiorthState s2;  // Lambda_2 = -i gamma/2 - J gamma^2/eta^2
    BiorthState mm;  // Lambda_-- = -i gamma/2 - eta/2 + 8 J Omega^2/eta^2
    BiorthState pp;  // Lambda_++ = -i gamma/2 + eta/2 + 8 J Omega^2/eta^2

    std::array<const BiorthState*, 4> states() const { return {&s1, &s2, &mm, &pp}; }
};

struct EnergySeparations {
    double d_1_mm = 0.0;   // Lambda_1  - Lambda_--
    double d_2_mm = 0.0;   // Lambda_2  - Lambda_--
    double d_pp_1 = 0.0;   // Lambda_++ - Lambda_1
    double d_pp_2 = 0.0;   // Lambda_++ - Lambda_2
};

/// eta = sqrt(16 Omega^2 - gamma^2); AtExceptionalPoint if |eta| < 1e-9, and
/// the preserving phase (eta real) is required.
double preserving_eta(double gamma, double omega);

UnperturbedBasis unperturbed_basis(double gamma, double omega);
DegenerateLift degenerate_lift(double gamma, double omega, double coupling);
BiorthogonalBasis perturbed_eigensystem(double gamma, double omega, double coupling);
EnergySeparations energy_separations(double gamma, double omega, double coupling);

/// |psi(t)> = sum_k  bar_k.dot(psi0) e^{-i t Lambda_k} |Psi_k>, unnormalized.
Vec4 perturbative_evolve(const Vec4& psi0, double t, const BiorthogonalBasis& basis);

/// Closed-form concurrence from |ff>:
///   C = | 16 eta^2 Omega^2 (e^{i t chi2} - 1) / B |,
/// chi2 = J (eta^2 + 3 gamma^2)/eta^2.  Evaluates both printed forms of the
/// denominator and cross-checks them.
double concurrence_closed_form(double gamma, double omega, double coupling, double t);

/// Approximate amplitudes (alpha', beta', zeta', delta') of the unnormalized
/// state evolved from |ff>.
Vec4 approx_amplitudes(double gamma, double omega, double coupling, double t);

/// pi/2 - Arg(beta'(t)): the drive-phase deficit of the |fe> amplitude
/// relative to its uncoupled value.
double differential_phase_analytic(double gamma, double omega, double coupling, double t);

}  // namespace epq
