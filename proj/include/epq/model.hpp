#pragma once

#include <optional>

#include "epq/types.hpp"

namespace epq {

// Units throughout: times in us, rates in 1/us, drive amplitudes and
// eigenvalues in rad/us.

struct QubitParams {
    double delta = 0.0;  // drive detuning (rad/us)
    double gamma = 0.0;  // |e> decay rate (1/us)
    double omega = 0.0;  // drive amplitude (rad/us)
};

struct SystemParams {
    QubitParams qubit1;
    QubitParams qubit2;
    double coupling = 0.0;  // J (rad/us)

    bool identical_resonant(double tol = 0.0) const;
};

/// Throws DomainError on negative rates/amplitudes/coupling.
void validate(const SystemParams& s);

/// Scales derived from one qubit's parameters (identical-qubit system).
/// eta is stored complex so the broken phase needs no separate code path:
/// eta^2 = 16 Omega^2 - gamma^2, real in the preserving phase and pure
/// imaginary in the broken phase.  chi2 and period exist only for identical
/// resonant qubits in the preserving phase.
struct DerivedScales {
    Complex eta;
    double omega_ep = 0.0;  // gamma / 4
    bool broken_phase = false;
    std::optional<double> chi2;    // J (eta^2 + 3 gamma^2) / eta^2
    std::optional<double> period;  // 4 pi / eta
};

/// In the {|f>, |e>} basis: H = [[0, Omega], [Omega, Delta - i gamma/2]].
Mat2 single_qubit_hamiltonian(const QubitParams& p);

/// H = H1 (x) I + I (x) H2 + J (|fe><ef| + |ef><fe|).
Mat4 coupled_hamiltonian(const SystemParams& s);

DerivedScales derived_scales(const SystemParams& s);

struct PtSymmetry {
    bool symmetric = false;
    double residual = 0.0;
};

/// Checks (PT) H_PT (PT)^{-1} = H_PT for H_PT = H + i(gamma1+gamma2)/4 * I,
/// with P the two-qubit x-type swap sigma1^x sigma2^x and T complex
/// conjugation.
PtSymmetry pt_symmetry_check(const SystemParams& s, double tol = 1e-12);

/// Period-matching drive for a mismatched second qubit:
/// 16 Omega1^2 - gamma1^2 = 16 Omega2^2 - gamma2^2.
double compensated_omega2(double omega1, double gamma1, double gamma2);

}  // namespace epq
