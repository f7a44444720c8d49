#include "epq/model.hpp"

#include <cmath>

namespace epq {

bool SystemParams::identical_resonant(double tol) const {
    return std::abs(qubit1.delta) <= tol && std::abs(qubit2.delta) <= tol &&
           std::abs(qubit1.gamma - qubit2.gamma) <= tol &&
           std::abs(qubit1.omega - qubit2.omega) <= tol;
}

void validate(const SystemParams& s) {
    for (const QubitParams* q : {&s.qubit1, &s.qubit2}) {
        if (q->gamma < 0.0) throw DomainError("gamma must be >= 0");
        if (q->omega < 0.0) throw DomainError("omega must be >= 0");
    }
    if (s.coupling < 0.0) throw DomainError("coupling J must be >= 0");
}

Mat2 single_qubit_hamiltonian(const QubitParams& p) {
    Mat2 h;
    h << Complex(0.0, 0.0), Complex(p.omega, 0.0),
         Complex(p.omega, 0.0), Complex(p.delta, -0.5 * p.gamma);
    return h;
}

Mat4 coupled_hamiltonian(const SystemParams& s) {
    const Mat2 h1 = single_qubit_hamiltonian(s.qubit1);
    const Mat2 h2 = single_qubit_hamiltonian(s.qubit2);
    Mat4 h = Mat4::Zero();
    // Kronecker sum in the fixed {|ff>,|fe>,|ef>,|ee>} order.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                h(2 * a + c, 2 * b + c) += h1(a, b);  // H1 on qubit 1
                h(c * 2 + a, c * 2 + b) += h2(a, b);  // H2 on qubit 2
            }
        }
    h(kFE, kEF) += s.coupling;
    h(kEF, kFE) += s.coupling;
    return h;
}

DerivedScales derived_scales(const SystemParams& s) {
    const double gamma = s.qubit1.gamma;
    const double omega = s.qubit1.omega;
    const double eta2 = 16.0 * omega * omega - gamma * gamma;

    DerivedScales d;
    d.eta = std::sqrt(Complex(eta2, 0.0));
    d.omega_ep = gamma / 4.0;
    d.broken_phase = eta2 < 0.0;
    if (s.identical_resonant() && eta2 > 0.0) {
        const double eta = std::sqrt(eta2);
        d.chi2 = s.coupling * (eta2 + 3.0 * gamma * gamma) / eta2;
        d.period = 4.0 * M_PI / eta;
    }
    return d;
}

PtSymmetry pt_symmetry_check(const SystemParams& s, double tol) {
    const Mat4 h = coupled_hamiltonian(s);
    const double offset = (s.qubit1.gamma + s.qubit2.gamma) / 4.0;
    const Mat4 h_pt = h + kI * offset * Mat4::Identity();

    Mat4 parity = Mat4::Zero();  // sigma1^x sigma2^x: |ab> -> |a~b~>
    parity(kFF, kEE) = 1.0;
    parity(kEE, kFF) = 1.0;
    parity(kFE, kEF) = 1.0;
    parity(kEF, kFE) = 1.0;

    const Mat4 transformed = parity * h_pt.conjugate() * parity;
    PtSymmetry r;
    r.residual = (transformed - h_pt).norm();
    r.symmetric = r.residual <= tol;
    return r;
}

double compensated_omega2(double omega1, double gamma1, double gamma2) {
    const double rhs =
        (16.0 * omega1 * omega1 - gamma1 * gamma1 + gamma2 * gamma2) / 16.0;
    if (rhs < 0.0)
        throw DomainError("no real drive amplitude matches the periods");
    return std::sqrt(rhs);
}

}  // namespace epq
