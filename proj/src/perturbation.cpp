#include "epq/perturbation.hpp"

#include <cmath>

namespace epq {

namespace {
constexpr double kEpEta = 1e-9;  // |eta| below this counts as "at the EP"

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }
}  // namespace

double preserving_eta(double gamma, double omega) {
    const double eta2 = 16.0 * omega * omega - gamma * gamma;
    if (std::sqrt(std::abs(eta2)) < kEpEta)
        throw AtExceptionalPoint("eta = 0: biorthogonal states diverge at the EP");
    if (eta2 < 0.0)
        throw DomainError("preserving phase (16 Omega^2 > gamma^2) required");
    return std::sqrt(eta2);
}

UnperturbedBasis unperturbed_basis(double gamma, double omega) {
    const double e = preserving_eta(gamma, omega);
    const double g = gamma, o = omega;
    const Complex ig{0.0, g};

    UnperturbedBasis b;
    b.mm.eigenvalue = Complex(-e / 2.0, -g / 2.0);
    b.pp.eigenvalue = Complex(e / 2.0, -g / 2.0);
    b.mp.eigenvalue = Complex(0.0, -g / 2.0);
    b.pm.eigenvalue = b.mp.eigenvalue;

    b.mm.right << -ig + e, -4.0 * o, -4.0 * o, ig + e;
    b.pp.right << ig + e, 4.0 * o, 4.0 * o, -ig + e;
    b.mp.right << -4.0 * o, ig - e, ig + e, 4.0 * o;
    b.pm.right << -4.0 * o, ig + e, ig - e, 4.0 * o;
    for (BiorthState* s : {&b.mm, &b.pp, &b.mp, &b.pm}) {
        s->right /= 2.0 * e;
        // The dual tuples coincide with the conjugated right tuples (the
        // generator is complex symmetric in this basis).
        s->dual = s->right.conjugate();
    }
    return b;
}

DegenerateLift degenerate_lift(double gamma, double omega, double coupling) {
    const double e = preserving_eta(gamma, omega);
    const double g = gamma, o = omega, j = coupling;
    const double s2 = std::sqrt(2.0);

    DegenerateLift d;
    d.psi1.eigenvalue = Complex(0.0, -g / 2.0);
    d.psi2.eigenvalue = d.psi1.eigenvalue;
    d.psi1.right << 0.0, -1.0 / s2, 1.0 / s2, 0.0;
    d.psi1.dual = d.psi1.right;
    d.psi2.right << -4.0 * o, Complex(0.0, g), Complex(0.0, g), 4.0 * o;
    d.psi2.right /= s2 * e;
    d.psi2.dual = d.psi2.right.conjugate();

    const double diag = -8.0 * j * o * o / (e * e);
    d.submatrix << diag, j + diag, j + diag, diag;
    d.eig_1 = -j;
    d.eig_2 = j - 16.0 * j * o * o / (e * e);
    return d;
}

BiorthogonalBasis perturbed_eigensystem(double gamma, double omega, double coupling) {
    const double e = preserving_eta(gamma, omega);
    const double g = gamma, o = omega, j = coupling;
    const double e2 = e * e, e3 = e2 * e, e4 = e3 * e;
    const Complex ig{0.0, g};
    const double s2 = std::sqrt(2.0);

    BiorthogonalBasis b;
    b.gamma = gamma;
    b.omega = omega;
    b.coupling = coupling;

    b.s1.eigenvalue = Complex(-j, -g / 2.0);
    b.s2.eigenvalue = Complex(-j * g * g / e2, -g / 2.0);
    b.mm.eigenvalue = Complex(-e / 2.0 + 8.0 * j * o * o / e2, -g / 2.0);
    b.pp.eigenvalue = Complex(e / 2.0 + 8.0 * j * o * o / e2, -g / 2.0);

    b.s1.right << 0.0, -1.0 / s2, 1.0 / s2, 0.0;

    b.s2.right << -4.0 * o * (e2 + 2.0 * kI * j * g), ig * e2, ig * e2,
        4.0 * o * (e2 - 2.0 * kI * j * g);
    b.s2.right /= s2 * e3;

    const Complex mm_edge = e3 * (e - ig) + 8.0 * j * o * o * (e - 3.0 * ig);
    const double mm_mid = -4.0 * o * (e3 - 2.0 * j * e2 + 24.0 * j * o * o);
    b.mm.right << mm_edge, mm_mid, mm_mid, std::conj(mm_edge);
    b.mm.right /= 2.0 * e4;

    const Complex pp_edge = e3 * (e + ig) - 8.0 * j * o * o * (e + 3.0 * ig);
    const double pp_mid = 4.0 * o * (e3 + 2.0 * j * e2 - 24.0 * j * o * o);
    b.pp.right << pp_edge, pp_mid, pp_mid, std::conj(pp_edge);
    b.pp.right /= 2.0 * e4;

    b.s1.dual = b.s1.right;
    b.s2.dual = b.s2.right.conjugate();
    b.mm.dual = b.mm.right.conjugate();
    b.pp.dual = b.pp.right.conjugate();
    return b;
}

EnergySeparations energy_separations(double gamma, double omega, double coupling) {
    const double e = preserving_eta(gamma, omega);
    const double g = gamma, j = coupling;
    const double e2 = e * e;

    EnergySeparations d;
    d.d_1_mm = 0.5 * (e - j * (3.0 * e2 + g * g) / e2);
    d.d_2_mm = 0.5 * (e - j * (e2 + 3.0 * g * g) / e2);
    d.d_pp_1 = 0.5 * (e + j * (3.0 * e2 + g * g) / e2);
    d.d_pp_2 = 0.5 * (e + j * (e2 + 3.0 * g * g) / e2);
    return d;
}

Vec4 perturbative_evolve(const Vec4& psi0, double t, const BiorthogonalBasis& basis) {
    Vec4 out = Vec4::Zero();
    for (const BiorthState* s : basis.states())
        out += s->dual.dot(psi0) * std::exp(-kI * s->eigenvalue * t) * s->right;
    return out;
}

double concurrence_closed_form(double gamma, double omega, double coupling, double t) {
    const double e = preserving_eta(gamma, omega);
    const double g = gamma, o = omega, j = coupling;
    const double e2 = e * e, g2 = g * g, o2 = o * o;
    const double chi2 = j * (e2 + 3.0 * g2) / e2;

    // Main-text form: real denominator.
    const Complex num = 16.0 * e2 * o2 * (cis(t * chi2) - 1.0);
    const double den =
        16.0 * o2 * (g2 + 32.0 * o2) +
        g * (g * (g2 - e2) * std::cos(t * e) - 2.0 * g2 * e * std::sin(t * e) -
             64.0 * o2 * std::cos(t * chi2 / 2.0) *
                 (g * std::cos(t * e / 2.0) - e * std::sin(t * e / 2.0)));
    const double c_main = std::abs(num / den);

    // Equivalent A/B form with complex denominator.
    const Complex a = e2 * (e2 + g2) * (cis(t * chi2) - 1.0);
    const Complex bden =
        g2 * (g2 - e2) * (1.0 + cis(2.0 * t * e)) +
        2.0 * cis(t * e) *
            ((g2 + e2) * (3.0 * g2 + 2.0 * e2) -
             4.0 * g * (g2 + e2) * std::cos(t * chi2 / 2.0) *
                 (g * std::cos(t * e / 2.0) - e * std::sin(t * e / 2.0)) -
             2.0 * g2 * g * e * std::sin(t * e));
    const double c_alt = 2.0 * std::abs(a / bden);

    if (std::abs(c_main - c_alt) > 1e-10)
        throw NumericError("closed-form concurrence variants disagree");
    return c_main;
}

Vec4 approx_amplitudes(double gamma, double omega, double coupling, double t) {
    const double e = preserving_eta(gamma, omega);
    const double g = gamma, o = omega, j = coupling;
    const double e2 = e * e, e3 = e2 * e, e6 = e3 * e3, e8 = e6 * e2;
    const double g2 = g * g;
    const double ge = g2 + e2;  // = 16 Omega^2

    const Complex ete = cis(t * e);                                  // e^{i t eta}
    const Complex eslow = cis(0.5 * t * (e + j * (1.0 + 3.0 * g2 / e2)));
    const Complex pref =
        std::exp(-0.5 * t * (g + kI * (e + j * (1.0 + g2 / e2))));

    const Complex alpha =
        pref / (16.0 * e8) *
        (4.0 * (ete - 1.0) * j * e3 * ge * ge +
         j * j * ge * ge *
             ((e - kI * g) * (e - kI * g) + ete * (e + kI * g) * (e + kI * g)) +
         4.0 * e6 *
             ((e2 - g2) * (ete + 1.0) - 2.0 * kI * g * e * (ete - 1.0) +
              2.0 * (e2 + g2) * eslow));

    const Complex beta =
        pref * o / (4.0 * e8) *
        (4.0 * e6 * (kI * g * (1.0 + ete - 2.0 * eslow) - e * (ete - 1.0)) +
         j * j * ge * ge * ((e + kI * g) * ete - e + kI * g) +
         4.0 * kI * j * g * e3 * ge * (1.0 - ete));

    const Complex delta =
        pref * 4.0 * o * o / e8 *
        (e6 * (1.0 + ete - 2.0 * eslow) + j * e3 * (e2 - g2) * (ete - 1.0) +
         64.0 * j * j * o * o * o * o * (ete + 1.0));

    Vec4 out;
    out << alpha, beta, beta, delta;
    return out;
}

double differential_phase_analytic(double gamma, double omega, double coupling, double t) {
    const Vec4 amps = approx_amplitudes(gamma, omega, coupling, t);
    return M_PI / 2.0 - std::arg(amps[kFE]);
}

}  // namespace epq
