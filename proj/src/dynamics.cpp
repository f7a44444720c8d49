#include "epq/dynamics.hpp"

#include <cmath>

#include "epq/entanglement.hpp"
#include "epq/perturbation.hpp"

namespace epq {

namespace {
constexpr double kPhaseFloor = 1e-12;

// sin(z)/z with a series for small |z|.
Complex sinc(Complex z) {
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}
}  // namespace

double wrap_angle(double x) {
    double y = std::remainder(x, 2.0 * M_PI);  // (-pi, pi], -pi maps to pi
    if (y <= -M_PI) y = M_PI;
    return y;
}

double angle_distance(double a, double b) {
    const double d = std::abs(std::remainder(a - b, 2.0 * M_PI));
    return d;
}

Mat2 Evolver::TwoLevel::propagate(double t) const {
    // e^{-iHt} = e^{-i c t} [cos(mu t) I - i t sinc(mu t) (H - c I)]
    const Complex phase = std::exp(-kI * center * t);
    return phase * (std::cos(mu * t) * Mat2::Identity() -
                    kI * t * sinc(mu * t) * traceless);
}

Evolver::Evolver(const SystemParams& s) {
    validate(s);
    if (s.coupling == 0.0) {
        product_ = true;
        for (auto [q, p] : {std::pair{&q1_, &s.qubit1}, std::pair{&q2_, &s.qubit2}}) {
            const Mat2 h = single_qubit_hamiltonian(*p);
            q->center = 0.5 * h.trace();
            q->traceless = h - q->center * Mat2::Identity();
            q->mu = std::sqrt(q->traceless(0, 0) * q->traceless(0, 0) +
                              q->traceless(0, 1) * q->traceless(1, 0));
        }
    } else {
        coupled_ = std::make_unique<Propagator>(coupled_hamiltonian(s));
    }
}

Vec4 Evolver::apply(double t, const Vec4& psi0) const {
    if (!product_) return coupled_->apply(t, psi0);
    const Mat2 u1 = q1_.propagate(t);
    const Mat2 u2 = q2_.propagate(t);
    Vec4 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Complex acc = 0.0;
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    acc += u1(a, c) * u2(b, d) * psi0[2 * c + d];
            out[2 * a + b] = acc;
        }
    return out;
}

EvolveResult evolve_exact(const SystemParams& s, const Vec4& psi0, double t) {
    if (t < 0.0) throw DomainError("evolution time must be >= 0");
    const Evolver ev(s);
    EvolveResult r;
    r.raw = ev.apply(t, psi0);
    r.norm = r.raw.norm();
    if (r.norm <= 0.0) throw NumericError("evolved state has zero norm");
    r.normalized = r.raw / r.norm;
    return r;
}

PhaseRecord phase_record(double t, const Vec4& raw) {
    PhaseRecord rec;
    rec.t = t;
    rec.norm = raw.norm();
    if (rec.norm <= 0.0) throw ZeroState("cannot take phases of the zero state");
    const Vec4 psi = raw / rec.norm;
    for (int k = 0; k < 4; ++k) {
        rec.modulus[k] = std::abs(psi[k]);
        rec.phase_defined[k] = rec.modulus[k] >= kPhaseFloor;
        rec.phase[k] = rec.phase_defined[k] ? std::arg(psi[k]) : 0.0;
    }
    for (int k = 0; k < 3; ++k)
        rec.rel_phase[k] = wrap_angle(rec.phase[k + 1] - rec.phase[kFF]);
    rec.dphi = wrap_angle(rec.phase[kFF] + rec.phase[kEE] - rec.phase[kFE] -
                          rec.phase[kEF]);
    return rec;
}

std::vector<PhaseRecord> phase_trace(const SystemParams& s, const Vec4& psi0,
                                     const std::vector<double>& t_grid) {
    for (size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw DomainError("time grid must be strictly increasing");
    const Evolver ev(s);
    std::vector<PhaseRecord> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) out.push_back(phase_record(t, ev.apply(t, psi0)));
    return out;
}

double equal_amplitude_concurrence(const PhaseRecord& record, double modulus_tol) {
    const auto [lo, hi] =
        std::minmax_element(record.modulus.begin(), record.modulus.end());
    if (*hi - *lo > modulus_tol)
        throw AmplitudesNotEqual("modulus spread " + std::to_string(*hi - *lo) +
                                 " exceeds tolerance");
    return std::abs(std::sin(0.5 * record.dphi));
}

double BlochPoint::radius() const { return std::sqrt(x * x + y * y + z * z); }

BlochPoint bloch_point(double t, const Vec4& raw, int keep) {
    const double n = raw.norm();
    if (n <= 0.0) throw ZeroState("cannot reduce the zero state");
    const Vec4 psi = raw / n;
    const Mat4 rho = psi * psi.adjoint();
    const Mat2 red = partial_trace(rho, keep);
    BlochPoint p;
    p.t = t;
    p.x = 2.0 * red(0, 1).real();
    p.y = -2.0 * red(0, 1).imag();
    p.z = (red(0, 0) - red(1, 1)).real();
    return p;
}

std::vector<BlochPoint> bloch_trajectory(const SystemParams& s, const Vec4& psi0,
                                         const std::vector<double>& t_grid,
                                         int keep) {
    const Evolver ev(s);
    std::vector<BlochPoint> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) out.push_back(bloch_point(t, ev.apply(t, psi0), keep));
    return out;
}

std::vector<double> time_grid(double t_max, int points) {
    if (t_max <= 0.0 || points < 2) throw DomainError("invalid time grid");
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = t_max * k / (points - 1);
    return g;
}

Vec4 basis_state(BasisIndex idx) {
    Vec4 v = Vec4::Zero();
    v[idx] = 1.0;
    return v;
}

std::vector<DifferentialPhasePoint> differential_phase_sweep(
    double gamma, double omega, const std::vector<double>& couplings, double t,
    bool track_optimal_time) {
    if (couplings.empty()) throw DomainError("empty coupling list");
    if (t <= 0.0) throw DomainError("evaluation time must be > 0");

    std::vector<DifferentialPhasePoint> out;
    out.reserve(couplings.size());
    const Vec4 ff = basis_state(kFF);
    for (const double j : couplings) {
        SystemParams s;
        s.qubit1 = {0.0, gamma, omega};
        s.qubit2 = {0.0, gamma, omega};
        s.coupling = j;
        const Evolver ev(s);

        DifferentialPhasePoint p;
        p.coupling = j;
        p.t = t;
        if (track_optimal_time && j > 0.0) {
            // first concurrence maximum near the fixed reference time
            double best_c = -1.0;
            for (double tt = std::max(0.0, 0.5 * t); tt <= 1.5 * t; tt += 1e-3) {
                const double c = concurrence_pure(ev.apply(tt, ff));
                if (c > best_c) {
                    best_c = c;
                    p.t = tt;
                }
            }
        }
        const Vec4 psi = ev.apply(p.t, ff);
        p.numeric = M_PI / 2.0 - std::arg(psi[kFE] / psi.norm());
        p.analytic = differential_phase_analytic(gamma, omega, j, p.t);
        out.push_back(p);
    }
    return out;
}

}  // namespace epq
