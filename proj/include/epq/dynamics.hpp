#pragma once

#include <array>
#include <memory>
#include <vector>

#include "epq/model.hpp"
#include "epq/numerics.hpp"

namespace epq {

/// Principal value in (-pi, pi].
double wrap_angle(double x);

/// Distance between two angles modulo 2 pi: min(|d|, 2 pi - |d|).
double angle_distance(double a, double b);

/// Evolution operator e^{-iHt} of a coupled pair.  Decoupled systems (J = 0)
/// use exact closed-form 2x2 propagators; otherwise the spectral route with
/// a Pade fallback near exceptional points.
class Evolver {
  public:
    explicit Evolver(const SystemParams& s);

    Vec4 apply(double t, const Vec4& psi0) const;

  private:
    struct TwoLevel {
        Complex center;  // d/2
        Complex mu;      // sqrt(d^2/4 + Omega^2)
        Mat2 traceless;  // H - center * I
        Mat2 propagate(double t) const;
    };

    bool product_ = false;
    TwoLevel q1_, q2_;
    std::unique_ptr<Propagator> coupled_;
};

struct EvolveResult {
    Vec4 raw;         // e^{-iHt} psi0, unnormalized
    Vec4 normalized;  // raw / ||raw||
    double norm = 0.0;
};

EvolveResult evolve_exact(const SystemParams& s, const Vec4& psi0, double t);

/// Amplitude and phase diagnostics of the normalized state at one time.
/// Phases are principal values with no unwrapping; a component with modulus
/// below 1e-12 has no meaningful phase and is flagged instead.
/// dphi = Arg(alpha) + Arg(delta) - Arg(beta) - Arg(zeta), wrapped.
struct PhaseRecord {
    double t = 0.0;
    double norm = 0.0;                     // unnormalized state norm
    std::array<double, 4> modulus{};
    std::array<double, 4> phase{};
    std::array<bool, 4> phase_defined{};
    std::array<double, 3> rel_phase{};     // beta, zeta, delta relative to alpha
    double dphi = 0.0;
};

PhaseRecord phase_record(double t, const Vec4& raw);

std::vector<PhaseRecord> phase_trace(const SystemParams& s, const Vec4& psi0,
                                     const std::vector<double>& t_grid);

/// |sin(dphi/2)|, valid when all four moduli agree within modulus_tol
/// (throws AmplitudesNotEqual otherwise).
double equal_amplitude_concurrence(const PhaseRecord& record,
                                   double modulus_tol = 0.02);

struct BlochPoint {
    double t = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;

    double radius() const;
};

/// Bloch vector of one reduced qubit along the trajectory (from the
/// trace-normalized reduced density matrix of the normalized pure state).
std::vector<BlochPoint> bloch_trajectory(const SystemParams& s, const Vec4& psi0,
                                         const std::vector<double>& t_grid,
                                         int keep);

BlochPoint bloch_point(double t, const Vec4& raw, int keep);

/// Uniform grid over [0, t_max], `points` samples inclusive of both ends.
std::vector<double> time_grid(double t_max, int points = 2000);

/// Named initial states in the {|ff>,|fe>,|ef>,|ee>} ordering.
Vec4 basis_state(BasisIndex idx);

/// Drive-phase deficit pi/2 - Arg(beta) of the |fe> amplitude versus
/// coupling, from |ff>, evaluated numerically and from the first-order
/// closed form.
struct DifferentialPhasePoint {
    double coupling = 0.0;
    double t = 0.0;           // evaluation time actually used
    double numeric = 0.0;     // from the exact state
    double analytic = 0.0;    // from the first-order amplitude
};

/// By default every coupling is probed at the same fixed time, even though
/// the optimal time itself drifts with J.  track_optimal_time = true
/// instead re-times each point at that coupling's own concurrence maximum.
std::vector<DifferentialPhasePoint> differential_phase_sweep(
    double gamma, double omega, const std::vector<double>& couplings, double t,
    bool track_optimal_time = false);

}  // namespace epq
