#pragma once

#include <vector>

#include "epq/model.hpp"

namespace epq {

struct LindbladParams {
    SystemParams system;
    double gamma_f1 = 0.0;  // |f> -> |e> jump rate, qubit 1 (1/us)
    double gamma_f2 = 0.0;  // |f> -> |e> jump rate, qubit 2 (1/us)
    double dt = 1e-3;       // RK4 step (us)
    double t_max = 8.0;     // us
};

/// Right-hand side of the hybrid master equation
///   d rho/dt = -i (H rho - rho H^dag)
///              + sum_i gamma_{i,f} (L_i rho L_i^dag - 1/2 {L_i^dag L_i, rho})
/// with L_i = |e><f| on qubit i.  The non-Hermitian drift does not preserve
/// the trace; the jump term keeps the population inside the two-qubit space.
Mat4 master_rhs(const Mat4& rho, const LindbladParams& p);

struct MasterSample {
    double t = 0.0;
    Mat4 rho;             // unnormalized
    double trace = 0.0;
    double concurrence = 0.0;  // Wootters, of rho / tr rho
};

/// Fixed-step RK4 integration with per-step Hermitian symmetrization.
/// verify_step = true repeats the integration at dt/2 and throws
/// StepSizeTooLarge if any reported concurrence moves by 1e-6 or more.
std::vector<MasterSample> integrate_master(const Mat4& rho0,
                                           const LindbladParams& p,
                                           int store_stride = 1,
                                           bool verify_step = false);

}  // namespace epq
