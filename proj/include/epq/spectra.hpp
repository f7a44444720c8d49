#pragma once

#include <array>
#include <vector>

#include "epq/model.hpp"
#include "epq/numerics.hpp"

namespace epq {

/// Eigensystem of the coupled Hamiltonian.  For J = 0 the -i gamma/2 level
/// is exactly doubly degenerate and a QR solver returns an arbitrary basis
/// of that subspace, so the decoupled case is built from the closed-form
/// single-qubit eigenvectors (products); J > 0 uses the dense QR path.
SpectralDecomposition coupled_eigensystem(const SystemParams& s);

/// |<psi_i|psi_j>| of unit-norm right eigenvectors.
struct OverlapMatrix {
    Eigen::Matrix4d values;

    double min_offdiag() const;
    double max_offdiag() const;
};

OverlapMatrix overlap_matrix(const Mat4& h);
OverlapMatrix overlap_matrix(const SystemParams& s);

enum class SweepAxis { kOmega, kCoupling };

/// Eigenvalue tracks along a parameter axis, continuity-matched between
/// adjacent points by minimal-distance assignment.  The omega axis drives
/// both qubits.
struct SweepResult {
    SweepAxis axis = SweepAxis::kOmega;
    std::vector<double> axis_values;
    std::vector<std::array<Complex, 4>> eigenvalues;
    std::vector<double> min_overlap;
    std::vector<double> max_overlap;
};

SweepResult sweep_eigenvalues(const SystemParams& base, SweepAxis axis,
                              double start, double end, int steps);

struct EpOrderOptions {
    double eps = 1e-6;               // approach offset in Omega (rad/us)
    double overlap_threshold = 0.99;
    double gap_tol = 1e-2;           // eigenvalue cluster gap (rad/us)
};

/// Order of a candidate EP at drive amplitude `omega`: the size of the
/// largest set of eigenpairs that mutually overlap above the threshold and
/// whose eigenvalues lie within the gap tolerance, evaluated at
/// omega +- eps (never at the candidate point itself, where the matrix may
/// be defective).  The two sides must agree, otherwise AmbiguousCluster.
int ep_order(const SystemParams& base, double omega,
             const EpOrderOptions& opts = {});

/// Power-law fit of one eigenvalue branch (one part) against the coupling:
/// log10 |part(lambda(J)) - part(lambda(0))| = exponent * log10 J + const.
struct BranchFit {
    enum class Status { kVarying, kConstant };  // kConstant: variation below tolerance
    Status status = Status::kConstant;
    double exponent = 0.0;
    double coefficient = 0.0;  // signed: sign of the deviations
    double offset = 0.0;       // the J = 0 reference value of this part
    double max_abs_deviation = 0.0;
    bool sign_consistent = true;
};

struct ScalingFit {
    std::vector<double> couplings;
    std::array<Complex, 4> reference;  // J = 0 eigenvalues (closed form)
    std::array<BranchFit, 4> real_part;
    std::array<BranchFit, 4> imag_part;
};

/// Branch-wise cube-root-law diagnostics at fixed drive (the caller places
/// base.omega at the candidate EP).  J values must span at least two
/// decades.  Branches whose total deviation stays below variation_tol are
/// reported Constant instead of fitted.
ScalingFit scaling_fit(const SystemParams& base, std::vector<double> couplings,
                       double variation_tol = 1e-9);

}  // namespace epq
