#include "epq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace epq {

namespace {

struct TwoLevelEigs {
    std::array<Complex, 2> values;
    std::array<Vec2, 2> vectors;  // unit norm
};

// Closed form for [[0, w], [w, d]]: lambda = d/2 +- sqrt(d^2/4 + w^2),
// eigenvector (w, lambda) unless the matrix is diagonal.
TwoLevelEigs two_level_eigs(const QubitParams& p) {
    const Complex d{p.delta, -0.5 * p.gamma};
    const Complex mu = std::sqrt(0.25 * d * d + p.omega * p.omega);
    std::array<Complex, 2> lam{0.5 * d - mu, 0.5 * d + mu};
    if (lam[1].real() < lam[0].real() ||
        (lam[1].real() == lam[0].real() && lam[1].imag() < lam[0].imag()))
        std::swap(lam[0], lam[1]);

    TwoLevelEigs out;
    out.values = lam;
    for (int k = 0; k < 2; ++k) {
        Vec2 v;
        if (p.omega == 0.0)
            v = Vec2::Unit(std::abs(lam[k]) < 1e-300 ? 0 : 1);
        else
            v << Complex(p.omega, 0.0), lam[k];
        out.vectors[k] = v.normalized();
    }
    return out;
}

std::vector<int> min_distance_assignment(const std::array<Complex, 4>& prev,
                                         const std::array<Complex, 4>& cur) {
    std::vector<int> perm{0, 1, 2, 3}, best = perm;
    double best_cost = -1.0;
    do {
        double cost = 0.0;
        for (int i = 0; i < 4; ++i) cost += std::abs(cur[perm[i]] - prev[i]);
        if (best_cost < 0.0 || cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

OverlapMatrix overlaps_of(const Eigen::MatrixXcd& vectors) {
    OverlapMatrix m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m.values(i, j) =
                std::min(1.0, std::abs(vectors.col(i).dot(vectors.col(j))));
    return m;
}

int largest_cluster(const Eigen::VectorXcd& lam, const OverlapMatrix& ov,
                    double threshold, double gap) {
    int best = 1;
    for (unsigned mask = 1; mask < 16; ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j) {
                if (!((mask >> i) & 1) || !((mask >> j) & 1)) continue;
                if (ov.values(i, j) < threshold || std::abs(lam[i] - lam[j]) > gap)
                    ok = false;
            }
        if (ok) best = size;
    }
    return best;
}

}  // namespace

SpectralDecomposition coupled_eigensystem(const SystemParams& s) {
    validate(s);
    if (s.coupling != 0.0)
        return eig_general(coupled_hamiltonian(s));

    const TwoLevelEigs e1 = two_level_eigs(s.qubit1);
    const TwoLevelEigs e2 = two_level_eigs(s.qubit2);

    SpectralDecomposition d;
    d.eigenvalues.resize(4);
    d.right_vectors.resize(4, 4);
    d.left_vectors.resize(4, 4);
    d.condition_flags.assign(4, false);

    int idx[4];
    std::iota(idx, idx + 4, 0);
    std::array<Complex, 4> vals;
    std::array<Vec4, 4> vecs;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const int k = 2 * a + b;
            vals[k] = e1.values[a] + e2.values[b];
            Vec4 v;
            v << e1.vectors[a][0] * e2.vectors[b][0],
                 e1.vectors[a][0] * e2.vectors[b][1],
                 e1.vectors[a][1] * e2.vectors[b][0],
                 e1.vectors[a][1] * e2.vectors[b][1];
            vecs[k] = v;
        }
    std::sort(idx, idx + 4, [&](int a, int b) {
        if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
        return vals[a].imag() < vals[b].imag();
    });
    for (int k = 0; k < 4; ++k) {
        d.eigenvalues[k] = vals[idx[k]];
        d.right_vectors.col(k) = vecs[idx[k]].normalized();
        // H is complex symmetric in this basis, so the conjugate of a right
        // eigenvector is a left eigenvector for the conjugated eigenvalue.
        d.left_vectors.col(k) = d.right_vectors.col(k).conjugate();
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(d.right_vectors.col(i).dot(d.right_vectors.col(j))) > 0.99) {
                d.condition_flags[i] = true;
                d.condition_flags[j] = true;
            }
    return d;
}

double OverlapMatrix::min_offdiag() const {
    double m = 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) m = std::min(m, values(i, j));
    return m;
}

double OverlapMatrix::max_offdiag() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) m = std::max(m, values(i, j));
    return m;
}

OverlapMatrix overlap_matrix(const Mat4& h) {
    return overlaps_of(eig_general(h).right_vectors);
}

OverlapMatrix overlap_matrix(const SystemParams& s) {
    return overlaps_of(coupled_eigensystem(s).right_vectors);
}

SweepResult sweep_eigenvalues(const SystemParams& base, SweepAxis axis,
                              double start, double end, int steps) {
    if (steps < 2) throw DomainError("sweep needs at least 2 steps");
    if (!(start <= end)) throw DomainError("sweep range start must be <= end");

    SweepResult out;
    out.axis = axis;
    out.axis_values.reserve(steps);
    out.eigenvalues.reserve(steps);

    std::array<Complex, 4> prev{};
    for (int k = 0; k < steps; ++k) {
        const double x = start + (end - start) * k / (steps - 1);
        SystemParams s = base;
        if (axis == SweepAxis::kOmega)
            s.qubit1.omega = s.qubit2.omega = x;
        else
            s.coupling = x;

        const SpectralDecomposition d = coupled_eigensystem(s);
        std::array<Complex, 4> lam;
        for (int i = 0; i < 4; ++i) lam[i] = d.eigenvalues[i];
        if (k > 0) {
            const std::vector<int> p = min_distance_assignment(prev, lam);
            std::array<Complex, 4> matched;
            for (int i = 0; i < 4; ++i) matched[i] = lam[p[i]];
            lam = matched;
        }
        prev = lam;

        const OverlapMatrix ov = overlaps_of(d.right_vectors);
        out.axis_values.push_back(x);
        out.eigenvalues.push_back(lam);
        out.min_overlap.push_back(ov.min_offdiag());
        out.max_overlap.push_back(ov.max_offdiag());
    }
    return out;
}

int ep_order(const SystemParams& base, double omega, const EpOrderOptions& opts) {
    if (opts.eps <= 0.0) throw DomainError("ep_order approach offset must be > 0");

    int orders[2];
    int side = 0;
    for (const double sgn : {+1.0, -1.0}) {
        SystemParams s = base;
        s.qubit1.omega = s.qubit2.omega = omega + sgn * opts.eps;
        const SpectralDecomposition d = coupled_eigensystem(s);
        orders[side++] = largest_cluster(d.eigenvalues, overlaps_of(d.right_vectors),
                                         opts.overlap_threshold, opts.gap_tol);
    }
    if (orders[0] != orders[1])
        throw AmbiguousCluster("EP order differs across the two approach sides: " +
                               std::to_string(orders[0]) + " vs " +
                               std::to_string(orders[1]));
    return orders[0];
}

ScalingFit scaling_fit(const SystemParams& base, std::vector<double> couplings,
                       double variation_tol) {
    if (couplings.size() < 3)
        throw DomainError("scaling fit needs at least 3 coupling values");
    std::sort(couplings.begin(), couplings.end());
    if (couplings.front() <= 0.0)
        throw DomainError("coupling values must be positive");
    if (couplings.back() / couplings.front() < 100.0)
        throw DomainError("coupling values must span at least two decades");

    ScalingFit out;
    out.couplings = couplings;

    SystemParams s0 = base;
    s0.coupling = 0.0;
    const SpectralDecomposition ref = coupled_eigensystem(s0);
    for (int i = 0; i < 4; ++i) out.reference[i] = ref.eigenvalues[i];

    const int n = static_cast<int>(couplings.size());
    std::vector<std::array<Complex, 4>> tracks(n);
    std::array<Complex, 4> prev;
    for (int i = 0; i < 4; ++i) prev[i] = ref.eigenvalues[i];
    for (int k = 0; k < n; ++k) {
        SystemParams s = base;
        s.coupling = couplings[k];
        const SpectralDecomposition d = coupled_eigensystem(s);
        std::array<Complex, 4> lam;
        for (int i = 0; i < 4; ++i) lam[i] = d.eigenvalues[i];
        const std::vector<int> p = min_distance_assignment(prev, lam);
        for (int i = 0; i < 4; ++i) tracks[k][i] = lam[p[i]];
        prev = tracks[k];
    }

    const auto fit_part = [&](int branch, bool imag_part) {
        BranchFit f;
        f.offset = imag_part ? out.reference[branch].imag() : out.reference[branch].real();
        std::vector<double> dev(n);
        for (int k = 0; k < n; ++k) {
            const Complex lam = tracks[k][branch];
            dev[k] = (imag_part ? lam.imag() : lam.real()) - f.offset;
            f.max_abs_deviation = std::max(f.max_abs_deviation, std::abs(dev[k]));
        }
        if (f.max_abs_deviation < variation_tol) {
            f.status = BranchFit::Status::kConstant;
            return f;
        }
        f.status = BranchFit::Status::kVarying;
        for (int k = 0; k < n; ++k)
            if (dev[k] * dev[n - 1] < 0.0) f.sign_consistent = false;

        // least squares on (log10 J, log10 |dev|)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (int k = 0; k < n; ++k) {
            if (std::abs(dev[k]) <= 0.0) continue;
            const double x = std::log10(couplings[k]);
            const double y = std::log10(std::abs(dev[k]));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++m;
        }
        if (m < 2) {
            f.status = BranchFit::Status::kConstant;
            return f;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / m;
        f.exponent = slope;
        f.coefficient = (dev[n - 1] < 0.0 ? -1.0 : 1.0) * std::pow(10.0, icpt);
        return f;
    };

    for (int b = 0; b < 4; ++b) {
        out.real_part[b] = fit_part(b, false);
        out.imag_part[b] = fit_part(b, true);
    }
    return out;
}

}  // namespace epq
