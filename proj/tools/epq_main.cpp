// epq: spectra, dynamics, entanglement and decoherence analysis of two
// coupled driven lossy qubits near an exceptional point.
//
// Subcommands: spectrum, evolve, epscan, optimize, lindblad.
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epq/dynamics.hpp"
#include "epq/entanglement.hpp"
#include "epq/io.hpp"
#include "epq/lindblad.hpp"
#include "epq/model.hpp"
#include "epq/optimizer.hpp"
#include "epq/perturbation.hpp"
#include "epq/spectra.hpp"

namespace {

using epq::ConfigEcho;
using epq::format_double;
using ordered_json = nlohmann::ordered_json;

struct Range {
    double start = 0.0, end = 0.0;
    int steps = 0;
};

Range parse_range(const std::string& text) {
    Range r;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> r.start >> c1 >> r.end >> c2 >> r.steps) || c1 != ':' || c2 != ':' ||
        !in.eof())
        throw epq::DomainError("range must be start:end:steps, got '" + text + "'");
    if (r.steps < 2) throw epq::DomainError("range needs at least 2 steps");
    if (r.start > r.end) throw epq::DomainError("range start exceeds end");
    return r;
}

bool is_range(const std::string& text) {
    return text.find(':') != std::string::npos;
}

double parse_scalar(const std::string& text, const char* what) {
    std::istringstream in(text);
    double x;
    if (!(in >> x) || !in.eof())
        throw epq::DomainError(std::string("invalid ") + what + ": '" + text + "'");
    return x;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(parse_scalar(item, what));
    if (out.empty()) throw epq::DomainError(std::string("empty list for ") + what);
    return out;
}

// Key = value lines, '#' comments.  Entries become "--key value" pairs that
// are injected right after the subcommand token, so options given on the
// command line (parsed with a take-last policy) override the file.
std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw epq::DomainError("cannot read config file: " + path);
    std::vector<std::string> args;
    std::string line;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw epq::DomainError("config line is not key = value: " + line);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw epq::DomainError("config line is not key = value: " + line);
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (size_t k = 1; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size())
            config_path = args[k + 1];
        else if (args[k].rfind("--config=", 0) == 0)
            config_path = args[k].substr(9);
    }
    if (config_path.empty()) return args;
    const std::vector<std::string> extra = read_config_file(config_path);
    // first non-flag argument is the subcommand
    size_t at = 1;
    while (at < args.size() && !args[at].empty() && args[at][0] == '-') ++at;
    if (at < args.size()) ++at;
    args.insert(args.begin() + at, extra.begin(), extra.end());
    return args;
}

epq::Vec4 parse_seed_state(const std::string& text) {
    if (text == "ff") return epq::basis_state(epq::kFF);
    if (text == "fe") return epq::basis_state(epq::kFE);
    if (text == "ef") return epq::basis_state(epq::kEF);
    if (text == "ee") return epq::basis_state(epq::kEE);
    if (text.rfind("custom:", 0) == 0) {
        const std::vector<double> parts = parse_list(text.substr(7), "seed state");
        if (parts.size() != 8)
            throw epq::DomainError(
                "custom seed state needs 8 numbers (re,im per amplitude)");
        epq::Vec4 v;
        for (int k = 0; k < 4; ++k) v[k] = {parts[2 * k], parts[2 * k + 1]};
        if (v.norm() <= 0.0) throw epq::ZeroState("custom seed state is zero");
        return v.normalized();
    }
    throw epq::DomainError("seed state must be ff|fe|ef|ee|custom:...");
}

// Shared physical-parameter options; --gamma/--omega drive both qubits and
// the per-qubit flags override.
struct SystemOpts {
    double gamma = 6.0, omega = 1.6;
    double gamma1 = -1.0, gamma2 = -1.0, omega1 = -1.0, omega2 = -1.0;
    double delta1 = 0.0, delta2 = 0.0;
    double coupling = 1e-3;
    bool compensate_period = false;

    struct Attach {
        bool compensate = false;
        bool omega = true;     // add the scalar --omega option
        bool coupling = true;  // add the scalar --J option
    };

    void attach(CLI::App* cmd, const Attach& what) {
        cmd->add_option("--gamma", gamma, "decay rate of |e>, both qubits (1/us)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--gamma1", gamma1, "decay rate of |e>, qubit 1 (1/us)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--gamma2", gamma2, "decay rate of |e>, qubit 2 (1/us)")
            ->check(CLI::NonNegativeNumber);
        if (what.omega)
            cmd->add_option("--omega", omega, "drive amplitude, both qubits (rad/us)")
                ->check(CLI::NonNegativeNumber)
                ->capture_default_str();
        cmd->add_option("--omega1", omega1, "drive amplitude, qubit 1 (rad/us)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--omega2", omega2, "drive amplitude, qubit 2 (rad/us)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--delta1", delta1, "drive detuning, qubit 1 (rad/us)")
            ->capture_default_str();
        cmd->add_option("--delta2", delta2, "drive detuning, qubit 2 (rad/us)")
            ->capture_default_str();
        if (what.coupling)
            cmd->add_option("--J", coupling, "qubit-qubit coupling (rad/us)")
                ->check(CLI::NonNegativeNumber)
                ->capture_default_str();
        if (what.compensate)
            cmd->add_flag("--compensate-period", compensate_period,
                          "set omega2 so both qubits share one oscillation period");
    }

    epq::SystemParams resolve() const {
        epq::SystemParams s;
        s.qubit1 = {delta1, gamma1 >= 0.0 ? gamma1 : gamma,
                    omega1 >= 0.0 ? omega1 : omega};
        s.qubit2 = {delta2, gamma2 >= 0.0 ? gamma2 : gamma,
                    omega2 >= 0.0 ? omega2 : omega};
        s.coupling = coupling;
        if (compensate_period)
            s.qubit2.omega = epq::compensated_omega2(s.qubit1.omega, s.qubit1.gamma,
                                                     s.qubit2.gamma);
        epq::validate(s);
        return s;
    }

    void echo(const epq::SystemParams& s, ConfigEcho* cfg) const {
        cfg->emplace_back("delta1", format_double(s.qubit1.delta));
        cfg->emplace_back("gamma1", format_double(s.qubit1.gamma));
        cfg->emplace_back("omega1", format_double(s.qubit1.omega));
        cfg->emplace_back("delta2", format_double(s.qubit2.delta));
        cfg->emplace_back("gamma2", format_double(s.qubit2.gamma));
        cfg->emplace_back("omega2", format_double(s.qubit2.omega));
        cfg->emplace_back("J", format_double(s.coupling));
    }
};

ordered_json config_json(const ConfigEcho& cfg) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : cfg) j[k] = v;
    return j;
}

void write_table(const std::string& path, const std::string& format,
                 const ConfigEcho& cfg, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows) {
    if (format == "csv") {
        epq::CsvWriter csv(path, cfg, columns);
        for (const auto& r : rows) csv.row(r);
        csv.write();
        return;
    }
    ordered_json j;
    j["config"] = config_json(cfg);
    j["columns"] = columns;
    j["data"] = rows;
    epq::write_text_file(path, j.dump(1) + "\n");
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOpts {
    SystemOpts sys;
    std::string omega_arg = "1.3:1.8:200";
    bool omega_given = false;
    std::string coupling_arg;  // range makes J the sweep axis
    std::string out = "spectrum.csv";
    std::string format = "csv";
};

int run_spectrum(const SpectrumOpts& o) {
    // sweeping J without an explicit --omega keeps the default drive scalar
    const bool coupling_is_range =
        !o.coupling_arg.empty() && is_range(o.coupling_arg);
    const std::string omega_arg =
        (coupling_is_range && !o.omega_given) ? "1.6" : o.omega_arg;
    const bool omega_is_range = is_range(omega_arg);
    if (omega_is_range == coupling_is_range)
        throw epq::DomainError(
            "exactly one of --omega / --J must be a start:end:steps range");

    SystemOpts sys = o.sys;
    epq::SweepAxis axis;
    Range range;
    if (omega_is_range) {
        axis = epq::SweepAxis::kOmega;
        range = parse_range(omega_arg);
        if (!o.coupling_arg.empty())
            sys.coupling = parse_scalar(o.coupling_arg, "--J");
    } else {
        axis = epq::SweepAxis::kCoupling;
        range = parse_range(o.coupling_arg);
        sys.omega = parse_scalar(omega_arg, "--omega");
    }
    const epq::SystemParams base = sys.resolve();

    const epq::SweepResult sweep =
        epq::sweep_eigenvalues(base, axis, range.start, range.end, range.steps);

    ConfigEcho cfg;
    cfg.emplace_back("command", "spectrum");
    cfg.emplace_back("axis", axis == epq::SweepAxis::kOmega ? "omega" : "J");
    cfg.emplace_back("range", format_double(range.start) + ":" +
                                  format_double(range.end) + ":" +
                                  std::to_string(range.steps));
    o.sys.echo(base, &cfg);

    std::vector<std::string> columns{"axis",  "re_l1", "re_l2", "re_l3", "re_l4",
                                     "im_l1", "im_l2", "im_l3", "im_l4",
                                     "min_overlap", "max_overlap"};
    std::vector<std::vector<double>> rows;
    rows.reserve(sweep.axis_values.size());
    for (size_t k = 0; k < sweep.axis_values.size(); ++k) {
        std::vector<double> r{sweep.axis_values[k]};
        for (int i = 0; i < 4; ++i) r.push_back(sweep.eigenvalues[k][i].real());
        for (int i = 0; i < 4; ++i) r.push_back(sweep.eigenvalues[k][i].imag());
        r.push_back(sweep.min_overlap[k]);
        r.push_back(sweep.max_overlap[k]);
        rows.push_back(std::move(r));
    }
    write_table(o.out, o.format, cfg, columns, rows);
    return 0;
}

// ------------------------------------------------------------------ evolve

struct EvolveOpts {
    SystemOpts sys;
    double t_max = 8.0;
    int steps = 2000;
    std::string method = "exact";
    std::string seed = "ff";
    std::string dphase_list;
    bool dphase_list_given = false;
    bool track_tstar = false;
    double dphase_t = 5.325;
    std::string out = "evolve.csv";
    std::string format = "csv";
};

// Differential-phase response of the |fe> amplitude across couplings,
// numeric and first-order analytic side by side.
int run_dphase_sweep(const EvolveOpts& o) {
    const epq::SystemParams s = o.sys.resolve();
    if (!s.identical_resonant(1e-12))
        throw epq::DomainError(
            "the differential-phase sweep requires identical resonant qubits");
    const std::vector<double> couplings = parse_list(o.dphase_list, "--dphase-J-list");
    const auto points = epq::differential_phase_sweep(
        s.qubit1.gamma, s.qubit1.omega, couplings, o.dphase_t, o.track_tstar);

    ConfigEcho cfg;
    cfg.emplace_back("command", "evolve");
    cfg.emplace_back("mode", "dphase_sweep");
    cfg.emplace_back("t", format_double(o.dphase_t));
    cfg.emplace_back("track_tstar", o.track_tstar ? "true" : "false");
    o.sys.echo(s, &cfg);

    std::vector<std::vector<double>> rows;
    for (const auto& p : points)
        rows.push_back({p.coupling, p.t, p.numeric, p.analytic});
    write_table(o.out, o.format, cfg, {"J", "t", "dphase_numeric", "dphase_analytic"},
                rows);
    return 0;
}

int run_evolve(const EvolveOpts& o) {
    if (o.dphase_list_given) return run_dphase_sweep(o);
    if (o.method != "exact" && o.method != "perturbative")
        throw epq::DomainError("--method must be exact or perturbative");
    const epq::SystemParams s = o.sys.resolve();
    const epq::Vec4 psi0 = parse_seed_state(o.seed);
    const std::vector<double> grid = epq::time_grid(o.t_max, o.steps);

    std::optional<epq::BiorthogonalBasis> basis;
    std::optional<epq::Evolver> evolver;
    if (o.method == "perturbative") {
        if (!s.identical_resonant(1e-12))
            throw epq::DomainError(
                "perturbative evolution requires identical resonant qubits");
        basis = epq::perturbed_eigensystem(s.qubit1.gamma, s.qubit1.omega,
                                           s.coupling);
    } else {
        evolver.emplace(s);
    }

    ConfigEcho cfg;
    cfg.emplace_back("command", "evolve");
    cfg.emplace_back("method", o.method);
    cfg.emplace_back("seed_state", o.seed);
    cfg.emplace_back("t_max", format_double(o.t_max));
    cfg.emplace_back("steps", std::to_string(o.steps));
    o.sys.echo(s, &cfg);

    std::vector<std::string> columns{
        "t",        "norm",      "re_alpha", "im_alpha", "re_beta",  "im_beta",
        "re_zeta",  "im_zeta",   "re_delta", "im_delta", "mod_alpha", "mod_beta",
        "mod_zeta", "mod_delta", "arg_alpha", "arg_beta", "arg_zeta", "arg_delta",
        "dphi",     "concurrence", "bloch_x", "bloch_y",  "bloch_z"};
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (const double t : grid) {
        const epq::Vec4 raw = basis ? epq::perturbative_evolve(psi0, t, *basis)
                                    : evolver->apply(t, psi0);
        const epq::PhaseRecord rec = epq::phase_record(t, raw);
        const epq::BlochPoint bp = epq::bloch_point(t, raw, 1);
        const epq::Vec4 psi = raw / rec.norm;
        std::vector<double> r{t, rec.norm};
        for (int k = 0; k < 4; ++k) {
            r.push_back(psi[k].real());
            r.push_back(psi[k].imag());
        }
        for (int k = 0; k < 4; ++k) r.push_back(rec.modulus[k]);
        for (int k = 0; k < 4; ++k) r.push_back(rec.phase[k]);
        r.push_back(rec.dphi);
        r.push_back(epq::concurrence_pure(raw));
        r.push_back(bp.x);
        r.push_back(bp.y);
        r.push_back(bp.z);
        rows.push_back(std::move(r));
    }
    write_table(o.out, o.format, cfg, columns, rows);
    return 0;
}

// ------------------------------------------------------------------ epscan

struct EpscanOpts {
    SystemOpts sys;
    double omega_candidate = -1.0;  // default: gamma/4
    double eps = 1e-6;
    double overlap_threshold = 0.99;
    double gap_tol = 1e-2;
    std::string scaling_list;  // comma list; default log-spaced 1e-6..1e-2
    bool scaling_list_given = false;
    std::string out = "epscan.json";
    std::string format = "json";
};

int run_epscan(const EpscanOpts& o) {
    const epq::SystemParams s = o.sys.resolve();
    const double omega_ep =
        o.omega_candidate >= 0.0 ? o.omega_candidate : s.qubit1.gamma / 4.0;

    epq::EpOrderOptions opts;
    opts.eps = o.eps;
    opts.overlap_threshold = o.overlap_threshold;
    opts.gap_tol = o.gap_tol;
    const int order = epq::ep_order(s, omega_ep, opts);

    epq::SystemParams probe = s;
    probe.qubit1.omega = probe.qubit2.omega = omega_ep + o.eps;
    const epq::OverlapMatrix ov = epq::overlap_matrix(probe);
    const epq::SpectralDecomposition dec = epq::coupled_eigensystem(probe);

    std::vector<double> couplings;
    if (o.scaling_list_given) {
        couplings = parse_list(o.scaling_list, "--J-list");
    } else {
        for (int k = 0; k < 17; ++k)
            couplings.push_back(std::pow(10.0, -6.0 + 4.0 * k / 16.0));
    }
    epq::SystemParams base = s;
    base.qubit1.omega = base.qubit2.omega = omega_ep;
    const epq::ScalingFit fit = epq::scaling_fit(base, couplings);

    ConfigEcho cfg;
    cfg.emplace_back("command", "epscan");
    cfg.emplace_back("omega_candidate", format_double(omega_ep));
    cfg.emplace_back("eps", format_double(o.eps));
    cfg.emplace_back("overlap_threshold", format_double(o.overlap_threshold));
    cfg.emplace_back("gap_tol", format_double(o.gap_tol));
    o.sys.echo(s, &cfg);

    ordered_json j;
    j["config"] = config_json(cfg);
    j["ep_order"] = order;
    j["min_overlap"] = ov.min_offdiag();
    j["max_overlap"] = ov.max_offdiag();
    {
        ordered_json evs = ordered_json::array();
        double spread = 0.0;
        epq::Complex mean{0.0, 0.0};
        for (int k = 0; k < 4; ++k) mean += dec.eigenvalues[k] / 4.0;
        for (int k = 0; k < 4; ++k) {
            evs.push_back({{"re", dec.eigenvalues[k].real()},
                           {"im", dec.eigenvalues[k].imag()}});
            spread = std::max(spread, std::abs(dec.eigenvalues[k] - mean));
        }
        j["eigenvalues_at_plus_eps"] = evs;
        j["eigenvalue_spread"] = spread;
    }
    {
        ordered_json sc;
        sc["couplings"] = fit.couplings;
        ordered_json branches = ordered_json::array();
        for (int part = 0; part < 2; ++part)
            for (int b = 0; b < 4; ++b) {
                const epq::BranchFit& f =
                    part == 0 ? fit.real_part[b] : fit.imag_part[b];
                ordered_json e;
                e["part"] = part == 0 ? "re" : "im";
                e["branch"] = b;
                e["offset"] = f.offset;
                e["status"] = f.status == epq::BranchFit::Status::kConstant
                                  ? "constant"
                                  : "varying";
                if (f.status == epq::BranchFit::Status::kVarying) {
                    e["exponent"] = f.exponent;
                    e["coefficient"] = f.coefficient;
                }
                e["max_abs_deviation"] = f.max_abs_deviation;
                branches.push_back(std::move(e));
            }
        sc["branches"] = std::move(branches);
        j["scaling"] = std::move(sc);
    }
    epq::write_text_file(o.out, j.dump(1) + "\n");
    return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeOpts {
    SystemOpts sys;
    std::string coupling_list;
    bool coupling_list_given = false;
    std::string omega_range = "1.5:1.8:151";
    double t_max = 8.0;
    int t_steps = 400;
    std::string grid_out;
    std::string out = "optimize.json";
    std::string format = "json";
};

int run_optimize(const OptimizeOpts& o) {
    const epq::SystemParams s = o.sys.resolve();
    const double gamma = s.qubit1.gamma;

    ConfigEcho cfg;
    cfg.emplace_back("command", "optimize");
    o.sys.echo(s, &cfg);

    ordered_json j;
    if (o.coupling_list_given) {
        const std::vector<double> couplings =
            parse_list(o.coupling_list, "--J-list");
        const epq::EnhancementResult res =
            epq::enhancement_factor(gamma, couplings);
        j["config"] = config_json(cfg);
        ordered_json pts = ordered_json::array();
        for (const auto& p : res.points)
            pts.push_back({{"J", p.coupling},
                           {"omega_star", p.omega_star},
                           {"t_star", p.t_star},
                           {"c_max", p.c_max},
                           {"t_hermitian", p.t_hermitian},
                           {"factor", p.factor}});
        j["points"] = std::move(pts);
        j["factor_fit"] = {{"exponent", res.fit.exponent},
                           {"coefficient", res.fit.coefficient}};
    } else {
        const Range omr = parse_range(o.omega_range);
        if (o.t_max <= 0.0 || o.t_steps < 2)
            throw epq::DomainError("invalid time grid for the map");
        cfg.emplace_back("omega_range", o.omega_range);
        cfg.emplace_back("t_max", format_double(o.t_max));
        cfg.emplace_back("t_steps", std::to_string(o.t_steps));

        const epq::ConcurrenceGrid grid =
            epq::concurrence_map(s.coupling, gamma, omr.start, omr.end, 0.0,
                                 o.t_max, omr.steps, o.t_steps);
        const double t_herm = epq::hermitian_baseline(
            s.coupling, epq::basis_state(epq::kFF), grid.omega_star);

        j["config"] = config_json(cfg);
        j["omega_star"] = grid.omega_star;
        j["t_star"] = grid.t_star;
        j["c_max"] = grid.c_max;
        j["t_hermitian"] = t_herm;
        j["factor"] = t_herm / grid.t_star;

        if (!o.grid_out.empty()) {
            epq::CsvWriter csv(o.grid_out, cfg, {"omega", "t", "concurrence"});
            for (size_t io = 0; io < grid.omega_axis.size(); ++io)
                for (size_t it = 0; it < grid.t_axis.size(); ++it)
                    csv.row({grid.omega_axis[io], grid.t_axis[it],
                             grid.values(io, it)});
            csv.write();
        }
    }
    epq::write_text_file(o.out, j.dump(1) + "\n");
    return 0;
}

// ---------------------------------------------------------------- lindblad

struct LindbladOpts {
    SystemOpts sys;
    double gamma_f = 0.0;
    double gamma_f1 = -1.0, gamma_f2 = -1.0;
    double detuning = -1.0;
    double dt = 1e-3;
    double t_max = 8.0;
    int store_stride = 4;
    bool no_step_check = false;
    std::string seed = "ff";
    std::string out = "lindblad.csv";
    std::string format = "csv";
};

int run_lindblad(const LindbladOpts& o) {
    SystemOpts sys = o.sys;
    if (o.detuning >= 0.0) sys.delta1 = sys.delta2 = o.detuning;

    epq::LindbladParams p;
    p.system = sys.resolve();
    p.gamma_f1 = o.gamma_f1 >= 0.0 ? o.gamma_f1 : o.gamma_f;
    p.gamma_f2 = o.gamma_f2 >= 0.0 ? o.gamma_f2 : o.gamma_f;
    p.dt = o.dt;
    p.t_max = o.t_max;

    const epq::Vec4 psi0 = parse_seed_state(o.seed);
    const epq::Mat4 rho0 = psi0 * psi0.adjoint();
    const std::vector<epq::MasterSample> trace =
        epq::integrate_master(rho0, p, o.store_stride, !o.no_step_check);

    ConfigEcho cfg;
    cfg.emplace_back("command", "lindblad");
    cfg.emplace_back("gamma_f1", format_double(p.gamma_f1));
    cfg.emplace_back("gamma_f2", format_double(p.gamma_f2));
    cfg.emplace_back("dt", format_double(p.dt));
    cfg.emplace_back("t_max", format_double(p.t_max));
    cfg.emplace_back("store_stride", std::to_string(o.store_stride));
    cfg.emplace_back("seed_state", o.seed);
    o.sys.echo(p.system, &cfg);

    std::vector<std::string> columns{"t",      "trace",  "concurrence", "pop_ff",
                                     "pop_fe", "pop_ef", "pop_ee"};
    std::vector<std::vector<double>> rows;
    rows.reserve(trace.size());
    for (const auto& sample : trace) {
        const epq::Mat4 rho = sample.rho / sample.trace;
        rows.push_back({sample.t, sample.trace, sample.concurrence,
                        rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
                        rho(3, 3).real()});
    }
    write_table(o.out, o.format, cfg, columns, rows);
    return 0;
}

void add_output_options(CLI::App* cmd, std::string* out, std::string* format) {
    cmd->add_option("--out", *out, "output path")->capture_default_str();
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two coupled driven lossy qubits near a fourth-order exceptional "
        "point: spectra, evolution, entanglement, decoherence and "
        "parameter search"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;

    SpectrumOpts sp;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "eigenvalue tracks and eigenvector overlaps along a sweep");
    sp.sys.attach(spectrum, {.omega = false, .coupling = false});
    spectrum->add_option("--omega", sp.omega_arg,
                         "drive amplitude: scalar or start:end:steps sweep")
        ->capture_default_str();
    spectrum->add_option("--J", sp.coupling_arg,
                         "coupling: scalar or start:end:steps sweep");
    add_output_options(spectrum, &sp.out, &sp.format);
    spectrum->add_option("--config", config_path,
                   "key = value file; command-line flags win");

    EvolveOpts ev;
    CLI::App* evolve = app.add_subcommand(
        "evolve", "state evolution, amplitude/phase record and concurrence");
    ev.sys.attach(evolve, {.compensate = true});
    evolve->add_option("--t-max", ev.t_max, "trace length (us)")->capture_default_str();
    evolve->add_option("--steps", ev.steps, "grid points")->capture_default_str();
    evolve->add_option("--method", ev.method, "exact | perturbative")
        ->check(CLI::IsMember({"exact", "perturbative"}))
        ->capture_default_str();
    evolve->add_option("--seed-state", ev.seed, "ff|fe|ef|ee|custom:re,im,...")
        ->capture_default_str();
    evolve->add_option("--dphase-J-list", ev.dphase_list,
                       "emit the differential phase across these couplings "
                       "instead of a time trace");
    evolve->add_option("--dphase-t", ev.dphase_t,
                       "evaluation time for the differential phase (us)")
        ->capture_default_str();
    evolve->add_flag("--track-tstar", ev.track_tstar,
                     "re-time each coupling at its own concurrence maximum");
    add_output_options(evolve, &ev.out, &ev.format);
    evolve->add_option("--config", config_path,
                   "key = value file; command-line flags win");

    EpscanOpts es;
    CLI::App* epscan = app.add_subcommand(
        "epscan", "exceptional-point order and coupling power-law fits");
    es.sys.attach(epscan, {.omega = false});
    epscan->add_option("--omega", es.omega_candidate,
                       "candidate EP drive amplitude (default gamma/4)");
    epscan->add_option("--eps", es.eps, "approach offset in omega")
        ->capture_default_str();
    epscan->add_option("--overlap-threshold", es.overlap_threshold,
                       "eigenvector coalescence threshold")
        ->capture_default_str();
    epscan->add_option("--gap-tol", es.gap_tol, "eigenvalue cluster gap (rad/us)")
        ->capture_default_str();
    epscan->add_option("--J-list", es.scaling_list,
                       "comma list of couplings for the power-law fit");
    add_output_options(epscan, &es.out, &es.format);
    epscan->add_option("--config", config_path,
                   "key = value file; command-line flags win");

    OptimizeOpts op;
    CLI::App* optimize = app.add_subcommand(
        "optimize", "optimal (omega, time) search and enhancement factors");
    op.sys.attach(optimize, {.omega = false});
    optimize->add_option("--omega", op.omega_range, "map range start:end:steps")
        ->capture_default_str();
    optimize->add_option("--t-max", op.t_max, "map time range end (us)")
        ->capture_default_str();
    optimize->add_option("--t-steps", op.t_steps, "map time grid points")
        ->capture_default_str();
    optimize->add_option("--J-list", op.coupling_list,
                         "comma list of couplings: per-J optimum search");
    optimize->add_option("--grid-out", op.grid_out,
                         "also write the dense map as long-format CSV");
    add_output_options(optimize, &op.out, &op.format);
    optimize->add_option("--config", config_path,
                   "key = value file; command-line flags win");

    LindbladOpts lb;
    CLI::App* lindblad = app.add_subcommand(
        "lindblad", "master-equation evolution with |f>-level decay");
    lb.sys.attach(lindblad, {});
    lindblad->add_option("--gamma-f", lb.gamma_f, "|f> decay rate, both qubits (1/us)")
        ->capture_default_str();
    lindblad->add_option("--gamma-f1", lb.gamma_f1, "|f> decay rate, qubit 1");
    lindblad->add_option("--gamma-f2", lb.gamma_f2, "|f> decay rate, qubit 2");
    lindblad->add_option("--detuning", lb.detuning, "set both drive detunings");
    lindblad->add_option("--dt", lb.dt, "integrator step (us)")->capture_default_str();
    lindblad->add_option("--t-max", lb.t_max, "trace length (us)")
        ->capture_default_str();
    lindblad->add_option("--store-stride", lb.store_stride,
                         "emit every n-th integrator step")
        ->capture_default_str();
    lindblad->add_flag("--no-step-check", lb.no_step_check,
                       "skip the dt-halving consistency check");
    lindblad->add_option("--seed-state", lb.seed, "ff|fe|ef|ee|custom:re,im,...")
        ->capture_default_str();
    add_output_options(lindblad, &lb.out, &lb.format);
    lindblad->add_option("--config", config_path,
                   "key = value file; command-line flags win");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::vector<const char*> raw;
        raw.reserve(args.size());
        for (const std::string& a : args) raw.push_back(a.c_str());
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const epq::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    sp.omega_given = spectrum->count("--omega") > 0;
    es.scaling_list_given = epscan->count("--J-list") > 0;
    op.coupling_list_given = optimize->count("--J-list") > 0;
    ev.dphase_list_given = evolve->count("--dphase-J-list") > 0;

    try {
        if (spectrum->parsed()) return run_spectrum(sp);
        if (evolve->parsed()) return run_evolve(ev);
        if (epscan->parsed()) return run_epscan(es);
        if (optimize->parsed()) return run_optimize(op);
        if (lindblad->parsed()) return run_lindblad(lb);
    } catch (const epq::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const epq::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
