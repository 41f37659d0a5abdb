#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/classical/compare.hpp"
#include "gaugelab/cli/scenario.hpp"
#include "gaugelab/core/parallel.hpp"
#include "gaugelab/io/writers.hpp"
#include "gaugelab/quantum/residual.hpp"
#include "gaugelab/quantum/volkov.hpp"
#include "gaugelab/unitarity/defect.hpp"

namespace gaugelab::cli {

struct RunRequest {
    std::string kind;  ///< from the command line; must match the config's kind
    std::filesystem::path config;
    std::optional<std::filesystem::path> out;
    std::optional<std::string> formats;
    std::optional<double> tolerance;
};

/// Collects per-check outcomes and prints one summary line for each.
class CheckLog {
public:
    explicit CheckLog(std::ostream& os) : os_(&os) {}

    void check(const std::string& name, bool ok, const std::string& detail) {
        *os_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        failed_ = failed_ || !ok;
        results_.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
    }
    void info(const std::string& name, const std::string& detail) { *os_ << "INFO " << name << ": " << detail << "\n"; }

    bool failed() const { return failed_; }
    const nlohmann::json& results() const { return results_; }

private:
    std::ostream* os_;
    bool failed_ = false;
    nlohmann::json results_ = nlohmann::json::array();
};

/// Portable uniform double in [0, 1) from the top 53 bits of a 64-bit draw;
/// std::uniform_real_distribution is implementation defined.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

inline std::string num(double v) { return io::format_number(v); }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * pi);
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

struct Context {
    std::filesystem::path out_dir;
    std::set<OutputFormat> formats;
    std::optional<double> tolerance;
    unsigned threads = 1;
    CheckLog* log = nullptr;

    bool wants(OutputFormat f) const { return formats.count(f) > 0; }
    std::filesystem::path file(const std::string& name) const { return out_dir / name; }
};

// ---- classical-demo ----

inline void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    io::CsvTable csv({"t", "x", "y", "z", "px", "py", "pz", "vx", "vy", "vz", "T", "U", "H"});
    for (const auto& s : traj.samples)
        csv.add_row({s.t, s.r.x, s.r.y, s.r.z, s.p.x, s.p.y, s.p.z, s.v.x, s.v.y, s.v.z, s.T, s.U, s.H});
    csv.write(path);
}

inline void run_classical_demo(const ClassicalDemoParams& prm, const Context& ctx) {
    CompareOptions opts;
    opts.tolerance = ctx.tolerance.value_or(prm.tolerance);
    opts.integration.method = prm.method;

    const auto probes = field_probe_points(prm.initial.r, prm.initial.t, prm.t_end);
    const InvarianceReport fields = check_field_invariance(prm.gauge1, prm.gauge2, probes, opts.field_check);
    ctx.log->check("field_invariance", fields.pass,
                   "max|dE| = " + num(fields.find("E")->max_dev) + ", max|dB| = " + num(fields.find("B")->max_dev) + " (tol " +
                       num(fields.tolerance) + ")");
    if (!fields.pass) return;

    const GaugeComparison cmp = gauge_comparison(prm.particle, prm.gauge1, prm.gauge2, prm.initial, prm.t_end, prm.dt, opts);
    const auto& rep = cmp.report;
    ctx.log->check("observable_invariance", rep.pass,
                   "max|dr| = " + num(rep.find("r")->max_dev) + ", max|dv| = " + num(rep.find("v")->max_dev) +
                       ", max|dT| = " + num(rep.find("T")->max_dev) + " (tol " + num(rep.tolerance) + ")");
    const auto& a = cmp.first.back();
    const auto& b = cmp.second.back();
    ctx.log->info("gauge_dependence", "at t = " + num(a.t) + ": U1 - U2 = " + num(a.U - b.U) + ", H1 - H2 = " + num(a.H - b.H) +
                                          ", |p1 - p2| = " + num(norm(a.p - b.p)));

    // Energy bookkeeping per gauge: drift of H and of H - T.
    auto drift = [](const Trajectory& tr) {
        double dH = 0.0, dU = 0.0;
        for (const auto& s : tr.samples) {
            dH = std::max(dH, std::abs(s.H - tr.samples.front().H));
            dU = std::max(dU, std::abs(s.U));
        }
        return std::pair{dH, dU};
    };
    const auto [dH1, maxU1] = drift(cmp.first);
    const auto [dH2, maxU2] = drift(cmp.second);

    if (ctx.wants(OutputFormat::csv)) {
        write_trajectory(cmp.first, ctx.file("trajectory_gauge1.csv"));
        write_trajectory(cmp.second, ctx.file("trajectory_gauge2.csv"));
        io::emit_report(rep, io::ReportFormat::csv, ctx.file("classical_report.csv"));
    }
    if (ctx.wants(OutputFormat::json)) {
        nlohmann::json meta = {
            {"kind", "classical-demo"},
            {"relations",
             {"H = (p - qA/c)^2/2m + q phi", "dr/dt = dH/dp, dp/dt = -dH/dr", "p(0) = m v(0) + q A(r(0), 0)/c", "U = H - T"}},
            {"gauge1", prm.gauge1.name},
            {"gauge2", prm.gauge2.name},
            {"particle", {{"q", prm.particle.q}, {"m", prm.particle.m}}},
            {"integration", {{"method", prm.method == Integrator::rk4 ? "rk4" : "leapfrog"}, {"dt", prm.dt}, {"t_end", prm.t_end}}},
            {"field_check", to_json(fields)},
            {"final", {{"t", a.t}, {"U1", a.U}, {"U2", b.U}, {"H1", a.H}, {"H2", b.H}, {"T1", a.T}, {"T2", b.T}}},
            {"energy", {{"gauge1", {{"max_H_drift", dH1}, {"max_abs_U", maxU1}}}, {"gauge2", {{"max_H_drift", dH2}, {"max_abs_U", maxU2}}}}},
        };
        io::emit_report(rep, io::ReportFormat::json, ctx.file("classical_report.json"), meta);
    }
}

// ---- gauge-transform ----

inline void run_gauge_transform(const GaugeTransformParams& prm, const Context& ctx) {
    const PotentialConfiguration transformed = apply_gauge(prm.potential, prm.generator);
    const PotentialConfiguration restored = apply_gauge(transformed, negated(prm.generator));
    std::vector<SpaceTimePoint> samples;
    for (std::size_t j = 0; j < prm.t.count; ++j)
        for (std::size_t i = 0; i < prm.x.count; ++i) samples.push_back({{prm.x.at(i), 0.0, 0.0}, prm.t.at(j)});

    FieldCheckOptions fopts;
    fopts.h = prm.fd_step;
    if (ctx.tolerance) fopts.tolerance = *ctx.tolerance;
    else fopts.tolerance = prm.tolerance;
    InvarianceReport rep = check_field_invariance(prm.potential, transformed, samples, fopts);

    const EMFields f1 = derive_fields(prm.potential, prm.fd_step);
    const EMFields f2 = derive_fields(transformed, prm.fd_step);
    double dphi = 0.0, dA = 0.0, back = 0.0;
    io::CsvTable csv({"t", "x", "y", "z", "phi", "Ax", "Ay", "Az", "phi_prime", "Ax_prime", "Ay_prime", "Az_prime", "Ex", "Ey", "Ez",
                      "Ex_prime", "Ey_prime", "Ez_prime", "Bx", "By", "Bz", "Bx_prime", "By_prime", "Bz_prime"});
    for (const auto& s : samples) {
        const double phi = prm.potential.scalar(s.r, s.t), phi2 = transformed.scalar(s.r, s.t);
        const Vec3 A = prm.potential.vector(s.r, s.t), A2 = transformed.vector(s.r, s.t);
        const Vec3 E = f1.E(s.r, s.t), E2 = f2.E(s.r, s.t), B = f1.B(s.r, s.t), B2 = f2.B(s.r, s.t);
        dphi = std::max(dphi, std::abs(phi - phi2));
        dA = std::max(dA, norm(A - A2));
        back = std::max({back, std::abs(restored.scalar(s.r, s.t) - phi), norm(restored.vector(s.r, s.t) - A)});
        csv.add_row({s.t, s.r.x, s.r.y, s.r.z, phi, A.x, A.y, A.z, phi2, A2.x, A2.y, A2.z, E.x, E.y, E.z, E2.x, E2.y, E2.z, B.x, B.y, B.z,
                     B2.x, B2.y, B2.z});
    }
    rep.add_matched("inverse_roundtrip", back);
    rep.add_differed("phi", dphi);
    rep.add_differed("A", dA);
    rep.finalize();

    ctx.log->check("field_invariance", rep.find("E")->max_dev <= rep.tolerance && rep.find("B")->max_dev <= rep.tolerance,
                   "max|dE| = " + num(rep.find("E")->max_dev) + ", max|dB| = " + num(rep.find("B")->max_dev) + " (tol " +
                       num(rep.tolerance) + ")");
    ctx.log->check("inverse_roundtrip", back <= rep.tolerance, "max deviation " + num(back) + " (tol " + num(rep.tolerance) + ")");
    ctx.log->info("potential_change", "max|dphi| = " + num(dphi) + ", max|dA| = " + num(dA));

    if (ctx.wants(OutputFormat::csv)) {
        csv.write(ctx.file("potentials.csv"));
        io::emit_report(rep, io::ReportFormat::csv, ctx.file("gauge_report.csv"));
    }
    if (ctx.wants(OutputFormat::json)) {
        nlohmann::json meta = {{"kind", "gauge-transform"},
                               {"relations", {"phi' = phi - (1/c) dLambda/dt", "A' = A + grad Lambda", "E = -grad phi - (1/c) dA/dt", "B = curl A"}},
                               {"potential", prm.potential.name},
                               {"generator", prm.generator.name},
                               {"fd_step", prm.fd_step},
                               {"samples", samples.size()}};
        io::emit_report(rep, io::ReportFormat::json, ctx.file("gauge_report.json"), meta);
    }
}

// ---- volkov ----

inline void run_volkov(const VolkovParams& prm, const Context& ctx) {
    const double tol = ctx.tolerance.value_or(prm.tolerance);
    const Complex C = prm.normalization;
    const QuadratureOptions quad{1e-13, 4096, KronrodRule::k31};
    const ScalarFormOptions sopts;

    std::mt19937_64 rng(prm.seed);
    io::CsvTable wv({"t", "x", "y", "z", "re", "im", "modulus", "phase"});
    io::CsvTable wl({"t", "x", "y", "z", "re", "im", "modulus", "phase"});
    io::CsvTable ws({"t", "x", "y", "z", "re", "im", "modulus", "phase"});
    double d_mod = 0.0, d_rel = 0.0, d_scalar = 0.0, d_phase = 0.0, interp_err = 0.0, quad_err = 0.0;
    for (std::size_t n = 0; n < prm.sample_count; ++n) {
        const Vec3 r{uniform(rng, -prm.r_extent, prm.r_extent), uniform(rng, -prm.r_extent, prm.r_extent),
                     uniform(rng, -prm.r_extent, prm.r_extent)};
        const double t = uniform(rng, prm.t_min, prm.t_max);
        const Complex v = psi_velocity(prm.momentum, prm.pulse, r, t, C, quad);
        const Complex l = psi_length(prm.momentum, prm.pulse, r, t, C, quad);
        const ScalarFormEvaluation s = psi_length_scalar_form_detailed(prm.momentum, prm.pulse, r, t, C, sopts);
        const double predicted = dot(r, vector_potential(prm.pulse, t)) / speed_of_light;
        d_mod = std::max(d_mod, std::abs(std::abs(l) - std::abs(v)));
        d_rel = std::max(d_rel, std::abs(wrap_angle(std::arg(l / v) - predicted)));
        d_scalar = std::max(d_scalar, std::abs(s.value - l));
        d_phase = std::max(d_phase, std::abs(wrap_angle(std::arg(l) - std::arg(v))));
        interp_err = std::max(interp_err, s.interpolation_error);
        quad_err = std::max(quad_err, s.quadrature_error);
        for (auto [table, val] : {std::pair{&wv, v}, std::pair{&wl, l}, std::pair{&ws, s.value}})
            table->add_row({t, r.x, r.y, r.z, val.real(), val.imag(), std::abs(val), std::arg(val)});
    }

    InvarianceReport rep;
    rep.tolerance = tol;
    rep.add_matched("modulus", d_mod);
    rep.add_matched("phase_relation", d_rel);
    rep.add_matched("scalar_form", d_scalar);
    rep.add_differed("phase", d_phase);
    rep.finalize();
    ctx.log->check("modulus_invariance", d_mod <= tol, "max||psiL| - |psiV|| = " + num(d_mod) + " (tol " + num(tol) + ")");
    ctx.log->check("phase_relation", d_rel <= tol, "max|arg(psiL/psiV) - r.A/c| = " + num(d_rel) + " (tol " + num(tol) + ")");
    ctx.log->check("scalar_form", d_scalar <= tol, "max|psi_scalar - psiL| = " + num(d_scalar) + " (tol " + num(tol) + ")");

    nlohmann::json residuals = nlohmann::json::object();
    if (prm.residuals) {
        for (Gauge g : {Gauge::velocity, Gauge::length}) {
            const bool converge = prm.check_convergence && prm.pulse.family != PulseFamily::zero;
            ResidualReport coarse;
            double ratio = std::numeric_limits<double>::quiet_NaN();
            if (converge) {
                const ResidualConvergence c = residual_convergence(g, prm.momentum, prm.pulse, prm.residual_grid, C, ctx.threads);
                coarse = c.coarse;
                ratio = c.ratio;
                ctx.log->check(std::string("residual_convergence_") + to_string(g), ratio >= 3.0 && ratio <= 5.0,
                               "max residual " + num(c.coarse.max_residual) + " -> " + num(c.fine.max_residual) + ", ratio " + num(ratio) +
                                   " (expected 3 to 5)");
            } else {
                coarse = schrodinger_residual(g, prm.momentum, prm.pulse, prm.residual_grid, C, ctx.threads);
                ctx.log->info(std::string("residual_") + to_string(g), "max residual " + num(coarse.max_residual) + ", rms " +
                                                                            num(coarse.rms_residual));
            }
            nlohmann::json j = to_json(coarse);
            residuals[to_string(g)] = j;
            if (ctx.wants(OutputFormat::json)) {
                j["convergence_ratio"] = std::isfinite(ratio) ? nlohmann::json(ratio) : nlohmann::json(nullptr);
                io::write_text_file(ctx.file(std::string("residual_") + to_string(g) + ".json"), io::to_stable_json(j));
            }
        }
    }

    if (ctx.wants(OutputFormat::csv)) {
        wv.write(ctx.file("wavefunction_velocity.csv"));
        wl.write(ctx.file("wavefunction_length.csv"));
        ws.write(ctx.file("wavefunction_length_scalar.csv"));
        io::emit_report(rep, io::ReportFormat::csv, ctx.file("volkov_report.csv"));
    }
    if (ctx.wants(OutputFormat::json)) {
        nlohmann::json meta = {
            {"kind", "volkov"},
            {"relations",
             {"psiV = C exp(i p.r - i S(t)), S = 1/2 int (p + A/c)^2", "psiL = exp(i r.A(t)/c) psiV",
              "psiL = C exp(i p.r - i int r.E - i/2 int (p - int E)^2)", "E = -(1/c) dA/dt"}},
            {"pulse",
             {{"shape", std::string(to_string(prm.pulse.family))},
              {"A0", prm.pulse.A0},
              {"omega", prm.pulse.omega},
              {"polarization", {prm.pulse.polarization.x, prm.pulse.polarization.y, prm.pulse.polarization.z}},
              {"t_on", prm.pulse.t_on},
              {"t_off", prm.pulse.t_off}}},
            {"momentum", {prm.momentum.x, prm.momentum.y, prm.momentum.z}},
            {"samples", {{"count", prm.sample_count}, {"seed", prm.seed}, {"r_extent", prm.r_extent}, {"t_min", prm.t_min}, {"t_max", prm.t_max}}},
            {"quadrature",
             {{"phase_abs_tolerance", quad.abs_tol},
              {"scalar_form_abs_tolerance", sopts.quad.abs_tol},
              {"interpolation_tolerance", sopts.interpolation_tolerance},
              {"max_interpolation_error", interp_err},
              {"max_field_integral_error", quad_err}}},
            {"residuals", residuals},
        };
        io::emit_report(rep, io::ReportFormat::json, ctx.file("volkov_report.json"), meta);
    }
}

// ---- unitarity-check ----

inline void run_unitarity(const UnitarityParams& prm, const Context& ctx) {
    const DefectReport rep = prm.convergence
                                 ? unitarity_defect_with_convergence(prm.particle, prm.potential, prm.generator, prm.grid)
                                 : unitarity_defect(prm.particle, prm.potential, prm.generator, prm.grid, default_probe(prm.grid));
    if (prm.generator.time_independent)
        ctx.log->check("defect_norm", rep.defect_norm == 0.0, "time-independent generator, defect_norm = " + num(rep.defect_norm) + " (expected 0)");
    else
        ctx.log->check("defect_norm", rep.defect_norm > 0.0, "time-dependent generator, defect_norm = " + num(rep.defect_norm) + " (expected > 0)");
    if (prm.convergence) {
        // Below this the discrepancy is rounding, not truncation, and has no order.
        const double floor = 1e-9;
        if (rep.max_discrepancy > floor)
            ctx.log->check("discrepancy_convergence", rep.convergence_ratio >= 3.0 && rep.convergence_ratio <= 5.0,
                           "max_discrepancy " + num(rep.max_discrepancy) + ", ratio on halved spacing " + num(rep.convergence_ratio) +
                               " (expected 3 to 5)");
        else
            ctx.log->info("discrepancy_convergence", "max_discrepancy " + num(rep.max_discrepancy) + " is at rounding level");
    }
    if (ctx.wants(OutputFormat::json)) {
        nlohmann::json j = to_json(rep);
        j["metadata"] = {{"kind", "unitarity-check"},
                         {"relations", {"U = exp(i q Lambda / c)", "H' - U H U^-1 = -(q/c) dLambda/dt"}},
                         {"potential", prm.potential.name},
                         {"particle", {{"q", prm.particle.q}, {"m", prm.particle.m}}},
                         {"grid", {{"x_min", prm.grid.x_min}, {"x_max", prm.grid.x_max}}}};
        io::write_text_file(ctx.file("defect_report.json"), io::to_stable_json(j));
    }
    if (ctx.wants(OutputFormat::csv)) {
        io::CsvTable csv({"t", "nx", "dx", "defect_norm", "max_discrepancy", "convergence_ratio"});
        csv.add_row({rep.t, static_cast<double>(rep.nx), rep.dx, rep.defect_norm, rep.max_discrepancy, rep.convergence_ratio});
        csv.write(ctx.file("defect_report.csv"));
    }
}

// ---- keldysh-map ----

inline void run_keldysh(const KeldyshParams& prm, const Context& ctx) {
    const double tol = ctx.tolerance.value_or(prm.tolerance);
    const RegimeScan scan = regime_scan(prm.E_B, prm.intensity, prm.omega, ctx.threads, prm.iso_tolerance);
    double route = 0.0;
    for (const auto& c : scan.cells)
        route = std::max(route, std::abs(c.point.gamma - gamma_from_intensity(prm.E_B, c.point.omega, c.point.I)));
    ctx.log->check("route_equivalence", route <= tol, "max|gamma(E_B, U_p) - gamma(E_B, omega, I)| = " + num(route) + " (tol " + num(tol) + ")");
    if (const auto pair = find_iso_gamma_pair(scan))
        ctx.log->info("iso_gamma_pair", "gamma " + num(pair->low_intensity.gamma) + " at (omega " + num(pair->low_intensity.omega) + ", I " +
                                            num(pair->low_intensity.I) + ") and " + num(pair->high_intensity.gamma) + " at (omega " +
                                            num(pair->high_intensity.omega) + ", I " + num(pair->high_intensity.I) + "), intensity ratio " +
                                            num(pair->intensity_ratio));
    else
        ctx.log->info("iso_gamma_pair", "no iso-gamma pair with intensity ratio >= 100 on this grid");

    if (ctx.wants(OutputFormat::csv)) {
        io::CsvTable csv({"omega", "I", "U_p", "gamma", "iso_group"});
        for (const auto& c : scan.cells) csv.add_row({c.point.omega, c.point.I, c.point.U_p, c.point.gamma, static_cast<double>(c.iso_group)});
        csv.write(ctx.file("keldysh_scan.csv"));
    }
    if (ctx.wants(OutputFormat::json)) {
        nlohmann::json j = to_json(scan);
        j["metadata"]["kind"] = "keldysh-map";
        j["metadata"]["relations"] = {"U_p = I / (2 omega)^2", "gamma = sqrt(E_B / (2 U_p))", "gamma = omega sqrt(2 E_B) / sqrt(I)"};
        j["metadata"]["route_equivalence_max_dev"] = route;
        io::write_text_file(ctx.file("keldysh_scan.json"), io::to_stable_json(j));
    }
}

// ---- entry points ----

inline nlohmann::json load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("config: cannot read '" + path.string() + "'");
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config: '" + path.string() + "' is not valid JSON (" + e.what() + ")");
    }
}

/// Validates `config` for `req.kind`, runs it and writes the artifacts.
/// Returns 0 when every check passes and 2 when a check fails. Errors are
/// thrown as gaugelab::Error.
inline int run_scenario(const RunRequest& req, const nlohmann::json& config, std::ostream& log_stream) {
    const io::ConfigNode root(config, "");
    root.require_object();
    const ScenarioKind kind = scenario_kind_from_string(root.at("kind").string());
    if (!req.kind.empty() && scenario_kind_from_string(req.kind, "<kind argument>") != kind)
        throw UsageError("kind: config declares '" + std::string(to_string(kind)) + "' but '" + req.kind + "' was requested");

    Context ctx;
    ctx.formats = {OutputFormat::csv, OutputFormat::json};
    if (req.formats) ctx.formats = parse_formats(*req.formats, "--format");
    else if (auto f = root.maybe("formats")) {
        std::string list;
        for (std::size_t i = 0; i < f->size(); ++i) list += (i ? "," : "") + f->at(i).string();
        ctx.formats = parse_formats(list, "formats");
    }
    ctx.out_dir = req.out ? *req.out : std::filesystem::path(root.string_or("output", "gaugelab-out"));
    if (req.tolerance && !(*req.tolerance > 0.0)) throw UsageError("--tolerance: must be positive");
    ctx.tolerance = req.tolerance;
    ctx.threads = configured_threads();

    // Parse everything before computing anything.
    std::optional<ClassicalDemoParams> classical;
    std::optional<GaugeTransformParams> transform;
    std::optional<VolkovParams> volkov;
    std::optional<UnitarityParams> unitarity;
    std::optional<KeldyshParams> keldysh;
    switch (kind) {
    case ScenarioKind::classical_demo: classical = parse_classical_demo(root); break;
    case ScenarioKind::gauge_transform: transform = parse_gauge_transform(root); break;
    case ScenarioKind::volkov: volkov = parse_volkov(root); break;
    case ScenarioKind::unitarity_check: unitarity = parse_unitarity(root); break;
    case ScenarioKind::keldysh_map: keldysh = parse_keldysh(root); break;
    }

    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec || !std::filesystem::is_directory(ctx.out_dir))
        throw IoError("output: cannot create directory '" + ctx.out_dir.string() + "'" + (ec ? " (" + ec.message() + ")" : ""));

    CheckLog log(log_stream);
    ctx.log = &log;
    switch (kind) {
    case ScenarioKind::classical_demo: run_classical_demo(*classical, ctx); break;
    case ScenarioKind::gauge_transform: run_gauge_transform(*transform, ctx); break;
    case ScenarioKind::volkov: run_volkov(*volkov, ctx); break;
    case ScenarioKind::unitarity_check: run_unitarity(*unitarity, ctx); break;
    case ScenarioKind::keldysh_map: run_keldysh(*keldysh, ctx); break;
    }
    return log.failed() ? 2 : 0;
}

/// run_scenario with error reporting: any failure to validate, compute or
/// write prints "error: <message>" to `err` and returns 1.
inline int run_cli(const RunRequest& req, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        return run_scenario(req, load_config(req.config), out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const nlohmann::json::exception& e) {
        err << "error: config: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 1;
}

}  // namespace gaugelab::cli
