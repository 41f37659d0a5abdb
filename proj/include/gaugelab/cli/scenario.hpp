#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/classical/dynamics.hpp"
#include "gaugelab/em/catalog.hpp"
#include "gaugelab/io/config_node.hpp"
#include "gaugelab/keldysh/keldysh.hpp"
#include "gaugelab/quantum/residual.hpp"
#include "gaugelab/unitarity/grid_operator.hpp"

namespace gaugelab::cli {

enum class ScenarioKind { classical_demo, gauge_transform, volkov, unitarity_check, keldysh_map };

inline std::string_view to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::classical_demo: return "classical-demo";
    case ScenarioKind::gauge_transform: return "gauge-transform";
    case ScenarioKind::volkov: return "volkov";
    case ScenarioKind::unitarity_check: return "unitarity-check";
    case ScenarioKind::keldysh_map: return "keldysh-map";
    }
    return "unknown";
}

inline ScenarioKind scenario_kind_from_string(std::string_view s, const std::string& path = "kind") {
    for (auto k : {ScenarioKind::classical_demo, ScenarioKind::gauge_transform, ScenarioKind::volkov, ScenarioKind::unitarity_check,
                   ScenarioKind::keldysh_map})
        if (to_string(k) == s) return k;
    throw UsageError(path + ": unknown scenario kind '" + std::string(s) + "'");
}

enum class OutputFormat { csv, json };

inline std::set<OutputFormat> parse_formats(const std::string& list, const std::string& path = "formats") {
    std::set<OutputFormat> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item == "csv") out.insert(OutputFormat::csv);
        else if (item == "json") out.insert(OutputFormat::json);
        else throw UsageError(path + ": unknown format '" + item + "' (expected csv or json)");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// ---- per-kind parameters ----

struct ClassicalDemoParams {
    ChargedParticle particle;
    PotentialConfiguration gauge1;
    PotentialConfiguration gauge2;
    KineticState initial;
    double t_end = 10.0;
    double dt = 1e-3;
    Integrator method = Integrator::rk4;
    double tolerance = 1e-8;
};

struct Range {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;

    double at(std::size_t k) const {
        if (count == 1) return min;
        return k + 1 == count ? max : min + (max - min) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
};

struct GaugeTransformParams {
    PotentialConfiguration potential;
    GaugeGenerator generator;
    Range x{-1.0, 1.0, 10};
    Range t{0.0, 1.0, 10};
    double fd_step = default_fd_step;
    std::optional<double> tolerance;
};

struct VolkovParams {
    PulseShape pulse;
    Vec3 momentum;
    std::complex<double> normalization{1.0, 0.0};
    std::size_t sample_count = 100;
    std::uint64_t seed = 1;
    double r_extent = 5.0;
    double t_min = 0.0;
    double t_max = 1.0;
    double tolerance = 1e-8;
    bool residuals = true;
    ResidualGrid residual_grid;
    bool check_convergence = true;
};

struct UnitarityParams {
    ChargedParticle particle;
    PotentialConfiguration potential;
    GaugeGenerator generator;
    GridSpec grid;
    bool convergence = true;
};

struct KeldyshParams {
    double E_B = 0.5;
    GeometricGrid intensity;
    GeometricGrid omega;
    double iso_tolerance = 0.01;
    double tolerance = 1e-12;
};

// ---- parsing ----

inline ChargedParticle parse_particle(const io::ConfigNode& root) {
    if (!root.has("particle")) return {};
    const auto n = root.at("particle");
    n.expect_keys({"q", "m"});
    ChargedParticle p;
    p.q = n.number_or("q", 1.0);
    p.m = n.has("m") ? n.at("m").number() : 1.0;
    if (!(p.m > 0.0)) throw UsageError(n.child_path("m") + ": mass must be positive");
    return p;
}

inline Range parse_range(const io::ConfigNode& n, Range fallback) {
    n.expect_keys({"min", "max", "count"});
    Range r;
    r.min = n.number_or("min", fallback.min);
    r.max = n.number_or("max", fallback.max);
    const auto c = n.integer_or("count", static_cast<std::int64_t>(fallback.count));
    if (c < 1) throw UsageError(n.child_path("count") + ": must be at least 1");
    if (r.max < r.min) throw UsageError(n.child_path("max") + ": must not be below min");
    r.count = static_cast<std::size_t>(c);
    return r;
}

/// W/cm^2 per atomic unit of intensity, I = (1/2) eps0 c E_h^2 with the atomic
/// field unit 5.14220674763e11 V/m.
inline constexpr double atomic_unit_intensity_w_per_cm2 = 3.50944552058977e16;

/// A geometric grid; with allow_units, "units" may be "au" (default) or
/// "W/cm2", the latter converted to atomic units.
inline GeometricGrid parse_geometric(const io::ConfigNode& n, bool allow_units = false) {
    if (allow_units) n.expect_keys({"min", "max", "count", "units"});
    else n.expect_keys({"min", "max", "count"});
    GeometricGrid g;
    g.min = n.positive("min");
    g.max = n.positive_or("max", g.min);
    const auto c = n.integer_or("count", 1);
    if (c < 1) throw UsageError(n.child_path("count") + ": grid must be nonempty");
    if (g.max < g.min) throw UsageError(n.child_path("max") + ": must not be below min");
    g.count = static_cast<std::size_t>(c);
    const std::string units = allow_units ? n.string_or("units", "au") : "au";
    if (units == "W/cm2") {
        g.min /= atomic_unit_intensity_w_per_cm2;
        g.max /= atomic_unit_intensity_w_per_cm2;
    } else if (units != "au") {
        throw UsageError(n.child_path("units") + ": expected au or W/cm2");
    }
    return g;
}

inline ClassicalDemoParams parse_classical_demo(const io::ConfigNode& root) {
    root.expect_keys({"kind", "output", "formats", "particle", "gauge1", "gauge2", "generator", "initial", "integration", "tolerance"});
    ClassicalDemoParams p;
    p.particle = parse_particle(root);
    p.gauge1 = root.has("gauge1") ? potential_from_config(root.at("gauge1")) : constant_field_scalar(1.0);
    if (root.has("gauge2") && root.has("generator")) throw UsageError("generator: give either gauge2 or generator, not both");
    if (root.has("generator")) p.gauge2 = apply_gauge(p.gauge1, generator_from_config(root.at("generator")));
    else p.gauge2 = root.has("gauge2") ? potential_from_config(root.at("gauge2")) : constant_field_vector(1.0);
    if (auto init = root.maybe("initial")) {
        init->expect_keys({"position", "velocity", "t0"});
        p.initial.r = init->vec3_or("position", {});
        p.initial.v = init->vec3_or("velocity", {});
        p.initial.t = init->number_or("t0", 0.0);
    }
    if (auto integ = root.maybe("integration")) {
        integ->expect_keys({"t_end", "dt", "method"});
        p.t_end = integ->number_or("t_end", p.t_end);
        p.dt = integ->positive_or("dt", p.dt);
        const std::string m = integ->string_or("method", "rk4");
        if (m == "rk4") p.method = Integrator::rk4;
        else if (m == "leapfrog") p.method = Integrator::leapfrog;
        else throw UsageError(integ->child_path("method") + ": expected rk4 or leapfrog");
        if (!(p.t_end > p.initial.t)) throw UsageError(integ->child_path("t_end") + ": must exceed initial.t0");
    }
    p.tolerance = root.positive_or("tolerance", p.tolerance);
    return p;
}

inline GaugeTransformParams parse_gauge_transform(const io::ConfigNode& root) {
    root.expect_keys({"kind", "output", "formats", "potential", "generator", "samples", "fd_step", "tolerance"});
    GaugeTransformParams p;
    p.potential = root.has("potential") ? potential_from_config(root.at("potential")) : constant_field_scalar(1.0);
    p.generator = root.has("generator") ? generator_from_config(root.at("generator")) : constant_field_generator(1.0);
    if (auto s = root.maybe("samples")) {
        s->expect_keys({"x", "t"});
        if (s->has("x")) p.x = parse_range(s->at("x"), p.x);
        if (s->has("t")) p.t = parse_range(s->at("t"), p.t);
    }
    p.fd_step = root.positive_or("fd_step", p.fd_step);
    if (root.has("tolerance")) p.tolerance = root.positive("tolerance");
    return p;
}

inline ResidualGrid parse_residual_grid(const io::ConfigNode& n, ResidualGrid g) {
    n.expect_keys({"dx", "dt", "extent", "t_min", "t_max"});
    g.dx = n.positive_or("dx", g.dx);
    g.dt = n.positive_or("dt", g.dt);
    g.extent = n.positive_or("extent", g.extent);
    g.t_min = n.number_or("t_min", g.t_min);
    g.t_max = n.number_or("t_max", g.t_max);
    if (!(g.t_max > g.t_min)) throw UsageError(n.child_path("t_max") + ": must exceed t_min");
    return g;
}

inline VolkovParams parse_volkov(const io::ConfigNode& root) {
    root.expect_keys({"kind", "output", "formats", "pulse", "momentum", "normalization", "samples", "residuals", "tolerance"});
    VolkovParams p;
    p.pulse = pulse_from_config(root.at("pulse"));
    p.momentum = root.vec3_or("momentum", {0.5, 0.0, 0.0});
    if (auto c = root.maybe("normalization")) {
        if (c->size() != 2) c->fail("expected [re, im]");
        p.normalization = {c->at(std::size_t{0}).number(), c->at(std::size_t{1}).number()};
    }
    p.t_min = p.pulse.t_on;
    p.t_max = p.pulse.family == PulseFamily::zero ? p.pulse.t_on + 10.0 : p.pulse.t_off + 1.0;
    if (auto s = root.maybe("samples")) {
        s->expect_keys({"count", "seed", "r_extent", "t_min", "t_max"});
        const auto c = s->integer_or("count", 100);
        if (c < 1) throw UsageError(s->child_path("count") + ": must be at least 1");
        p.sample_count = static_cast<std::size_t>(c);
        const auto seed = s->integer_or("seed", 1);
        if (seed < 0) throw UsageError(s->child_path("seed") + ": must be non-negative");
        p.seed = static_cast<std::uint64_t>(seed);
        p.r_extent = s->positive_or("r_extent", p.r_extent);
        p.t_min = s->number_or("t_min", p.t_min);
        p.t_max = s->number_or("t_max", p.t_max);
        if (p.t_min < p.pulse.t_on) throw UsageError(s->child_path("t_min") + ": must not precede pulse.t_on");
        if (!(p.t_max > p.t_min)) throw UsageError(s->child_path("t_max") + ": must exceed t_min");
    }
    p.residual_grid.t_min = p.pulse.t_on + 1.0;
    p.residual_grid.t_max = p.pulse.t_on + 2.0;
    if (auto r = root.maybe("residuals")) {
        r->expect_keys({"enabled", "grid", "check_convergence"});
        p.residuals = r->boolean_or("enabled", true);
        p.check_convergence = r->boolean_or("check_convergence", true);
        if (r->has("grid")) p.residual_grid = parse_residual_grid(r->at("grid"), p.residual_grid);
        if (p.residual_grid.t_min < p.pulse.t_on) throw UsageError(r->child_path("grid.t_min") + ": must not precede pulse.t_on");
    }
    p.tolerance = root.positive_or("tolerance", p.tolerance);
    return p;
}

inline UnitarityParams parse_unitarity(const io::ConfigNode& root) {
    root.expect_keys({"kind", "output", "formats", "particle", "potential", "generator", "grid", "convergence"});
    UnitarityParams p;
    p.particle = parse_particle(root);
    p.potential = root.has("potential") ? potential_from_config(root.at("potential")) : constant_field_scalar(1.0);
    p.generator = root.has("generator") ? generator_from_config(root.at("generator")) : constant_field_generator(1.0);
    if (auto g = root.maybe("grid")) {
        g->expect_keys({"x_min", "x_max", "nx", "t"});
        p.grid.x_min = g->number_or("x_min", p.grid.x_min);
        p.grid.x_max = g->number_or("x_max", p.grid.x_max);
        const auto nx = g->integer_or("nx", static_cast<std::int64_t>(p.grid.nx));
        if (nx < 5) throw UsageError(g->child_path("nx") + ": must be at least 5");
        p.grid.nx = static_cast<std::size_t>(nx);
        p.grid.t = g->number_or("t", 1.0);
        if (!(p.grid.x_max > p.grid.x_min)) throw UsageError(g->child_path("x_max") + ": must exceed x_min");
    } else {
        p.grid.t = 1.0;
    }
    p.convergence = root.boolean_or("convergence", true);
    return p;
}

inline KeldyshParams parse_keldysh(const io::ConfigNode& root) {
    root.expect_keys({"kind", "output", "formats", "E_B", "intensity", "omega", "iso_tolerance", "tolerance"});
    KeldyshParams p;
    p.E_B = root.positive_or("E_B", p.E_B);
    p.intensity = parse_geometric(root.at("intensity"), true);
    p.omega = parse_geometric(root.at("omega"));
    p.iso_tolerance = root.positive_or("iso_tolerance", p.iso_tolerance);
    p.tolerance = root.positive_or("tolerance", p.tolerance);
    return p;
}

}  // namespace gaugelab::cli
