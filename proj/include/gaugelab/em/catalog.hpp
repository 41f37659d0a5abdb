#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/em/potentials.hpp"
#include "gaugelab/io/config_node.hpp"
#include "gaugelab/quantum/pulse.hpp"

namespace gaugelab {

// Parameterized potential and generator families. These are the only
// configurations loadable from config files.

/// phi = -E0 (d . r), A = 0: uniform field E0 d from a scalar potential.
inline PotentialConfiguration constant_field_scalar(double E0, Vec3 direction = e_x) {
    PotentialConfiguration p;
    p.name = "constant_field_scalar";
    p.phi = [E0, direction](const Vec3& r, double) { return -E0 * dot(direction, r); };
    p.grad_phi = [E0, direction](const Vec3&, double) { return direction * -E0; };
    return p;
}

/// phi = 0, A = -d c E0 t: the same uniform field from a vector potential.
inline PotentialConfiguration constant_field_vector(double E0, Vec3 direction = e_x) {
    PotentialConfiguration p;
    p.name = "constant_field_vector";
    p.A = [E0, direction](const Vec3&, double t) { return direction * (-speed_of_light * E0 * t); };
    p.dt_A = [E0, direction](const Vec3&, double) { return direction * (-speed_of_light * E0); };
    p.jacobian_A = [](const Vec3&, double) { return Mat3{}; };
    return p;
}

/// Velocity-gauge potentials of a dipole pulse: phi = 0, A = A(t).
inline PotentialConfiguration pulse_velocity_gauge(const PulseShape& pulse) {
    pulse.validate();
    PotentialConfiguration p;
    p.name = "sinusoidal_pulse";
    p.A = [pulse](const Vec3&, double t) { return vector_potential(pulse, t); };
    p.dt_A = [pulse](const Vec3&, double t) { return electric_field_from_pulse(pulse, t) * -speed_of_light; };
    p.jacobian_A = [](const Vec3&, double) { return Mat3{}; };
    return p;
}

/// Lambda(x, t) = sum_ij c[i][j] x^i t^j, with x the first Cartesian coordinate.
inline GaugeGenerator polynomial_generator(std::vector<std::vector<double>> c, std::string name = "polynomial") {
    // d^dx/dx^dx d^dt/dt^dt of the polynomial.
    auto eval = [c](double x, double t, int dx, int dt) {
        double sum = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (static_cast<int>(i) < dx) continue;
            double fx = 1.0;
            for (int k = 0; k < dx; ++k) fx *= static_cast<double>(static_cast<int>(i) - k);
            const double px = std::pow(x, static_cast<double>(static_cast<int>(i) - dx));
            for (std::size_t j = 0; j < c[i].size(); ++j) {
                if (static_cast<int>(j) < dt || c[i][j] == 0.0) continue;
                double ft = 1.0;
                for (int k = 0; k < dt; ++k) ft *= static_cast<double>(static_cast<int>(j) - k);
                sum += c[i][j] * fx * ft * px * std::pow(t, static_cast<double>(static_cast<int>(j) - dt));
            }
        }
        return sum;
    };
    GaugeGenerator g;
    g.name = std::move(name);
    g.time_independent = true;
    for (const auto& row : c)
        for (std::size_t j = 1; j < row.size(); ++j) g.time_independent = g.time_independent && row[j] == 0.0;
    g.lambda = [eval](const Vec3& r, double t) { return eval(r.x, t, 0, 0); };
    g.grad_lambda = [eval](const Vec3& r, double t) { return Vec3{eval(r.x, t, 1, 0), 0.0, 0.0}; };
    g.dt_lambda = [eval](const Vec3& r, double t) { return eval(r.x, t, 0, 1); };
    g.grad_dt_lambda = [eval](const Vec3& r, double t) { return Vec3{eval(r.x, t, 1, 1), 0.0, 0.0}; };
    g.hessian_lambda = [eval](const Vec3& r, double t) {
        Mat3 h;
        h(0, 0) = eval(r.x, t, 2, 0);
        return h;
    };
    return g;
}

/// Lambda = a x t.
inline GaugeGenerator product_generator(double a) {
    GaugeGenerator g;
    g.name = "product";
    g.lambda = [a](const Vec3& r, double t) { return a * r.x * t; };
    g.grad_lambda = [a](const Vec3&, double t) { return Vec3{a * t, 0.0, 0.0}; };
    g.dt_lambda = [a](const Vec3& r, double) { return a * r.x; };
    g.grad_dt_lambda = [a](const Vec3&, double) { return Vec3{a, 0.0, 0.0}; };
    g.hessian_lambda = [](const Vec3&, double) { return Mat3{}; };
    g.time_independent = (a == 0.0);
    return g;
}

/// Lambda = -c E0 x t: carries the scalar-potential constant field into the
/// vector-potential gauge.
inline GaugeGenerator constant_field_generator(double E0) {
    GaugeGenerator g = product_generator(-speed_of_light * E0);
    g.name = "constant_field";
    return g;
}

inline GaugeGenerator constant_generator(double value) {
    GaugeGenerator g;
    g.name = "constant";
    g.lambda = [value](const Vec3&, double) { return value; };
    g.grad_lambda = [](const Vec3&, double) { return Vec3{}; };
    g.dt_lambda = [](const Vec3&, double) { return 0.0; };
    g.grad_dt_lambda = [](const Vec3&, double) { return Vec3{}; };
    g.hessian_lambda = [](const Vec3&, double) { return Mat3{}; };
    g.time_independent = true;
    return g;
}

/// Lambda = -r . A(t): velocity gauge to length gauge for a dipole pulse.
inline GaugeGenerator dipole_length_generator(const PulseShape& pulse) {
    pulse.validate();
    GaugeGenerator g;
    g.name = "dipole_length";
    g.lambda = [pulse](const Vec3& r, double t) { return -dot(r, vector_potential(pulse, t)); };
    g.grad_lambda = [pulse](const Vec3&, double t) { return -vector_potential(pulse, t); };
    g.dt_lambda = [pulse](const Vec3& r, double t) {
        return speed_of_light * dot(r, electric_field_from_pulse(pulse, t));
    };
    g.grad_dt_lambda = [pulse](const Vec3&, double t) { return electric_field_from_pulse(pulse, t) * speed_of_light; };
    g.hessian_lambda = [](const Vec3&, double) { return Mat3{}; };
    g.time_independent = pulse.family == PulseFamily::zero;
    return g;
}

// ---- config loading ----

inline Vec3 read_direction(const io::ConfigNode& params, const char* key) {
    const Vec3 d = params.vec3_or(key, e_x);
    if (std::abs(norm(d) - 1.0) > 1e-12) throw UsageError(params.child_path(key) + ": must be a unit vector");
    return d;
}

inline PulseShape pulse_from_config(const io::ConfigNode& node) {
    node.expect_keys({"shape", "A0", "omega", "polarization", "t_on", "t_off"});
    PulseShape p;
    try {
        p.family = pulse_family_from_string(node.at("shape").string());
    } catch (const UsageError& e) {
        throw UsageError(node.child_path("shape") + ": " + e.what());
    }
    p.t_on = node.number_or("t_on", 0.0);
    if (p.family == PulseFamily::zero) {
        p.t_off = node.number_or("t_off", p.t_on);
        return p;
    }
    p.A0 = node.at("A0").number();
    p.omega = node.positive("omega");
    p.polarization = read_direction(node, "polarization");
    p.t_off = node.at("t_off").number();
    if (!(p.t_off > p.t_on)) throw UsageError(node.child_path("t_off") + ": must exceed t_on");
    return p;
}

/// {"family": ..., "params": {...}}
inline PotentialConfiguration potential_from_config(const io::ConfigNode& node) {
    node.expect_keys({"family", "params"});
    const std::string family = node.at("family").string();
    const nlohmann::json empty = nlohmann::json::object();
    const io::ConfigNode params = node.maybe("params").value_or(io::ConfigNode(empty, node.child_path("params")));
    if (family == "constant_field_scalar" || family == "constant_field_vector") {
        params.expect_keys({"E0", "direction"});
        const double E0 = params.number_or("E0", 1.0);
        const Vec3 d = read_direction(params, "direction");
        return family == "constant_field_scalar" ? constant_field_scalar(E0, d) : constant_field_vector(E0, d);
    }
    if (family == "sinusoidal_pulse") return pulse_velocity_gauge(pulse_from_config(params));
    if (family == "vacuum") {
        params.expect_keys({});
        PotentialConfiguration p;
        p.name = "vacuum";
        return p;
    }
    throw UsageError(node.child_path("family") + ": unknown potential family '" + family + "'");
}

inline GaugeGenerator generator_from_config(const io::ConfigNode& node) {
    node.expect_keys({"family", "params"});
    const std::string family = node.at("family").string();
    const nlohmann::json empty = nlohmann::json::object();
    const io::ConfigNode params = node.maybe("params").value_or(io::ConfigNode(empty, node.child_path("params")));
    if (family == "polynomial") {
        params.expect_keys({"coefficients"});
        const io::ConfigNode rows = params.at("coefficients");
        std::vector<std::vector<double>> c;
        for (std::size_t i = 0; i < rows.size(); ++i) c.push_back(rows.at(i).numbers());
        return polynomial_generator(std::move(c));
    }
    if (family == "product") {
        params.expect_keys({"a", "multiply_by_c"});
        double a = params.at("a").number();
        if (params.boolean_or("multiply_by_c", false)) a *= speed_of_light;
        return product_generator(a);
    }
    if (family == "constant_field") {
        params.expect_keys({"E0"});
        return constant_field_generator(params.number_or("E0", 1.0));
    }
    if (family == "dipole_length") return dipole_length_generator(pulse_from_config(params));
    throw UsageError(node.child_path("family") + ": unknown generator family '" + family + "'");
}

}  // namespace gaugelab
