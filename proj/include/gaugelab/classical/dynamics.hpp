#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/vec3.hpp"
#include "gaugelab/em/potentials.hpp"

namespace gaugelab {

struct ChargedParticle {
    double q = 1.0;
    double m = 1.0;

    void validate() const {
        if (!std::isfinite(q) || !std::isfinite(m)) throw DomainError("particle charge and mass must be finite");
        if (!(m > 0.0)) throw DomainError("particle mass must be positive");
    }
};

/// Position, canonical momentum and time.
struct PhaseSpaceState {
    Vec3 r;
    Vec3 p;
    double t = 0.0;
};

/// Initial data in gauge-independent (kinetic) form.
struct KineticState {
    Vec3 r;
    Vec3 v;
    double t = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    Vec3 r;
    Vec3 p;  ///< canonical
    Vec3 v;  ///< (p - qA/c)/m
    double T = 0.0;
    double U = 0.0;  ///< H - T
    double H = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;

    std::size_t size() const { return samples.size(); }
    const TrajectorySample& back() const { return samples.back(); }
};

enum class Integrator { rk4, leapfrog };

struct IntegrationOptions {
    Integrator method = Integrator::rk4;
    std::size_t max_steps = 10'000'000;
    double fd_step = default_fd_step;
};

inline Vec3 kinetic_momentum(const ChargedParticle& particle, const PotentialConfiguration& pot, const PhaseSpaceState& s) {
    return s.p - pot.vector(s.r, s.t) * (particle.q / speed_of_light);
}

/// H = (p - qA/c)^2 / 2m + q phi.
inline double hamiltonian_value(const ChargedParticle& particle, const PotentialConfiguration& pot, const PhaseSpaceState& s) {
    const Vec3 k = kinetic_momentum(particle, pot, s);
    const double h = dot(k, k) / (2.0 * particle.m) + particle.q * pot.scalar(s.r, s.t);
    fd::require_finite(h, "Hamiltonian", s.r, s.t);
    return h;
}

/// Canonical momentum that realises kinetic initial data in a given gauge:
/// p = m v + q A(r, t)/c.
inline PhaseSpaceState canonical_state(const ChargedParticle& particle, const PotentialConfiguration& pot, const KineticState& k) {
    return {k.r, k.v * particle.m + pot.vector(k.r, k.t) * (particle.q / speed_of_light), k.t};
}

struct PhaseSpaceRate {
    Vec3 dr;
    Vec3 dp;
};

/// Hamilton's equations for minimal coupling:
///   dr/dt = (p - qA/c)/m
///   dp_i/dt = (q/c) sum_j v_j dA_j/dx_i - q dphi/dx_i
inline PhaseSpaceRate hamilton_rhs(const ChargedParticle& particle, const PotentialConfiguration& pot, const PhaseSpaceState& s,
                                   double h = default_fd_step) {
    const Vec3 v = kinetic_momentum(particle, pot, s) / particle.m;
    Vec3 dp = -grad_phi_at(pot, s.r, s.t, h) * particle.q;
    if (pot.has_vector_potential()) dp += transpose_apply(jacobian_A_at(pot, s.r, s.t, h), v) * (particle.q / speed_of_light);
    fd::require_finite(v, "velocity", s.r, s.t);
    fd::require_finite(dp, "momentum rate", s.r, s.t);
    return {v, dp};
}

/// Fills v, T, U and H of each sample from its position and canonical momentum.
inline void energy_decomposition(const ChargedParticle& particle, const PotentialConfiguration& pot, Trajectory& traj) {
    for (auto& s : traj.samples) {
        const PhaseSpaceState st{s.r, s.p, s.t};
        const Vec3 k = kinetic_momentum(particle, pot, st);
        s.v = k / particle.m;
        s.T = dot(k, k) / (2.0 * particle.m);
        s.H = hamiltonian_value(particle, pot, st);
        s.U = s.H - s.T;
    }
}

namespace detail {

inline PhaseSpaceState rk4_step(const ChargedParticle& particle, const PotentialConfiguration& pot, const PhaseSpaceState& s,
                                double dt, double h) {
    const auto k1 = hamilton_rhs(particle, pot, s, h);
    const auto k2 = hamilton_rhs(particle, pot, {s.r + k1.dr * (dt / 2), s.p + k1.dp * (dt / 2), s.t + dt / 2}, h);
    const auto k3 = hamilton_rhs(particle, pot, {s.r + k2.dr * (dt / 2), s.p + k2.dp * (dt / 2), s.t + dt / 2}, h);
    const auto k4 = hamilton_rhs(particle, pot, {s.r + k3.dr * dt, s.p + k3.dp * dt, s.t + dt}, h);
    return {s.r + (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr) * (dt / 6),
            s.p + (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp) * (dt / 6), s.t + dt};
}

// Kick-drift-kick; valid only for A = 0 where H = p^2/2m + q phi is separable.
inline PhaseSpaceState leapfrog_step(const ChargedParticle& particle, const PotentialConfiguration& pot, const PhaseSpaceState& s,
                                     double dt, double h) {
    const Vec3 half = s.p - grad_phi_at(pot, s.r, s.t, h) * (particle.q * dt / 2);
    const Vec3 r = s.r + half * (dt / particle.m);
    const Vec3 p = half - grad_phi_at(pot, r, s.t + dt, h) * (particle.q * dt / 2);
    return {r, p, s.t + dt};
}

}  // namespace detail

/// Integrates Hamilton's equations from state0 to t_end, sampling every dt;
/// the last step is shortened to land on t_end.
inline Trajectory integrate(const ChargedParticle& particle, const PotentialConfiguration& pot, const PhaseSpaceState& state0,
                            double t_end, double dt, const IntegrationOptions& opts = {}) {
    particle.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("integrate: dt must be positive");
    if (!(t_end > state0.t)) throw UsageError("integrate: t_end must exceed the initial time");
    if (opts.method == Integrator::leapfrog && pot.has_vector_potential())
        throw UnsupportedMethodError("integrate: leapfrog requires A = 0 (separable Hamiltonian); potential '" + pot.name +
                                     "' has a vector potential");
    const double span = t_end - state0.t;
    double steps_real = std::ceil(span / dt);
    // A final step shorter than 1e-9 dt is absorbed into the previous one.
    if (steps_real > 1.0 && span - (steps_real - 1.0) * dt <= 1e-9 * dt) steps_real -= 1.0;
    if (steps_real > static_cast<double>(opts.max_steps))
        throw ResourceError("integrate: " + std::to_string(static_cast<long long>(steps_real)) + " steps exceed the cap of " +
                            std::to_string(opts.max_steps));
    const auto steps = static_cast<std::size_t>(steps_real);

    Trajectory traj;
    traj.samples.reserve(steps + 1);
    auto record = [&](const PhaseSpaceState& s) {
        TrajectorySample smp;
        smp.t = s.t;
        smp.r = s.r;
        smp.p = s.p;
        traj.samples.push_back(smp);
    };
    PhaseSpaceState s = state0;
    record(s);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_next = (k == steps) ? t_end : state0.t + static_cast<double>(k) * dt;
        const double h = t_next - s.t;
        s = opts.method == Integrator::rk4 ? detail::rk4_step(particle, pot, s, h, opts.fd_step)
                                           : detail::leapfrog_step(particle, pot, s, h, opts.fd_step);
        s.t = t_next;
        record(s);
    }
    energy_decomposition(particle, pot, traj);
    return traj;
}

struct ConstantFieldMotion {
    double x = 0.0;
    double v = 0.0;
};

/// Closed-form motion in a uniform field: x = (qE0/2m) t^2 + v0 t + x0, v = (qE0/m) t + v0.
inline ConstantFieldMotion analytic_constant_field(const ChargedParticle& particle, double E0, double x0, double v0, double t) {
    particle.validate();
    const double a = particle.q * E0 / particle.m;
    return {0.5 * a * t * t + v0 * t + x0, a * t + v0};
}

}  // namespace gaugelab
