#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/core/parallel.hpp"
#include "gaugelab/quantum/volkov.hpp"

namespace gaugelab {

/// Space-time lattice for residual scans: x in [-extent, extent] along the
/// first axis (y = z = 0) and t in [t_min, t_max]. The Laplacian uses the full
/// 7-point stencil with spacing dx on every axis.
struct ResidualGrid {
    double dx = 0.05;
    double dt = 0.005;
    double extent = 10.0;
    double t_min = 0.0;
    double t_max = 1.0;

    std::size_t nx() const { return static_cast<std::size_t>(std::llround(2.0 * extent / dx)) + 1; }
    std::size_t nt() const { return static_cast<std::size_t>(std::llround((t_max - t_min) / dt)) + 1; }

    /// Same domain with both steps halved.
    ResidualGrid refined() const {
        ResidualGrid g = *this;
        g.dx /= 2;
        g.dt /= 2;
        return g;
    }
};

struct ResidualReport {
    Gauge gauge = Gauge::velocity;
    double max_residual = 0.0;
    double rms_residual = 0.0;
    ResidualGrid grid;
    std::size_t points = 0;
};

inline nlohmann::json to_json(const ResidualReport& r) {
    return {{"gauge", to_string(r.gauge)},
            {"max_residual", r.max_residual},
            {"rms_residual", r.rms_residual},
            {"grid", {{"dx", r.grid.dx}, {"dt", r.grid.dt}, {"extent", r.grid.extent}}}};
}

/// R = i dPsi/dt - H Psi for the exact Volkov state of the chosen gauge,
/// with second-order central differences in t and r:
///   velocity gauge  H = (1/2)(p_hat + A(t)/c)^2
///   length gauge    H = (1/2) p_hat^2 + r.E(t)
/// Reports max and RMS |R| over interior lattice points.
inline ResidualReport schrodinger_residual(Gauge gauge, const Vec3& p, const PulseShape& pulse, const ResidualGrid& grid,
                                           Complex C = 1.0, unsigned threads = 1, const QuadratureOptions& quad = {1e-13, 4096, KronrodRule::k31}) {
    if (!(grid.dx > 0.0) || !(grid.dt > 0.0) || !(grid.extent > 0.0) || !(grid.t_max > grid.t_min))
        throw UsageError("schrodinger_residual: grid steps and extents must be positive");
    if (grid.t_min < pulse.t_on) throw DomainError("schrodinger_residual: grid starts before pulse turn-on");
    const std::size_t nx = grid.nx();
    const std::size_t nt = grid.nt();
    if (nx < 3 || nt < 3) throw UsageError("schrodinger_residual: need at least 3 points per axis for central stencils");

    // Per time level: S(t), A(t)/c and E(t).
    const std::size_t levels = nt;
    std::vector<double> tl(levels), S(levels);
    std::vector<Vec3> a(levels), E(levels);
    for (std::size_t j = 0; j < levels; ++j) tl[j] = grid.t_min + static_cast<double>(j) * grid.dt;
    S[0] = volkov_phase_velocity(p, pulse, tl[0], quad);
    auto integrand = [&](double tau) {
        const Vec3 k = p + vector_potential(pulse, tau) / speed_of_light;
        return 0.5 * dot(k, k);
    };
    for (std::size_t j = 1; j < levels; ++j) S[j] = S[j - 1] + integrate(integrand, tl[j - 1], tl[j], quad).value;
    for (std::size_t j = 0; j < levels; ++j) {
        a[j] = vector_potential(pulse, tl[j]) / speed_of_light;
        E[j] = electric_field_from_pulse(pulse, tl[j]);
    }

    auto psi = [&](const Vec3& r, std::size_t j) {
        double phase = dot(p, r) - S[j];
        if (gauge == Gauge::length) phase += dot(r, a[j]);
        return C * std::polar(1.0, phase);
    };

    const double h = grid.dx;
    // Interior points: j in [1, nt-2], k in [1, nx-2].
    const std::size_t inner_t = nt - 2;
    std::vector<double> row_max(inner_t, 0.0), row_sq(inner_t, 0.0);
    parallel_for(inner_t, threads, [&](std::size_t jj) {
        const std::size_t j = jj + 1;
        double mx = 0.0, sq = 0.0;
        for (std::size_t k = 1; k + 1 < nx; ++k) {
            const Vec3 r{-grid.extent + static_cast<double>(k) * h, 0.0, 0.0};
            const Complex c0 = psi(r, j);
            const Complex dpsi_dt = (psi(r, j + 1) - psi(r, j - 1)) / (2.0 * grid.dt);
            Complex lap = -6.0 * c0;
            Complex grad[3];
            for (std::size_t ax = 0; ax < 3; ++ax) {
                const Vec3 d = unit(ax) * h;
                const Complex fwd = psi(r + d, j);
                const Complex bwd = psi(r - d, j);
                lap += fwd + bwd;
                grad[ax] = (fwd - bwd) / (2.0 * h);
            }
            lap /= h * h;
            Complex Hpsi;
            if (gauge == Gauge::velocity) {
                // (p_hat + a)^2 = -lap - 2i a.grad + a^2 for spatially uniform a
                const Complex a_grad = a[j].x * grad[0] + a[j].y * grad[1] + a[j].z * grad[2];
                Hpsi = 0.5 * (-lap - Complex(0.0, 2.0) * a_grad + dot(a[j], a[j]) * c0);
            } else {
                Hpsi = -0.5 * lap + dot(r, E[j]) * c0;
            }
            const double res = std::abs(Complex(0.0, 1.0) * dpsi_dt - Hpsi);
            mx = std::max(mx, res);
            sq += res * res;
        }
        row_max[jj] = mx;
        row_sq[jj] = sq;
    });

    ResidualReport rep;
    rep.gauge = gauge;
    rep.grid = grid;
    rep.points = inner_t * (nx - 2);
    double sq = 0.0;
    for (std::size_t jj = 0; jj < inner_t; ++jj) {
        rep.max_residual = std::max(rep.max_residual, row_max[jj]);
        sq += row_sq[jj];
    }
    rep.rms_residual = std::sqrt(sq / static_cast<double>(rep.points));
    return rep;
}

struct ResidualConvergence {
    ResidualReport coarse;
    ResidualReport fine;
    double ratio = 0.0;  ///< coarse.max / fine.max
};

inline ResidualConvergence residual_convergence(Gauge gauge, const Vec3& p, const PulseShape& pulse, const ResidualGrid& grid,
                                                Complex C = 1.0, unsigned threads = 1) {
    ResidualConvergence c;
    c.coarse = schrodinger_residual(gauge, p, pulse, grid, C, threads);
    c.fine = schrodinger_residual(gauge, p, pulse, grid.refined(), C, threads);
    c.ratio = c.coarse.max_residual / c.fine.max_residual;
    return c;
}

}  // namespace gaugelab
