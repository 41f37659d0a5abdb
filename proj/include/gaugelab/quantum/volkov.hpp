#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/quadrature.hpp"
#include "gaugelab/core/vec3.hpp"
#include "gaugelab/quantum/pulse.hpp"

namespace gaugelab {

using Complex = std::complex<double>;

// Electron in a dipole field: charge -1, mass 1, atomic units throughout.

enum class Gauge { velocity, length };

inline const char* to_string(Gauge g) { return g == Gauge::velocity ? "velocity" : "length"; }

inline void require_after_turn_on(const PulseShape& pulse, double t, const char* op) {
    if (!(t >= pulse.t_on)) throw DomainError(std::string(op) + ": t = " + std::to_string(t) + " precedes pulse turn-on t_on = " + std::to_string(pulse.t_on));
}

/// S(t) = 1/2 int_{t_on}^t (p + A(tau)/c)^2 dtau, with the quadrature error estimate.
inline QuadratureResult volkov_phase_velocity_estimate(const Vec3& p, const PulseShape& pulse, double t,
                                                       const QuadratureOptions& opts = {}) {
    require_after_turn_on(pulse, t, "volkov_phase_velocity");
    if (pulse.family == PulseFamily::zero) return {0.5 * dot(p, p) * (t - pulse.t_on), 0.0, 0};
    auto integrand = [&](double tau) {
        const Vec3 k = p + vector_potential(pulse, tau) / speed_of_light;
        return 0.5 * dot(k, k);
    };
    const double upper = std::min(t, pulse.t_off);
    QuadratureResult r = integrate(integrand, pulse.t_on, upper, opts);
    if (t > pulse.t_off) r.value += integrand(pulse.t_off) * (t - pulse.t_off);
    return r;
}

inline double volkov_phase_velocity(const Vec3& p, const PulseShape& pulse, double t, const QuadratureOptions& opts = {}) {
    return volkov_phase_velocity_estimate(p, pulse, t, opts).value;
}

/// Velocity-gauge Volkov state C exp(i p.r - i S(t)).
inline Complex psi_velocity(const Vec3& p, const PulseShape& pulse, const Vec3& r, double t, Complex C = 1.0,
                            const QuadratureOptions& opts = {}) {
    const double phase = dot(p, r) - volkov_phase_velocity(p, pulse, t, opts);
    return C * std::polar(1.0, phase);
}

/// Length-gauge state exp(i r.A(t)/c) times the velocity-gauge state.
inline Complex psi_length(const Vec3& p, const PulseShape& pulse, const Vec3& r, double t, Complex C = 1.0,
                          const QuadratureOptions& opts = {}) {
    const double prefactor = dot(r, vector_potential(pulse, t)) / speed_of_light;
    return std::polar(1.0, prefactor) * psi_velocity(p, pulse, r, t, C, opts);
}

/// Tabulated F(tau) = int_{t_on}^tau E(t') dt' on a uniform grid, interpolated
/// by cubic Hermite pieces using F' = E at the nodes.
class FieldIntegralTable {
public:
    FieldIntegralTable(const PulseShape& pulse, double t_end, double tolerance, double initial_cell, int max_refinements,
                       const QuadratureOptions& quad)
        : pulse_(pulse), t0_(pulse.t_on), t1_(t_end) {
        const double span = t1_ - t0_;
        std::size_t cells = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(span / initial_cell)));
        for (int level = 0;; ++level) {
            build(cells, quad);
            measured_error_ = midpoint_error(quad);
            if (measured_error_ <= tolerance || level >= max_refinements) break;
            cells *= 2;
        }
    }

    std::size_t cells() const { return nodes_.size() - 1; }
    double step() const { return step_; }
    /// Largest interpolation error found at the cell midpoints.
    double measured_error() const { return measured_error_; }
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    double node(std::size_t k) const { return nodes_[k]; }

    /// Scalar integral along the polarization; F(tau) = value(tau) * polarization.
    double value(double tau) const {
        if (tau <= t0_) return 0.0;
        if (tau >= t1_) return F_.back();
        std::size_t k = std::min(cells() - 1, static_cast<std::size_t>((tau - t0_) / step_));
        return hermite(k, tau);
    }

    double value_in_cell(std::size_t k, double tau) const { return hermite(k, tau); }

private:
    double field(double tau) const { return -pulse_.amplitude_rate(tau) / speed_of_light; }

    void build(std::size_t cells, const QuadratureOptions& quad) {
        step_ = (t1_ - t0_) / static_cast<double>(cells);
        nodes_.resize(cells + 1);
        F_.assign(cells + 1, 0.0);
        dF_.resize(cells + 1);
        for (std::size_t k = 0; k <= cells; ++k) nodes_[k] = (k == cells) ? t1_ : t0_ + static_cast<double>(k) * step_;
        auto e = [this](double tau) { return field(tau); };
        for (std::size_t k = 0; k < cells; ++k) F_[k + 1] = F_[k] + integrate(e, nodes_[k], nodes_[k + 1], quad).value;
        for (std::size_t k = 0; k <= cells; ++k) dF_[k] = field(nodes_[k]);
        // The field jumps at t_on for some families; use the one-sided limit.
        if (cells > 0) dF_[0] = field(std::nextafter(t0_, t1_));
    }

    double midpoint_error(const QuadratureOptions& quad) const {
        auto e = [this](double tau) { return field(tau); };
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
            const double mid = 0.5 * (nodes_[k] + nodes_[k + 1]);
            const double exact = F_[k] + integrate(e, nodes_[k], mid, quad).value;
            worst = std::max(worst, std::abs(hermite(k, mid) - exact));
        }
        return worst;
    }

    double hermite(std::size_t k, double tau) const {
        const double a = nodes_[k];
        const double h = nodes_[k + 1] - a;
        const double s = (tau - a) / h;
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * F_[k] + (s3 - 2 * s2 + s) * h * dF_[k] + (-2 * s3 + 3 * s2) * F_[k + 1] +
               (s3 - s2) * h * dF_[k + 1];
    }

    PulseShape pulse_;
    double t0_;
    double t1_;
    double step_ = 0.0;
    double measured_error_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> F_;
    std::vector<double> dF_;
};

struct ScalarFormOptions {
    QuadratureOptions quad{1e-13, 4096, KronrodRule::k31};
    /// Target for the cubic interpolation of the inner field integral.
    double interpolation_tolerance = 1e-10;
    double initial_cell = 0.02;
    int max_refinements = 10;
};

struct ScalarFormEvaluation {
    Complex value;
    double interpolation_error = 0.0;  ///< measured at cell midpoints
    double quadrature_error = 0.0;     ///< estimate for the r.E integral
    std::size_t cells = 0;
};

/// Length-gauge state written with the field only:
///   phase = p.r - int r.E dtau - 1/2 int (p - int E dt')^2 dtau,
/// all lower limits at t_on. The inner integral is tabulated and interpolated;
/// the outer integral of the piecewise polynomial is exact per cell.
inline ScalarFormEvaluation psi_length_scalar_form_detailed(const Vec3& p, const PulseShape& pulse, const Vec3& r, double t,
                                                            Complex C = 1.0, const ScalarFormOptions& opts = {}) {
    require_after_turn_on(pulse, t, "psi_length_scalar_form");
    ScalarFormEvaluation out;
    if (pulse.family == PulseFamily::zero) {
        out.value = C * std::polar(1.0, dot(p, r) - 0.5 * dot(p, p) * (t - pulse.t_on));
        return out;
    }
    const Vec3 pol = pulse.polarization;
    const double upper = std::min(t, pulse.t_off);
    double outer = 0.0;
    double middle = 0.0;
    double F_end = 0.0;
    if (upper > pulse.t_on) {
        const FieldIntegralTable table(pulse, upper, opts.interpolation_tolerance, opts.initial_cell, opts.max_refinements, opts.quad);
        for (std::size_t k = 0; k < table.cells(); ++k) {
            outer += gauss_legendre4(
                [&](double tau) {
                    const Vec3 kin = p - pol * table.value_in_cell(k, tau);
                    return 0.5 * dot(kin, kin);
                },
                table.node(k), table.node(k + 1));
        }
        const auto rE = integrate([&](double tau) { return dot(r, electric_field_from_pulse(pulse, tau)); }, pulse.t_on, upper, opts.quad);
        middle = rE.value;
        F_end = table.value(upper);
        out.interpolation_error = table.measured_error();
        out.quadrature_error = rE.error;
        out.cells = table.cells();
    }
    if (t > upper) {
        const Vec3 kin = p - pol * F_end;
        outer += 0.5 * dot(kin, kin) * (t - upper);
    }
    out.value = C * std::polar(1.0, dot(p, r) - middle - outer);
    return out;
}

inline Complex psi_length_scalar_form(const Vec3& p, const PulseShape& pulse, const Vec3& r, double t, Complex C = 1.0,
                                      const ScalarFormOptions& opts = {}) {
    return psi_length_scalar_form_detailed(p, pulse, r, t, C, opts).value;
}

}  // namespace gaugelab
