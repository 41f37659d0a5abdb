#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/vec3.hpp"

namespace gaugelab {

enum class PulseFamily { zero, rectangular_sinusoid, sin2_envelope_sinusoid };

inline std::string_view to_string(PulseFamily f) {
    switch (f) {
    case PulseFamily::zero: return "zero";
    case PulseFamily::rectangular_sinusoid: return "rectangular-sinusoid";
    case PulseFamily::sin2_envelope_sinusoid: return "sin2-envelope-sinusoid";
    }
    return "unknown";
}

inline PulseFamily pulse_family_from_string(std::string_view s) {
    if (s == "zero") return PulseFamily::zero;
    if (s == "rectangular-sinusoid") return PulseFamily::rectangular_sinusoid;
    if (s == "sin2-envelope-sinusoid") return PulseFamily::sin2_envelope_sinusoid;
    throw UsageError("unknown pulse family '" + std::string(s) + "'");
}

/// Dipole-approximation vector potential A(t) with compact field support.
///
/// Inside (t_on, t_off]:
///   rectangular-sinusoid    A = A0 sin(w s) pol
///   sin2-envelope-sinusoid  A = A0 sin^2(pi s / tau) sin(w s) pol
/// with s = t - t_on and tau = t_off - t_on. A vanishes for t <= t_on and is
/// held at A(t_off) afterwards, so E = -(1/c) dA/dt vanishes outside the pulse.
struct PulseShape {
    PulseFamily family = PulseFamily::zero;
    double A0 = 0.0;
    double omega = 1.0;
    Vec3 polarization = e_x;
    double t_on = 0.0;
    double t_off = 0.0;

    void validate() const {
        if (!std::isfinite(A0) || !std::isfinite(omega) || !std::isfinite(t_on) || !std::isfinite(t_off) ||
            !is_finite(polarization))
            throw DomainError("pulse parameters must be finite");
        if (std::abs(norm(polarization) - 1.0) > 1e-12) throw DomainError("pulse polarization must be a unit vector");
        if (family != PulseFamily::zero) {
            if (!(omega > 0.0)) throw DomainError("pulse omega must be positive");
            if (!(t_off > t_on)) throw DomainError("pulse t_off must exceed t_on");
        }
    }

    static PulseShape zero(double t_on = 0.0) {
        PulseShape p;
        p.t_on = t_on;
        p.t_off = t_on;
        return p;
    }

    static PulseShape rectangular(double A0, double omega, double t_on, double t_off, Vec3 pol = e_x) {
        PulseShape p{PulseFamily::rectangular_sinusoid, A0, omega, pol, t_on, t_off};
        p.validate();
        return p;
    }

    static PulseShape sin2_envelope(double A0, double omega, double t_on, double t_off, Vec3 pol = e_x) {
        PulseShape p{PulseFamily::sin2_envelope_sinusoid, A0, omega, pol, t_on, t_off};
        p.validate();
        return p;
    }

    /// Scalar amplitude a(t) with A(t) = a(t) * polarization.
    double amplitude(double t) const {
        if (family == PulseFamily::zero || t <= t_on) return 0.0;
        const double s = std::min(t, t_off) - t_on;
        switch (family) {
        case PulseFamily::rectangular_sinusoid:
            return A0 * std::sin(omega * s);
        case PulseFamily::sin2_envelope_sinusoid: {
            const double env = std::sin(pi * s / (t_off - t_on));
            return A0 * env * env * std::sin(omega * s);
        }
        default:
            return 0.0;
        }
    }

    /// da/dt; zero outside (t_on, t_off).
    double amplitude_rate(double t) const {
        if (family == PulseFamily::zero || t <= t_on || t > t_off) return 0.0;
        const double s = t - t_on;
        switch (family) {
        case PulseFamily::rectangular_sinusoid:
            return A0 * omega * std::cos(omega * s);
        case PulseFamily::sin2_envelope_sinusoid: {
            const double k = pi / (t_off - t_on);
            const double env = std::sin(k * s);
            return A0 * (k * std::sin(2.0 * k * s) * std::sin(omega * s) + omega * env * env * std::cos(omega * s));
        }
        default:
            return 0.0;
        }
    }
};

inline Vec3 vector_potential(const PulseShape& pulse, double t) { return pulse.polarization * pulse.amplitude(t); }

/// E(t) = -(1/c) dA/dt, evaluated analytically.
inline Vec3 electric_field_from_pulse(const PulseShape& pulse, double t) {
    return pulse.polarization * (-pulse.amplitude_rate(t) / speed_of_light);
}

}  // namespace gaugelab
