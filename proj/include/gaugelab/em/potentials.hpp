#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/report.hpp"
#include "gaugelab/core/vec3.hpp"

namespace gaugelab {

using ScalarField = std::function<double(const Vec3&, double)>;
using VectorField = std::function<Vec3(const Vec3&, double)>;
using JacobianField = std::function<Mat3(const Vec3&, double)>;

struct SpaceTimePoint {
    Vec3 r;
    double t = 0.0;
};

inline std::string describe(const Vec3& r, double t) { return "r=" + to_string(r) + ", t=" + std::to_string(t); }

/// A gauge: scalar potential phi(r, t) and vector potential A(r, t).
///
/// An empty phi or A means that potential vanishes identically. The optional
/// derivative suppliers are used by derive_fields and the dynamics when
/// present; otherwise central differences are taken.
struct PotentialConfiguration {
    std::string name;
    ScalarField phi;
    VectorField A;

    VectorField grad_phi;
    VectorField dt_A;
    JacobianField jacobian_A;

    double scalar(const Vec3& r, double t) const { return phi ? phi(r, t) : 0.0; }
    Vec3 vector(const Vec3& r, double t) const { return A ? A(r, t) : Vec3{}; }

    bool has_vector_potential() const { return static_cast<bool>(A); }

    bool analytic_grad_phi() const { return !phi || grad_phi; }
    bool analytic_dt_A() const { return !A || dt_A; }
    bool analytic_jacobian_A() const { return !A || jacobian_A; }
    bool fully_analytic() const { return analytic_grad_phi() && analytic_dt_A() && analytic_jacobian_A(); }
};

/// Generating function Lambda(r, t) of a gauge transformation together with
/// its first derivatives. The mixed derivative grad(dLambda/dt) and the
/// Hessian are optional; when supplied, transformed potentials keep analytic
/// derivatives.
struct GaugeGenerator {
    std::string name;
    ScalarField lambda;
    VectorField grad_lambda;
    ScalarField dt_lambda;

    VectorField grad_dt_lambda;
    JacobianField hessian_lambda;

    bool time_independent = false;
};

namespace fd {

inline void require_finite(double v, const char* what, const Vec3& r, double t) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite ") + what + " at " + describe(r, t));
}
inline void require_finite(const Vec3& v, const char* what, const Vec3& r, double t) {
    if (!is_finite(v)) throw DomainError(std::string("non-finite ") + what + " at " + describe(r, t));
}
inline void require_finite(const Mat3& v, const char* what, const Vec3& r, double t) {
    if (!is_finite(v)) throw DomainError(std::string("non-finite ") + what + " at " + describe(r, t));
}

inline Vec3 gradient(const ScalarField& f, const Vec3& r, double t, double h) {
    Vec3 g;
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec3 d = unit(i) * h;
        g[i] = (f(r + d, t) - f(r - d, t)) / (2.0 * h);
    }
    return g;
}

inline double time_derivative(const ScalarField& f, const Vec3& r, double t, double h) {
    return (f(r, t + h) - f(r, t - h)) / (2.0 * h);
}

inline Vec3 time_derivative(const VectorField& f, const Vec3& r, double t, double h) {
    return (f(r, t + h) - f(r, t - h)) / (2.0 * h);
}

inline Mat3 jacobian(const VectorField& f, const Vec3& r, double t, double h) {
    Mat3 j;
    for (std::size_t col = 0; col < 3; ++col) {
        const Vec3 d = unit(col) * h;
        const Vec3 diff = (f(r + d, t) - f(r - d, t)) / (2.0 * h);
        for (std::size_t row = 0; row < 3; ++row) j(row, col) = diff[row];
    }
    return j;
}

}  // namespace fd

inline Vec3 grad_phi_at(const PotentialConfiguration& pot, const Vec3& r, double t, double h = default_fd_step) {
    Vec3 g;
    if (pot.grad_phi) g = pot.grad_phi(r, t);
    else if (pot.phi) g = fd::gradient(pot.phi, r, t, h);
    fd::require_finite(g, "scalar-potential gradient", r, t);
    return g;
}

inline Vec3 dt_A_at(const PotentialConfiguration& pot, const Vec3& r, double t, double h = default_fd_step) {
    Vec3 g;
    if (pot.dt_A) g = pot.dt_A(r, t);
    else if (pot.A) g = fd::time_derivative(pot.A, r, t, h);
    fd::require_finite(g, "vector-potential time derivative", r, t);
    return g;
}

inline Mat3 jacobian_A_at(const PotentialConfiguration& pot, const Vec3& r, double t, double h = default_fd_step) {
    Mat3 j;
    if (pot.jacobian_A) j = pot.jacobian_A(r, t);
    else if (pot.A) j = fd::jacobian(pot.A, r, t, h);
    fd::require_finite(j, "vector-potential Jacobian", r, t);
    return j;
}

struct EMFields {
    std::function<Vec3(const Vec3&, double)> E;
    std::function<Vec3(const Vec3&, double)> B;
};

/// E = -grad(phi) - (1/c) dA/dt and B = curl(A). Analytic derivatives are
/// used when the configuration supplies them, central differences with step h
/// otherwise.
inline EMFields derive_fields(const PotentialConfiguration& pot, double h = default_fd_step) {
    EMFields f;
    f.E = [pot, h](const Vec3& r, double t) {
        const Vec3 e = -grad_phi_at(pot, r, t, h) - dt_A_at(pot, r, t, h) / speed_of_light;
        fd::require_finite(e, "electric field", r, t);
        return e;
    };
    f.B = [pot, h](const Vec3& r, double t) {
        const Vec3 b = curl_from_jacobian(jacobian_A_at(pot, r, t, h));
        fd::require_finite(b, "magnetic field", r, t);
        return b;
    };
    return f;
}

/// phi' = phi - (1/c) dLambda/dt, A' = A + grad(Lambda).
inline PotentialConfiguration apply_gauge(const PotentialConfiguration& pot, const GaugeGenerator& gen) {
    if (!gen.lambda || !gen.grad_lambda || !gen.dt_lambda)
        throw PreconditionError("apply_gauge: generator '" + gen.name + "' lacks lambda or its first derivatives");

    PotentialConfiguration out;
    out.name = pot.name.empty() ? gen.name : pot.name + " + gauge(" + gen.name + ")";

    if (gen.time_independent) {
        out.phi = pot.phi;
        out.grad_phi = pot.grad_phi;
    } else {
        out.phi = [pot, gen](const Vec3& r, double t) {
            return pot.scalar(r, t) - gen.dt_lambda(r, t) / speed_of_light;
        };
        if (pot.analytic_grad_phi() && gen.grad_dt_lambda) {
            out.grad_phi = [pot, gen](const Vec3& r, double t) {
                const Vec3 base = pot.grad_phi ? pot.grad_phi(r, t) : Vec3{};
                return base - gen.grad_dt_lambda(r, t) / speed_of_light;
            };
        }
    }

    out.A = [pot, gen](const Vec3& r, double t) { return pot.vector(r, t) + gen.grad_lambda(r, t); };
    if (gen.time_independent) {
        if (pot.analytic_dt_A()) out.dt_A = [pot](const Vec3& r, double t) { return pot.dt_A ? pot.dt_A(r, t) : Vec3{}; };
    } else if (pot.analytic_dt_A() && gen.grad_dt_lambda) {
        out.dt_A = [pot, gen](const Vec3& r, double t) {
            const Vec3 base = pot.dt_A ? pot.dt_A(r, t) : Vec3{};
            return base + gen.grad_dt_lambda(r, t);
        };
    }
    if (pot.analytic_jacobian_A() && gen.hessian_lambda) {
        out.jacobian_A = [pot, gen](const Vec3& r, double t) {
            const Mat3 base = pot.jacobian_A ? pot.jacobian_A(r, t) : Mat3{};
            return base + gen.hessian_lambda(r, t);
        };
    }
    return out;
}

/// Lambda -> -Lambda.
inline GaugeGenerator negated(const GaugeGenerator& g) {
    GaugeGenerator n;
    n.name = "-(" + g.name + ")";
    n.time_independent = g.time_independent;
    n.lambda = [g](const Vec3& r, double t) { return -g.lambda(r, t); };
    n.grad_lambda = [g](const Vec3& r, double t) { return -g.grad_lambda(r, t); };
    n.dt_lambda = [g](const Vec3& r, double t) { return -g.dt_lambda(r, t); };
    if (g.grad_dt_lambda) n.grad_dt_lambda = [g](const Vec3& r, double t) { return -g.grad_dt_lambda(r, t); };
    if (g.hessian_lambda)
        n.hessian_lambda = [g](const Vec3& r, double t) {
            Mat3 m = g.hessian_lambda(r, t);
            for (auto& row : m.rows) row = -row;
            return m;
        };
    return n;
}

/// Lambda1 + Lambda2.
inline GaugeGenerator combined(const GaugeGenerator& a, const GaugeGenerator& b) {
    GaugeGenerator s;
    s.name = a.name + " + " + b.name;
    s.time_independent = a.time_independent && b.time_independent;
    s.lambda = [a, b](const Vec3& r, double t) { return a.lambda(r, t) + b.lambda(r, t); };
    s.grad_lambda = [a, b](const Vec3& r, double t) { return a.grad_lambda(r, t) + b.grad_lambda(r, t); };
    s.dt_lambda = [a, b](const Vec3& r, double t) { return a.dt_lambda(r, t) + b.dt_lambda(r, t); };
    if (a.grad_dt_lambda && b.grad_dt_lambda)
        s.grad_dt_lambda = [a, b](const Vec3& r, double t) { return a.grad_dt_lambda(r, t) + b.grad_dt_lambda(r, t); };
    if (a.hessian_lambda && b.hessian_lambda)
        s.hessian_lambda = [a, b](const Vec3& r, double t) { return a.hessian_lambda(r, t) + b.hessian_lambda(r, t); };
    return s;
}

struct FieldCheckOptions {
    double h = default_fd_step;
    /// Defaults to 1e-8 when both configurations carry analytic derivatives,
    /// 10 h^2 otherwise.
    std::optional<double> tolerance;
};

inline double default_field_tolerance(const PotentialConfiguration& a, const PotentialConfiguration& b, double h) {
    return (a.fully_analytic() && b.fully_analytic()) ? default_analytic_tolerance : 10.0 * h * h;
}

/// Compares the fields of two potential configurations on sample points.
/// Both E and B are listed as matched quantities.
inline InvarianceReport check_field_invariance(const PotentialConfiguration& pot1,
                                               const PotentialConfiguration& pot2,
                                               std::span<const SpaceTimePoint> samples,
                                               const FieldCheckOptions& opts = {}) {
    if (samples.empty()) throw UsageError("check_field_invariance: sample list is empty");
    const EMFields f1 = derive_fields(pot1, opts.h);
    const EMFields f2 = derive_fields(pot2, opts.h);
    double max_e = 0.0;
    double max_b = 0.0;
    for (const auto& s : samples) {
        max_e = std::max(max_e, norm(f1.E(s.r, s.t) - f2.E(s.r, s.t)));
        max_b = std::max(max_b, norm(f1.B(s.r, s.t) - f2.B(s.r, s.t)));
    }
    InvarianceReport rep;
    rep.tolerance = opts.tolerance.value_or(default_field_tolerance(pot1, pot2, opts.h));
    rep.add_matched("E", max_e);
    rep.add_matched("B", max_b);
    rep.finalize();
    return rep;
}

}  // namespace gaugelab
