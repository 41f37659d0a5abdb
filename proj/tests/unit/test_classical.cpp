#include <catch_amalgamated.hpp>

#include <cmath>

#include "gaugelab/classical/compare.hpp"
#include "gaugelab/classical/dynamics.hpp"
#include "gaugelab/core/quadrature.hpp"
#include "gaugelab/em/catalog.hpp"
#include "generators.hpp"

using namespace gaugelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ChargedParticle unit_particle{1.0, 1.0};

// Uniform field E(t) = E0 cos(w t) e_x from phi = -E0 cos(w t) x; exact motion
// from rest at the origin: v = (qE0/mw) sin(w t), x = (qE0/mw^2)(1 - cos(w t)).
PotentialConfiguration oscillating_scalar(double E0, double w) {
    PotentialConfiguration p;
    p.name = "oscillating_scalar";
    p.phi = [E0, w](const Vec3& r, double t) { return -E0 * std::cos(w * t) * r.x; };
    p.grad_phi = [E0, w](const Vec3&, double t) { return Vec3{-E0 * std::cos(w * t), 0, 0}; };
    return p;
}

// phi = x^2/2 + 0.3 y^2 + 0.1 x y, A = 0: a smooth conservative potential.
PotentialConfiguration bowl() {
    PotentialConfiguration p;
    p.name = "bowl";
    p.phi = [](const Vec3& r, double) { return 0.5 * r.x * r.x + 0.3 * r.y * r.y + 0.1 * r.x * r.y; };
    p.grad_phi = [](const Vec3& r, double) { return Vec3{r.x + 0.1 * r.y, 0.6 * r.y + 0.1 * r.x, 0.0}; };
    return p;
}

}  // namespace

TEST_CASE("hamiltonian_value examples", "[classical]") {
    CHECK(hamiltonian_value(unit_particle, constant_field_scalar(1.0), {{2, 0, 0}, {1, 0, 0}, 0.0}) == -1.5);
    CHECK(hamiltonian_value(unit_particle, PotentialConfiguration{}, {{3, 1, 2}, {}, 4.0}) == 0.0);
    CHECK_THAT(hamiltonian_value(unit_particle, constant_field_vector(1.0), {{0, 0, 0}, {1, 0, 0}, 1.0}), WithinAbs(2.0, 1e-14));
}

TEST_CASE("hamilton_rhs examples", "[classical]") {
    testing::Gen g(21);
    for (int n = 0; n < 20; ++n) {
        const PhaseSpaceState s{g.vec3(5), g.vec3(3), g.uniform(0, 10)};
        CHECK(hamilton_rhs(unit_particle, constant_field_scalar(1.0), s).dp == Vec3{1, 0, 0});
        CHECK(hamilton_rhs(unit_particle, constant_field_vector(1.0), s).dp == Vec3{});
    }
    const auto free = hamilton_rhs(unit_particle, PotentialConfiguration{}, {{}, {3, 0, 0}, 0.0});
    CHECK(free.dr == Vec3{3, 0, 0});
    CHECK(free.dp == Vec3{});
}

TEST_CASE("hamilton_rhs in a magnetic field gives the Lorentz force", "[classical]") {
    // A = (-y, x, 0) B/2: uniform B e_z. d(mv)/dt = (q/c) v x B.
    const double B = 3.0;
    PotentialConfiguration p;
    p.A = [B](const Vec3& r, double) { return Vec3{-r.y, r.x, 0} * (0.5 * B); };
    const ChargedParticle e{-1.0, 1.0};
    const PhaseSpaceState s0 = canonical_state(e, p, {{0.4, -0.2, 0.1}, {0.7, 0.3, -0.5}, 0.0});
    const Trajectory tr = integrate(e, p, s0, 0.02, 1e-3);
    const Vec3 v0 = tr.samples[0].v, v1 = tr.samples[1].v;
    const Vec3 force = cross(v0, Vec3{0, 0, B}) * (e.q / speed_of_light);
    CHECK(norm((v1 - v0) / 1e-3 - force) <= 1e-4 * norm(force));
}

TEST_CASE("integrate examples", "[classical]") {
    SECTION("constant field from rest reaches x = 2 at t = 2") {
        const Trajectory tr = integrate(unit_particle, constant_field_scalar(1.0), {}, 2.0, 1e-3);
        CHECK_THAT(tr.back().r.x, WithinAbs(2.0, 1e-9));
        CHECK(tr.back().t == 2.0);
        CHECK(tr.size() == 2001);
    }
    SECTION("free motion is exact") {
        const Trajectory tr = integrate(unit_particle, PotentialConfiguration{}, {{}, {1, 0, 0}, 0.0}, 5.0, 1e-3);
        CHECK(std::abs(tr.back().r.x - 5.0) <= 1e-12);
    }
    SECTION("vector gauge reproduces the scalar-gauge positions") {
        const KineticState k0{};
        const auto a = integrate(unit_particle, constant_field_scalar(1.0), canonical_state(unit_particle, constant_field_scalar(1.0), k0), 2.0, 1e-3);
        const auto b = integrate(unit_particle, constant_field_vector(1.0), canonical_state(unit_particle, constant_field_vector(1.0), k0), 2.0, 1e-3);
        double worst = 0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, norm(a.samples[i].r - b.samples[i].r));
        CHECK(worst <= 1e-8);
    }
    SECTION("last step is clamped to t_end") {
        const Trajectory tr = integrate(unit_particle, PotentialConfiguration{}, {{}, {1, 0, 0}, 0.0}, 1.05, 0.1);
        CHECK(tr.size() == 12);
        CHECK(tr.back().t == 1.05);
        for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);
    }
}

TEST_CASE("integrate error paths", "[classical]") {
    CHECK_THROWS_AS(integrate(unit_particle, constant_field_vector(1.0), {}, 1.0, 1e-3, {Integrator::leapfrog}), UnsupportedMethodError);
    CHECK_THROWS_AS(integrate(unit_particle, constant_field_scalar(1.0), {}, 1.0, 1e-3, {Integrator::rk4, 100}), ResourceError);
    CHECK_THROWS_AS(integrate(unit_particle, constant_field_scalar(1.0), {}, 1.0, 0.0), UsageError);
    CHECK_THROWS_AS(integrate(unit_particle, constant_field_scalar(1.0), {{}, {}, 2.0}, 1.0, 1e-3), UsageError);
    CHECK_THROWS_AS(integrate({1.0, -1.0}, constant_field_scalar(1.0), {}, 1.0, 1e-3), DomainError);
    CHECK_THROWS_AS(integrate({1.0, NAN}, constant_field_scalar(1.0), {}, 1.0, 1e-3), DomainError);
}

TEST_CASE("analytic_constant_field examples", "[classical]") {
    const auto m = analytic_constant_field(unit_particle, 2.0, 3.0, 1.0, 2.0);
    CHECK(m.x == 9.0);
    CHECK(m.v == 5.0);
    const auto at0 = analytic_constant_field(unit_particle, 2.0, 3.0, 1.0, 0.0);
    CHECK(at0.x == 3.0);
    CHECK(at0.v == 1.0);
    const auto neutral = analytic_constant_field({0.0, 1.0}, 2.0, 3.0, 1.5, 2.0);
    CHECK(neutral.x == 6.0);
    CHECK(neutral.v == 1.5);
}

TEST_CASE("rk4 follows the closed-form constant-field motion", "[classical][property]") {
    testing::Gen g(22);
    for (int n = 0; n < 20; ++n) {
        const ChargedParticle p{g.uniform(-2, 2), g.uniform(0.5, 3)};
        const double E0 = g.uniform(-2, 2), x0 = g.uniform(-3, 3), v0 = g.uniform(-1, 1);
        const auto pot = g.integer(0, 1) ? constant_field_scalar(E0) : constant_field_vector(E0);
        const auto tr = integrate(p, pot, canonical_state(p, pot, {{x0, 0, 0}, {v0, 0, 0}, 0.0}), 3.0, 1e-2);
        for (const auto& s : tr.samples) {
            const auto ref = analytic_constant_field(p, E0, x0, v0, s.t);
            CHECK_THAT(s.r.x, WithinAbs(ref.x, 1e-9));
            CHECK_THAT(s.v.x, WithinAbs(ref.v, 1e-9));
        }
    }
}

TEST_CASE("rk4 is fourth order on a time-dependent field", "[classical][convergence]") {
    const double E0 = 1.0, w = 2.0;
    const auto pot = oscillating_scalar(E0, w);
    auto max_error = [&](double dt) {
        const auto tr = integrate(unit_particle, pot, {}, 10.0, dt);
        double worst = 0;
        for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.r.x - E0 / (w * w) * (1 - std::cos(w * s.t))));
        return worst;
    };
    const double e1 = max_error(0.02), e2 = max_error(0.01);
    const double ratio = e1 / e2;
    INFO("errors " << e1 << " -> " << e2 << ", ratio " << ratio);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("energy_decomposition examples", "[classical]") {
    SECTION("scalar gauge: T = t^2/2, U = -t^2/2") {
        const auto tr = integrate(unit_particle, constant_field_scalar(1.0), {}, 2.0, 1e-3);
        for (const auto& s : tr.samples) {
            CHECK_THAT(s.T, WithinAbs(0.5 * s.t * s.t, 1e-10));
            CHECK_THAT(s.U, WithinAbs(-0.5 * s.t * s.t, 1e-10));
            CHECK_THAT(s.T + s.U, WithinAbs(0.0, 1e-10));
        }
    }
    SECTION("vector gauge: T' = t^2/2, U' = 0, H' = T'") {
        const auto tr = integrate(unit_particle, constant_field_vector(1.0), {}, 2.0, 1e-3);
        for (const auto& s : tr.samples) {
            CHECK_THAT(s.T, WithinAbs(0.5 * s.t * s.t, 1e-10));
            CHECK(s.U == 0.0);
            CHECK(s.H == s.T);
        }
    }
    SECTION("zero field: T and U constant") {
        const auto tr = integrate(unit_particle, PotentialConfiguration{}, {{1, 2, 3}, {0.5, -1, 2}, 0.0}, 3.0, 1e-2);
        for (const auto& s : tr.samples) {
            CHECK(s.T == tr.samples[0].T);
            CHECK(s.U == 0.0);
        }
    }
    SECTION("v is kinetic momentum over mass") {
        const ChargedParticle p{-2.0, 3.0};
        const auto pot = constant_field_vector(0.7);
        const auto tr = integrate(p, pot, canonical_state(p, pot, {{}, {0.2, 0, 0}, 0.0}), 1.0, 1e-2);
        for (const auto& s : tr.samples) CHECK(norm(s.v - (s.p - pot.vector(s.r, s.t) * (p.q / speed_of_light)) / p.m) <= 1e-15);
    }
}

TEST_CASE("compare_gauges examples", "[classical]") {
    SECTION("constant-field pair to t = 2") {
        const auto cmp = gauge_comparison(unit_particle, constant_field_scalar(1.0), constant_field_vector(1.0), {}, 2.0, 1e-3);
        CHECK(cmp.report.pass);
        CHECK(cmp.report.find("r")->max_dev <= 1e-8);
        CHECK_THAT(std::abs(cmp.first.back().U - cmp.second.back().U), WithinAbs(2.0, 1e-9));
        CHECK_THAT(cmp.report.find("U")->max_dev, WithinAbs(2.0, 1e-9));
        for (std::size_t i = 0; i < cmp.first.size(); ++i)
            CHECK_THAT(cmp.first.samples[i].p.x - cmp.second.samples[i].p.x, WithinAbs(cmp.first.samples[i].t, 1e-8));
    }
    SECTION("identity comparison") {
        const auto rep = compare_gauges(unit_particle, bowl(), bowl(), {{1, 0, 0}, {0, 1, 0}, 0.0}, 2.0, 1e-2);
        CHECK(rep.pass);
        for (const auto& q : rep.matched) CHECK(q.max_dev == 0.0);
        for (const auto& q : rep.differed) CHECK(q.max_dev == 0.0);
    }
    SECTION("field mismatch is a precondition error") {
        CHECK_THROWS_AS(compare_gauges(unit_particle, constant_field_scalar(1.0), constant_field_scalar(2.0), {}, 1.0, 1e-2), PreconditionError);
    }
}

TEST_CASE("gauge invariance of trajectories for random generators", "[classical][property]") {
    testing::Gen g(23);
    for (int n = 0; n < 12; ++n) {
        const ChargedParticle p{g.uniform(-2, 2), g.uniform(0.5, 2)};
        const auto base = g.integer(0, 1) ? bowl() : constant_field_scalar(g.uniform(-1, 1), g.direction());
        const auto gen = g.integer(0, 1) ? polynomial_generator(g.polynomial(2, 2, 2.0)) : product_generator(g.uniform(-50, 50));
        const KineticState k0{g.vec3(1), g.vec3(1), 0.0};
        CompareOptions opts;
        opts.tolerance = 1e-7;
        const auto rep = compare_gauges(p, base, apply_gauge(base, gen), k0, 2.0, 1e-3, opts);
        INFO("case " << n << ": dr " << rep.find("r")->max_dev << " dT " << rep.find("T")->max_dev);
        CHECK(rep.pass);
    }
}

TEST_CASE("work-energy theorem holds in every gauge", "[classical][property]") {
    testing::Gen g(24);
    const auto base = oscillating_scalar(0.8, 1.3);
    const EMFields f = derive_fields(base);
    for (int n = 0; n < 6; ++n) {
        const auto gen = polynomial_generator(g.polynomial(2, 2, 1.0));
        const auto pot = g.integer(0, 1) ? base : apply_gauge(base, gen);
        const ChargedParticle p{g.uniform(-1, 1), 1.0};
        const auto tr = integrate(p, pot, canonical_state(p, pot, {g.vec3(1), g.vec3(0.5), 0.0}), 4.0, 1e-3);
        // q int E.v dt by the trapezoid rule over the samples, then compare.
        double work = 0;
        for (std::size_t i = 1; i < tr.size(); ++i) {
            const auto& a = tr.samples[i - 1];
            const auto& b = tr.samples[i];
            work += 0.5 * (b.t - a.t) * p.q * (dot(f.E(a.r, a.t), a.v) + dot(f.E(b.r, b.t), b.v));
        }
        CHECK_THAT(tr.back().T - tr.samples[0].T, WithinAbs(work, 1e-6));
    }
}

TEST_CASE("leapfrog is symplectic for separable Hamiltonians", "[classical]") {
    const auto pot = bowl();
    const auto tr = integrate(unit_particle, pot, {{1, 0.5, 0}, {0, 0.3, 0}, 0.0}, 200.0, 0.01, {Integrator::leapfrog});
    double drift = 0;
    for (const auto& s : tr.samples) drift = std::max(drift, std::abs(s.H - tr.samples[0].H));
    // Bounded energy error of order dt^2 over many periods.
    CHECK(drift <= 1e-4);
    const auto coarse = integrate(unit_particle, pot, {{1, 0.5, 0}, {0, 0.3, 0}, 0.0}, 200.0, 0.02, {Integrator::leapfrog});
    double drift2 = 0;
    for (const auto& s : coarse.samples) drift2 = std::max(drift2, std::abs(s.H - coarse.samples[0].H));
    CHECK_THAT(drift2 / drift, WithinRel(4.0, 0.1));
}
