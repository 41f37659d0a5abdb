#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gaugelab/em/catalog.hpp"
#include "gaugelab/em/potentials.hpp"
#include "generators.hpp"

using namespace gaugelab;
using Catch::Matchers::WithinAbs;

namespace {

double vdiff(const Vec3& a, const Vec3& b) { return norm(a - b); }

std::vector<SpaceTimePoint> xt_grid(int nx, int nt) {
    std::vector<SpaceTimePoint> pts;
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < nx; ++i) pts.push_back({{-1.0 + 2.0 * i / (nx - 1), 0.0, 0.0}, 1.0 * j / (nt - 1)});
    return pts;
}

// A configuration with no derivative suppliers, forcing finite differences.
PotentialConfiguration strip_derivatives(PotentialConfiguration p) {
    p.grad_phi = nullptr;
    p.dt_A = nullptr;
    p.jacobian_A = nullptr;
    return p;
}

// Smooth magnetic configuration: A = (-y, x, 0) B0/2 sin(t), phi = x^2 y.
PotentialConfiguration swirl(double B0) {
    PotentialConfiguration p;
    p.name = "swirl";
    p.phi = [](const Vec3& r, double) { return r.x * r.x * r.y; };
    p.A = [B0](const Vec3& r, double t) { return Vec3{-r.y, r.x, 0.0} * (0.5 * B0 * std::sin(t)); };
    return p;
}

}  // namespace

TEST_CASE("derive_fields examples", "[em]") {
    testing::Gen g(1);
    const auto scalar = derive_fields(constant_field_scalar(1.0));
    const auto vacuum = derive_fields(PotentialConfiguration{});
    const auto vector = derive_fields(constant_field_vector(1.0));
    for (int n = 0; n < 20; ++n) {
        const Vec3 r = g.vec3(10);
        const double t = g.uniform(-5, 5);
        CHECK(scalar.E(r, t) == Vec3{1, 0, 0});
        CHECK(scalar.B(r, t) == Vec3{});
        CHECK(vacuum.E(r, t) == Vec3{});
        CHECK(vacuum.B(r, t) == Vec3{});
        CHECK(vdiff(vector.E(r, t), Vec3{1, 0, 0}) <= 1e-15);
        CHECK(vector.B(r, t) == Vec3{});
    }
}

TEST_CASE("derive_fields falls back to central differences", "[em]") {
    const auto f = derive_fields(swirl(2.0));
    const Vec3 r{0.3, -0.7, 0.2};
    const double t = 0.9;
    // E = -grad phi - (1/c) dA/dt, B = (0, 0, B0 sin t)
    const Vec3 E = Vec3{-2 * r.x * r.y, -r.x * r.x, 0.0} - Vec3{-r.y, r.x, 0.0} * (std::cos(t) / speed_of_light);
    CHECK(vdiff(f.E(r, t), E) <= 1e-7);
    CHECK(vdiff(f.B(r, t), Vec3{0, 0, 2.0 * std::sin(t)}) <= 1e-7);
}

TEST_CASE("derive_fields reports non-finite derivatives with the point", "[em]") {
    PotentialConfiguration p;
    p.name = "singular";
    p.phi = [](const Vec3& r, double) { return 1.0 / r.x; };
    const auto f = derive_fields(p);
    try {
        (void)f.E(Vec3{0, 0, 0}, 0.0);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("r=(0.000000, 0.000000, 0.000000)"));
    }
}

TEST_CASE("apply_gauge examples", "[em]") {
    testing::Gen g(2);
    SECTION("constant-field generator turns the scalar gauge into the vector gauge") {
        const auto out = apply_gauge(constant_field_scalar(1.0), constant_field_generator(1.0));
        const auto ref = constant_field_vector(1.0);
        for (int n = 0; n < 20; ++n) {
            const Vec3 r = g.vec3(5);
            const double t = g.uniform(0, 10);
            CHECK_THAT(out.scalar(r, t), WithinAbs(0.0, 1e-12));
            CHECK(vdiff(out.vector(r, t), ref.vector(r, t)) <= 1e-12);
        }
    }
    SECTION("constant generator leaves potentials unchanged") {
        const auto base = swirl(1.0);
        const auto out = apply_gauge(base, constant_generator(3.7));
        for (int n = 0; n < 20; ++n) {
            const Vec3 r = g.vec3(5);
            const double t = g.uniform(0, 10);
            CHECK(out.scalar(r, t) == base.scalar(r, t));
            CHECK(out.vector(r, t) == base.vector(r, t));
        }
    }
    SECTION("time-independent generator cannot alter phi") {
        // Lambda = 0.5 x^2 - 2 x^3 -> A' = (x - 6 x^2) e_x
        const auto gen = polynomial_generator({{0.0}, {0.0}, {0.5}, {-2.0}});
        REQUIRE(gen.time_independent);
        const auto base = constant_field_scalar(1.0);
        const auto out = apply_gauge(base, gen);
        for (int n = 0; n < 20; ++n) {
            const Vec3 r = g.vec3(3);
            const double t = g.uniform(0, 10);
            CHECK(out.scalar(r, t) == base.scalar(r, t));
            CHECK_THAT(out.vector(r, t).x, WithinAbs(r.x - 6 * r.x * r.x, 1e-12));
        }
    }
    SECTION("generator without derivatives is rejected") {
        GaugeGenerator bad;
        bad.name = "bare";
        bad.lambda = [](const Vec3&, double) { return 0.0; };
        CHECK_THROWS_AS(apply_gauge(constant_field_scalar(1.0), bad), PreconditionError);
    }
}

TEST_CASE("check_field_invariance examples", "[em]") {
    const auto pts = xt_grid(10, 10);
    SECTION("scalar and vector constant-field gauges agree") {
        const auto rep = check_field_invariance(constant_field_scalar(1.0), constant_field_vector(1.0), pts);
        CHECK(rep.pass);
        CHECK(rep.find("E")->max_dev <= 1e-10);
        CHECK(rep.find("B")->max_dev <= 1e-10);
    }
    SECTION("identity") {
        const auto p = swirl(1.0);
        const auto rep = check_field_invariance(p, p, pts);
        CHECK(rep.pass);
        CHECK(rep.find("E")->max_dev == 0.0);
        CHECK(rep.find("B")->max_dev == 0.0);
    }
    SECTION("different field strengths fail with |dE| = E0") {
        const auto rep = check_field_invariance(constant_field_scalar(1.0), constant_field_scalar(2.0), pts);
        CHECK_FALSE(rep.pass);
        CHECK_THAT(rep.find("E")->max_dev, WithinAbs(1.0, 1e-15));
    }
    SECTION("empty sample list") {
        CHECK_THROWS_AS(check_field_invariance(constant_field_scalar(1.0), constant_field_scalar(1.0), {}), UsageError);
    }
    SECTION("tolerance defaults follow the derivative path") {
        CHECK(check_field_invariance(constant_field_scalar(1.0), constant_field_vector(1.0), pts).tolerance == 1e-8);
        const auto fd = check_field_invariance(swirl(1.0), swirl(1.0), pts);
        CHECK_THAT(fd.tolerance, WithinAbs(10 * 1e-8, 1e-20));
    }
}

TEST_CASE("analytic derivative suppliers agree with central differences", "[em][property]") {
    testing::Gen g(3);
    for (int n = 0; n < 30; ++n) {
        const double E0 = g.uniform(-3, 3);
        const Vec3 d = g.direction();
        const auto gen = polynomial_generator(g.polynomial(3, 3, 1.0));
        for (const auto& pot : {constant_field_scalar(E0, d), constant_field_vector(E0, d), apply_gauge(constant_field_scalar(E0, d), gen)}) {
            const Vec3 r = g.vec3(2);
            const double t = g.uniform(0, 2);
            const auto bare = strip_derivatives(pot);
            CHECK(vdiff(grad_phi_at(pot, r, t), grad_phi_at(bare, r, t)) <= 1e-6);
            CHECK(vdiff(dt_A_at(pot, r, t), dt_A_at(bare, r, t)) <= 1e-6 * speed_of_light);
        }
        const Vec3 r = g.vec3(2);
        const double t = g.uniform(0, 2);
        CHECK(vdiff(gen.grad_lambda(r, t), fd::gradient(gen.lambda, r, t, 1e-4)) <= 1e-6);
        CHECK_THAT(gen.dt_lambda(r, t), WithinAbs(fd::time_derivative(gen.lambda, r, t, 1e-4), 1e-6));
    }
}

TEST_CASE("gauge invariance of fields for random generators", "[em][property]") {
    testing::Gen g(4);
    for (int n = 0; n < 40; ++n) {
        const auto base = g.integer(0, 1) ? constant_field_scalar(g.uniform(-2, 2), g.direction()) : swirl(g.uniform(-2, 2));
        GaugeGenerator gen = g.integer(0, 1) ? polynomial_generator(g.polynomial(3, 2, 1.0)) : product_generator(g.uniform(-100, 100));
        const double h = 1e-4;
        std::vector<SpaceTimePoint> pts;
        for (int k = 0; k < 5; ++k) pts.push_back({g.vec3(1.5), g.uniform(0, 2)});
        FieldCheckOptions opts{h, 10 * h * h};
        CHECK(check_field_invariance(base, apply_gauge(base, gen), pts, opts).pass);

        // Same comparison with every derivative taken numerically.
        gen.grad_dt_lambda = nullptr;
        gen.hessian_lambda = nullptr;
        const auto bare = strip_derivatives(base);
        const auto rep = check_field_invariance(bare, apply_gauge(bare, gen), pts, opts);
        CHECK(rep.find("E")->max_dev <= 1e-5);
        CHECK(rep.find("B")->max_dev <= 1e-5);
    }
}

TEST_CASE("gauge transformation is invertible and additive", "[em][property]") {
    testing::Gen g(5);
    for (int n = 0; n < 40; ++n) {
        const auto base = swirl(g.uniform(-2, 2));
        const auto g1 = polynomial_generator(g.polynomial(2, 2, 1.0));
        const auto g2 = product_generator(g.uniform(-5, 5));
        const auto back = apply_gauge(apply_gauge(base, g1), negated(g1));
        const auto seq = apply_gauge(apply_gauge(base, g1), g2);
        const auto sum = apply_gauge(base, combined(g1, g2));
        for (int k = 0; k < 5; ++k) {
            const Vec3 r = g.vec3(2);
            const double t = g.uniform(0, 3);
            CHECK_THAT(back.scalar(r, t), WithinAbs(base.scalar(r, t), 1e-12));
            CHECK(vdiff(back.vector(r, t), base.vector(r, t)) <= 1e-12);
            CHECK_THAT(seq.scalar(r, t), WithinAbs(sum.scalar(r, t), 1e-12));
            CHECK(vdiff(seq.vector(r, t), sum.vector(r, t)) <= 1e-12);
        }
    }
}

TEST_CASE("polynomial generator derivatives", "[em][catalog]") {
    // Lambda = 2 x^2 t + 3 t^3 - x
    const auto gen = polynomial_generator({{0.0, 0.0, 0.0, 3.0}, {-1.0}, {0.0, 2.0}});
    CHECK_FALSE(gen.time_independent);
    const Vec3 r{1.5, 9, 9};
    const double t = 2.0;
    CHECK(gen.lambda(r, t) == 2 * 2.25 * 2 + 3 * 8 - 1.5);
    CHECK(gen.grad_lambda(r, t) == Vec3{4 * 1.5 * 2 - 1, 0, 0});
    CHECK(gen.dt_lambda(r, t) == 2 * 2.25 + 9 * 4);
    CHECK(gen.grad_dt_lambda(r, t) == Vec3{4 * 1.5, 0, 0});
    CHECK(gen.hessian_lambda(r, t)(0, 0) == 4 * 2);
}

TEST_CASE("dipole length generator removes the vector potential", "[em][catalog]") {
    const auto pulse = PulseShape::sin2_envelope(30.0, 0.5, 0.0, 20.0, Vec3{0, 0.6, 0.8});
    const auto length = apply_gauge(pulse_velocity_gauge(pulse), dipole_length_generator(pulse));
    testing::Gen g(6);
    for (int n = 0; n < 20; ++n) {
        const Vec3 r = g.vec3(4);
        const double t = g.uniform(0, 25);
        CHECK(vdiff(length.vector(r, t), Vec3{}) <= 1e-13);
        CHECK_THAT(length.scalar(r, t), WithinAbs(-dot(r, electric_field_from_pulse(pulse, t)), 1e-12));
    }
}

TEST_CASE("potential and generator config loading", "[em][catalog]") {
    using nlohmann::json;
    auto pot = [](const json& j) { return potential_from_config(io::ConfigNode(j, "gauge1")); };
    auto gen = [](const json& j) { return generator_from_config(io::ConfigNode(j, "generator")); };

    CHECK(pot({{"family", "constant_field_scalar"}, {"params", {{"E0", 2.0}}}}).scalar({1, 0, 0}, 0) == -2.0);
    CHECK(pot({{"family", "vacuum"}}).name == "vacuum");
    CHECK(pot({{"family", "sinusoidal_pulse"},
               {"params", {{"shape", "rectangular-sinusoid"}, {"A0", 1.0}, {"omega", 1.0}, {"t_off", 10.0}}}})
              .has_vector_potential());
    CHECK(gen({{"family", "product"}, {"params", {{"a", 2.0}, {"multiply_by_c", true}}}}).lambda({1, 0, 0}, 1) == 2.0 * speed_of_light);
    CHECK(gen({{"family", "polynomial"}, {"params", {{"coefficients", {{0.0, 1.0}}}}}}).dt_lambda({}, 0) == 1.0);
    CHECK(gen({{"family", "constant_field"}}).name == "constant_field");

    auto message = [](auto&& f) -> std::string {
        try {
            f();
        } catch (const UsageError& e) {
            return e.what();
        }
        return "";
    };
    CHECK_THAT(message([&] { pot({{"family", "monopole"}}); }), Catch::Matchers::ContainsSubstring("gauge1.family"));
    CHECK_THAT(message([&] { pot({{"family", "constant_field_scalar"}, {"params", {{"E0", "x"}}}}); }),
               Catch::Matchers::ContainsSubstring("gauge1.params.E0"));
    CHECK_THAT(message([&] { pot({{"family", "constant_field_scalar"}, {"params", {{"direction", {1, 1, 0}}}}}); }),
               Catch::Matchers::ContainsSubstring("unit vector"));
    CHECK_THAT(message([&] { pot({{"family", "vacuum"}, {"extra", 1}}); }), Catch::Matchers::ContainsSubstring("gauge1.extra"));
    CHECK_THAT(message([&] { gen({{"family", "product"}, {"params", json::object()}}); }), Catch::Matchers::ContainsSubstring("generator.params.a"));
    CHECK_THAT(message([&] {
                   pot({{"family", "sinusoidal_pulse"}, {"params", {{"shape", "square"}}}});
               }),
               Catch::Matchers::ContainsSubstring("gauge1.params.shape"));
}
