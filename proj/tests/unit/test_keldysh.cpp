#include <catch_amalgamated.hpp>

#include <cmath>

#include "gaugelab/keldysh/keldysh.hpp"
#include "generators.hpp"

using namespace gaugelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("ponderomotive examples", "[keldysh]") {
    CHECK(ponderomotive(4.0, 1.0) == 1.0);
    CHECK(ponderomotive(1.0, 0.5) == 1.0);
    testing::Gen g(61);
    for (int n = 0; n < 50; ++n) {
        const double I = g.log_uniform(1e-4, 10), w = g.log_uniform(1e-3, 2);
        CHECK_THAT(ponderomotive(2 * I, w), WithinRel(2 * ponderomotive(I, w), 1e-15));
    }
    CHECK_THROWS_AS(ponderomotive(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ponderomotive(1.0, -1.0), DomainError);
}

TEST_CASE("keldysh_gamma examples", "[keldysh]") {
    CHECK(keldysh_gamma(1.0, 0.5) == 1.0);
    CHECK(keldysh_gamma(2.0, 1.0) == 1.0);
    double last = INFINITY;
    for (double up = 0.01; up < 1e4; up *= 1.7) {
        const double g = keldysh_gamma(0.5, up);
        CHECK(g < last);
        last = g;
    }
    CHECK(last < 0.01);
    CHECK_THROWS_AS(keldysh_gamma(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(keldysh_gamma(1.0, NAN), DomainError);
}

TEST_CASE("gamma_from_intensity examples", "[keldysh]") {
    CHECK_THAT(gamma_from_intensity(0.5, 0.057, 0.0285), WithinAbs(0.3376, 5e-5));
    CHECK_THAT(gamma_from_intensity(0.5, 0.057, 0.0285), WithinAbs(keldysh_gamma(0.5, ponderomotive(0.0285, 0.057)), 1e-12));
    CHECK_THROWS_AS(gamma_from_intensity(0.5, 0.0, 1.0), DomainError);
}

TEST_CASE("route equivalence and scaling law", "[keldysh][property]") {
    testing::Gen g(62);
    for (int n = 0; n < 1000; ++n) {
        const double E = g.uniform(0.1, 5), w = g.uniform(0.005, 2), I = g.uniform(1e-4, 10), k = g.log_uniform(0.1, 10);
        const double direct = gamma_from_intensity(E, w, I);
        CHECK_THAT(keldysh_gamma(E, ponderomotive(I, w)), WithinAbs(direct, 1e-12));
        CHECK_THAT(gamma_from_intensity(E, k * w, k * k * I), WithinAbs(direct, 1e-12));
        const auto pt = KeldyshPoint::make(E, w, I);
        CHECK(pt.U_p == ponderomotive(I, w));
        CHECK(pt.gamma == keldysh_gamma(E, pt.U_p));
    }
    CHECK(gamma_from_intensity(0.5, 2 * 0.1, 4 * 0.3) == gamma_from_intensity(0.5, 0.1, 0.3));
}

TEST_CASE("geometric grids", "[keldysh]") {
    const auto v = GeometricGrid{1e-3, 10, 5}.values();
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 1e-3);
    CHECK(v.back() == 10.0);
    for (std::size_t k = 1; k < v.size(); ++k) CHECK_THAT(v[k] / v[k - 1], WithinRel(10.0, 1e-12));
    CHECK(GeometricGrid{2.0, 2.0, 1}.values() == std::vector<double>{2.0});
    CHECK_THROWS_AS((GeometricGrid{1, 2, 0}).values(), UsageError);
    CHECK_THROWS_AS((GeometricGrid{-1, 2, 3}).values(), UsageError);
    CHECK_THROWS_AS((GeometricGrid{3, 2, 3}).values(), UsageError);
}

TEST_CASE("regime scan examples", "[keldysh]") {
    SECTION("single cell reduces to gamma_from_intensity") {
        const auto s = regime_scan(0.5, {0.0285, 0.0285, 1}, {0.057, 0.057, 1});
        REQUIRE(s.cells.size() == 1);
        CHECK(s.cells[0].point.gamma == keldysh_gamma(0.5, ponderomotive(0.0285, 0.057)));
        CHECK_THAT(s.cells[0].point.gamma, WithinAbs(gamma_from_intensity(0.5, 0.057, 0.0285), 1e-12));
        CHECK(s.cells[0].iso_group == -1);
    }
    const GeometricGrid Is{1e-3, 10, 9}, ws{0.01, 1, 5};
    const auto s = regime_scan(0.5, Is, ws, 3);
    REQUIRE(s.cells.size() == 45);
    SECTION("ordering is omega-major and ascending") {
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = 0; b < 9; ++b) {
                CHECK(s.cells[a * 9 + b].point.omega == ws.values()[a]);
                CHECK(s.cells[a * 9 + b].point.I == Is.values()[b]);
            }
    }
    SECTION("gamma is linear in omega at fixed I") {
        for (std::size_t b = 0; b < 9; ++b)
            for (std::size_t a = 1; a < 5; ++a)
                CHECK_THAT(s.cells[a * 9 + b].point.gamma / s.cells[(a - 1) * 9 + b].point.gamma,
                           WithinRel(s.cells[a * 9 + b].point.omega / s.cells[(a - 1) * 9 + b].point.omega, 1e-12));
    }
    SECTION("halving gamma needs four times the intensity") {
        // I steps are 10^0.5, so two steps are x10 and gamma falls by sqrt(10)
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = 2; b < 9; ++b)
                CHECK_THAT(s.cells[a * 9 + b - 2].point.gamma / s.cells[a * 9 + b].point.gamma, WithinRel(std::sqrt(10.0), 1e-12));
        const auto x4 = regime_scan(0.5, {1.0, 4.0, 2}, {0.1, 0.1, 1});
        CHECK_THAT(x4.cells[0].point.gamma / x4.cells[1].point.gamma, WithinRel(2.0, 1e-14));
    }
    SECTION("iso-gamma groups and the wide-intensity pair") {
        for (const auto& a : s.cells)
            for (const auto& b : s.cells)
                if (a.iso_group >= 0 && a.iso_group == b.iso_group) CHECK_THAT(a.point.gamma, WithinRel(b.point.gamma, 0.01));
        const auto pair = find_iso_gamma_pair(s);
        REQUIRE(pair.has_value());
        CHECK(pair->intensity_ratio >= 100.0);
        CHECK_THAT(pair->low_intensity.gamma, WithinRel(pair->high_intensity.gamma, 0.01));
        CHECK(pair->high_intensity.omega > pair->low_intensity.omega);
    }
    SECTION("thread count does not change the scan") {
        const auto one = regime_scan(0.5, Is, ws, 1);
        CHECK(to_json(one) == to_json(s));
    }
    SECTION("no pair on a narrow grid") {
        CHECK_FALSE(find_iso_gamma_pair(regime_scan(0.5, {1, 2, 3}, {0.1, 0.2, 3})).has_value());
    }
}
