#include <doctest.h>

#include <vector>

#include "twochan/critical.hpp"

using namespace twochan;

namespace {

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    g.back() = hi;
    return g;
}

TwoChannelSystem symmetric_variant() {
    // fig1-left energies with equal widths inside each channel
    TwoChannelSystem sys = preset("fig1-left");
    sys.channel1.state1.gamma_half = -0.375;
    sys.channel1.state2.gamma_half = -0.375;
    sys.channel2.state1.gamma_half = -0.375;
    sys.channel2.state2.gamma_half = -0.375;
    return sys;
}

} // namespace

TEST_CASE("symmetric system: width-gap maximum sits exactly at the level crossing") {
    const auto report = find_critical(symmetric_variant(), 0.0, 1.3, 1301);
    REQUIRE(report.bifurcated);
    for (int c = 0; c < 2; ++c) {
        REQUIRE(report.channel[c].a_cr_width.has_value());
        CHECK(std::abs(*report.channel[c].a_cr_width - 2.0 / 3.0) < 1e-5);
    }
}

TEST_CASE("fig1-left: critical point near the level crossing, no EP on the real axis") {
    const auto report = find_critical(preset("fig1-left"), 0.0, 1.3, 1301);
    REQUIRE(report.bifurcated);
    REQUIRE(report.window.has_value());
    const auto [wlo, whi] = *report.window;
    CHECK(wlo < whi);
    for (int c = 0; c < 2; ++c) {
        const auto& ch = report.channel[c];
        REQUIRE(ch.a_cr_width.has_value());
        REQUIRE(ch.a_cr_rigidity.has_value());
        CHECK(*ch.a_cr_width > 0.0);
        CHECK(*ch.a_cr_width < 1.3);
        CHECK(wlo < *ch.a_cr_width);
        CHECK(*ch.a_cr_width < whi);
        // both objectives capture the same critical region
        CHECK(std::abs(*ch.a_cr_width - *ch.a_cr_rigidity) < 0.05);
        CHECK_FALSE(ch.ep_on_grid);
        CHECK(ch.min_discriminant > 0.0);
    }
}

TEST_CASE("fig2 (omega = 0, constant widths): flat objective, no bifurcation") {
    const auto report = find_critical(preset("fig2"), 0.0, 1.3, 301);
    CHECK_FALSE(report.bifurcated);
    CHECK_FALSE(report.window.has_value());
    CHECK_FALSE(report.channel[0].a_cr_width.has_value());
    CHECK_FALSE(report.channel[0].a_cr_rigidity.has_value());
    CHECK_FALSE(report.channel[1].a_cr_width.has_value());
}

TEST_CASE("find_critical rejects bad arguments") {
    const auto sys = preset("fig1-left");
    CHECK_THROWS_AS((void)find_critical(sys, 1.0, 0.0, 100), computation_error);
    CHECK_THROWS_AS((void)find_critical(sys, 0.0, 1.0, 10), computation_error);
}

TEST_CASE("grid-refinement invariance") {
    const auto sys = preset("fig1-left");
    const auto coarse = find_critical(sys, 0.0, 1.3, 200);
    const auto fine = find_critical(sys, 0.0, 1.3, 400);
    for (int c = 0; c < 2; ++c) {
        CHECK(std::abs(*coarse.channel[c].a_cr_width - *fine.channel[c].a_cr_width) < 1e-4);
        CHECK(std::abs(coarse.channel[c].a_ep_proximity - fine.channel[c].a_ep_proximity) < 1e-4);
    }
}

TEST_CASE("discriminant scan: exact EP on a sloped crossing") {
    // e1(a) = a, e2(a) = -a, zero widths, omega = 0.5i: D(a) = a^2 - 0.25,
    // which vanishes exactly at a = 0.5.
    const ChannelBlock b{{0.0, 1.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.5}};
    const auto grid = linear_grid(0.0, 1.0, 201); // contains a = 0.5
    const auto scan = discriminant_scan(b, grid);
    CHECK(scan.ep_found);
    CHECK(scan.min_modulus <= 1e-12);
    CHECK(scan.a_at_min == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(scan.points.size() == grid.size());
}

TEST_CASE("discriminant scan: fig1-left channel 1 stays away from zero") {
    const auto sys = preset("fig1-left");
    const auto grid = linear_grid(0.0, 1.3, 1301);
    const auto scan = discriminant_scan(sys.channel1, grid);
    CHECK_FALSE(scan.ep_found);
    CHECK(scan.min_modulus > 0.0);
    // frozen closed form: |D(a)|^2 = (x^2 - 0.250625)^2 + 0.0025 x^2, x = (1 - 1.5a)/2
    for (size_t i = 0; i < grid.size(); i += 100) {
        const double x = (1.0 - 1.5 * grid[i]) / 2.0;
        const double expected =
            std::sqrt(std::pow(x * x - 0.250625, 2) + 0.0025 * x * x);
        CHECK(scan.points[i].modulus == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("discriminant scan: detuned uncoupled block is bounded away from zero") {
    const ChannelBlock b{{1.0, -0.5, -0.4}, {0.0, 1.0, -0.1}, 0.0};
    const auto scan = discriminant_scan(b, linear_grid(0.0, 1.3, 301));
    CHECK_FALSE(scan.ep_found);
    // widths differ by 0.3, so |D| >= (0.15)^2 even at the energy crossing
    CHECK(scan.min_modulus >= 0.0224);
}
