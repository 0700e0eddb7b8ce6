#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "twochan/hamiltonian.hpp"

using namespace twochan;

namespace {

// Dense 4x4 export of the block-diagonal system, used only by this oracle.
using Mat4 = std::array<std::array<cplx, 4>, 4>;

Mat4 dense_system(const TwoChannelSystem& s, double a) {
    Mat4 m{};
    const auto [b1, b2] = build_system(s, a);
    m[0][0] = b1.d11; m[0][1] = b1.off;
    m[1][0] = b1.off; m[1][1] = b1.d22;
    m[2][2] = b2.d11; m[2][3] = b2.off;
    m[3][2] = b2.off; m[3][3] = b2.d22;
    return m;
}

// Characteristic polynomial coefficients via Faddeev-LeVerrier:
// p(l) = l^4 + c[0] l^3 + c[1] l^2 + c[2] l + c[3].
std::array<cplx, 4> char_poly(const Mat4& a) {
    auto mul = [](const Mat4& x, const Mat4& y) {
        Mat4 r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) r[i][j] += x[i][k] * y[k][j];
        return r;
    };
    auto trace = [](const Mat4& x) { return x[0][0] + x[1][1] + x[2][2] + x[3][3]; };

    std::array<cplx, 4> c{};
    Mat4 m = a;
    c[0] = -trace(m);
    for (int k = 2; k <= 4; ++k) {
        Mat4 shifted = m;
        for (int i = 0; i < 4; ++i) shifted[i][i] += c[k - 2];
        m = mul(a, shifted);
        c[k - 1] = -trace(m) / double(k);
    }
    return c;
}

// Durand-Kerner iteration on the quartic.
std::array<cplx, 4> quartic_roots(const std::array<cplx, 4>& c) {
    auto p = [&](cplx z) { return (((z + c[0]) * z + c[1]) * z + c[2]) * z + c[3]; };
    std::array<cplx, 4> z;
    const cplx seed(0.4, 0.9);
    z[0] = seed;
    for (int i = 1; i < 4; ++i) z[i] = z[i - 1] * seed;
    for (int iter = 0; iter < 500; ++iter) {
        double step = 0.0;
        for (int i = 0; i < 4; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= z[i] - z[j];
            const cplx d = p(z[i]) / denom;
            z[i] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-14) break;
    }
    return z;
}

bool eig_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::mt19937 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937(seq);
}

TwoChannelSystem random_system(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto traj = [&] { return LevelTrajectory{u(rng), u(rng), -std::abs(u(rng))}; };
    auto block = [&] { return ChannelBlock{traj(), traj(), {u(rng), u(rng)}}; };
    return {block(), block()};
}

} // namespace

TEST_CASE("build_block reproduces the reference parameter columns") {
    SUBCASE("fig1-left channel 1 at a = 0") {
        const auto m = build_block(preset("fig1-left").channel1, 0.0);
        CHECK(m.d11 == cplx(1.0, -0.4));
        CHECK(m.d22 == cplx(0.0, -0.35));
        CHECK(m.off == cplx(0.0, 0.5));
    }
    SUBCASE("omega = 0 gives the unmixed diagonal block") {
        ChannelBlock b = preset("fig1-left").channel1;
        b.omega = 0.0;
        const auto m = build_block(b, 0.0);
        CHECK(m.off == cplx(0.0));
        CHECK(m.d11 == cplx(1.0, -0.4));
        CHECK(m.d22 == cplx(0.0, -0.35));
    }
    SUBCASE("fig1-right channel 2 at a = 1") {
        const auto m = build_block(preset("fig1-right").channel2, 1.0);
        CHECK(m.d11 == cplx(0.5, -0.08));
        CHECK(m.d22 == cplx(1.0, -0.09));
        CHECK(m.off == cplx(0.0, 0.1));
    }
}

TEST_CASE("build_system splits into the two channel blocks") {
    const auto sys = preset("fig1-left");
    const auto [b1, b2] = build_system(sys, 0.0);
    CHECK(b1 == build_block(sys.channel1, 0.0));
    CHECK(b2 == build_block(sys.channel2, 0.0));
    // channel-2 widths are the swapped pair
    CHECK(b2.d11 == cplx(1.0, -0.35));
    CHECK(b2.d22 == cplx(0.0, -0.4));

    // off-diagonals are a-independent: blocks at two a differ only on the diagonal
    const auto [c1, c2] = build_system(sys, 0.7);
    CHECK(c1.off == b1.off);
    CHECK(c2.off == b2.off);
    CHECK(c1.d11 != b1.d11);
}

TEST_CASE("preset catalog") {
    CHECK(preset_names() == std::vector<std::string>{"fig1-left", "fig1-right", "fig2"});

    const auto fig2 = preset("fig2");
    TwoChannelSystem expected = preset("fig1-left");
    expected.channel1.omega = 0.0;
    expected.channel2.omega = 0.0;
    CHECK(fig2 == expected);

    CHECK_THROWS_AS((void)preset("nosuch"), config_error);
}

TEST_CASE("property: diagonal entries are affine in a") {
    auto rng = rng_for("ham-affine");
    for (int k = 0; k < 200; ++k) {
        const auto sys = random_system(rng);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        const double a1 = u(rng), a2 = u(rng);
        const auto lo = build_block(sys.channel1, a1);
        const auto hi = build_block(sys.channel1, a2);
        const auto mid = build_block(sys.channel1, 0.5 * (a1 + a2));
        CHECK(std::abs(mid.d11 - 0.5 * (lo.d11 + hi.d11)) < 1e-15);
        CHECK(std::abs(mid.d22 - 0.5 * (lo.d22 + hi.d22)) < 1e-15);
        CHECK(mid.off == lo.off);
    }
}

TEST_CASE("property: block eigenvalues equal the 4x4 characteristic-polynomial roots") {
    auto rng = rng_for("ham-4x4-oracle");
    for (int k = 0; k < 300; ++k) {
        const auto sys = random_system(rng);
        const double a = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);

        const auto [b1, b2] = build_system(sys, a);
        std::array<cplx, 4> block_eigs{
            eigensolve(b1)[0].value, eigensolve(b1)[1].value,
            eigensolve(b2)[0].value, eigensolve(b2)[1].value};
        auto oracle = quartic_roots(char_poly(dense_system(sys, a)));

        std::sort(block_eigs.begin(), block_eigs.end(), eig_less);
        std::sort(oracle.begin(), oracle.end(), eig_less);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(block_eigs[i] - oracle[i]) < 1e-10);
    }
}

TEST_CASE("property: widths never leak into the off-diagonal") {
    auto rng = rng_for("ham-width-leak");
    for (int k = 0; k < 200; ++k) {
        auto sys = random_system(rng);
        const auto before = build_block(sys.channel1, 0.3).off;
        sys.channel1.state1.gamma_half -= 0.7;
        sys.channel1.state2.gamma_half += 0.2;
        CHECK(build_block(sys.channel1, 0.3).off == before);
    }
}
