#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twochan/eig2.hpp"
#include "twochan/errors.hpp"

namespace twochan {

/// Complex energy of a localized state, eps = e + (i/2) gamma, dimensionless
/// units. Decaying states carry gamma <= 0.
struct ComplexEnergy {
    double e{};
    double gamma{};

    cplx as_complex() const { return {e, 0.5 * gamma}; }
    friend bool operator==(const ComplexEnergy&, const ComplexEnergy&) = default;
};

/// One state's trajectory over the sweep parameter: energy affine in a,
/// width constant. gamma_half is the channel-specific gamma/2.
struct LevelTrajectory {
    double e_intercept{};
    double e_slope{};
    double gamma_half{};

    double energy(double a) const { return e_intercept + e_slope * a; }
    cplx eps(double a) const { return {energy(a), gamma_half}; }
    friend bool operator==(const LevelTrajectory&, const LevelTrajectory&) = default;
};

/// Two states coupled through one common environment with strength omega.
struct ChannelBlock {
    LevelTrajectory state1{};
    LevelTrajectory state2{};
    cplx omega{};

    friend bool operator==(const ChannelBlock&, const ChannelBlock&) = default;
};

/// Two independent channel blocks. The implied 4x4 matrix is block-diagonal;
/// the cross-channel zeros are structural and never stored, so solving each
/// block separately is exactly the 4x4 solve.
struct TwoChannelSystem {
    ChannelBlock channel1{};
    ChannelBlock channel2{};

    friend bool operator==(const TwoChannelSystem&, const TwoChannelSystem&) = default;
};

inline Complex2x2Symmetric build_block(const ChannelBlock& b, double a) {
    return {b.state1.eps(a), b.state2.eps(a), b.omega};
}

inline std::pair<Complex2x2Symmetric, Complex2x2Symmetric>
build_system(const TwoChannelSystem& s, double a) {
    return {build_block(s.channel1, a), build_block(s.channel2, a)};
}

/// Parameter sets of the reference figures. Energies are e1 = 1 - a/2 and
/// e2 = a for every preset; widths and couplings differ.
inline const std::vector<std::pair<std::string, TwoChannelSystem>>& preset_catalog() {
    static const LevelTrajectory e1{1.0, -0.5, 0.0};
    static const LevelTrajectory e2{0.0, 1.0, 0.0};
    auto traj = [](const LevelTrajectory& t, double gamma_half) {
        LevelTrajectory out = t;
        out.gamma_half = gamma_half;
        return out;
    };
    static const std::vector<std::pair<std::string, TwoChannelSystem>> catalog = {
        // equal couplings, widths swapped between the channels
        {"fig1-left",
         {{traj(e1, -0.4), traj(e2, -0.35), cplx(0.0, 0.5)},
          {traj(e1, -0.35), traj(e2, -0.4), cplx(0.0, 0.5)}}},
        // strongly asymmetric couplings and second-channel widths
        {"fig1-right",
         {{traj(e1, -0.4), traj(e2, -0.35), cplx(0.0, 0.5)},
          {traj(e1, -0.08), traj(e2, -0.09), cplx(0.0, 0.1)}}},
        // fig1-left with vanishing external mixing
        {"fig2",
         {{traj(e1, -0.4), traj(e2, -0.35), 0.0},
          {traj(e1, -0.35), traj(e2, -0.4), 0.0}}},
    };
    return catalog;
}

inline TwoChannelSystem preset(std::string_view name) {
    for (const auto& [key, sys] : preset_catalog())
        if (key == name) return sys;
    throw config_error("unknown preset \"" + std::string(name) +
                       "\" (available: fig1-left, fig1-right, fig2)");
}

inline std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [key, sys] : preset_catalog()) names.push_back(key);
    return names;
}

} // namespace twochan
