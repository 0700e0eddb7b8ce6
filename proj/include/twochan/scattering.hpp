#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "twochan/eig2.hpp"
#include "twochan/errors.hpp"
#include "twochan/hamiltonian.hpp"
#include "twochan/observables.hpp"

namespace twochan {

/// One resonance entering the S matrix. `width` is the physical decay width
/// Gamma~ = |Gamma| > 0; the sign convention of the inputs (gamma <= 0 for
/// decaying states) is folded away here.
struct ResonancePole {
    double energy{};
    double width{};
};

/// Resonance S matrix: product over poles of
/// (E - E_i - (i/2) Gamma_i) / (E - E_i + (i/2) Gamma_i).
/// Unitary for real E: every factor is conj(z)/z.
inline cplx s_matrix(std::span<const ResonancePole> poles, double E) {
    if (poles.empty()) throw computation_error("s_matrix: empty pole list");
    cplx s = 1.0;
    for (const auto& p : poles) {
        const cplx denom(E - p.energy, 0.5 * p.width);
        s *= std::conj(denom) / denom;
    }
    return s;
}

inline constexpr double degenerate_width_tol = 1e-14;

/// The four resonance poles of the system at sweep parameter a: both channel
/// blocks are solved and every eigenvalue E + (i/2)Gamma becomes a pole with
/// Gamma~ = |Gamma|. Throws on a vanishing width, which would put a pole on
/// the real axis.
inline std::array<ResonancePole, 4> resonance_poles(const TwoChannelSystem& sys, double a,
                                                    double ep_tol = default_ep_tol) {
    const auto [b1, b2] = build_system(sys, a);
    const Complex2x2Symmetric blocks[2] = {b1, b2};
    std::array<ResonancePole, 4> poles{};
    int k = 0;
    for (int c = 0; c < 2; ++c) {
        for (const auto& sol : eigensolve(blocks[c], ep_tol)) {
            const double gamma = 2.0 * sol.value.imag();
            if (std::abs(gamma) <= degenerate_width_tol) {
                std::ostringstream msg;
                msg << "degenerate width |Gamma| <= 1e-14 for channel " << (c + 1)
                    << " at a = " << a;
                throw computation_error(msg.str());
            }
            poles[k++] = {sol.value.real(), std::abs(gamma)};
        }
    }
    return poles;
}

/// Transmission T(E) = |1 - S(E)|^2 / 4 from all four poles. A single
/// isolated resonance peaks at exactly T = 1; unitarity keeps T in [0, 1].
inline double transmission(const TwoChannelSystem& sys, double a, double E,
                           double ep_tol = default_ep_tol) {
    const auto poles = resonance_poles(sys, a, ep_tol);
    const cplx s = s_matrix(poles, E);
    return std::norm(1.0 - s) / 4.0;
}

/// T over the product grid (one row per a value, a-major storage).
struct TransmissionGrid {
    std::vector<double> e_grid;
    std::vector<double> a_grid;
    std::vector<double> values;
    std::optional<double> a_cr_marker;

    double at(size_t ai, size_t ei) const { return values[ai * e_grid.size() + ei]; }
};

inline TransmissionGrid transmission_grid(const TwoChannelSystem& sys,
                                          std::span<const double> e_grid,
                                          std::span<const double> a_grid,
                                          std::optional<double> a_cr_marker = std::nullopt,
                                          double ep_tol = default_ep_tol) {
    if (e_grid.empty() || a_grid.empty())
        throw computation_error("transmission_grid: empty grid");
    TransmissionGrid grid;
    grid.e_grid.assign(e_grid.begin(), e_grid.end());
    grid.a_grid.assign(a_grid.begin(), a_grid.end());
    grid.a_cr_marker = a_cr_marker;
    grid.values.reserve(e_grid.size() * a_grid.size());
    for (const double a : a_grid) {
        const auto poles = resonance_poles(sys, a, ep_tol);
        for (const double e : e_grid)
            grid.values.push_back(std::norm(1.0 - s_matrix(poles, e)) / 4.0);
    }
    return grid;
}

/// Pearson correlation over a between the state-mean phase rigidity of the
/// sweep and the energy-mean transmission of the grid. Undefined (nullopt)
/// when either series is constant.
inline std::optional<double>
rigidity_transmission_correlation(std::span<const SweepRecord> sweep,
                                  const TransmissionGrid& grid) {
    const size_t n = sweep.size();
    if (n != grid.a_grid.size() || n < 2)
        throw computation_error("rigidity_transmission_correlation: sweep and grid "
                                "a-axes must be the same");
    for (size_t i = 0; i < n; ++i)
        if (sweep[i].a != grid.a_grid[i])
            throw computation_error("rigidity_transmission_correlation: sweep and grid "
                                    "a-axes must be the same");

    std::vector<double> r_mean(n), t_mean(n);
    for (size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (const auto& ch : sweep[i].channel)
            r += ch.obs[0].rigidity + ch.obs[1].rigidity;
        r_mean[i] = r / 4.0;
        double t = 0.0;
        for (size_t e = 0; e < grid.e_grid.size(); ++e) t += grid.at(i, e);
        t_mean[i] = t / double(grid.e_grid.size());
    }

    double mr = 0.0, mt = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mr += r_mean[i];
        mt += t_mean[i];
    }
    mr /= double(n);
    mt /= double(n);
    double cov = 0.0, vr = 0.0, vt = 0.0;
    for (size_t i = 0; i < n; ++i) {
        cov += (r_mean[i] - mr) * (t_mean[i] - mt);
        vr += (r_mean[i] - mr) * (r_mean[i] - mr);
        vt += (t_mean[i] - mt) * (t_mean[i] - mt);
    }
    if (vr == 0.0 || vt == 0.0) return std::nullopt;
    return cov / std::sqrt(vr * vt);
}

} // namespace twochan
