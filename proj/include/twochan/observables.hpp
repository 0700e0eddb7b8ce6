#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "twochan/eig2.hpp"
#include "twochan/errors.hpp"
#include "twochan/hamiltonian.hpp"

namespace twochan {

/// Phase rigidity r_k = |<Phi_k^*|Phi_k>| / <Phi_k|Phi_k> = |Phi^T Phi| / (Phi^dag Phi),
/// in [0, 1]. Exactly 0 for EP-flagged solutions, where Phi^T Phi vanishes.
inline double phase_rigidity(const EigenSolution& sol) {
    if (sol.is_ep_member) return 0.0;
    return std::abs(bilinear_dot(sol.vector, sol.vector)) / norm2(sol.vector);
}

/// Expansion coefficients b_ij of Phi_i in the eigenbasis of the unmixed
/// (omega = 0) block. That basis is the unit vectors, so the b_ij are the
/// components of the c-normalized eigenvector and sum_j (b_ij)^2 = 1.
/// Undefined (nullopt) for self-orthogonal input.
inline std::optional<std::array<cplx, 2>> mixing_coefficients(const EigenSolution& sol) {
    if (!sol.c_norm_ok) return std::nullopt;
    return std::array<cplx, 2>{sol.vector.v0, sol.vector.v1};
}

/// Euclidean modulus of W * Phi with W the off-diagonal coupling matrix
/// [[0, omega], [omega, 0]]: the strength of the source term driving this
/// state through the environment.
inline double source_term_magnitude(const ChannelBlock& block, const EigenSolution& sol) {
    const Vec2 w{block.omega * sol.vector.v1, block.omega * sol.vector.v0};
    return std::sqrt(norm2(w));
}

/// Per-state spectroscopic observables of one sweep point.
struct StateObservables {
    double rigidity{};                      ///< r_k
    double a_norm{};                        ///< A_k = <Phi_k|Phi_k>
    cplx b_overlap{};                       ///< B_i^j = <Phi_i|Phi_{j!=i}>
    std::array<cplx, 2> mixing_row{};       ///< (b_i1, b_i2); NaN when undefined
    std::array<double, 2> mixing_weights{}; ///< (|b_i1|^2, |b_i2|^2)
    bool mixing_defined = false;
};

/// One channel at one sweep point. `states` is in eigensolve order
/// (ascending real part); `branch_ids[slot]` is the stable branch label
/// (1 or 2) assigned by continuity across the sweep.
struct ChannelRecord {
    std::array<EigenSolution, 2> states{};
    std::array<StateObservables, 2> obs{};
    std::array<int, 2> branch_ids{1, 2};

    bool ep_flagged() const { return states[0].is_ep_member || states[1].is_ep_member; }
    /// Slot index currently carrying branch label k (k = 1 or 2).
    int slot_of_branch(int k) const { return branch_ids[0] == k ? 0 : 1; }
};

struct SweepRecord {
    double a{};
    std::array<ChannelRecord, 2> channel{};
};

/// Branch assignment for the next sweep point of one channel: of the two
/// pairings of new eigenvalues to the previous labels, pick the one with the
/// smaller summed complex distance. Ties keep the previous ordering, as do
/// EP-flagged points (their eigenvalues are identical anyway).
inline std::array<int, 2> track_branches(const ChannelRecord& prev,
                                         const std::array<EigenSolution, 2>& next) {
    if (next[0].is_ep_member) return prev.branch_ids;
    const double keep = std::abs(next[0].value - prev.states[0].value) +
                        std::abs(next[1].value - prev.states[1].value);
    const double swap = std::abs(next[0].value - prev.states[1].value) +
                        std::abs(next[1].value - prev.states[0].value);
    if (swap < keep) return {prev.branch_ids[1], prev.branch_ids[0]};
    return prev.branch_ids;
}

namespace detail {

inline StateObservables make_observables(const EigenSolution& sol, const EigenSolution& other) {
    StateObservables o;
    o.rigidity = phase_rigidity(sol);
    o.a_norm = hermitian_dot(sol.vector, sol.vector).real();
    o.b_overlap = hermitian_dot(sol.vector, other.vector);
    if (auto b = mixing_coefficients(sol)) {
        o.mixing_row = *b;
        o.mixing_weights = {std::norm((*b)[0]), std::norm((*b)[1])};
        o.mixing_defined = true;
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        o.mixing_row = {cplx(nan, nan), cplx(nan, nan)};
        o.mixing_weights = {nan, nan};
    }
    return o;
}

inline void require_strictly_increasing(std::span<const double> grid, const char* what) {
    if (grid.size() < 2)
        throw computation_error(std::string(what) + ": grid needs at least 2 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw computation_error(std::string(what) + ": grid must be strictly increasing");
}

} // namespace detail

/// Sweep both channels over an ordered parameter grid. Eigenvalue branches
/// are labelled by nearest-pairing continuity; all per-state observables are
/// populated. Grid points are independent; the labelling pass is the only
/// sequential part.
inline std::vector<SweepRecord> run_sweep(const TwoChannelSystem& sys,
                                          std::span<const double> a_grid,
                                          double ep_tol = default_ep_tol) {
    detail::require_strictly_increasing(a_grid, "run_sweep");

    std::vector<SweepRecord> records;
    records.reserve(a_grid.size());
    for (const double a : a_grid) {
        SweepRecord rec;
        rec.a = a;
        const auto [b1, b2] = build_system(sys, a);
        const Complex2x2Symmetric blocks[2] = {b1, b2};
        for (int c = 0; c < 2; ++c) {
            ChannelRecord& ch = rec.channel[c];
            ch.states = eigensolve(blocks[c], ep_tol);
            ch.obs = {detail::make_observables(ch.states[0], ch.states[1]),
                      detail::make_observables(ch.states[1], ch.states[0])};
            ch.branch_ids = records.empty()
                                ? std::array<int, 2>{1, 2}
                                : track_branches(records.back().channel[c], ch.states);
        }
        records.push_back(rec);
    }
    return records;
}

} // namespace twochan
