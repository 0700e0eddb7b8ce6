#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "twochan/observables.hpp"
#include "twochan/scattering.hpp"

namespace twochan::io {

/// Shortest exact decimal for a double: 17 significant digits round-trip
/// bit-exactly through strtod.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Sweep artifact. Per channel c and branch k the columns are the energy
/// E_k_c, width G_k_c = 2 Im(E), rigidity, norm A, the external-mixing
/// weights |b_k1|^2 and |b_k2|^2, and one EP flag per channel. States are
/// emitted in branch order, so each column is a continuous trajectory.
inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "a";
    for (int c = 1; c <= 2; ++c) {
        for (int k = 1; k <= 2; ++k)
            out << ",E_" << k << "_" << c << ",G_" << k << "_" << c << ",r_" << k << "_" << c
                << ",A_" << k << "_" << c << ",b_" << k << "1_sq_" << c << ",b_" << k
                << "2_sq_" << c;
        out << ",ep_flag_" << c;
    }
    out << "\n";
    for (const auto& rec : records) {
        out << fmt17(rec.a);
        for (const auto& ch : rec.channel) {
            for (int k = 1; k <= 2; ++k) {
                const int slot = ch.slot_of_branch(k);
                const auto& s = ch.states[slot];
                const auto& o = ch.obs[slot];
                out << ',' << fmt17(s.value.real()) << ',' << fmt17(2.0 * s.value.imag())
                    << ',' << fmt17(o.rigidity) << ',' << fmt17(o.a_norm) << ','
                    << fmt17(o.mixing_weights[0]) << ',' << fmt17(o.mixing_weights[1]);
            }
            out << ',' << (ch.ep_flagged() ? 1 : 0);
        }
        out << "\n";
    }
    return out.str();
}

inline std::string spectrum_csv(const std::vector<double>& e_grid,
                                const std::vector<double>& t_values) {
    std::ostringstream out;
    out << "E,T\n";
    for (size_t i = 0; i < e_grid.size(); ++i)
        out << fmt17(e_grid[i]) << ',' << fmt17(t_values[i]) << "\n";
    return out.str();
}

/// Long-format contour data: one (a, E, T) row per cell, a-major.
inline std::string contour_csv(const TransmissionGrid& grid) {
    std::ostringstream out;
    out << "a,E,T\n";
    for (size_t ai = 0; ai < grid.a_grid.size(); ++ai)
        for (size_t ei = 0; ei < grid.e_grid.size(); ++ei)
            out << fmt17(grid.a_grid[ai]) << ',' << fmt17(grid.e_grid[ei]) << ','
                << fmt17(grid.at(ai, ei)) << "\n";
    return out.str();
}

inline std::string correlation_csv(const std::vector<double>& a,
                                   const std::vector<double>& r_mean,
                                   const std::vector<double>& t_mean) {
    std::ostringstream out;
    out << "a,r_mean,T_mean\n";
    for (size_t i = 0; i < a.size(); ++i)
        out << fmt17(a[i]) << ',' << fmt17(r_mean[i]) << ',' << fmt17(t_mean[i]) << "\n";
    return out.str();
}

} // namespace twochan::io
