#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "twochan/eig2.hpp"
#include "twochan/errors.hpp"
#include "twochan/hamiltonian.hpp"
#include "twochan/observables.hpp"

namespace twochan {

namespace detail {

inline constexpr double refine_tol = 1e-6;

/// Derivative-free golden-section maximization on [lo, hi] down to refine_tol.
inline double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > refine_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Bisection for f(a) = threshold between two bracketing grid points; f is
/// assumed monotone across the bracket. Used to sharpen window edges.
inline double bisect_crossing(const std::function<double(double)>& f, double lo, double hi,
                              double threshold) {
    const bool rising = f(hi) >= f(lo);
    while (hi - lo > refine_tol) {
        const double mid = 0.5 * (lo + hi);
        const bool above = f(mid) > threshold;
        if (above == rising)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Discriminant trajectory of one channel block over a parameter grid.
struct DiscriminantScan {
    std::vector<Discriminant> points;
    double min_modulus{};
    double a_at_min{};
    bool ep_found{}; ///< true when min |D| <= ep_tol * scale: exact EP on the real-a line
};

inline DiscriminantScan discriminant_scan(const ChannelBlock& b, std::span<const double> a_grid,
                                          double ep_tol = default_ep_tol) {
    if (a_grid.empty()) throw computation_error("discriminant_scan: empty grid");
    DiscriminantScan scan;
    scan.points.reserve(a_grid.size());
    scan.min_modulus = std::numeric_limits<double>::infinity();
    double scale_at_min = 1.0;
    for (const double a : a_grid) {
        const auto m = build_block(b, a);
        const auto d = discriminant(m);
        scan.points.push_back(d);
        if (d.modulus < scan.min_modulus) {
            scan.min_modulus = d.modulus;
            scan.a_at_min = a;
            scale_at_min = ep_scale(m);
        }
    }
    scan.ep_found = scan.min_modulus <= ep_tol * scale_at_min;
    return scan;
}

/// Critical-point summary for one channel.
struct ChannelCritical {
    std::optional<double> a_cr_width;    ///< argmax of |Gamma_1 - Gamma_2|; empty when flat
    std::optional<double> a_cr_rigidity; ///< argmax of min-state rigidity inside the window
    double a_ep_proximity{};             ///< argmin of |D(a)|
    double width_gap_max{};
    double min_discriminant{};
    bool ep_on_grid{};
};

struct CriticalReport {
    std::array<ChannelCritical, 2> channel{};
    /// Connected a-interval around the critical point where the width gap
    /// exceeds twice its value at the scan boundaries. Empty: no bifurcation.
    std::optional<std::pair<double, double>> window;
    bool bifurcated = false;
};

/// Locate the critical parameter values of both channels: coarse scan on
/// n_scan points, then golden-section refinement of each extremum to 1e-6.
inline CriticalReport find_critical(const TwoChannelSystem& sys, double a_lo, double a_hi,
                                    int n_scan, double ep_tol = default_ep_tol) {
    if (!(a_lo < a_hi)) throw computation_error("find_critical: a_lo must be < a_hi");
    if (n_scan < 50) throw computation_error("find_critical: n_scan must be >= 50");

    std::vector<double> grid(n_scan);
    for (int i = 0; i < n_scan; ++i) grid[i] = a_lo + (a_hi - a_lo) * i / (n_scan - 1);
    grid.back() = a_hi;

    const ChannelBlock* blocks[2] = {&sys.channel1, &sys.channel2};
    CriticalReport report;
    std::array<std::function<double(double)>, 2> gap_fns;

    for (int c = 0; c < 2; ++c) {
        const ChannelBlock& block = *blocks[c];
        auto gap = [&block, ep_tol](double a) {
            const auto sols = eigensolve(build_block(block, a), ep_tol);
            return std::abs(2.0 * sols[0].value.imag() - 2.0 * sols[1].value.imag());
        };
        gap_fns[c] = gap;

        double gmax = -1.0, gmin = std::numeric_limits<double>::infinity();
        int imax = 0;
        for (int i = 0; i < n_scan; ++i) {
            const double g = gap(grid[i]);
            if (g > gmax) {
                gmax = g;
                imax = i;
            }
            gmin = std::min(gmin, g);
        }

        ChannelCritical& ch = report.channel[c];
        const bool flat = (gmax - gmin) <= 1e-12 * std::max(1.0, gmax);
        if (!flat) {
            const double lo = grid[std::max(0, imax - 1)];
            const double hi = grid[std::min(n_scan - 1, imax + 1)];
            ch.a_cr_width = detail::golden_max(gap, lo, hi);
            ch.width_gap_max = gap(*ch.a_cr_width);
        } else {
            ch.width_gap_max = gmax;
        }

        const auto dscan = discriminant_scan(block, grid, ep_tol);
        auto neg_dmod = [&block](double a) {
            return -discriminant(build_block(block, a)).modulus;
        };
        const auto it = std::find(grid.begin(), grid.end(), dscan.a_at_min);
        const int imin = int(it - grid.begin());
        ch.a_ep_proximity = detail::golden_max(neg_dmod, grid[std::max(0, imin - 1)],
                                               grid[std::min(n_scan - 1, imin + 1)]);
        ch.min_discriminant = -neg_dmod(ch.a_ep_proximity);
        ch.ep_on_grid = dscan.ep_found;
    }

    // Bifurcation window from the channel with the strongest bifurcation.
    const int primary =
        report.channel[1].width_gap_max > report.channel[0].width_gap_max ? 1 : 0;
    const auto& gap_p = gap_fns[primary];
    if (report.channel[primary].a_cr_width) {
        const double threshold = 2.0 * std::max(gap_p(a_lo), gap_p(a_hi));
        const double a_cr = *report.channel[primary].a_cr_width;
        if (gap_p(a_cr) > threshold) {
            int icr = 0;
            for (int i = 0; i < n_scan; ++i)
                if (grid[i] <= a_cr) icr = i;
            int lo = icr;
            while (lo > 0 && gap_p(grid[lo - 1]) > threshold) --lo;
            int hi = icr;
            while (hi < n_scan - 1 && gap_p(grid[hi + 1]) > threshold) ++hi;
            double wlo = grid[lo], whi = grid[hi];
            if (lo > 0) wlo = detail::bisect_crossing(gap_p, grid[lo - 1], grid[lo], threshold);
            if (hi < n_scan - 1)
                whi = detail::bisect_crossing(gap_p, grid[hi], grid[hi + 1], threshold);
            report.window = {wlo, whi};
            report.bifurcated = true;
        }
    }

    // Rigidity extremum per channel, searched inside the window only.
    if (report.window) {
        const auto [wlo, whi] = *report.window;
        for (int c = 0; c < 2; ++c) {
            const ChannelBlock& block = *blocks[c];
            auto min_rigidity = [&block, ep_tol](double a) {
                const auto sols = eigensolve(build_block(block, a), ep_tol);
                return std::min(phase_rigidity(sols[0]), phase_rigidity(sols[1]));
            };
            double best = -1.0;
            double abest = wlo;
            for (int i = 0; i < n_scan; ++i) {
                const double a = wlo + (whi - wlo) * i / (n_scan - 1);
                const double r = min_rigidity(a);
                if (r > best) {
                    best = r;
                    abest = a;
                }
            }
            const double step = (whi - wlo) / (n_scan - 1);
            report.channel[c].a_cr_rigidity = detail::golden_max(
                min_rigidity, std::max(wlo, abest - step), std::min(whi, abest + step));
        }
    }
    return report;
}

} // namespace twochan
