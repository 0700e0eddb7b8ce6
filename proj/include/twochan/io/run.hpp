#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twochan/critical.hpp"
#include "twochan/io/config.hpp"
#include "twochan/io/csv.hpp"
#include "twochan/io/manifest.hpp"
#include "twochan/io/svg.hpp"
#include "twochan/observables.hpp"
#include "twochan/scattering.hpp"

namespace twochan::io {

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<WrittenArtifact> files;
    std::string manifest_digest;
};

namespace detail {

using json = nlohmann::ordered_json;

inline json critical_json(const CriticalReport& report) {
    json doc;
    doc["bifurcated"] = report.bifurcated;
    if (report.window)
        doc["window"] = {{"lo", report.window->first}, {"hi", report.window->second}};
    else
        doc["window"] = nullptr;
    doc["channels"] = json::array();
    for (const auto& ch : report.channel) {
        json c;
        c["a_cr_width"] = ch.a_cr_width ? json(*ch.a_cr_width) : json(nullptr);
        c["a_cr_rigidity"] = ch.a_cr_rigidity ? json(*ch.a_cr_rigidity) : json(nullptr);
        c["a_ep_proximity"] = ch.a_ep_proximity;
        c["width_gap_max"] = ch.width_gap_max;
        c["min_discriminant"] = ch.min_discriminant;
        c["ep_on_grid"] = ch.ep_on_grid;
        doc["channels"].push_back(c);
    }
    return doc;
}

/// The channel whose bifurcation is strongest drives the window, the
/// contour marker and the default spectrum slice.
inline int primary_channel(const CriticalReport& report) {
    return report.channel[1].width_gap_max > report.channel[0].width_gap_max ? 1 : 0;
}

inline std::optional<double> primary_a_cr(const CriticalReport& report) {
    return report.channel[primary_channel(report)].a_cr_width;
}

} // namespace detail

/// Execute one configuration: compute the requested artifacts, write them
/// under cfg.out_dir, and record every file with its content digest in
/// manifest.json. Identical configs produce byte-identical trees.
///
/// `format_filter` optionally restricts emitted files by extension
/// ("csv", "json", "svg"); empty means everything.
inline RunResult run(const RunConfig& cfg, const std::set<std::string>& format_filter = {}) {
    const TwoChannelSystem sys = resolve_system(cfg);
    const auto& outputs = cfg.outputs;

    const bool want_spectrum_default = outputs.contains("spectrum") && !cfg.spectrum_a;
    const bool need_critical = outputs.contains("critical") || outputs.contains("contour") ||
                               outputs.contains("correlation") || want_spectrum_default;
    if (need_critical && cfg.a_range.n < 50)
        throw config_error("config: validation failed for \"a_range.n\": critical-point "
                           "search needs at least 50 scan points");

    const std::vector<double> a_grid = linspace(cfg.a_range);
    const std::vector<double> e_grid = linspace(cfg.e_range);

    std::optional<CriticalReport> crit;
    if (need_critical)
        crit = find_critical(sys, cfg.a_range.lo, cfg.a_range.hi, cfg.a_range.n, cfg.ep_tol);

    // artifact name -> content, assembled before anything touches the disk
    std::vector<std::pair<std::string, std::string>> artifacts;

    if (outputs.contains("sweep"))
        artifacts.emplace_back("sweep.csv", sweep_csv(run_sweep(sys, a_grid, cfg.ep_tol)));

    if (outputs.contains("critical"))
        artifacts.emplace_back("critical.json", detail::critical_json(*crit).dump(2) + "\n");

    if (outputs.contains("spectrum")) {
        double a_slice;
        if (cfg.spectrum_a)
            a_slice = *cfg.spectrum_a;
        else if (const auto a_cr = detail::primary_a_cr(*crit))
            a_slice = *a_cr;
        else
            a_slice = 0.5 * (cfg.a_range.lo + cfg.a_range.hi); // no bifurcation to pin to
        const auto poles = resonance_poles(sys, a_slice, cfg.ep_tol);
        std::vector<double> ts(e_grid.size());
        for (size_t i = 0; i < e_grid.size(); ++i)
            ts[i] = std::norm(1.0 - s_matrix(poles, e_grid[i])) / 4.0;
        artifacts.emplace_back("spectrum.csv", spectrum_csv(e_grid, ts));
    }

    if (outputs.contains("contour")) {
        const auto grid =
            transmission_grid(sys, e_grid, a_grid, detail::primary_a_cr(*crit), cfg.ep_tol);
        artifacts.emplace_back("contour.csv", contour_csv(grid));
        artifacts.emplace_back("contour.svg", render_svg_heatmap(grid));
    }

    if (outputs.contains("correlation")) {
        detail::json doc;
        std::vector<double> as, rs, ts;
        if (crit->window) {
            const auto [wlo, whi] = *crit->window;
            for (const double a : a_grid)
                if (a >= wlo && a <= whi) as.push_back(a);
        }
        if (as.size() >= 2) {
            const auto sweep = run_sweep(sys, as, cfg.ep_tol);
            const auto grid = transmission_grid(sys, e_grid, as, std::nullopt, cfg.ep_tol);
            const auto pearson = rigidity_transmission_correlation(sweep, grid);
            for (size_t i = 0; i < as.size(); ++i) {
                double r = 0.0;
                for (const auto& ch : sweep[i].channel)
                    r += ch.obs[0].rigidity + ch.obs[1].rigidity;
                rs.push_back(r / 4.0);
                double t = 0.0;
                for (size_t e = 0; e < e_grid.size(); ++e) t += grid.at(i, e);
                ts.push_back(t / double(e_grid.size()));
            }
            doc["window"] = {{"lo", crit->window->first}, {"hi", crit->window->second}};
            doc["n_points"] = as.size();
            doc["pearson"] = pearson ? detail::json(*pearson) : detail::json(nullptr);
        } else {
            doc["window"] = nullptr;
            doc["n_points"] = 0;
            doc["pearson"] = nullptr;
        }
        artifacts.emplace_back("correlation.json", doc.dump(2) + "\n");
        artifacts.emplace_back("correlation.csv", correlation_csv(as, rs, ts));
    }

    if (!format_filter.empty()) {
        std::erase_if(artifacts, [&](const auto& a) {
            const auto dot = a.first.rfind('.');
            return !format_filter.contains(a.first.substr(dot + 1));
        });
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec && !std::filesystem::is_directory(cfg.out_dir))
        throw io_error("cannot create output directory: " + cfg.out_dir.string());

    RunResult result;
    result.out_dir = cfg.out_dir;
    detail::json manifest;
    manifest["files"] = detail::json::array();
    for (const auto& [name, content] : artifacts) {
        write_file(cfg.out_dir / name, content);
        WrittenArtifact rec{name, content.size(), fnv1a64(content)};
        manifest["files"].push_back(
            {{"name", rec.name}, {"bytes", rec.bytes}, {"fnv1a64", rec.digest}});
        result.files.push_back(std::move(rec));
    }
    const std::string manifest_text = manifest.dump(2) + "\n";
    write_file(cfg.out_dir / "manifest.json", manifest_text);
    result.manifest_digest = fnv1a64(manifest_text);
    return result;
}

} // namespace twochan::io
