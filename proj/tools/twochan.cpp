// Command-line front end: sweeps, critical-point reports, transmission
// spectra and contour maps for two-level systems coupled to two channels.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "twochan/io/run.hpp"

namespace {

using namespace twochan;

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    std::string a_range;
    std::string e_range;
    std::string format;
    double spectrum_a = std::numeric_limits<double>::quiet_NaN();
};

io::RangeSpec parse_range_flag(const std::string& text, const std::string& flag) {
    io::RangeSpec r;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw config_error(flag + ": expected LO:HI:N, got \"" + text + "\"");
    try {
        r.lo = std::stod(text.substr(0, c1));
        r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        r.n = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw config_error(flag + ": expected LO:HI:N, got \"" + text + "\"");
    }
    if (!(r.lo < r.hi)) throw config_error(flag + ": LO must be < HI");
    if (r.n < 2) throw config_error(flag + ": need at least 2 grid points");
    return r;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_spectrum_a = false) {
    cmd->add_option("--config", opts.config_path, "configuration file (key = value lines)");
    cmd->add_option("--preset", opts.preset_name, "system preset name (see `twochan presets`)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--a-range", opts.a_range, "sweep-parameter grid LO:HI:N");
    cmd->add_option("--e-range", opts.e_range, "energy grid LO:HI:N");
    cmd->add_option("--format", opts.format, "restrict artifacts to csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    if (with_spectrum_a)
        cmd->add_option("--a", opts.spectrum_a,
                        "parameter value of the spectrum slice (default: a_cr)");
}

io::RunConfig assemble(const CommonOpts& opts) {
    io::RunConfig cfg;
    if (!opts.config_path.empty())
        cfg = io::parse_config(io::read_file(opts.config_path));
    if (!opts.preset_name.empty()) {
        cfg.preset_name = opts.preset_name;
        cfg.inline_system.reset();
        (void)preset(opts.preset_name); // unknown preset -> config_error
    }
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (!opts.a_range.empty()) cfg.a_range = parse_range_flag(opts.a_range, "--a-range");
    if (!opts.e_range.empty()) cfg.e_range = parse_range_flag(opts.e_range, "--e-range");
    if (!std::isnan(opts.spectrum_a)) cfg.spectrum_a = opts.spectrum_a;
    if (!cfg.preset_name && !cfg.inline_system)
        throw config_error("no system configured: pass --preset or a --config with a system");
    return cfg;
}

int run_subcommand(const CommonOpts& opts, const std::string& output) {
    io::RunConfig cfg = assemble(opts);
    cfg.outputs = {output};
    std::set<std::string> formats;
    if (!opts.format.empty()) formats.insert(opts.format);
    const auto result = io::run(cfg, formats);
    if (result.files.empty())
        throw config_error("--format " + opts.format + ": no " + output +
                           " artifact has that format");
    for (const auto& f : result.files)
        std::cout << (result.out_dir / f.name).string() << "  (" << f.bytes
                  << " bytes, fnv1a64 " << f.digest << ")\n";
    std::cout << (result.out_dir / "manifest.json").string() << "\n";
    return 0;
}

void print_presets() {
    for (const auto& [name, sys] : preset_catalog()) {
        std::printf("%-10s  e1 = %g%+g*a  e2 = %g%+g*a\n", name.c_str(),
                    sys.channel1.state1.e_intercept, sys.channel1.state1.e_slope,
                    sys.channel1.state2.e_intercept, sys.channel1.state2.e_slope);
        const ChannelBlock* blocks[2] = {&sys.channel1, &sys.channel2};
        for (int c = 0; c < 2; ++c)
            std::printf("            channel %d: gamma/2 = (%g, %g), omega = %g%+gi\n", c + 1,
                        blocks[c]->state1.gamma_half, blocks[c]->state2.gamma_half,
                        blocks[c]->omega.real(), blocks[c]->omega.imag());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra, critical points and transmission of a two-level "
                 "system coupled to two decay channels"};
    app.require_subcommand(1);

    CommonOpts opts;
    const struct {
        const char* name;
        const char* help;
        const char* output;
    } commands[] = {
        {"sweep", "eigenvalues and eigenfunction observables over the parameter grid", "sweep"},
        {"critical", "locate the critical parameter values", "critical"},
        {"spectrum", "transmission T(E) at one parameter value", "spectrum"},
        {"contour", "transmission T(E, a) grid with heatmap", "contour"},
        {"correlate", "rigidity/transmission correlation over the bifurcation window",
         "correlation"},
    };

    int exit_code = 0;
    std::string selected_output;
    for (const auto& c : commands) {
        CLI::App* cmd = app.add_subcommand(c.name, c.help);
        add_common(cmd, opts, std::string(c.name) == "spectrum");
        cmd->callback([&selected_output, output = std::string(c.output)] {
            selected_output = output;
        });
    }
    CLI::App* presets_cmd = app.add_subcommand("presets", "list the built-in parameter sets");
    bool list_presets = false;
    presets_cmd->callback([&list_presets] { list_presets = true; });

    try {
        app.parse(argc, argv);
        if (list_presets)
            print_presets();
        else
            exit_code = run_subcommand(opts, selected_output);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const twochan::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const twochan::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const twochan::computation_error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
