#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "twochan/errors.hpp"
#include "twochan/hamiltonian.hpp"
#include "twochan/io/csv.hpp"

namespace twochan::io {

struct RangeSpec {
    double lo{};
    double hi{};
    int n{};
    friend bool operator==(const RangeSpec&, const RangeSpec&) = default;
};

inline std::vector<double> linspace(const RangeSpec& r) {
    std::vector<double> g(r.n);
    for (int i = 0; i < r.n; ++i) g[i] = r.lo + (r.hi - r.lo) * i / (r.n - 1);
    g.back() = r.hi;
    return g;
}

inline const std::set<std::string>& known_outputs() {
    static const std::set<std::string> outputs = {"sweep", "critical", "spectrum", "contour",
                                                  "correlation"};
    return outputs;
}

/// A fully validated run description. The system is either a preset name or
/// an inline parameter set; everything else has documented defaults.
struct RunConfig {
    std::optional<std::string> preset_name;
    std::optional<TwoChannelSystem> inline_system;
    RangeSpec a_range{0.0, 1.3, 1301};
    RangeSpec e_range{-1.0, 2.0, 3001};
    double ep_tol = default_ep_tol;
    std::set<std::string> outputs;
    std::filesystem::path out_dir = ".";
    std::optional<double> spectrum_a;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline TwoChannelSystem resolve_system(const RunConfig& cfg) {
    if (cfg.preset_name) return preset(*cfg.preset_name);
    if (cfg.inline_system) return *cfg.inline_system;
    throw config_error("no system configured: set \"preset\" or the inline system keys");
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] inline void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

inline double parse_double(const std::string& v, int line, const std::string& key) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        fail(line, "key \"" + key + "\": expected a number, got \"" + v + "\"");
    return x;
}

inline int parse_int(const std::string& v, int line, const std::string& key) {
    const double x = parse_double(v, line, key);
    const int i = int(x);
    if (double(i) != x) fail(line, "key \"" + key + "\": expected an integer, got \"" + v + "\"");
    return i;
}

/// Complex literal: "A", "Bi", or "A+Bi" / "A-Bi" (imaginary coefficient
/// mandatory, e.g. "1+1i" not "1+i").
inline cplx parse_complex(const std::string& v, int line, const std::string& key) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double first = std::strtod(begin, &end);
    if (end == begin) fail(line, "key \"" + key + "\": expected a complex number, got \"" + v + "\"");
    if (*end == '\0') return {first, 0.0};
    if (*end == 'i' && *(end + 1) == '\0') return {0.0, first};
    const char* second_begin = end;
    char* second_end = nullptr;
    const double second = std::strtod(second_begin, &second_end);
    if (second_end == second_begin || *second_end != 'i' || *(second_end + 1) != '\0')
        fail(line, "key \"" + key + "\": expected a complex number like \"0.5i\" or \"1-0.5i\", got \"" +
                       v + "\"");
    return {first, second};
}

inline const std::vector<std::string>& inline_system_keys() {
    static const std::vector<std::string> keys = {
        "state1.e_intercept",          "state1.e_slope",
        "state2.e_intercept",          "state2.e_slope",
        "channel1.state1.gamma_half",  "channel1.state2.gamma_half",
        "channel2.state1.gamma_half",  "channel2.state2.gamma_half",
        "channel1.omega",              "channel2.omega",
    };
    return keys;
}

} // namespace detail

/// Parse the flat key = value configuration document. Unknown keys and
/// duplicate keys are rejected with a line reference; the inline system keys
/// are all-or-none and exclusive with "preset".
inline RunConfig parse_config(std::string_view text) {
    using namespace detail;

    std::map<std::string, std::pair<std::string, int>> kv; // key -> (value, line)
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                             : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value, got \"" + line + "\"");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "key \"" + key + "\": empty value");
        if (kv.contains(key)) fail(line_no, "duplicate key \"" + key + "\"");
        kv[key] = {value, line_no};
    }

    static const std::set<std::string> scalar_keys = {
        "preset",     "a_range.lo", "a_range.hi", "a_range.n", "e_range.lo", "e_range.hi",
        "e_range.n",  "ep_tol",     "outputs",    "out_dir",   "spectrum.a"};
    for (const auto& [key, vl] : kv) {
        const bool inline_key = std::find(inline_system_keys().begin(), inline_system_keys().end(),
                                          key) != inline_system_keys().end();
        if (!scalar_keys.contains(key) && !inline_key)
            fail(vl.second, "unknown key \"" + key + "\"");
    }

    RunConfig cfg;
    auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    if (auto v = take("preset")) cfg.preset_name = v->first;

    int present = 0;
    for (const auto& key : inline_system_keys())
        if (kv.contains(key)) ++present;
    if (present > 0) {
        if (cfg.preset_name)
            throw config_error("config: \"preset\" and inline system keys are exclusive");
        if (present != int(inline_system_keys().size()))
            for (const auto& key : inline_system_keys())
                if (!kv.contains(key))
                    throw config_error("config: incomplete inline system, missing \"" + key + "\"");
        auto num = [&](const std::string& key) {
            const auto v = *take(key);
            return parse_double(v.first, v.second, key);
        };
        auto cnum = [&](const std::string& key) {
            const auto v = *take(key);
            return parse_complex(v.first, v.second, key);
        };
        const LevelTrajectory s1{num("state1.e_intercept"), num("state1.e_slope"), 0.0};
        const LevelTrajectory s2{num("state2.e_intercept"), num("state2.e_slope"), 0.0};
        auto traj = [](LevelTrajectory t, double gh) {
            t.gamma_half = gh;
            return t;
        };
        cfg.inline_system = TwoChannelSystem{
            {traj(s1, num("channel1.state1.gamma_half")),
             traj(s2, num("channel1.state2.gamma_half")), cnum("channel1.omega")},
            {traj(s1, num("channel2.state1.gamma_half")),
             traj(s2, num("channel2.state2.gamma_half")), cnum("channel2.omega")}};
    }
    if (!cfg.preset_name && !cfg.inline_system)
        throw config_error("config: no system configured, set \"preset\" or the inline system keys");
    if (cfg.preset_name) (void)preset(*cfg.preset_name); // unknown preset -> error

    auto range = [&](const char* prefix, RangeSpec& r) {
        const std::string lo = std::string(prefix) + ".lo";
        const std::string hi = std::string(prefix) + ".hi";
        const std::string n = std::string(prefix) + ".n";
        if (auto v = take(lo)) r.lo = parse_double(v->first, v->second, lo);
        if (auto v = take(hi)) r.hi = parse_double(v->first, v->second, hi);
        if (auto v = take(n)) r.n = parse_int(v->first, v->second, n);
        if (!(r.lo < r.hi))
            throw config_error("config: validation failed for \"" + std::string(prefix) +
                               "\": lo must be < hi");
        if (r.n < 2)
            throw config_error("config: validation failed for \"" + std::string(prefix) +
                               ".n\": need at least 2 grid points");
    };
    range("a_range", cfg.a_range);
    range("e_range", cfg.e_range);

    if (auto v = take("ep_tol")) {
        cfg.ep_tol = parse_double(v->first, v->second, "ep_tol");
        if (cfg.ep_tol < 0.0)
            throw config_error("config: validation failed for \"ep_tol\": must be >= 0");
    }
    if (auto v = take("spectrum.a")) cfg.spectrum_a = parse_double(v->first, v->second, "spectrum.a");
    if (auto v = take("out_dir")) cfg.out_dir = v->first;
    if (auto v = take("outputs")) {
        std::string rest = v->first;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string token = detail::trim(rest.substr(0, comma));
            rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
            if (token.empty()) continue;
            if (!known_outputs().contains(token))
                fail(v->second, "key \"outputs\": unknown artifact \"" + token + "\"");
            cfg.outputs.insert(token);
        }
    }
    return cfg;
}

/// Inverse of parse_config for valid configs: parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    auto emit = [&](const std::string& key, const std::string& value) {
        out += key + " = " + value + "\n";
    };
    auto emit_complex = [&](const std::string& key, cplx z) {
        emit(key, fmt17(z.real()) + (z.imag() < 0 ? "" : "+") + fmt17(z.imag()) + "i");
    };
    if (cfg.preset_name) emit("preset", *cfg.preset_name);
    if (cfg.inline_system) {
        const auto& s = *cfg.inline_system;
        // the flat schema shares the energy trajectories across channels
        auto same_energy = [](const LevelTrajectory& a, const LevelTrajectory& b) {
            return a.e_intercept == b.e_intercept && a.e_slope == b.e_slope;
        };
        if (!same_energy(s.channel1.state1, s.channel2.state1) ||
            !same_energy(s.channel1.state2, s.channel2.state2))
            throw config_error("serialize_config: inline systems with per-channel energy "
                               "trajectories are not representable");
        emit("state1.e_intercept", fmt17(s.channel1.state1.e_intercept));
        emit("state1.e_slope", fmt17(s.channel1.state1.e_slope));
        emit("state2.e_intercept", fmt17(s.channel1.state2.e_intercept));
        emit("state2.e_slope", fmt17(s.channel1.state2.e_slope));
        emit("channel1.state1.gamma_half", fmt17(s.channel1.state1.gamma_half));
        emit("channel1.state2.gamma_half", fmt17(s.channel1.state2.gamma_half));
        emit("channel2.state1.gamma_half", fmt17(s.channel2.state1.gamma_half));
        emit("channel2.state2.gamma_half", fmt17(s.channel2.state2.gamma_half));
        emit_complex("channel1.omega", s.channel1.omega);
        emit_complex("channel2.omega", s.channel2.omega);
    }
    emit("a_range.lo", fmt17(cfg.a_range.lo));
    emit("a_range.hi", fmt17(cfg.a_range.hi));
    emit("a_range.n", std::to_string(cfg.a_range.n));
    emit("e_range.lo", fmt17(cfg.e_range.lo));
    emit("e_range.hi", fmt17(cfg.e_range.hi));
    emit("e_range.n", std::to_string(cfg.e_range.n));
    emit("ep_tol", fmt17(cfg.ep_tol));
    if (cfg.spectrum_a) emit("spectrum.a", fmt17(*cfg.spectrum_a));
    emit("out_dir", cfg.out_dir.string());
    if (!cfg.outputs.empty()) {
        std::string joined;
        for (const auto& name : {"sweep", "critical", "spectrum", "contour", "correlation"})
            if (cfg.outputs.contains(name)) joined += (joined.empty() ? "" : ",") + std::string(name);
        emit("outputs", joined);
    }
    return out;
}

} // namespace twochan::io
