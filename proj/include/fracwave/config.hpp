#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

// Spatial data preset: "zero", "mode" (one eigenmode), or "bump", the
// polynomial x (L - x) expanded in the sine basis.
struct DataSpec {
    std::string kind = "zero";
    int index = 1;
};

// Per-mode time profile of the forcing: "none", "sin", or "cos".
struct ForcingSpec {
    std::string kind = "none";
    int index = 1;
};

// One fully resolved run.  Every field has a default; parse_config echoes
// the complete resolved state so a run can be reproduced from its output
// directory alone.
struct RunConfig {
    std::string domain_kind = "interval";
    double length = std::numbers::pi;
    int n_modes = 8;

    double s = 0.5;
    double gamma = 1.5;
    double T = 1.0;

    DataSpec g{"mode", 1};
    DataSpec h{"zero", 1};
    ForcingSpec f{};

    double beta = 0.0;
    double theta = 0.0;

    std::string scheme = "cn-halfstep";
    std::string init = "fractional-taylor";
    std::string benchmark = "cubic";
    int levels = 5;
    int steps = 64;

    double sigma = 0.0;
    double nu = 0.0;
    bool rho_auto = true;
    double rho = 0.0;
    int ell_max = 3;

    std::string suite = "time";
    std::string out = "fracwave-out";
    std::uint64_t seed = 42;

    int threads = 1;  // from FRACWAVE_THREADS, never from the file
};

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

inline std::string_view trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
        v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
        v.remove_suffix(1);
    return v;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

inline double to_double(std::string_view v, std::string_view key, int line) {
    try {
        std::size_t used = 0;
        const std::string owned(v);
        const double x = std::stod(owned, &used);
        if (used != owned.size())
            parse_fail(line, "trailing characters after the value of '"
                                 + std::string(key) + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        parse_fail(line, "value of '" + std::string(key)
                             + "' is not a number");
    }
}

inline long long to_int(std::string_view v, std::string_view key, int line) {
    try {
        std::size_t used = 0;
        const std::string owned(v);
        const long long x = std::stoll(owned, &used);
        if (used != owned.size())
            parse_fail(line, "trailing characters after the value of '"
                                 + std::string(key) + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        parse_fail(line, "value of '" + std::string(key)
                             + "' is not an integer");
    }
}

// "zero", "bump", or "mode:K".
inline DataSpec to_data(std::string_view v, std::string_view key, int line) {
    DataSpec d;
    const auto colon = v.find(':');
    const std::string_view head = v.substr(0, colon);
    if (head == "zero" || head == "bump") {
        if (colon != std::string_view::npos)
            parse_fail(line, "preset '" + std::string(head)
                                 + "' takes no index");
        d.kind = std::string(head);
        return d;
    }
    if (head != "mode")
        parse_fail(line, "value of '" + std::string(key)
                             + "' must be zero, bump, or mode:K");
    if (colon == std::string_view::npos)
        parse_fail(line, "preset 'mode' needs an index, e.g. mode:1");
    d.kind = "mode";
    d.index = static_cast<int>(
        to_int(trim(v.substr(colon + 1)), key, line));
    return d;
}

// "none", "sin:K", or "cos:K".
inline ForcingSpec to_forcing(std::string_view v, std::string_view key,
                              int line) {
    ForcingSpec f;
    const auto colon = v.find(':');
    const std::string_view head = v.substr(0, colon);
    if (head == "none") {
        if (colon != std::string_view::npos)
            parse_fail(line, "preset 'none' takes no index");
        return f;
    }
    if (head != "sin" && head != "cos")
        parse_fail(line, "value of '" + std::string(key)
                             + "' must be none, sin:K, or cos:K");
    if (colon == std::string_view::npos)
        parse_fail(line, "preset '" + std::string(head)
                             + "' needs a mode index, e.g. sin:1");
    f.kind = std::string(head);
    f.index = static_cast<int>(
        to_int(trim(v.substr(colon + 1)), key, line));
    return f;
}

}  // namespace detail

// First eigenvalue of the configured domain; the weight validation and
// the regularity defaults depend on it.
inline double first_eigenvalue(const RunConfig& rc) {
    const double w = std::numbers::pi / rc.length;
    return w * w;
}

// Range checks mirror the preconditions of the modules the runner will
// call, so a valid RunConfig never fails downstream construction.
inline void validate_config(const RunConfig& rc) {
    if (rc.domain_kind != "interval")
        throw ValidationError("domain kind must be interval");
    if (!(rc.length > 0.0))
        throw ValidationError("interval length must be positive");
    if (rc.n_modes < 1 || rc.n_modes > 512)
        throw ValidationError("n_modes must lie in [1, 512]");
    if (!(rc.s > 0.0) || !(rc.s < 1.0))
        throw ValidationError("s must lie in (0, 1)");
    if (!(rc.gamma > 1.0) || !(rc.gamma <= 2.0))
        throw ValidationError("gamma must lie in (1, 2]");
    if (!(rc.T > 0.0)) throw ValidationError("T must be positive");
    for (const auto* d : {&rc.g, &rc.h}) {
        if (d->kind != "zero" && d->kind != "mode" && d->kind != "bump")
            throw ValidationError("data preset must be zero, mode, or bump");
        if (d->kind == "mode" && (d->index < 1 || d->index > rc.n_modes))
            throw ValidationError("data mode index must lie in [1, n_modes]");
    }
    if (rc.f.kind != "none" && rc.f.kind != "sin" && rc.f.kind != "cos")
        throw ValidationError("forcing preset must be none, sin, or cos");
    if (rc.f.kind != "none" && (rc.f.index < 1 || rc.f.index > rc.n_modes))
        throw ValidationError("forcing mode index must lie in [1, n_modes]");
    const double cap = 0.95 * 2.0 * std::sqrt(first_eigenvalue(rc));
    if (!(rc.theta >= 0.0) || rc.theta > cap)
        throw ValidationError(
            "theta must satisfy 0 <= theta < 2 sqrt(lambda_1)");
    if (rc.scheme != "cn-halfstep" && rc.scheme != "nodal")
        throw ValidationError("scheme must be one of cn-halfstep, nodal");
    if (rc.init != "fractional-taylor" && rc.init != "linear")
        throw ValidationError(
            "init must be one of fractional-taylor, linear");
    if (rc.benchmark != "cubic" && rc.benchmark != "relaxation")
        throw ValidationError("benchmark must be cubic or relaxation");
    if (rc.levels < 2 || rc.levels > 10)
        throw ValidationError("levels must lie in [2, 10]");
    if (rc.steps < 8 || rc.steps > (1 << 20))
        throw ValidationError("steps must lie in [8, 1048576]");
    if (!(rc.sigma >= 0.0) || !(rc.sigma < rc.s))
        throw ValidationError("sigma must lie in [0, s)");
    if (!(rc.nu >= 0.0) || !(rc.nu < 1.0 + rc.s))
        throw ValidationError("nu must lie in [0, 1 + s)");
    if (rc.ell_max < 0 || rc.ell_max > 4)
        throw ValidationError("ell_max must lie in [0, 4]");
    if (!rc.rho_auto && !std::isfinite(rc.rho))
        throw ValidationError("rho must be finite");
    if (rc.suite != "time" && rc.suite != "space" && rc.suite != "spacetime")
        throw ValidationError("suite must be one of time, space, spacetime");
    if (rc.out.empty())
        throw ValidationError("output directory must not be empty");
    if (rc.threads < 1)
        throw ValidationError("FRACWAVE_THREADS must be a positive integer");
}

// The weighted-norm exponent sits just above the sharp threshold when the
// config leaves it on automatic.
inline double resolved_rho(const RunConfig& rc) {
    return rc.rho_auto ? 5.0 - 2.0 * rc.gamma + 0.2 : rc.rho;
}

// Line-oriented `key = value` blocks under `[section]` headers.  Unknown
// sections, unknown keys, and repeated keys are rejected with the line
// number; full-line comments start with '#' or ';'.
inline RunConfig parse_config(std::string_view text) {
    RunConfig rc;
    std::string section;
    std::set<std::string> seen;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                          : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        const std::string_view sv = detail::trim(raw);
        if (sv.empty() || sv.front() == '#' || sv.front() == ';') continue;
        if (sv.front() == '[') {
            if (sv.back() != ']')
                detail::parse_fail(line, "unterminated section header");
            section = std::string(detail::trim(sv.substr(1, sv.size() - 2)));
            static const std::set<std::string> known{
                "domain", "equation", "data",       "weight",
                "scheme", "regularity", "run"};
            if (!known.count(section))
                detail::parse_fail(line, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            detail::parse_fail(line, "expected key = value");
        const std::string key(detail::trim(sv.substr(0, eq)));
        const std::string_view val = detail::trim(sv.substr(eq + 1));
        if (key.empty()) detail::parse_fail(line, "empty key");
        if (section.empty())
            detail::parse_fail(line, "key '" + key
                                         + "' appears before any section");
        if (!seen.insert(section + "." + key).second)
            detail::parse_fail(line, "key '" + key + "' repeated in ["
                                         + section + "]");

        if (section == "domain") {
            if (key == "kind")
                rc.domain_kind = std::string(val);
            else if (key == "length")
                rc.length = detail::to_double(val, key, line);
            else if (key == "n_modes")
                rc.n_modes =
                    static_cast<int>(detail::to_int(val, key, line));
            else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [domain]");
        } else if (section == "equation") {
            if (key == "s")
                rc.s = detail::to_double(val, key, line);
            else if (key == "gamma")
                rc.gamma = detail::to_double(val, key, line);
            else if (key == "T")
                rc.T = detail::to_double(val, key, line);
            else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [equation]");
        } else if (section == "data") {
            if (key == "g")
                rc.g = detail::to_data(val, key, line);
            else if (key == "h")
                rc.h = detail::to_data(val, key, line);
            else if (key == "f")
                rc.f = detail::to_forcing(val, key, line);
            else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [data]");
        } else if (section == "weight") {
            if (key == "beta")
                rc.beta = detail::to_double(val, key, line);
            else if (key == "theta")
                rc.theta = detail::to_double(val, key, line);
            else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [weight]");
        } else if (section == "scheme") {
            if (key == "name")
                rc.scheme = std::string(val);
            else if (key == "init")
                rc.init = std::string(val);
            else if (key == "benchmark")
                rc.benchmark = std::string(val);
            else if (key == "levels")
                rc.levels = static_cast<int>(detail::to_int(val, key, line));
            else if (key == "steps")
                rc.steps = static_cast<int>(detail::to_int(val, key, line));
            else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [scheme]");
        } else if (section == "regularity") {
            if (key == "sigma")
                rc.sigma = detail::to_double(val, key, line);
            else if (key == "nu")
                rc.nu = detail::to_double(val, key, line);
            else if (key == "rho") {
                if (val == "auto") {
                    rc.rho_auto = true;
                } else {
                    rc.rho_auto = false;
                    rc.rho = detail::to_double(val, key, line);
                }
            } else if (key == "ell_max")
                rc.ell_max =
                    static_cast<int>(detail::to_int(val, key, line));
            else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [regularity]");
        } else {
            if (key == "suite")
                rc.suite = std::string(val);
            else if (key == "out")
                rc.out = std::string(val);
            else if (key == "seed") {
                const long long v = detail::to_int(val, key, line);
                if (v < 0) detail::parse_fail(line, "seed must not be negative");
                rc.seed = static_cast<std::uint64_t>(v);
            } else
                detail::parse_fail(line, "unknown key '" + key
                                             + "' in [run]");
        }
    }
    validate_config(rc);
    return rc;
}

namespace detail {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

// Canonical echo of every setting, defaults included.  Hashing this text
// identifies the run.
inline std::string resolved_config(const RunConfig& rc) {
    std::string o;
    o += "[domain]\n";
    o += "kind = " + rc.domain_kind + "\n";
    o += "length = " + detail::g17(rc.length) + "\n";
    o += "n_modes = " + std::to_string(rc.n_modes) + "\n\n";
    o += "[equation]\n";
    o += "s = " + detail::g17(rc.s) + "\n";
    o += "gamma = " + detail::g17(rc.gamma) + "\n";
    o += "T = " + detail::g17(rc.T) + "\n\n";
    auto data = [](const DataSpec& d) {
        return d.kind == "mode" ? d.kind + ":" + std::to_string(d.index)
                                : d.kind;
    };
    o += "[data]\n";
    o += "g = " + data(rc.g) + "\n";
    o += "h = " + data(rc.h) + "\n";
    o += "f = "
        + (rc.f.kind == "none" ? rc.f.kind
                               : rc.f.kind + ":" + std::to_string(rc.f.index))
        + "\n\n";
    o += "[weight]\n";
    o += "beta = " + detail::g17(rc.beta) + "\n";
    o += "theta = " + detail::g17(rc.theta) + "\n\n";
    o += "[scheme]\n";
    o += "name = " + rc.scheme + "\n";
    o += "init = " + rc.init + "\n";
    o += "benchmark = " + rc.benchmark + "\n";
    o += "levels = " + std::to_string(rc.levels) + "\n";
    o += "steps = " + std::to_string(rc.steps) + "\n\n";
    o += "[regularity]\n";
    o += "sigma = " + detail::g17(rc.sigma) + "\n";
    o += "nu = " + detail::g17(rc.nu) + "\n";
    o += "rho = " + (rc.rho_auto ? "auto" : detail::g17(rc.rho)) + "\n";
    o += "ell_max = " + std::to_string(rc.ell_max) + "\n\n";
    o += "[run]\n";
    o += "suite = " + rc.suite + "\n";
    o += "out = " + rc.out + "\n";
    o += "seed = " + std::to_string(rc.seed) + "\n";
    return o;
}

inline std::uint64_t config_hash(const RunConfig& rc) {
    return fnv1a64(resolved_config(rc));
}

}  // namespace fracwave
