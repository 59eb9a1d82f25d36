#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "randsum/basis.hpp"
#include "randsum/density.hpp"
#include "randsum/errors.hpp"
#include "randsum/montecarlo.hpp"
#include "randsum/quadrature.hpp"
#include "randsum/render.hpp"

namespace randsum {

// One experiment, fully specified.  The JSON document is the primary
// interface; CLI flags override individual fields afterwards.
struct RunConfig {
    BasisFamily family{Family::Power, 1};
    Window window;            // [-2,2]^2 unless configured
    RenderSpec render;        // 440x440; also the histogram binning
    QuadratureSpec quad;
    AxisBand band;
    std::int64_t trials = 0;  // 0 means "no sampling requested"
    std::uint64_t seed = 1;
    double real_tol = 1e-8;
    std::string output = "out";

    TrialConfig trial_config() const {
        TrialConfig tc;
        tc.family = family;
        tc.trials = trials;
        tc.seed = seed;
        tc.window = window;
        tc.nx = render.nx;
        tc.ny = render.ny;
        tc.real_tol = real_tol;
        return tc;
    }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const std::string& prefix) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw ParseError("config: unknown key \"" + prefix + item.key() + "\"");
    }
}

inline double get_number(const json& j, const char* key, const std::string& prefix) {
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ParseError("config: \"" + prefix + key + "\" must be a number");
    return v.get<double>();
}

inline std::int64_t get_integer(const json& j, const char* key,
                                const std::string& prefix) {
    const auto& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ParseError("config: \"" + prefix + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config: top level must be an object");
    detail::reject_unknown_keys(
        j, {"family", "n", "window", "grid", "seed", "trials", "output"}, "");

    if (!j.contains("family"))
        throw ParseError("config: missing key \"family\"");
    if (!j.at("family").is_string())
        throw ParseError("config: \"family\" must be a string");
    if (!j.contains("n")) throw ParseError("config: missing key \"n\"");

    RunConfig cfg;
    const auto n = detail::get_integer(j, "n", "");
    if (n < 0 || n > 1'000'000)
        throw ValidationError("config: \"n\" out of range");
    cfg.family = make_family(j.at("family").get<std::string>(),
                             static_cast<int>(n));

    if (j.contains("window")) {
        const json& w = j.at("window");
        if (!w.is_object())
            throw ParseError("config: \"window\" must be an object");
        detail::reject_unknown_keys(w, {"xmin", "xmax", "ymin", "ymax"},
                                    "window.");
        for (const char* k : {"xmin", "xmax", "ymin", "ymax"})
            if (!w.contains(k))
                throw ParseError(std::string("config: missing key \"window.") +
                                 k + "\"");
        cfg.window.xmin = detail::get_number(w, "xmin", "window.");
        cfg.window.xmax = detail::get_number(w, "xmax", "window.");
        cfg.window.ymin = detail::get_number(w, "ymin", "window.");
        cfg.window.ymax = detail::get_number(w, "ymax", "window.");
    }
    cfg.window.validate();

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (!g.is_object()) throw ParseError("config: \"grid\" must be an object");
        detail::reject_unknown_keys(g, {"nx", "ny"}, "grid.");
        if (g.contains("nx"))
            cfg.render.nx = static_cast<int>(detail::get_integer(g, "nx", "grid."));
        if (g.contains("ny"))
            cfg.render.ny = static_cast<int>(detail::get_integer(g, "ny", "grid."));
    }
    cfg.render.validate();

    if (j.contains("seed")) {
        const auto s = detail::get_integer(j, "seed", "");
        if (s < 0) throw ValidationError("config: \"seed\" must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (j.contains("trials")) {
        const auto t = detail::get_integer(j, "trials", "");
        if (t < 0) throw ValidationError("config: \"trials\" must be non-negative");
        cfg.trials = t;
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string())
            throw ParseError("config: \"output\" must be a string");
        cfg.output = j.at("output").get<std::string>();
    }
    return cfg;
}

}  // namespace randsum
