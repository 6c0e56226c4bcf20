// config.hpp — run configuration: strict line-oriented key=value parsing.
// Unknown keys are rejected outright; a silently ignored typo in a physics
// parameter is the worst failure mode a tool like this can have.

#pragma once

#include "qzeno/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace qzeno::cli {

enum class ModelKind { two_mode, flat_band, custom };
enum class ScenarioKind { free_decay, entangle_once, zeno };

struct ModelConfig {
    ModelKind kind{ModelKind::two_mode};
    double omega0{};
    double g{};
    Index n_modes{};     // flat_band K
    double bandwidth{};  // flat_band W
    std::string path;    // custom model file
};

struct ScenarioConfig {
    ScenarioKind kind{ScenarioKind::free_decay};
    double t_max{};    // free_decay / entangle_once output grid extent
    double dt_out{};   // output grid step
    double t1{};       // entangle_once event time
    int n_events{};    // zeno N
    double delta_t{};  // zeno inter-event interval
    std::string zeno_mode;  // "incoherent" | "filtered"
};

struct RunConfig {
    ModelConfig model;
    ScenarioConfig scenario;
    std::string out_prefix = "qzeno";
};

// ------------------------------ raw key=value --------------------------------

namespace detail {

struct RawSection {
    std::map<std::string, std::string> values;

    const std::string& require(const std::string& section, const std::string& key) const {
        const auto it = values.find(key);
        if (it == values.end())
            throw std::invalid_argument("config: missing required key '" + key + "' in [" +
                                        section + "]");
        return it->second;
    }

    std::optional<std::string> take(const std::string& key) {
        const auto it = values.find(key);
        if (it == values.end()) return std::nullopt;
        std::string v = it->second;
        values.erase(it);
        return v;
    }
};

inline double to_number(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    double v{};
    in >> v;
    if (in.fail() || !(in >> std::ws).eof())
        throw std::invalid_argument("config: key '" + key + "': cannot parse number '" + text + "'");
    if (!std::isfinite(v))
        throw std::invalid_argument("config: key '" + key + "': non-finite value");
    return v;
}

inline std::int64_t to_count(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::int64_t v{};
    in >> v;
    if (in.fail() || !(in >> std::ws).eof())
        throw std::invalid_argument("config: key '" + key + "': cannot parse integer '" + text + "'");
    return v;
}

inline void reject_leftovers(const RawSection& s, const std::string& section) {
    if (!s.values.empty())
        throw std::invalid_argument("config: unknown key '" + s.values.begin()->first + "' in [" +
                                    section + "]");
}

} // namespace detail

// -------------------------------- parsing -----------------------------------

inline RunConfig parse_config(const std::string& text) {
    std::map<std::string, detail::RawSection> sections;
    std::string current;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = qzeno::detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": malformed section header");
            current = qzeno::detail::trim(line.substr(1, line.size() - 2));
            if (current != "model" && current != "scenario" && current != "output")
                throw std::invalid_argument("config: unknown section [" + current + "]");
            sections[current];  // sections may be empty but must be known
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        if (current.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": key outside any section");
        const std::string key = qzeno::detail::trim(line.substr(0, eq));
        const std::string value = qzeno::detail::trim(line.substr(eq + 1));
        auto [it, inserted] = sections[current].values.emplace(key, value);
        if (!inserted)
            throw std::invalid_argument("config: duplicate key '" + key + "' in [" + current + "]");
    }

    RunConfig cfg;

    // [model]
    auto model_it = sections.find("model");
    if (model_it == sections.end())
        throw std::invalid_argument("config: missing [model] section");
    detail::RawSection& model = model_it->second;
    const std::string model_type = model.require("model", "type");
    model.take("type");
    if (model_type == "two_mode") {
        cfg.model.kind = ModelKind::two_mode;
        cfg.model.omega0 = detail::to_number(model.require("model", "omega0"), "omega0");
        cfg.model.g = detail::to_number(model.require("model", "g"), "g");
        model.take("omega0");
        model.take("g");
    } else if (model_type == "flat_band") {
        cfg.model.kind = ModelKind::flat_band;
        cfg.model.omega0 = detail::to_number(model.require("model", "omega0"), "omega0");
        cfg.model.g = detail::to_number(model.require("model", "g"), "g");
        cfg.model.n_modes = static_cast<Index>(detail::to_count(model.require("model", "K"), "K"));
        cfg.model.bandwidth = detail::to_number(model.require("model", "W"), "W");
        model.take("omega0");
        model.take("g");
        model.take("K");
        model.take("W");
    } else if (model_type == "custom") {
        cfg.model.kind = ModelKind::custom;
        cfg.model.path = model.require("model", "path");
        model.take("path");
    } else {
        throw std::invalid_argument("config: unknown model type '" + model_type + "'");
    }
    detail::reject_leftovers(model, "model");

    // [scenario]
    auto scen_it = sections.find("scenario");
    if (scen_it == sections.end())
        throw std::invalid_argument("config: missing [scenario] section");
    detail::RawSection& scen = scen_it->second;
    const std::string scen_type = scen.require("scenario", "type");
    scen.take("type");
    if (scen_type == "free_decay" || scen_type == "entangle_once") {
        cfg.scenario.kind = scen_type == "free_decay" ? ScenarioKind::free_decay
                                                      : ScenarioKind::entangle_once;
        cfg.scenario.t_max = detail::to_number(scen.require("scenario", "t_max"), "t_max");
        cfg.scenario.dt_out = detail::to_number(scen.require("scenario", "dt_out"), "dt_out");
        scen.take("t_max");
        scen.take("dt_out");
        if (cfg.scenario.t_max <= 0 || cfg.scenario.dt_out <= 0)
            throw std::invalid_argument("config: t_max and dt_out must be positive");
        if (cfg.scenario.kind == ScenarioKind::entangle_once) {
            cfg.scenario.t1 = detail::to_number(scen.require("scenario", "t1"), "t1");
            scen.take("t1");
            if (cfg.scenario.t1 < 0)
                throw std::invalid_argument("config: t1 must be non-negative");
        }
    } else if (scen_type == "zeno") {
        cfg.scenario.kind = ScenarioKind::zeno;
        const auto n = detail::to_count(scen.require("scenario", "n_events"), "n_events");
        if (n < 1 || n > 1'000'000'000)
            throw std::invalid_argument("config: n_events out of range");
        cfg.scenario.n_events = static_cast<int>(n);
        cfg.scenario.delta_t = detail::to_number(scen.require("scenario", "delta_t"), "delta_t");
        if (cfg.scenario.delta_t <= 0)
            throw std::invalid_argument("config: delta_t must be positive");
        cfg.scenario.zeno_mode = scen.require("scenario", "mode");
        if (cfg.scenario.zeno_mode != "incoherent" && cfg.scenario.zeno_mode != "filtered")
            throw std::invalid_argument("config: mode must be 'incoherent' or 'filtered'");
        scen.take("n_events");
        scen.take("delta_t");
        scen.take("mode");
    } else {
        throw std::invalid_argument("config: unknown scenario type '" + scen_type + "'");
    }
    detail::reject_leftovers(scen, "scenario");

    // [output] (optional)
    if (auto out_it = sections.find("output"); out_it != sections.end()) {
        if (auto prefix = out_it->second.take("prefix")) cfg.out_prefix = *prefix;
        detail::reject_leftovers(out_it->second, "output");
    }

    return cfg;
}

// Read a config file; a custom model path is resolved relative to the config
// file's directory and must exist.
inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config(buf.str());
    if (cfg.model.kind == ModelKind::custom) {
        std::filesystem::path model_path(cfg.model.path);
        if (model_path.is_relative()) model_path = path.parent_path() / model_path;
        if (!std::filesystem::exists(model_path))
            throw std::invalid_argument("config: model file '" + model_path.string() +
                                        "' does not exist");
        cfg.model.path = model_path.string();
    }
    return cfg;
}

// Instantiate the spectral model a config describes.
inline SpectralModel<double> build_model(const ModelConfig& m) {
    switch (m.kind) {
        case ModelKind::two_mode:
            return build_two_mode(m.omega0, m.g);
        case ModelKind::flat_band:
            return build_flat_band(m.omega0, m.g, m.n_modes, m.bandwidth);
        case ModelKind::custom: {
            std::ifstream in(m.path);
            if (!in)
                throw std::invalid_argument("config: cannot open model file '" + m.path + "'");
            return load_custom<double>(in);
        }
    }
    throw std::invalid_argument("config: unreachable model kind");
}

} // namespace qzeno::cli
