#include "smlab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "smlab/errors.hpp"

namespace smlab::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double number(const json& obj, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("'") + key + "' must be a number");
    }
    return v.get<double>();
}

template <class Int>
Int integer(const json& obj, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ConfigError(std::string("'") + key + "' must be an integer");
    }
    return v.get<Int>();
}

std::string text(const json& obj, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError(std::string("'") + key + "' must be a string");
    }
    return v.get<std::string>();
}

void parse_demand(const json& d, const std::filesystem::path& base_dir, RunConfig& cfg) {
    if (!d.is_object()) {
        throw ConfigError("'demand' must be an object");
    }
    reject_unknown(d, {"family", "c", "m", "epsilon", "file"}, "demand");
    if (d.contains("family")) {
        cfg.family = text(d, "family");
    }
    if (d.contains("c")) {
        cfg.c = number(d, "c");
    }
    if (d.contains("m")) {
        cfg.m = number(d, "m");
    }
    if (d.contains("epsilon")) {
        cfg.epsilon = number(d, "epsilon");
    }
    if (d.contains("file")) {
        std::filesystem::path p = text(d, "file");
        cfg.curve_file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
}

}  // namespace

void RunConfig::validate() const {
    if (family != "linear" && family != "q_epsilon" && family != "q_zero" && family != "custom") {
        throw ConfigError("unknown demand family '" + family + "' (linear, q_epsilon, q_zero, custom)");
    }
    if (family == "linear" && !(c > 0.0 && m > 0.0)) {
        throw ConfigError("linear demand needs c > 0 and m > 0");
    }
    if (family == "q_epsilon" && !(epsilon >= 0.0)) {
        throw ConfigError("epsilon must be >= 0");
    }
    if (family == "custom" && curve_file.empty()) {
        throw ConfigError("custom demand needs a curve file");
    }
    if (!(supply > 0.0) || !std::isfinite(supply)) {
        throw ConfigError("supply must be a positive number");
    }
    if (delta && grid) {
        throw ConfigError("give either a scalar delta or a delta grid, not both");
    }
    if (delta && !(*delta >= 0.0 && *delta <= 1.0)) {
        throw ConfigError("delta must lie in [0, 1]");
    }
    if (grid) {
        if (grid->count < 1) {
            throw ConfigError("delta grid needs at least one point");
        }
        for (double d : {grid->start, grid->stop}) {
            if (!(d >= 0.0 && d <= 1.0)) {
                throw ConfigError("delta grid endpoints must lie in [0, 1]");
            }
        }
    }
    if (steps < 1) {
        throw ConfigError("steps must be >= 1");
    }
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
        throw ConfigError("burn_in_fraction must lie in [0, 1)");
    }
    if (!(tie_tol > 0.0)) {
        throw ConfigError("tie tolerance must be positive");
    }
}

DemandCurve RunConfig::curve() const {
    try {
        if (family == "linear") {
            return make_linear(c, m);
        }
        if (family == "q_epsilon") {
            return make_q_epsilon(epsilon);
        }
        if (family == "q_zero") {
            return make_q_epsilon(0.0);
        }
        return load_curve(curve_file);
    } catch (const ParseError& e) {
        throw ConfigError(curve_file.string() + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown(doc, {"demand", "s", "delta", "steps", "seed", "burn_in_fraction", "tie_tol", "output"},
                   "config");
    RunConfig cfg;
    try {
        if (doc.contains("demand")) {
            parse_demand(doc.at("demand"), base_dir, cfg);
        }
        if (doc.contains("s")) {
            cfg.supply = number(doc, "s");
        }
        if (doc.contains("delta")) {
            const auto& d = doc.at("delta");
            if (d.is_number()) {
                cfg.delta = d.get<double>();
            } else if (d.is_object()) {
                reject_unknown(d, {"start", "stop", "count"}, "delta");
                cfg.grid = DeltaGrid{number(d, "start"), number(d, "stop"), integer<int>(d, "count")};
            } else {
                throw ConfigError("'delta' must be a number or {start, stop, count}");
            }
        }
        if (doc.contains("steps")) {
            cfg.steps = integer<int>(doc, "steps");
        }
        if (doc.contains("seed")) {
            cfg.seed = integer<std::uint64_t>(doc, "seed");
        }
        if (doc.contains("burn_in_fraction")) {
            cfg.burn_in_fraction = number(doc, "burn_in_fraction");
        }
        if (doc.contains("tie_tol")) {
            cfg.tie_tol = number(doc, "tie_tol");
        }
        if (doc.contains("output")) {
            const auto& o = doc.at("output");
            if (!o.is_object()) {
                throw ConfigError("'output' must be an object");
            }
            reject_unknown(o, {"path", "format"}, "output");
            if (o.contains("path")) {
                cfg.out = text(o, "path");
            }
            if (o.contains("format")) {
                cfg.format = parse_format(text(o, "format"));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

DeltaGrid parse_delta_grid(const std::string& arg) {
    std::istringstream in(arg);
    DeltaGrid g;
    char c1 = 0;
    char c2 = 0;
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
        throw ConfigError("delta grid must look like START:STOP:COUNT, got '" + arg + "'");
    }
    return g;
}

Format parse_format(const std::string& name) {
    if (name == "csv") {
        return Format::Csv;
    }
    if (name == "json") {
        return Format::Json;
    }
    throw ConfigError("format must be csv or json, got '" + name + "'");
}

void apply_environment(RunConfig& config) {
    const char* raw = std::getenv("SMLAB_TIE_TOL");
    if (raw == nullptr || *raw == '\0') {
        return;
    }
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0') {
        throw ConfigError(std::string("SMLAB_TIE_TOL is not a number: ") + raw);
    }
    config.tie_tol = v;
}

}  // namespace smlab::cli
