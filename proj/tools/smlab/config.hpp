#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "smlab/demand.hpp"

namespace smlab::cli {

/// Bad flags, bad config file, or a value out of range. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DeltaGrid {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
};

enum class Format { Csv, Json };

/// Everything a subcommand needs. Built from an optional JSON file, then
/// overridden by flags.
struct RunConfig {
    std::string family = "linear";  // linear | q_epsilon | q_zero | custom
    double c = 1.0;
    double m = 1.0;
    double epsilon = 0.0;
    std::filesystem::path curve_file;  // custom only

    double supply = 1.0;
    std::optional<double> delta;
    std::optional<DeltaGrid> grid;
    int steps = 100;
    std::uint64_t seed = 1;
    double burn_in_fraction = 0.5;
    double tie_tol = kTolerance;

    std::filesystem::path out;  // empty: stdout
    Format format = Format::Csv;
    std::optional<std::filesystem::path> plot;

    /// Range checks shared by all subcommands; throws ConfigError.
    void validate() const;

    DemandCurve curve() const;
};

/// Parses the config document. Relative curve file paths are resolved
/// against `base_dir`. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// "A:B:N", e.g. "0:1:101".
DeltaGrid parse_delta_grid(const std::string& text);

Format parse_format(const std::string& text);

/// Applies SMLAB_TIE_TOL when set.
void apply_environment(RunConfig& config);

}  // namespace smlab::cli
