#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "fpt/brownian_fpt.hpp"
#include "fpt/fpt_transform.hpp"
#include "fpt/heat_solutions.hpp"
#include "fpt/montecarlo.hpp"

namespace fpt::cli {

/// Everything a density/simulate/compare run needs.
struct ExperimentConfig
{
    std::string process = "constant";
    std::optional<double> c;
    std::optional<double> lambda;
    std::optional<double> s;
    double y = 0.0;
    double barrier = 1.0;
    double slope = 0.0;
    bool bounded = false;
    double horizon = 1.0;
    std::size_t grid_points = 100;
    std::size_t paths = 5500;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool bridge_correction = true;
    std::string output;

    /// Builds every downstream object once to re-check its invariants.
    void validate() const;

    HeatSolution heat() const;
    ProcessSpec process_spec() const;
    MovingBoundary boundary() const;
    FptDensity density() const;
    SimConfig sim_config() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// example1, example3, example8.
ExperimentConfig fixture(std::string_view name);

/// key=value lines, '#' starts a comment, unknown keys are errors.
ExperimentConfig parse_config(std::istream& is);
/// Same format, applied on top of an existing config.
void merge_config(std::istream& is, ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& os, const ExperimentConfig& cfg);

/// Applies one key=value assignment; used by the parser and by flags.
void assign(ExperimentConfig& cfg, std::string_view key, std::string_view value);

}  // namespace fpt::cli
