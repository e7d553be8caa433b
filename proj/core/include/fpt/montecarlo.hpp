#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fpt/brownian_fpt.hpp"
#include "fpt/fpt_transform.hpp"

namespace fpt {

struct SimConfig
{
    std::size_t paths = 5500;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    bool bridge_correction = true;
    /// Half-line paths at or below this level count as absorbed at 0.
    double floor_eps = 1e-6;
    /// Bridges stop this long before their pin; defaults to one dt.
    std::optional<double> pin_guard;
    /// Worker threads; results do not depend on this.
    unsigned workers = 1;

    void validate(double horizon) const;
};

enum class PathOutcome { hit, floor, survived };

std::string_view to_string(PathOutcome o) noexcept;

struct PathRecord
{
    PathOutcome outcome = PathOutcome::survived;
    /// Hitting time, absorption time, or the time the path was stopped.
    double time = 0.0;
    double final_state = 0.0;
};

struct SimResult
{
    std::vector<PathRecord> paths;  ///< indexed by path
    std::size_t n_hit = 0;
    /// Absorbed at the 0 floor or stopped at a bridge's pin guard.
    std::size_t n_absorbed_floor = 0;
    std::size_t n_survived_horizon = 0;
    std::uint64_t seed = 0;
    double dt = 0.0;
    double horizon = 0.0;

    std::size_t size() const noexcept { return paths.size(); }
    /// Hitting times of the paths that hit, ascending.
    std::vector<double> hit_times() const;
};

/// Euler-Maruyama paths of p against the boundary, each with its own RNG
/// stream derived from (seed, path index). A step crossing the boundary is a
/// hit at the linearly interpolated time; with bridge_correction a step that
/// stays on one side still hits with probability
/// exp(-2 (b0 - x0)(b1 - x1) / dt). Steps with |mu dt| > 1 are halved, up to
/// 20 times. Half-line paths reflect at 0.
SimResult simulate_paths(const ProcessSpec& p, const MovingBoundary& bnd, const SimConfig& cfg);

/// F(t) = #{hit times <= t} / n; a sub-distribution when some paths never hit.
class EmpiricalCdf
{
public:
    EmpiricalCdf(std::vector<double> sorted_hits, std::size_t n);
    double operator()(double t) const;
    std::span<const double> jumps() const noexcept { return hits_; }
    std::size_t sample_size() const noexcept { return n_; }

private:
    std::vector<double> hits_;
    std::size_t n_;
};

EmpiricalCdf empirical_cdf(const SimResult& r);

/// Sup distance between the empirical and theoretical sub-CDFs, taken on
/// both sides of each jump and at the simulated horizon.
double ks_distance(const SimResult& r, const FptDensity& theoretical);

/// Asymptotic one-sample KS critical value c(alpha) / sqrt(n) for
/// alpha = 0.01 (1.63) or 0.05 (1.36).
double ks_critical_value(double alpha, std::size_t n);

/// CSV rows path_index,outcome,time with a header.
void write_paths_csv(std::ostream& os, const SimResult& r);

}  // namespace fpt
