#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpt/brownian_fpt.hpp"
#include "fpt/heat_solutions.hpp"

namespace fpt {

/// dX = mu(t, X) dt + dB with mu the sum of the components' h_x / h.
/// The number of components is the process's class index.
struct ProcessSpec
{
    std::string name;
    double start = 0.0;
    std::vector<HeatSolution> components;
    double horizon = std::numeric_limits<double>::infinity();
    std::optional<double> absorbing_floor;

    std::size_t class_index() const noexcept { return components.size(); }
    double drift(double t, double x) const;
    /// Earliest pin time among the components, if any.
    std::optional<double> pin_time() const noexcept;
    bool half_line() const noexcept;
    void validate() const;
};

/// Process whose drift is the single component h.
ProcessSpec make_process(std::string name, const HeatSolution& h, double start,
                         double horizon = std::numeric_limits<double>::infinity());

enum class DensityMethod { closed_form, volterra, series };

std::string_view to_string(DensityMethod m) noexcept;

struct DensityMeta
{
    std::string process;
    std::string boundary;
    DensityMethod method = DensityMethod::closed_form;
};

/// A (generally defective) first-passage density on [0, support_end).
/// Values below u = 1e-10 are taken as 0; defect = 1 - total mass, computed
/// once at construction.
class FptDensity
{
public:
    static constexpr double kFloor = 1e-10;

    FptDensity(std::function<double(double)> eval, double support_end, DensityMeta meta);

    double operator()(double u) const;
    double support_end() const noexcept { return support_end_; }
    double defect() const noexcept { return defect_; }
    double mass() const noexcept { return 1.0 - defect_; }
    const DensityMeta& meta() const noexcept { return meta_; }

private:
    std::function<double(double)> eval_;
    double support_end_;
    double defect_ = 0.0;
    DensityMeta meta_;
};

struct TransformOptions
{
    /// Volterra grid for non-affine boundaries, uniform over the support.
    std::size_t volterra_steps = 2000;
};

/// Hitting-time density of the h-process for a boundary it can reach from an
/// unbounded pre-absorption space:
///   q(u) = h(u, b(u)) / h(0, y) * p_B(u)
/// with p_B the Brownian first-passage density (closed form for affine
/// boundaries, Volterra otherwise). Pinned h cap the support at s - 1e-9.
FptDensity unbounded_fpt_density(const HeatSolution& h, double y, const MovingBoundary& bnd,
                                 const TransformOptions& opts = {});

/// Hitting-time density of level a from below, 0 < y < a, for an h-process
/// confined to (0, a) before absorption:
///   q(u) = h(u, a) / h(0, y) * [P_y(T ^ T_0 in du) - P_y(T_0 in du, T_0 < T)]
/// where the bracket is the density of reaching a before 0.
FptDensity bounded_fpt_density(const HeatSolution& h, double y, double a, double horizon,
                               const SeriesParams& sp = {});

/// integral_0^t d, adaptive Simpson to absolute tolerance 1e-8.
double cdf(const FptDensity& d, double t);

/// cdf at each of the sorted times, integrating piecewise between them.
std::vector<double> cdf_sorted(const FptDensity& d, std::span<const double> sorted_times);

}  // namespace fpt
