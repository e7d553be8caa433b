#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpt {

/// b(t) = a + integral_0^t f'(u) du, the level a plus the running integral of
/// its slope f'. Affine boundaries carry their slope exactly; general slopes
/// get a cumulative integral tabulated once at construction.
class MovingBoundary
{
public:
    using Fn = std::function<double(double)>;
    static constexpr double unbounded = std::numeric_limits<double>::infinity();

    static MovingBoundary constant(double a, double horizon = unbounded);
    static MovingBoundary affine(double a, double slope, double horizon = unbounded);

    /// Slope only; the cumulative integral comes from adaptive Simpson
    /// (tolerance 1e-10) on a 4096-knot grid with cubic Hermite interpolation.
    /// Requires a finite horizon.
    static MovingBoundary from_slope(double a, Fn slope, double horizon, std::string label = "");

    /// Slope together with its analytic running integral.
    static MovingBoundary from_functions(double a, Fn slope, Fn cumulative, double horizon,
                                         std::string label = "");

    double level() const noexcept { return a_; }
    double horizon() const noexcept { return horizon_; }
    double slope(double t) const;
    double cumulative(double t) const;
    double value(double t) const { return a_ + cumulative(t); }

    /// The constant slope when the boundary is affine.
    std::optional<double> affine_slope() const noexcept { return affine_slope_; }
    const std::string& describe() const noexcept { return label_; }

private:
    MovingBoundary() = default;
    void validate() const;

    double a_ = 0.0;
    double horizon_ = unbounded;
    std::optional<double> affine_slope_;
    Fn slope_;
    Fn cumulative_;
    std::string label_;
};

/// Truncation of the method-of-images series.
struct SeriesParams
{
    double tol = 1e-12;
    int max_terms = 200;

    void validate() const;
};

/// Density of the first time Brownian motion from y > 0 hits 0.
double constant_barrier_density(double y, double t);

/// Density of the first time Brownian motion from y hits the line a + c t
/// (Bachelier-Levy). Defective when the line drifts away from the path.
double affine_boundary_density(double y, double a, double c, double t);

/// Density of the exit time from (0, a) for Brownian motion started at y,
/// summed over both exits: the bilateral image series truncated symmetrically.
double two_sided_first_exit_density(double y, double a, double t, const SeriesParams& sp = {});

/// Density of reaching 0 at t without having touched a (the (2na + y) images).
double lower_before_upper_density(double y, double a, double t, const SeriesParams& sp = {});

/// Density at time s of reaching a without having touched 0, for Brownian
/// motion at y at time t (the (2na + a - y) images in s - t).
double upper_before_lower_density(double t, double y, double s, double a,
                                  const SeriesParams& sp = {});

/// P_y(T_a < t, T_0 > t) for Brownian motion in (0, a), obtained as the
/// integral over [0, t] of the two-sided exit density minus the T_0 density.
double hit_upper_survive_lower_probability(double y, double a, double t,
                                           const SeriesParams& sp = {});

/// First-passage density of Brownian motion from y through a C^2 moving
/// boundary, sampled on `grid`, from the second-kind Volterra equation
///   p(t) = -2 Psi(t, 0, y) + 2 int_0^t p(tau) Psi(t, tau, b(tau)) dtau
/// (signs flipped when y starts above the boundary), trapezoid rule with the
/// diagonal kernel set to 0. The density at t = 0 is 0.
std::vector<double> volterra_fpt_density(const MovingBoundary& bnd, double y,
                                         std::span<const double> grid);

/// Uniform grid {horizon * k / steps : k = 1..steps}.
std::vector<double> uniform_time_grid(double horizon, std::size_t steps);

}  // namespace fpt
