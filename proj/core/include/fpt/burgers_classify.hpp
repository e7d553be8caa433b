#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fpt/heat_polynomials.hpp"
#include "fpt/heat_solutions.hpp"

namespace fpt {

/// A drift mu(t, x) with its analytic x-derivative on a (t, x) rectangle.
struct DriftSpec
{
    std::function<double(double, double)> mu;
    std::function<double(double, double)> mu_x;
    double t_lo = 0.0;
    double t_hi = 1.0;
    double x_lo = -3.0;
    double x_hi = 3.0;
    std::string description;

    bool contains(double t, double x) const noexcept;
    /// Throws unless mu is finite on a 20x20 probe grid of the rectangle.
    void validate() const;
};

/// DriftSpec for h_x / h on the standard residual grid's rectangle.
DriftSpec drift_of(const HeatSolution& h);

/// DriftSpec for the sum of the components' log-derivatives; the rectangle
/// is the intersection of the components' standard rectangles.
DriftSpec drift_of_sum(std::span<const HeatSolution> parts);

/// 20x20 cell-centre grid of the drift's rectangle.
std::vector<SpaceTimePoint> drift_grid(const DriftSpec& d);

/// max |mu_t + mu_xx / 2 + mu mu_x| / (1 + mu^2) over the grid; mu_t and mu_xx
/// by central differences (step 1e-5), the latter on the analytic mu_x.
double burgers_residual(const DriftSpec& d, std::span<const SpaceTimePoint> grid);

struct BesselClassification
{
    int order = 0;
    int class_index = 0;
    /// class_index copies of h = x; empty for the driftless order 1.
    std::vector<HeatSolution> components;
    /// True for order 1, which sits outside the n >= 1 classes.
    bool degenerate = false;
};

/// Bessel process of odd order m = 2n + 1 has drift n / x = n * (k_x / k) with
/// k = x, so it is placed in class n. Even or nonpositive orders are rejected.
BesselClassification classify_bessel_order(int m);

/// max over the grid of |target_x / target - sum_j part_x / part|.
double verify_decomposition(const HeatSolution& target, std::span<const HeatSolution> parts,
                            std::span<const SpaceTimePoint> grid);

/// The (hj)/(hi) chain of the associated functions up to degree n.
struct DriftRecursionReport
{
    double hj_chain = 0.0;
    double hi_chain = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;

    double max_violation() const noexcept { return hj_chain > hi_chain ? hj_chain : hi_chain; }
};

DriftRecursionReport wn_drift_recursion_check(int n, std::span<const XtPoint> points);

}  // namespace fpt
