#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fpt {

/// Closed-form positive solutions of the backward heat equation -h_t = h_xx / 2.
enum class HeatKind {
    constant,              ///< h = c
    exponential,           ///< h = exp(lambda x - lambda^2 t / 2)
    gaussian_kernel,       ///< h = (2 pi (s-t))^{-1/2} exp(-x^2 / (2 (s-t)))
    linear_x,              ///< h = x on x > 0
    bessel_bridge_kernel,  ///< h = x (2 pi (s-t)^3)^{-1/2} exp(-x^2 / (2 (s-t))) on x > 0
};

enum class SpatialDomain { whole_line, positive_half_line };

struct SpaceTimePoint
{
    double t;
    double x;
};

/// Immutable evaluator for one catalog member h(t, x).
///
/// Pinned kinds (gaussian_kernel, bessel_bridge_kernel) are only defined for
/// t < s; evaluating at or past the pin throws PreconditionError. Half-line
/// kinds reject x < 0 and vanish at x = 0.
class HeatSolution
{
public:
    HeatKind kind() const noexcept { return kind_; }
    SpatialDomain domain() const noexcept;
    std::optional<double> pin_time() const noexcept;
    std::string_view catalog_name() const noexcept;
    std::string describe() const;

    /// True when (t, x) is in the open domain where h > 0.
    bool contains(double t, double x) const noexcept;

    double value(double t, double x) const;
    double log_value(double t, double x) const;
    double dx(double t, double x) const;
    double dxx(double t, double x) const;
    double dt(double t, double x) const;

    /// h_x / h in closed form; throws outside the open domain.
    double log_derivative(double t, double x) const;
    /// d/dx of h_x / h in closed form.
    double log_derivative_dx(double t, double x) const;

private:
    friend HeatSolution make_catalog_solution(HeatKind, std::span<const double>);
    HeatSolution(HeatKind kind, double c, double lambda, double s)
        : kind_(kind), c_(c), lambda_(lambda), s_(s)
    {
    }
    void check_time(double t) const;
    void check_space(double x) const;
    double remaining(double t) const { return s_ - t; }

    HeatKind kind_;
    double c_;
    double lambda_;
    double s_;
};

/// Parameters per kind: constant {c}, exponential {lambda}, gaussian_kernel {s},
/// linear_x {}, bessel_bridge_kernel {s}.
HeatSolution make_catalog_solution(HeatKind kind, std::span<const double> params);
HeatSolution make_catalog_solution(HeatKind kind, std::initializer_list<double> params);

/// Named parameters for the external catalog names.
struct CatalogParams
{
    std::optional<double> c;
    std::optional<double> lambda;
    std::optional<double> s;
};

/// Catalog names: "constant", "bm_drift", "brownian_bridge", "bessel3", "bessel_bridge".
HeatKind kind_from_name(std::string_view name);
std::string_view catalog_name(HeatKind kind) noexcept;
HeatSolution make_named_solution(std::string_view name, const CatalogParams& params);

/// nt x nx grid of cell centres in [t0, t1] x [x0, x1].
std::vector<SpaceTimePoint> probe_grid(double t0, double t1, double x0, double x1,
                                       std::size_t nt = 20, std::size_t nx = 20);

/// The 20x20 probe grid used for residual checks: t in [0, 1] (or [0, s/2]
/// for pinned kinds), x in [-3, 3] (or [0.5, 3] on the half-line).
std::vector<SpaceTimePoint> standard_grid(const HeatSolution& h);

/// max |h_t + h_xx / 2| / (1 + |h|) over the grid, h_xx by a central
/// difference of the analytic h_x with step 1e-5.
double heat_residual(const HeatSolution& h, std::span<const SpaceTimePoint> grid);

/// mu(t, x) = h_x / h. The returned function owns a copy of h.
std::function<double(double, double)> log_derivative_drift(const HeatSolution& h);

}  // namespace fpt
