#include "fpt/burgers_classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpt/errors.hpp"

namespace fpt {

namespace {

constexpr double kStep = 1e-5;

struct Rect
{
    double t_lo, t_hi, x_lo, x_hi;
};

Rect standard_rect(const HeatSolution& h)
{
    const double t_hi = h.pin_time() ? 0.5 * *h.pin_time() : 1.0;
    if (h.domain() == SpatialDomain::positive_half_line)
        return {0.0, t_hi, 0.5, 3.0};
    return {0.0, t_hi, -3.0, 3.0};
}

}  // namespace

bool DriftSpec::contains(double t, double x) const noexcept
{
    return t >= t_lo && t <= t_hi && x >= x_lo && x <= x_hi;
}

void DriftSpec::validate() const
{
    detail::require(static_cast<bool>(mu) && static_cast<bool>(mu_x),
                    "DriftSpec needs mu and its x-derivative");
    detail::require(t_hi > t_lo && x_hi > x_lo, "DriftSpec: empty rectangle");
    for (const auto& p : probe_grid(t_lo, t_hi, x_lo, x_hi)) {
        if (!std::isfinite(mu(p.t, p.x))) {
            std::ostringstream os;
            os << description << ": drift not finite at (t=" << p.t << ", x=" << p.x << ")";
            throw PreconditionError(os.str());
        }
    }
}

DriftSpec drift_of(const HeatSolution& h)
{
    const Rect r = standard_rect(h);
    DriftSpec d{[h](double t, double x) { return h.log_derivative(t, x); },
                [h](double t, double x) { return h.log_derivative_dx(t, x); },
                r.t_lo,
                r.t_hi,
                r.x_lo,
                r.x_hi,
                "drift of " + h.describe()};
    d.validate();
    return d;
}

DriftSpec drift_of_sum(std::span<const HeatSolution> parts)
{
    detail::require(!parts.empty(), "drift_of_sum: no components");
    std::vector<HeatSolution> owned(parts.begin(), parts.end());
    Rect r = standard_rect(owned.front());
    std::string label = "sum of";
    for (const auto& h : owned) {
        const Rect q = standard_rect(h);
        r = {std::max(r.t_lo, q.t_lo), std::min(r.t_hi, q.t_hi), std::max(r.x_lo, q.x_lo),
             std::min(r.x_hi, q.x_hi)};
        label += " " + h.describe();
    }
    DriftSpec d{[owned](double t, double x) {
                    double mu = 0.0;
                    for (const auto& h : owned)
                        mu += h.log_derivative(t, x);
                    return mu;
                },
                [owned](double t, double x) {
                    double mu_x = 0.0;
                    for (const auto& h : owned)
                        mu_x += h.log_derivative_dx(t, x);
                    return mu_x;
                },
                r.t_lo,
                r.t_hi,
                r.x_lo,
                r.x_hi,
                label};
    d.validate();
    return d;
}

std::vector<SpaceTimePoint> drift_grid(const DriftSpec& d)
{
    return probe_grid(d.t_lo, d.t_hi, d.x_lo, d.x_hi);
}

double burgers_residual(const DriftSpec& d, std::span<const SpaceTimePoint> grid)
{
    detail::require(static_cast<bool>(d.mu) && static_cast<bool>(d.mu_x),
                    "burgers_residual: drift incomplete");
    detail::require(!grid.empty(), "burgers_residual: empty grid");
    double worst = 0.0;
    for (const auto& p : grid) {
        if (!d.contains(p.t, p.x)) {
            std::ostringstream os;
            os << "burgers_residual: probe (t=" << p.t << ", x=" << p.x << ") outside "
               << d.description;
            throw PreconditionError(os.str());
        }
        const double mu = d.mu(p.t, p.x);
        const double mu_x = d.mu_x(p.t, p.x);
        const double mu_t = (d.mu(p.t + kStep, p.x) - d.mu(p.t - kStep, p.x)) / (2.0 * kStep);
        const double mu_xx = (d.mu_x(p.t, p.x + kStep) - d.mu_x(p.t, p.x - kStep)) / (2.0 * kStep);
        worst = std::max(worst, std::abs(mu_t + 0.5 * mu_xx + mu * mu_x) / (1.0 + mu * mu));
    }
    return worst;
}

BesselClassification classify_bessel_order(int m)
{
    detail::require(m >= 1, "classify_bessel_order: order must be >= 1");
    if (m % 2 == 0)
        throw PreconditionError("classify_bessel_order: even order " + std::to_string(m)
                                + " has no decomposition into h = x drifts");
    BesselClassification c;
    c.order = m;
    c.class_index = (m - 1) / 2;
    c.degenerate = c.class_index == 0;
    const HeatSolution k = make_catalog_solution(HeatKind::linear_x, std::span<const double>{});
    c.components.assign(static_cast<std::size_t>(c.class_index), k);
    return c;
}

double verify_decomposition(const HeatSolution& target, std::span<const HeatSolution> parts,
                            std::span<const SpaceTimePoint> grid)
{
    detail::require(!grid.empty(), "verify_decomposition: empty grid");
    double worst = 0.0;
    for (const auto& p : grid) {
        double sum = 0.0;
        for (const auto& h : parts)
            sum += h.log_derivative(p.t, p.x);
        worst = std::max(worst, std::abs(target.log_derivative(p.t, p.x) - sum));
    }
    return worst;
}

DriftRecursionReport wn_drift_recursion_check(int n, std::span<const XtPoint> points)
{
    detail::require(n >= 1, "wn_drift_recursion_check: n must be >= 1");
    const PolyIdentityReport full = check_poly_identities(n, points);
    return {full.hj_chain, full.hi_chain, full.checked, full.skipped};
}

}  // namespace fpt
