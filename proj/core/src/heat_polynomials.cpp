#include "fpt/heat_polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fpt/errors.hpp"

namespace fpt {

namespace {

constexpr double kSkipThreshold = 1e-8;

void check_degree(int n)
{
    detail::require(n >= 0, "heat polynomial degree must be nonnegative");
    detail::require(n <= kMaxHeatPolyDegree,
                    "heat polynomial degree exceeds " + std::to_string(kMaxHeatPolyDegree));
}

struct PolyValue
{
    double v;
    double dv;
};

// v_n and its x-derivative together; d_n = v_{n-1} + x d_{n-1} + (n-1) t d_{n-2}.
PolyValue poly_with_derivative(int n, double x, double t)
{
    double v_prev = 1.0;
    double d_prev = 0.0;
    if (n == 0)
        return {v_prev, d_prev};
    double v = x;
    double d = 1.0;
    for (int k = 2; k <= n; ++k) {
        const double v_next = x * v + (k - 1) * t * v_prev;
        const double d_next = v + x * d + (k - 1) * t * d_prev;
        v_prev = v;
        d_prev = d;
        v = v_next;
        d = d_next;
    }
    return {v, d};
}

double g0(double t, double x)
{
    return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

// |lhs - rhs| relative to the larger side, or to `floor` when both sides
// are small next to the magnitude of the terms that produced them.
double rel_violation(double lhs, double rhs, double floor = 0.0)
{
    const double scale = std::max({std::abs(lhs), std::abs(rhs), floor});
    if (scale == 0.0)
        return 0.0;
    return std::abs(lhs - rhs) / scale;
}

}  // namespace

double heat_poly_v(int n, double x, double t)
{
    check_degree(n);
    return poly_with_derivative(n, x, t).v;
}

double heat_poly_v_dx(int n, double x, double t)
{
    check_degree(n);
    return poly_with_derivative(n, x, t).dv;
}

double assoc_w(int n, double x, double t)
{
    check_degree(n);
    detail::require(t > 0.0, "assoc_w requires t > 0");
    return g0(t, x) * poly_with_derivative(n, x, -t).v * std::pow(0.5 * t, -n);
}

double assoc_w_dx(int n, double x, double t)
{
    check_degree(n);
    detail::require(t > 0.0, "assoc_w_dx requires t > 0");
    const PolyValue p = poly_with_derivative(n, x, -t);
    return g0(t, x) * std::pow(0.5 * t, -n) * (p.dv - x / t * p.v);
}

double PolyIdentityReport::max_violation() const noexcept
{
    return std::max({v_derivative, w_lowering, hj_chain, hi_chain});
}

PolyIdentityReport check_poly_identities(int n_max, std::span<const XtPoint> points)
{
    detail::require(n_max >= 1, "check_poly_identities: n_max must be >= 1");
    check_degree(n_max);
    for (const auto& p : points)
        detail::require(p.t > 0.0, "check_poly_identities: all points need t > 0");

    PolyIdentityReport report;
    for (const auto& p : points) {
        const double x = p.x;
        const double t = p.t;
        const double log_w0 = assoc_w_dx(0, x, t) / assoc_w(0, x, t);
        for (int n = 1; n <= n_max; ++n) {
            ++report.checked;

            const PolyValue v = poly_with_derivative(n, x, t);
            const PolyValue v_lower = poly_with_derivative(n - 1, x, t);
            const double v_scale = n * poly_with_derivative(n - 1, std::abs(x), t).v;
            report.v_derivative =
                std::max(report.v_derivative, rel_violation(v.dv, n * v_lower.v, v_scale));

            // v_k(|x|, t) bounds the rounding in v_k(x, -t).
            const PolyValue vm = poly_with_derivative(n, x, -t);
            const double vm_scale = poly_with_derivative(n, std::abs(x), t).v;
            const double w_scale = g0(t, x) * std::pow(0.5 * t, -n) * vm_scale;

            const double w_n = assoc_w(n, x, t);
            const double w_prev = assoc_w(n - 1, x, t);
            const double w_prev_dx = assoc_w_dx(n - 1, x, t);
            const double w_n_dx = assoc_w_dx(n, x, t);

            if (std::abs(vm.v) < kSkipThreshold * vm_scale
                || std::abs(w_prev_dx) < kSkipThreshold * 0.5 * w_scale
                || std::abs(w_n) < kSkipThreshold * w_scale) {
                ++report.skipped;
                continue;
            }

            report.w_lowering = std::max(report.w_lowering,
                                         rel_violation(w_prev_dx, -0.5 * w_n, 0.5 * w_scale));

            const double lhs = w_n_dx / w_n;
            const double hj_tail = (n / t) * (w_prev / w_prev_dx);
            const double hi_tail = vm.dv / vm.v;
            report.hj_chain = std::max(
                report.hj_chain,
                rel_violation(lhs, log_w0 - hj_tail, std::abs(log_w0) + std::abs(hj_tail)));
            report.hi_chain = std::max(
                report.hi_chain,
                rel_violation(lhs, log_w0 + hi_tail, std::abs(log_w0) + std::abs(hi_tail)));
        }
    }
    return report;
}

}  // namespace fpt
