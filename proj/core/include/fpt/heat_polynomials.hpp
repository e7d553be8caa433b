#pragma once

#include <cstddef>
#include <span>

namespace fpt {

/// Highest supported degree; factorial-scale coefficients overflow beyond it.
inline constexpr int kMaxHeatPolyDegree = 64;

/// Point in the (x, t) order used by the heat-polynomial literature.
struct XtPoint
{
    double x;
    double t;
};

/// Heat polynomial v_n(x, t): coefficient of z^n / n! in exp(x z + z^2 t / 2).
/// Computed by v_0 = 1, v_1 = x, v_n = x v_{n-1} + (n-1) t v_{n-2}.
/// Solves the forward equation v_t = v_xx / 2.
double heat_poly_v(int n, double x, double t);

/// d/dx v_n(x, t) by differentiating the three-term recurrence.
double heat_poly_v_dx(int n, double x, double t);

/// Associated function w_n(x, t) = g0(t, x) v_n(x, -t) (t/2)^{-n} with
/// g0(t, x) = (2 pi t)^{-1/2} exp(-x^2 / (2t)). Requires t > 0.
double assoc_w(int n, double x, double t);

/// d/dx w_n(x, t), analytic (product rule on g0 and the recurrence derivative).
double assoc_w_dx(int n, double x, double t);

/// Maximum relative violations found by check_poly_identities.
struct PolyIdentityReport
{
    double v_derivative = 0.0;  ///< v'_n = n v_{n-1}
    double w_lowering = 0.0;    ///< w'_{n-1} = -w_n / 2
    double hj_chain = 0.0;      ///< w'_n/w_n = w'_0/w_0 - (n/t) w_{n-1}/w'_{n-1}
    double hi_chain = 0.0;      ///< w'_n/w_n = w'_0/w_0 + v'_n(x,-t)/v_n(x,-t)
    std::size_t checked = 0;
    std::size_t skipped = 0;  ///< (n, point) pairs at a near-zero denominator

    double max_violation() const noexcept;
};

/// Checks the heat-polynomial identities for 1 <= n <= n_max at every point.
/// Derivatives come from the differentiated recurrence, never from the
/// identities under test. Points where a denominator is below 1e-8 relative
/// to its rounding scale are skipped and counted.
PolyIdentityReport check_poly_identities(int n_max, std::span<const XtPoint> points);

}  // namespace fpt
