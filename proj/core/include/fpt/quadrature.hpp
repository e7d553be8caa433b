#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

namespace fpt::quad {

namespace detail {

template <class F>
double simpson_refine(F& f, double a, double fa, double m, double fm, double b,
                      double fb, double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol || !(m - a > 0.0))
        return left + right + diff / 15.0;
    return simpson_refine(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
         + simpson_refine(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with Richardson correction.
/// The interval is first cut into `panels` equal pieces, each of which gets
/// an equal share of the absolute tolerance.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        std::size_t panels = 1, int max_depth = 48)
{
    if (!(b > a))
        return 0.0;
    if (panels == 0)
        panels = 1;
    const double width = (b - a) / static_cast<double>(panels);
    const double tol = abs_tol / static_cast<double>(panels);
    double total = 0.0;
    double lo = a;
    double flo = f(lo);
    for (std::size_t k = 0; k < panels; ++k) {
        const double hi = (k + 1 == panels) ? b : a + width * static_cast<double>(k + 1);
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        const double fhi = f(hi);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += detail::simpson_refine(f, lo, flo, mid, fmid, hi, fhi, whole, tol,
                                        max_depth);
        lo = hi;
        flo = fhi;
    }
    return total;
}

/// Adaptive Simpson over [a, b] on geometrically graded panels
/// [a, a + L/2^k] accumulating toward a, L = b - a. Suited to integrands like
/// u^{-3/2} exp(-c/u) whose mass may sit in a thin layer next to a.
template <class F>
double graded_simpson(F&& f, double a, double b, double abs_tol, int levels = 40)
{
    if (!(b > a))
        return 0.0;
    const double len = b - a;
    const double tol = abs_tol / static_cast<double>(levels + 1);
    double total = 0.0;
    double hi = b;
    for (int k = 1; k <= levels; ++k) {
        const double lo = a + len * std::ldexp(1.0, -k);
        total += adaptive_simpson(f, lo, hi, tol, 4);
        hi = lo;
    }
    total += adaptive_simpson(f, a, hi, tol, 1);
    return total;
}

/// Integral of f over [a, inf) through u = a + scale * (v / (1 - v))^2,
/// which keeps integrands with u^{-3/2} tails bounded at v -> 1.
template <class F>
double integrate_to_infinity(F&& f, double a, double abs_tol, double scale = 1.0)
{
    constexpr double v_max = 1.0 - 1e-9;
    auto mapped = [&](double v) {
        v = std::min(v, v_max);
        const double r = v / (1.0 - v);
        const double u = a + scale * r * r;
        const double jac = scale * 2.0 * v / ((1.0 - v) * (1.0 - v) * (1.0 - v));
        const double fu = f(u);
        return fu == 0.0 ? 0.0 : fu * jac;
    };
    return graded_simpson(mapped, 0.0, 1.0, abs_tol);
}

}  // namespace fpt::quad
