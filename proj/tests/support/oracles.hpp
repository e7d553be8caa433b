#pragma once

// Reference values computed by routes independent of the library code.

#include <cmath>
#include <numbers>

namespace oracle {

// n! sum_k x^{n-2k} t^k / ((n-2k)! k! 2^k), from the power series of exp(xz + z^2 t / 2).
inline double heat_poly_multinomial(int n, double x, double t)
{
    long double sum = 0.0L;
    for (int k = 0; 2 * k <= n; ++k) {
        long double coef = 1.0L;
        // n! / ((n-2k)! k! 2^k)
        for (int j = n - 2 * k + 1; j <= n; ++j)
            coef *= j;
        for (int j = 1; j <= k; ++j)
            coef /= 2.0L * j;
        sum += coef * std::pow(static_cast<long double>(x), n - 2 * k)
             * std::pow(static_cast<long double>(t), k);
    }
    return static_cast<double>(sum);
}

// Eigenfunction expansion of Brownian motion killed outside (0, a).
struct Strip
{
    double y;
    double a;
    int terms = 400;

    double rate(int k) const
    {
        const double w = k * std::numbers::pi / a;
        return 0.5 * w * w;
    }

    // P(T ^ T0 > t)
    double survival(double t) const
    {
        double s = 0.0;
        for (int k = 1; k <= terms; k += 2)
            s += 4.0 / (k * std::numbers::pi) * std::sin(k * std::numbers::pi * y / a)
               * std::exp(-rate(k) * t);
        return s;
    }

    double exit_density(double t) const
    {
        double s = 0.0;
        for (int k = 1; k <= terms; k += 2)
            s += 4.0 / (k * std::numbers::pi) * rate(k) * std::sin(k * std::numbers::pi * y / a)
               * std::exp(-rate(k) * t);
        return s;
    }

    // flux out through a
    double upper_density(double t) const
    {
        double s = 0.0;
        for (int k = 1; k <= terms; ++k) {
            const double w = k * std::numbers::pi / a;
            s += (k % 2 ? 1.0 : -1.0) * w * std::sin(w * y) * std::exp(-rate(k) * t);
        }
        return s / a;
    }

    // flux out through 0
    double lower_density(double t) const
    {
        double s = 0.0;
        for (int k = 1; k <= terms; ++k) {
            const double w = k * std::numbers::pi / a;
            s += w * std::sin(w * y) * std::exp(-rate(k) * t);
        }
        return s / a;
    }

    // P(T < t, T0 > t) for free Brownian motion: P(T0 > t) - P(T ^ T0 > t)
    double upper_then_alive(double t) const
    {
        return std::erf(y / std::sqrt(2.0 * t)) - survival(t);
    }
};

// Two-image boundary with an exact first-passage density for Brownian motion
// started at 0: b(t) = alpha/2 + (t/alpha) log(2 / (w1 + sqrt(w1^2 + 4 w2 exp(-alpha^2/t)))).
struct DanielsBoundary
{
    double alpha = 1.0;
    double w1 = 0.5;
    double w2 = 0.5;

    double q(double t) const { return std::exp(-alpha * alpha / t); }
    double root(double t) const { return std::sqrt(w1 * w1 + 4.0 * w2 * q(t)); }
    double e(double t) const { return 2.0 / (w1 + root(t)); }

    double b(double t) const
    {
        if (t == 0.0)
            return alpha / 2.0;
        return alpha / 2.0 + t / alpha * std::log(e(t));
    }

    double slope(double t) const
    {
        if (t == 0.0)
            return -std::log(w1) / alpha;
        const double S = root(t);
        const double dq = q(t) * alpha * alpha / (t * t);
        const double dS = 2.0 * w2 * dq / S;
        return std::log(e(t)) / alpha - t / alpha * dS / (w1 + S);
    }

    double density(double t) const
    {
        const double bb = b(t);
        const double ee = e(t);
        return std::exp(-bb * bb / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t) * alpha
             / (2.0 * t) * (w1 * ee + 2.0 * w2 * q(t) * ee * ee);
    }

    double mass() const { return w1 + w2; }
};

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace oracle
