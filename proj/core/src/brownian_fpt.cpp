#include "fpt/brownian_fpt.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "fpt/errors.hpp"
#include "fpt/quadrature.hpp"

namespace fpt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLogUnderflow = -745.0;
constexpr std::size_t kCumulativeKnots = 4096;
constexpr std::size_t kSlopeProbes = 1000;
constexpr double kNegativeTolerance = -1e-12;
constexpr double kZetaMinusHalf = -0.207886224977354566017;

double clamp_density(double value, const char* who)
{
    if (value < kNegativeTolerance) {
        std::ostringstream os;
        os << who << ": density " << value << " is negative beyond rounding";
        throw NumericalError(os.str());
    }
    return std::max(value, 0.0);
}

// Sum over n in Z of (2na + d) exp(-(2na + d)^2 / (2 tau)) / sqrt(2 pi tau^3),
// truncated symmetrically once the newest pair of terms drops below
// tol * (accumulated absolute sum).
double image_series(double d, double a, double tau, const SeriesParams& sp)
{
    const double log_norm = -0.5 * std::log(kTwoPi * tau * tau * tau);
    auto term = [&](long n) {
        const double z = 2.0 * static_cast<double>(n) * a + d;
        const double e = log_norm - z * z / (2.0 * tau);
        return e < kLogUnderflow ? 0.0 : z * std::exp(e);
    };
    double sum = term(0);
    double abs_sum = std::abs(sum);
    for (int n = 1;; ++n) {
        if (n > sp.max_terms) {
            std::ostringstream os;
            os << "image series did not converge within " << sp.max_terms
               << " terms (tau=" << tau << ", a=" << a << ")";
            throw NumericalError(os.str());
        }
        const double up = term(n);
        const double down = term(-n);
        sum += up + down;
        abs_sum += std::abs(up) + std::abs(down);
        if (std::max(std::abs(up), std::abs(down)) < sp.tol * (abs_sum + 1e-300))
            break;
    }
    return sum;
}

void check_strip(double y, double a, double t, const char* who)
{
    if (!(a > 0.0) || !(y > 0.0) || !(y < a)) {
        std::ostringstream os;
        os << who << ": need 0 < y < a, got y=" << y << ", a=" << a;
        throw PreconditionError(os.str());
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << who << ": need t > 0, got " << t;
        throw PreconditionError(os.str());
    }
}

// Cubic Hermite table of the running integral of a slope function.
struct CumulativeTable
{
    double horizon;
    double step;
    std::vector<double> values;
    std::vector<double> slopes;

    double operator()(double t) const
    {
        const double pos = t / step;
        auto k = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(values.size() - 2)));
        const double s = pos - static_cast<double>(k);
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * values[k] + (s3 - 2 * s2 + s) * step * slopes[k]
             + (-2 * s3 + 3 * s2) * values[k + 1] + (s3 - s2) * step * slopes[k + 1];
    }
};

}  // namespace

MovingBoundary MovingBoundary::constant(double a, double horizon)
{
    return affine(a, 0.0, horizon);
}

MovingBoundary MovingBoundary::affine(double a, double slope, double horizon)
{
    detail::require(std::isfinite(a), "boundary level must be finite");
    detail::require(std::isfinite(slope), "boundary slope must be finite");
    MovingBoundary b;
    b.a_ = a;
    b.horizon_ = horizon;
    b.affine_slope_ = slope;
    b.slope_ = [slope](double) { return slope; };
    b.cumulative_ = [slope](double t) { return slope * t; };
    std::ostringstream os;
    if (slope == 0.0)
        os << "constant(a=" << a << ")";
    else
        os << "affine(a=" << a << ", slope=" << slope << ")";
    b.label_ = os.str();
    b.validate();
    return b;
}

MovingBoundary MovingBoundary::from_slope(double a, Fn slope, double horizon, std::string label)
{
    detail::require(std::isfinite(horizon) && horizon > 0.0,
                    "from_slope: a finite positive horizon is required");
    detail::require(static_cast<bool>(slope), "from_slope: empty slope function");
    auto table = std::make_shared<CumulativeTable>();
    table->horizon = horizon;
    table->step = horizon / static_cast<double>(kCumulativeKnots - 1);
    table->values.resize(kCumulativeKnots);
    table->slopes.resize(kCumulativeKnots);
    table->values[0] = 0.0;
    table->slopes[0] = slope(0.0);
    const double piece_tol = 1e-10 / static_cast<double>(kCumulativeKnots);
    for (std::size_t k = 1; k < kCumulativeKnots; ++k) {
        const double t0 = table->step * static_cast<double>(k - 1);
        const double t1 = table->step * static_cast<double>(k);
        table->values[k] = table->values[k - 1] + quad::adaptive_simpson(slope, t0, t1, piece_tol);
        table->slopes[k] = slope(t1);
    }
    MovingBoundary b;
    b.a_ = a;
    b.horizon_ = horizon;
    b.slope_ = std::move(slope);
    b.cumulative_ = [table](double t) { return (*table)(t); };
    b.label_ = label.empty() ? "curved(a=" + std::to_string(a) + ")" : std::move(label);
    b.validate();
    return b;
}

MovingBoundary MovingBoundary::from_functions(double a, Fn slope, Fn cumulative, double horizon,
                                              std::string label)
{
    detail::require(static_cast<bool>(slope) && static_cast<bool>(cumulative),
                    "from_functions: empty slope or cumulative function");
    MovingBoundary b;
    b.a_ = a;
    b.horizon_ = horizon;
    b.slope_ = std::move(slope);
    b.cumulative_ = std::move(cumulative);
    b.label_ = label.empty() ? "curved(a=" + std::to_string(a) + ")" : std::move(label);
    b.validate();
    return b;
}

void MovingBoundary::validate() const
{
    detail::require(std::isfinite(a_), "boundary level must be finite");
    detail::require(horizon_ > 0.0, "boundary horizon must be positive");
    detail::require(std::abs(cumulative_(0.0)) <= 1e-12, "boundary must satisfy b(0) = a");
    const double span = std::isfinite(horizon_) ? horizon_ : 100.0;
    for (std::size_t k = 0; k < kSlopeProbes; ++k) {
        const double t = span * static_cast<double>(k) / static_cast<double>(kSlopeProbes - 1);
        if (!std::isfinite(slope_(t))) {
            std::ostringstream os;
            os << "boundary slope is not finite at t=" << t;
            throw PreconditionError(os.str());
        }
    }
}

double MovingBoundary::slope(double t) const
{
    return slope_(t);
}

double MovingBoundary::cumulative(double t) const
{
    if (t < 0.0 || t > horizon_ * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "boundary " << label_ << " evaluated at t=" << t << " outside [0, " << horizon_ << "]";
        throw PreconditionError(os.str());
    }
    return cumulative_(t);
}

void SeriesParams::validate() const
{
    detail::require(tol > 0.0, "SeriesParams: tol must be positive");
    detail::require(max_terms >= 1, "SeriesParams: max_terms must be >= 1");
}

double constant_barrier_density(double y, double t)
{
    detail::require(y > 0.0 && std::isfinite(y), "constant_barrier_density: need y > 0");
    detail::require(t > 0.0, "constant_barrier_density: need t > 0");
    const double e = std::log(y) - 0.5 * std::log(kTwoPi * t * t * t) - y * y / (2.0 * t);
    return e < kLogUnderflow ? 0.0 : std::exp(e);
}

double affine_boundary_density(double y, double a, double c, double t)
{
    detail::require(a != y, "affine_boundary_density: boundary starts at the process (a = y)");
    detail::require(t > 0.0, "affine_boundary_density: need t > 0");
    const double gap = a - y;
    const double z = gap + c * t;
    const double e = std::log(std::abs(gap)) - 0.5 * std::log(kTwoPi * t * t * t) - z * z / (2.0 * t);
    return e < kLogUnderflow ? 0.0 : std::exp(e);
}

double two_sided_first_exit_density(double y, double a, double t, const SeriesParams& sp)
{
    sp.validate();
    check_strip(y, a, t, "two_sided_first_exit_density");
    const double value = image_series(y, a, t, sp) + image_series(a - y, a, t, sp);
    return clamp_density(value, "two_sided_first_exit_density");
}

double lower_before_upper_density(double y, double a, double t, const SeriesParams& sp)
{
    sp.validate();
    check_strip(y, a, t, "lower_before_upper_density");
    return clamp_density(image_series(y, a, t, sp), "lower_before_upper_density");
}

double upper_before_lower_density(double t, double y, double s, double a, const SeriesParams& sp)
{
    sp.validate();
    detail::require(t >= 0.0, "upper_before_lower_density: need t >= 0");
    check_strip(y, a, s - t, "upper_before_lower_density");
    return clamp_density(image_series(a - y, a, s - t, sp), "upper_before_lower_density");
}

double hit_upper_survive_lower_probability(double y, double a, double t, const SeriesParams& sp)
{
    check_strip(y, a, t, "hit_upper_survive_lower_probability");
    auto bracket = [&](double u) {
        if (u <= 0.0)
            return 0.0;
        return two_sided_first_exit_density(y, a, u, sp) - constant_barrier_density(y, u);
    };
    return quad::graded_simpson(bracket, 0.0, t, 1e-12);
}

std::vector<double> uniform_time_grid(double horizon, std::size_t steps)
{
    detail::require(std::isfinite(horizon) && horizon > 0.0, "time grid needs a finite horizon");
    detail::require(steps >= 1, "time grid needs at least one step");
    std::vector<double> grid(steps);
    for (std::size_t k = 0; k < steps; ++k)
        grid[k] = horizon * static_cast<double>(k + 1) / static_cast<double>(steps);
    return grid;
}

std::vector<double> volterra_fpt_density(const MovingBoundary& bnd, double y,
                                         std::span<const double> grid)
{
    const double b0 = bnd.value(0.0);
    detail::require(b0 != y, "volterra_fpt_density: boundary starts at the process (b(0) = y)");
    detail::require(!grid.empty(), "volterra_fpt_density: empty grid");
    detail::require(grid.front() > 0.0, "volterra_fpt_density: grid must start after t = 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        detail::require(grid[i] > grid[i - 1], "volterra_fpt_density: grid must be increasing");

    const std::size_t n = grid.size();
    std::vector<double> level(n);
    std::vector<double> slope(n);
    std::vector<double> curvature(n);
    for (std::size_t i = 0; i < n; ++i) {
        level[i] = bnd.value(grid[i]);
        slope[i] = bnd.slope(grid[i]);
        if (!std::isfinite(level[i]) || !std::isfinite(slope[i])) {
            std::ostringstream os;
            os << "volterra_fpt_density: boundary or slope undefined at t=" << grid[i];
            throw NumericalError(os.str());
        }
        const double delta = std::min(1e-6, 0.5 * grid[i]);
        curvature[i] = (bnd.slope(grid[i] + delta) - bnd.slope(grid[i] - delta)) / (2.0 * delta);
        if (!std::isfinite(curvature[i])) {
            std::ostringstream os;
            os << "volterra_fpt_density: boundary is not C^2 near t=" << grid[i];
            throw NumericalError(os.str());
        }
    }

    // Psi(t_i, tau, z) with b(t_i), b'(t_i) frozen
    auto psi = [&](std::size_t i, double tau, double z) {
        const double lag = grid[i] - tau;
        const double gap = level[i] - z;
        const double e = -gap * gap / (2.0 * lag);
        if (e < kLogUnderflow)
            return 0.0;
        return 0.5 * (slope[i] - gap / lag) * std::exp(e) / std::sqrt(kTwoPi * lag);
    };

    // trapezoid weights on 0 = t_0 < t_1 < ... ; p(t_0) = 0 and the diagonal
    // kernel vanishes, so only interior nodes contribute
    std::vector<double> weight(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double left = j == 0 ? 0.0 : grid[j - 1];
        weight[j] = 0.5 * (grid[j + 1] - left);
    }

    // Near the diagonal Psi(t, tau, b(tau)) ~ c (t - tau)^{1/2} with
    // c = b''(t) / (4 sqrt(2 pi)), which leaves the plain trapezoid sum an
    // error of zeta(-1/2) c p(t) h^{3/2}. Subtracting it (implicitly in p(t))
    // restores second order; it vanishes for affine boundaries.
    const double sign = b0 > y ? 1.0 : -1.0;
    std::vector<double> density(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = -2.0 * psi(i, 0.0, y);
        for (std::size_t j = 0; j < i; ++j)
            acc += 2.0 * weight[j] * density[j] * psi(i, grid[j], level[j]);
        const double h = grid[i] - (i == 0 ? 0.0 : grid[i - 1]);
        const double c = curvature[i] / (4.0 * std::sqrt(kTwoPi));
        const double diag = -2.0 * kZetaMinusHalf * c * h * std::sqrt(h);
        density[i] = sign * acc / (1.0 - sign * diag);
    }
    for (auto& v : density)
        v = clamp_density(v, "volterra_fpt_density");
    return density;
}

}  // namespace fpt
