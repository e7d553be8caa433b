#include "fpt/heat_solutions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fpt/errors.hpp"

namespace fpt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFdStep = 1e-5;

std::size_t expected_param_count(HeatKind kind)
{
    switch (kind) {
    case HeatKind::constant:
    case HeatKind::exponential:
    case HeatKind::gaussian_kernel:
    case HeatKind::bessel_bridge_kernel:
        return 1;
    case HeatKind::linear_x:
        return 0;
    }
    return 0;
}

}  // namespace

HeatSolution make_catalog_solution(HeatKind kind, std::span<const double> params)
{
    if (params.size() != expected_param_count(kind)) {
        std::ostringstream os;
        os << catalog_name(kind) << " expects " << expected_param_count(kind)
           << " parameter(s), got " << params.size();
        throw PreconditionError(os.str());
    }
    double c = 1.0;
    double lambda = 0.0;
    double s = std::numeric_limits<double>::infinity();
    switch (kind) {
    case HeatKind::constant:
        c = params[0];
        detail::require(std::isfinite(c) && c > 0.0, "constant: c must be positive");
        break;
    case HeatKind::exponential:
        lambda = params[0];
        detail::require(std::isfinite(lambda), "bm_drift: lambda must be finite");
        break;
    case HeatKind::gaussian_kernel:
    case HeatKind::bessel_bridge_kernel:
        s = params[0];
        detail::require(std::isfinite(s) && s > 0.0, "pin time s must be positive");
        break;
    case HeatKind::linear_x:
        break;
    }
    return HeatSolution(kind, c, lambda, s);
}

HeatSolution make_catalog_solution(HeatKind kind, std::initializer_list<double> params)
{
    return make_catalog_solution(kind, std::span<const double>(params.begin(), params.size()));
}

HeatKind kind_from_name(std::string_view name)
{
    if (name == "constant")
        return HeatKind::constant;
    if (name == "bm_drift")
        return HeatKind::exponential;
    if (name == "brownian_bridge")
        return HeatKind::gaussian_kernel;
    if (name == "bessel3")
        return HeatKind::linear_x;
    if (name == "bessel_bridge")
        return HeatKind::bessel_bridge_kernel;
    throw PreconditionError("unknown process '" + std::string(name) + "'");
}

std::string_view catalog_name(HeatKind kind) noexcept
{
    switch (kind) {
    case HeatKind::constant:
        return "constant";
    case HeatKind::exponential:
        return "bm_drift";
    case HeatKind::gaussian_kernel:
        return "brownian_bridge";
    case HeatKind::linear_x:
        return "bessel3";
    case HeatKind::bessel_bridge_kernel:
        return "bessel_bridge";
    }
    return "unknown";
}

HeatSolution make_named_solution(std::string_view name, const CatalogParams& p)
{
    const HeatKind kind = kind_from_name(name);
    auto need = [&](const std::optional<double>& v, const char* key) {
        if (!v)
            throw PreconditionError(std::string(name) + " requires parameter " + key);
        return *v;
    };
    switch (kind) {
    case HeatKind::constant:
        return make_catalog_solution(kind, {p.c.value_or(1.0)});
    case HeatKind::exponential:
        return make_catalog_solution(kind, {need(p.lambda, "lambda")});
    case HeatKind::gaussian_kernel:
    case HeatKind::bessel_bridge_kernel:
        return make_catalog_solution(kind, {need(p.s, "s")});
    case HeatKind::linear_x:
        return make_catalog_solution(kind, std::span<const double>{});
    }
    throw PreconditionError("unknown process");
}

SpatialDomain HeatSolution::domain() const noexcept
{
    return (kind_ == HeatKind::linear_x || kind_ == HeatKind::bessel_bridge_kernel)
               ? SpatialDomain::positive_half_line
               : SpatialDomain::whole_line;
}

std::optional<double> HeatSolution::pin_time() const noexcept
{
    if (kind_ == HeatKind::gaussian_kernel || kind_ == HeatKind::bessel_bridge_kernel)
        return s_;
    return std::nullopt;
}

std::string_view HeatSolution::catalog_name() const noexcept
{
    return fpt::catalog_name(kind_);
}

std::string HeatSolution::describe() const
{
    std::ostringstream os;
    os << catalog_name();
    switch (kind_) {
    case HeatKind::constant:
        os << "(c=" << c_ << ")";
        break;
    case HeatKind::exponential:
        os << "(lambda=" << lambda_ << ")";
        break;
    case HeatKind::gaussian_kernel:
    case HeatKind::bessel_bridge_kernel:
        os << "(s=" << s_ << ")";
        break;
    case HeatKind::linear_x:
        break;
    }
    return os.str();
}

bool HeatSolution::contains(double t, double x) const noexcept
{
    if (!std::isfinite(t) || !std::isfinite(x))
        return false;
    if (t >= s_)
        return false;
    if (domain() == SpatialDomain::positive_half_line && !(x > 0.0))
        return false;
    return true;
}

void HeatSolution::check_time(double t) const
{
    if (!(t < s_)) {
        std::ostringstream os;
        os << describe() << " evaluated at t=" << t << " at or past its pin time";
        throw PreconditionError(os.str());
    }
}

void HeatSolution::check_space(double x) const
{
    if (domain() == SpatialDomain::positive_half_line && x < 0.0) {
        std::ostringstream os;
        os << describe() << " evaluated at x=" << x << " outside the half-line";
        throw PreconditionError(os.str());
    }
}

double HeatSolution::value(double t, double x) const
{
    check_time(t);
    check_space(x);
    switch (kind_) {
    case HeatKind::constant:
        return c_;
    case HeatKind::exponential:
        return std::exp(lambda_ * x - 0.5 * lambda_ * lambda_ * t);
    case HeatKind::gaussian_kernel: {
        const double tau = remaining(t);
        return std::exp(-x * x / (2.0 * tau)) / std::sqrt(kTwoPi * tau);
    }
    case HeatKind::linear_x:
        return x;
    case HeatKind::bessel_bridge_kernel: {
        const double tau = remaining(t);
        return x * std::exp(-x * x / (2.0 * tau)) / std::sqrt(kTwoPi * tau * tau * tau);
    }
    }
    return 0.0;
}

double HeatSolution::log_value(double t, double x) const
{
    check_time(t);
    check_space(x);
    switch (kind_) {
    case HeatKind::constant:
        return std::log(c_);
    case HeatKind::exponential:
        return lambda_ * x - 0.5 * lambda_ * lambda_ * t;
    case HeatKind::gaussian_kernel: {
        const double tau = remaining(t);
        return -x * x / (2.0 * tau) - 0.5 * std::log(kTwoPi * tau);
    }
    case HeatKind::linear_x:
        return std::log(x);
    case HeatKind::bessel_bridge_kernel: {
        const double tau = remaining(t);
        return std::log(x) - x * x / (2.0 * tau) - 0.5 * std::log(kTwoPi * tau * tau * tau);
    }
    }
    return 0.0;
}

double HeatSolution::dx(double t, double x) const
{
    check_time(t);
    check_space(x);
    switch (kind_) {
    case HeatKind::constant:
        return 0.0;
    case HeatKind::exponential:
        return lambda_ * value(t, x);
    case HeatKind::gaussian_kernel:
        return -x / remaining(t) * value(t, x);
    case HeatKind::linear_x:
        return 1.0;
    case HeatKind::bessel_bridge_kernel: {
        const double tau = remaining(t);
        const double kernel = std::exp(-x * x / (2.0 * tau)) / std::sqrt(kTwoPi * tau * tau * tau);
        return kernel * (1.0 - x * x / tau);
    }
    }
    return 0.0;
}

double HeatSolution::dxx(double t, double x) const
{
    check_time(t);
    check_space(x);
    switch (kind_) {
    case HeatKind::constant:
    case HeatKind::linear_x:
        return 0.0;
    case HeatKind::exponential:
        return lambda_ * lambda_ * value(t, x);
    case HeatKind::gaussian_kernel: {
        const double tau = remaining(t);
        return (x * x / (tau * tau) - 1.0 / tau) * value(t, x);
    }
    case HeatKind::bessel_bridge_kernel: {
        const double tau = remaining(t);
        const double kernel = std::exp(-x * x / (2.0 * tau)) / std::sqrt(kTwoPi * tau * tau * tau);
        return kernel * x * (x * x / (tau * tau) - 3.0 / tau);
    }
    }
    return 0.0;
}

double HeatSolution::dt(double t, double x) const
{
    check_time(t);
    check_space(x);
    switch (kind_) {
    case HeatKind::constant:
    case HeatKind::linear_x:
        return 0.0;
    case HeatKind::exponential:
        return -0.5 * lambda_ * lambda_ * value(t, x);
    case HeatKind::gaussian_kernel: {
        const double tau = remaining(t);
        return (0.5 / tau - x * x / (2.0 * tau * tau)) * value(t, x);
    }
    case HeatKind::bessel_bridge_kernel: {
        const double tau = remaining(t);
        return (1.5 / tau - x * x / (2.0 * tau * tau)) * value(t, x);
    }
    }
    return 0.0;
}

double HeatSolution::log_derivative(double t, double x) const
{
    if (!contains(t, x)) {
        std::ostringstream os;
        os << "drift of " << describe() << " undefined at (t=" << t << ", x=" << x << ")";
        throw PreconditionError(os.str());
    }
    switch (kind_) {
    case HeatKind::constant:
        return 0.0;
    case HeatKind::exponential:
        return lambda_;
    case HeatKind::gaussian_kernel:
        return -x / remaining(t);
    case HeatKind::linear_x:
        return 1.0 / x;
    case HeatKind::bessel_bridge_kernel:
        return 1.0 / x - x / remaining(t);
    }
    return 0.0;
}

double HeatSolution::log_derivative_dx(double t, double x) const
{
    if (!contains(t, x))
        throw PreconditionError("drift derivative of " + describe() + " undefined here");
    switch (kind_) {
    case HeatKind::constant:
    case HeatKind::exponential:
        return 0.0;
    case HeatKind::gaussian_kernel:
        return -1.0 / remaining(t);
    case HeatKind::linear_x:
        return -1.0 / (x * x);
    case HeatKind::bessel_bridge_kernel:
        return -1.0 / (x * x) - 1.0 / remaining(t);
    }
    return 0.0;
}

std::vector<SpaceTimePoint> probe_grid(double t0, double t1, double x0, double x1,
                                       std::size_t nt, std::size_t nx)
{
    std::vector<SpaceTimePoint> grid;
    grid.reserve(nt * nx);
    for (std::size_t i = 0; i < nt; ++i) {
        const double t = t0 + (t1 - t0) * (static_cast<double>(i) + 0.5) / static_cast<double>(nt);
        for (std::size_t j = 0; j < nx; ++j) {
            const double x =
                x0 + (x1 - x0) * (static_cast<double>(j) + 0.5) / static_cast<double>(nx);
            grid.push_back({t, x});
        }
    }
    return grid;
}

std::vector<SpaceTimePoint> standard_grid(const HeatSolution& h)
{
    const double t1 = h.pin_time() ? 0.5 * *h.pin_time() : 1.0;
    if (h.domain() == SpatialDomain::positive_half_line)
        return probe_grid(0.0, t1, 0.5, 3.0);
    return probe_grid(0.0, t1, -3.0, 3.0);
}

double heat_residual(const HeatSolution& h, std::span<const SpaceTimePoint> grid)
{
    detail::require(!grid.empty(), "heat_residual: empty grid");
    double worst = 0.0;
    for (const auto& p : grid) {
        if (!h.contains(p.t, p.x) || !h.contains(p.t, p.x - kFdStep)) {
            std::ostringstream os;
            os << "heat_residual: point (t=" << p.t << ", x=" << p.x << ") outside the domain of "
               << h.describe();
            throw PreconditionError(os.str());
        }
        const double hxx = (h.dx(p.t, p.x + kFdStep) - h.dx(p.t, p.x - kFdStep)) / (2.0 * kFdStep);
        const double r = std::abs(h.dt(p.t, p.x) + 0.5 * hxx) / (1.0 + std::abs(h.value(p.t, p.x)));
        worst = std::max(worst, r);
    }
    return worst;
}

std::function<double(double, double)> log_derivative_drift(const HeatSolution& h)
{
    return [h](double t, double x) { return h.log_derivative(t, x); };
}

}  // namespace fpt
