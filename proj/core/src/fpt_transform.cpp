#include "fpt/fpt_transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "fpt/errors.hpp"
#include "fpt/quadrature.hpp"

namespace fpt {

namespace {

constexpr double kPinGap = 1e-9;
constexpr double kDefectTol = 1e-10;
constexpr double kCdfTol = 1e-8;
constexpr std::size_t kDomainProbes = 1000;

std::string start_label(const HeatSolution& h, double y)
{
    std::ostringstream os;
    os << h.describe() << " from y=" << y;
    return os.str();
}

double log_start_weight(const HeatSolution& h, double y)
{
    if (!h.contains(0.0, y)) {
        std::ostringstream os;
        os << h.describe() << " vanishes or is undefined at (0, " << y << ")";
        throw PreconditionError(os.str());
    }
    const double lw = h.log_value(0.0, y);
    detail::require(std::isfinite(lw), "h(0, y) must be positive and finite");
    return lw;
}

double capped_support(const HeatSolution& h, double horizon)
{
    if (const auto s = h.pin_time())
        return std::min(horizon, *s - kPinGap);
    return horizon;
}

// Cubic B-spline through the uniform grid samples, with p(0) = 0 and a flat
// start (the density vanishes to all orders at 0).
class GridDensity
{
public:
    GridDensity(const std::vector<double>& grid, const std::vector<double>& values)
        : end_(grid.back()), spline_(make_spline(grid, values))
    {
    }

    double operator()(double u) const
    {
        if (u <= 0.0 || u > end_)
            return 0.0;
        return std::max(0.0, spline_(u));
    }

private:
    using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

    static Spline make_spline(const std::vector<double>& grid, const std::vector<double>& values)
    {
        std::vector<double> y(values.size() + 1, 0.0);
        std::copy(values.begin(), values.end(), y.begin() + 1);
        return Spline(y.begin(), y.end(), 0.0, grid.front(), 0.0);
    }

    double end_;
    Spline spline_;
};

}  // namespace

double ProcessSpec::drift(double t, double x) const
{
    double mu = 0.0;
    for (const auto& h : components)
        mu += h.log_derivative(t, x);
    return mu;
}

std::optional<double> ProcessSpec::pin_time() const noexcept
{
    std::optional<double> pin;
    for (const auto& h : components)
        if (const auto s = h.pin_time())
            pin = pin ? std::min(*pin, *s) : *s;
    return pin;
}

bool ProcessSpec::half_line() const noexcept
{
    return std::any_of(components.begin(), components.end(), [](const HeatSolution& h) {
        return h.domain() == SpatialDomain::positive_half_line;
    });
}

void ProcessSpec::validate() const
{
    detail::require(horizon > 0.0, name + ": horizon must be positive");
    for (const auto& h : components) {
        if (!h.contains(0.0, start)) {
            std::ostringstream os;
            os << name << ": start y=" << start << " is not interior to the domain of "
               << h.describe();
            throw PreconditionError(os.str());
        }
    }
    detail::require(std::isfinite(drift(0.0, start)), name + ": drift is not finite at (0, y)");
}

ProcessSpec make_process(std::string name, const HeatSolution& h, double start, double horizon)
{
    ProcessSpec p;
    p.name = std::move(name);
    p.start = start;
    p.components = {h};
    p.horizon = horizon;
    if (h.domain() == SpatialDomain::positive_half_line)
        p.absorbing_floor = 0.0;
    p.validate();
    return p;
}

std::string_view to_string(DensityMethod m) noexcept
{
    switch (m) {
    case DensityMethod::closed_form:
        return "closed_form";
    case DensityMethod::volterra:
        return "volterra";
    case DensityMethod::series:
        return "series";
    }
    return "unknown";
}

FptDensity::FptDensity(std::function<double(double)> eval, double support_end, DensityMeta meta)
    : eval_(std::move(eval)), support_end_(support_end), meta_(std::move(meta))
{
    detail::require(support_end_ > kFloor, "density support must be nonempty");
    const double mass = std::isfinite(support_end_)
                            ? quad::graded_simpson(*this, kFloor, support_end_, kDefectTol)
                            : quad::integrate_to_infinity(*this, kFloor, kDefectTol);
    defect_ = 1.0 - mass;
    if (!(defect_ >= -1e-6 && defect_ <= 1.0)) {
        std::ostringstream os;
        os << "density for " << meta_.process << " has total mass " << mass;
        throw NumericalError(os.str());
    }
}

double FptDensity::operator()(double u) const
{
    if (!(u >= kFloor) || u >= support_end_)
        return 0.0;
    return eval_(u);
}

FptDensity unbounded_fpt_density(const HeatSolution& h, double y, const MovingBoundary& bnd,
                                 const TransformOptions& opts)
{
    const double a = bnd.level();
    detail::require(a != y, "unbounded_fpt_density: boundary starts at the process (a = y)");
    const double log_h0 = log_start_weight(h, y);
    if (h.domain() == SpatialDomain::positive_half_line && a > y) {
        throw PreconditionError(
            "unbounded_fpt_density: " + h.describe()
            + " confines the process to (0, a) when the boundary starts above y; use "
              "bounded_fpt_density");
    }

    const double support = capped_support(h, bnd.horizon());
    const auto slope = bnd.affine_slope();
    if (!std::isfinite(support)) {
        detail::require(slope.has_value(), "unbounded_fpt_density: curved boundaries need a finite horizon");
        if (h.domain() == SpatialDomain::positive_half_line && *slope < 0.0)
            throw PreconditionError("unbounded_fpt_density: boundary leaves the half-line");
    }
    const double probe_end = std::isfinite(support) ? support : 1e3;
    for (std::size_t k = 0; k <= kDomainProbes; ++k) {
        const double u = probe_end * static_cast<double>(k) / static_cast<double>(kDomainProbes);
        const double b = bnd.value(u);
        if (!h.contains(u, b)) {
            std::ostringstream os;
            os << "unbounded_fpt_density: boundary value " << b << " at u=" << u
               << " leaves the domain of " << h.describe();
            throw PreconditionError(os.str());
        }
    }

    DensityMeta meta{start_label(h, y), bnd.describe(), DensityMethod::closed_form};
    if (slope) {
        const double c = *slope;
        const double gap = a - y;
        const double log_gap = std::log(std::abs(gap));
        auto eval = [h, bnd, log_h0, c, gap, log_gap](double u) {
            const double z = gap + c * u;
            const double log_p =
                log_gap - 0.5 * std::log(2.0 * std::numbers::pi * u * u * u) - z * z / (2.0 * u);
            return std::exp(h.log_value(u, bnd.value(u)) - log_h0 + log_p);
        };
        return FptDensity(std::move(eval), support, std::move(meta));
    }

    const auto grid = uniform_time_grid(support, opts.volterra_steps);
    const auto table = std::make_shared<const GridDensity>(grid, volterra_fpt_density(bnd, y, grid));
    meta.method = DensityMethod::volterra;
    auto eval = [h, bnd, log_h0, table](double u) {
        const double p = (*table)(u);
        return p == 0.0 ? 0.0 : std::exp(h.log_value(u, bnd.value(u)) - log_h0) * p;
    };
    return FptDensity(std::move(eval), support, std::move(meta));
}

FptDensity bounded_fpt_density(const HeatSolution& h, double y, double a, double horizon,
                               const SeriesParams& sp)
{
    sp.validate();
    if (!(y > 0.0 && y < a)) {
        std::ostringstream os;
        os << "bounded_fpt_density: need 0 < y < a, got y=" << y << ", a=" << a;
        throw PreconditionError(os.str());
    }
    detail::require(std::isfinite(horizon) && horizon > 0.0,
                    "bounded_fpt_density: horizon must be finite and positive");
    if (const auto s = h.pin_time())
        detail::require(horizon <= *s, "bounded_fpt_density: horizon exceeds the pin time");
    const double log_h0 = log_start_weight(h, y);
    const double support = capped_support(h, horizon);
    detail::require(h.contains(0.0, a) && h.contains(support, a),
                    "bounded_fpt_density: level a is outside the domain of " + h.describe());

    auto eval = [h, y, a, log_h0, sp](double u) {
        const double bracket =
            two_sided_first_exit_density(y, a, u, sp) - lower_before_upper_density(y, a, u, sp);
        if (bracket < -1e-12) {
            std::ostringstream os;
            os << "bounded_fpt_density: negative exit-density bracket " << bracket << " at u=" << u;
            throw NumericalError(os.str());
        }
        if (bracket <= 0.0)
            return 0.0;
        return std::exp(h.log_value(u, a) - log_h0) * bracket;
    };
    std::ostringstream boundary;
    boundary << "constant(a=" << a << ") from below";
    return FptDensity(std::move(eval), support,
                      {start_label(h, y), boundary.str(), DensityMethod::series});
}

double cdf(const FptDensity& d, double t)
{
    if (!(t >= 0.0) || t > d.support_end()) {
        std::ostringstream os;
        os << "cdf: t=" << t << " outside the support [0, " << d.support_end() << "]";
        throw PreconditionError(os.str());
    }
    if (t <= FptDensity::kFloor)
        return 0.0;
    if (!std::isfinite(t))
        return d.mass();
    return quad::graded_simpson(d, FptDensity::kFloor, t, kCdfTol);
}

std::vector<double> cdf_sorted(const FptDensity& d, std::span<const double> sorted_times)
{
    std::vector<double> out;
    out.reserve(sorted_times.size());
    double prev = FptDensity::kFloor;
    double last = 0.0;
    double acc = 0.0;
    bool started = false;
    for (const double t : sorted_times) {
        if (!(t >= 0.0) || t > d.support_end())
            throw PreconditionError("cdf_sorted: time outside the support");
        detail::require(t >= last, "cdf_sorted: times must be sorted");
        last = t;
        if (t > prev) {
            acc += started ? quad::adaptive_simpson(d, prev, t, 1e-12)
                           : quad::graded_simpson(d, prev, t, 1e-11);
            started = true;
            prev = t;
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace fpt
