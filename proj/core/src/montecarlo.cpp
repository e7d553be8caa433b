#include "fpt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "fpt/csv.hpp"
#include "fpt/errors.hpp"

namespace fpt {

namespace {

constexpr int kMaxRefinements = 20;
// below this exponent the bridge crossing probability is not sampled
constexpr double kBridgeCutoff = -40.0;

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(~index));
}

enum class StepState { running, hit, floor };

class PathRunner
{
public:
    PathRunner(const ProcessSpec& p, const MovingBoundary& bnd, const SimConfig& cfg,
               double t_end, bool ends_at_pin)
        : p_(p), bnd_(bnd), cfg_(cfg), t_end_(t_end), ends_at_pin_(ends_at_pin),
          half_line_(p.half_line()), level_(bnd.level()), affine_(bnd.affine_slope())
    {
    }

    PathRecord run(std::uint64_t index) const
    {
        Path path{std::mt19937_64(path_seed(cfg_.seed, index)),
                  boost::random::normal_distribution<double>(), {}, p_.start, boundary(0.0), 0.0};
        path.side = path.x > path.b ? 1.0 : -1.0;

        for (std::uint64_t k = 0;; ++k) {
            const double t = static_cast<double>(k) * cfg_.dt;
            if (t >= t_end_ * (1.0 - 1e-12))
                break;
            const double h = std::min(cfg_.dt, t_end_ - t);
            double event = 0.0;
            const StepState s = advance(path, t, h, 0, event);
            if (s == StepState::hit)
                return {PathOutcome::hit, event, path.x};
            if (s == StepState::floor)
                return {PathOutcome::floor, event, path.x};
        }
        return {ends_at_pin_ ? PathOutcome::floor : PathOutcome::survived, t_end_, path.x};
    }

private:
    struct Path
    {
        std::mt19937_64 eng;
        boost::random::normal_distribution<double> normal;
        std::uniform_real_distribution<double> uniform;
        double x;
        double b;
        double side;
    };

    StepState advance(Path& path, double t, double h, int depth, double& event) const
    {
        const double mu = p_.drift(t, path.x);
        if (!std::isfinite(mu)) {
            std::ostringstream os;
            os << p_.name << ": drift overflow at (t=" << t << ", x=" << path.x << ")";
            throw NumericalError(os.str());
        }
        if (std::abs(mu) * h > 1.0) {
            if (depth == kMaxRefinements) {
                std::ostringstream os;
                os << p_.name << ": drift step |mu dt| > 1 after " << kMaxRefinements
                   << " refinements at (t=" << t << ", x=" << path.x << ")";
                throw NumericalError(os.str());
            }
            const double half = 0.5 * h;
            const StepState s = advance(path, t, half, depth + 1, event);
            if (s != StepState::running)
                return s;
            return advance(path, t + half, half, depth + 1, event);
        }

        double x1 = path.x + mu * h + std::sqrt(h) * path.normal(path.eng);
        if (half_line_ && x1 < 0.0)
            x1 = -x1;
        const double b1 = boundary(t + h);
        const double d0 = path.x - path.b;
        const double d1 = x1 - b1;
        if (d1 * path.side <= 0.0) {
            event = t + h * d0 / (d0 - d1);
            path.x = x1;
            return StepState::hit;
        }
        if (cfg_.bridge_correction) {
            const double e = -2.0 * d0 * d1 / h;
            if (e > kBridgeCutoff && path.uniform(path.eng) < std::exp(e)) {
                event = t + 0.5 * h;
                path.x = x1;
                return StepState::hit;
            }
        }
        path.x = x1;
        path.b = b1;
        if (half_line_ && x1 <= cfg_.floor_eps) {
            event = t + h;
            return StepState::floor;
        }
        return StepState::running;
    }

    double boundary(double t) const { return affine_ ? level_ + *affine_ * t : bnd_.value(t); }

    const ProcessSpec& p_;
    const MovingBoundary& bnd_;
    const SimConfig& cfg_;
    double t_end_;
    bool ends_at_pin_;
    bool half_line_;
    double level_;
    std::optional<double> affine_;
};

}  // namespace

void SimConfig::validate(double horizon) const
{
    detail::require(paths >= 1, "SimConfig: need at least one path");
    detail::require(dt > 0.0 && std::isfinite(dt), "SimConfig: dt must be positive");
    detail::require(std::isfinite(horizon) && horizon > 0.0,
                    "SimConfig: simulation needs a finite horizon");
    detail::require(dt < horizon / 10.0, "SimConfig: dt must be below horizon / 10");
    detail::require(floor_eps >= 0.0, "SimConfig: floor_eps must be nonnegative");
    if (pin_guard)
        detail::require(*pin_guard > 0.0, "SimConfig: pin_guard must be positive");
}

std::string_view to_string(PathOutcome o) noexcept
{
    switch (o) {
    case PathOutcome::hit:
        return "hit";
    case PathOutcome::floor:
        return "floor";
    case PathOutcome::survived:
        return "survived";
    }
    return "unknown";
}

std::vector<double> SimResult::hit_times() const
{
    std::vector<double> hits;
    hits.reserve(n_hit);
    for (const auto& rec : paths)
        if (rec.outcome == PathOutcome::hit)
            hits.push_back(rec.time);
    std::sort(hits.begin(), hits.end());
    return hits;
}

SimResult simulate_paths(const ProcessSpec& p, const MovingBoundary& bnd, const SimConfig& cfg)
{
    p.validate();
    cfg.validate(p.horizon);
    const double b0 = bnd.value(0.0);
    detail::require(p.start != b0, "simulate_paths: process starts on the boundary (y = b(0))");

    double t_end = std::min(p.horizon, bnd.horizon());
    bool ends_at_pin = false;
    if (const auto pin = p.pin_time()) {
        const double stop = *pin - cfg.pin_guard.value_or(cfg.dt);
        detail::require(stop > 0.0, "simulate_paths: pin guard leaves no time to simulate");
        if (stop < t_end) {
            t_end = stop;
            ends_at_pin = true;
        }
    }

    const PathRunner runner(p, bnd, cfg, t_end, ends_at_pin);
    SimResult result;
    result.paths.resize(cfg.paths);
    result.seed = cfg.seed;
    result.dt = cfg.dt;
    result.horizon = std::min(p.horizon, bnd.horizon());

    const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, cfg.paths);
    if (workers == 1) {
        for (std::size_t i = 0; i < cfg.paths; ++i)
            result.paths[i] = runner.run(i);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (cfg.paths + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    const std::size_t lo = w * chunk;
                    const std::size_t hi = std::min(cfg.paths, lo + chunk);
                    for (std::size_t i = lo; i < hi; ++i)
                        result.paths[i] = runner.run(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    for (const auto& rec : result.paths) {
        switch (rec.outcome) {
        case PathOutcome::hit:
            ++result.n_hit;
            break;
        case PathOutcome::floor:
            ++result.n_absorbed_floor;
            break;
        case PathOutcome::survived:
            ++result.n_survived_horizon;
            break;
        }
    }
    return result;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> sorted_hits, std::size_t n)
    : hits_(std::move(sorted_hits)), n_(n)
{
    detail::require(n_ >= hits_.size(), "EmpiricalCdf: more hits than paths");
    detail::require(std::is_sorted(hits_.begin(), hits_.end()), "EmpiricalCdf: hits must be sorted");
}

double EmpiricalCdf::operator()(double t) const
{
    if (n_ == 0)
        return 0.0;
    const auto count = std::upper_bound(hits_.begin(), hits_.end(), t) - hits_.begin();
    return static_cast<double>(count) / static_cast<double>(n_);
}

EmpiricalCdf empirical_cdf(const SimResult& r)
{
    return EmpiricalCdf(r.hit_times(), r.size());
}

double ks_distance(const SimResult& r, const FptDensity& theoretical)
{
    detail::require(r.size() > 0, "ks_distance: empty simulation");
    if (r.horizon > theoretical.support_end() + 1e-6) {
        std::ostringstream os;
        os << "ks_distance: simulated horizon " << r.horizon << " exceeds the density support "
           << theoretical.support_end();
        throw PreconditionError(os.str());
    }
    const double end = std::min(r.horizon, theoretical.support_end());
    std::vector<double> points = r.hit_times();
    for (auto& t : points)
        t = std::min(t, end);
    points.push_back(end);
    const std::vector<double> model = cdf_sorted(theoretical, points);

    const double n = static_cast<double>(r.size());
    double ks = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double before = static_cast<double>(i) / n;
        const double after = static_cast<double>(i + 1) / n;
        ks = std::max({ks, std::abs(after - model[i]), std::abs(before - model[i])});
    }
    ks = std::max(ks, std::abs(static_cast<double>(r.n_hit) / n - model.back()));
    return ks;
}

double ks_critical_value(double alpha, std::size_t n)
{
    detail::require(n > 0, "ks_critical_value: n must be positive");
    double c = 0.0;
    if (alpha == 0.01)
        c = 1.63;
    else if (alpha == 0.05)
        c = 1.36;
    else
        throw PreconditionError("ks_critical_value: alpha must be 0.01 or 0.05");
    return c / std::sqrt(static_cast<double>(n));
}

void write_paths_csv(std::ostream& os, const SimResult& r)
{
    os << "path_index,outcome,time\n";
    for (std::size_t i = 0; i < r.paths.size(); ++i)
        os << i << ',' << to_string(r.paths[i].outcome) << ',' << format_real(r.paths[i].time)
           << '\n';
}

}  // namespace fpt
