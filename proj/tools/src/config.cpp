#include "fpt_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "fpt/csv.hpp"
#include "fpt/errors.hpp"

namespace fpt::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(std::string_view key, std::string_view v)
{
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    detail::require(res.ec == std::errc{} && res.ptr == v.data() + v.size(),
                    "config: bad number for " + std::string(key) + ": '" + std::string(v) + "'");
    return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v)
{
    Int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    detail::require(res.ec == std::errc{} && res.ptr == v.data() + v.size(),
                    "config: bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
    return out;
}

bool parse_bool(std::string_view key, std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw PreconditionError("config: bad boolean for " + std::string(key) + ": '"
                            + std::string(v) + "'");
}

}  // namespace

void assign(ExperimentConfig& cfg, std::string_view key, std::string_view value)
{
    value = trim(value);
    if (key == "process")
        cfg.process = std::string(value);
    else if (key == "c")
        cfg.c = parse_real(key, value);
    else if (key == "lambda")
        cfg.lambda = parse_real(key, value);
    else if (key == "s")
        cfg.s = parse_real(key, value);
    else if (key == "y")
        cfg.y = parse_real(key, value);
    else if (key == "barrier")
        cfg.barrier = parse_real(key, value);
    else if (key == "slope")
        cfg.slope = parse_real(key, value);
    else if (key == "bounded")
        cfg.bounded = parse_bool(key, value);
    else if (key == "horizon")
        cfg.horizon = parse_real(key, value);
    else if (key == "grid_points")
        cfg.grid_points = parse_int<std::size_t>(key, value);
    else if (key == "paths")
        cfg.paths = parse_int<std::size_t>(key, value);
    else if (key == "dt")
        cfg.dt = parse_real(key, value);
    else if (key == "seed")
        cfg.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "workers")
        cfg.workers = parse_int<unsigned>(key, value);
    else if (key == "bridge_correction")
        cfg.bridge_correction = parse_bool(key, value);
    else if (key == "output")
        cfg.output = std::string(value);
    else
        throw PreconditionError("config: unknown key '" + std::string(key) + "'");
}

void merge_config(std::istream& is, ExperimentConfig& cfg)
{
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view v = line;
        if (const auto hash = v.find('#'); hash != std::string_view::npos)
            v = v.substr(0, hash);
        v = trim(v);
        if (v.empty())
            continue;
        const auto eq = v.find('=');
        detail::require(eq != std::string_view::npos,
                        "config: line " + std::to_string(lineno) + " has no '='");
        assign(cfg, trim(v.substr(0, eq)), v.substr(eq + 1));
    }
}

ExperimentConfig parse_config(std::istream& is)
{
    ExperimentConfig cfg;
    merge_config(is, cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), "config: cannot open " + path);
    return parse_config(in);
}

void write_config(std::ostream& os, const ExperimentConfig& cfg)
{
    auto b = [](bool v) { return v ? "true" : "false"; };
    os << "process=" << cfg.process << '\n';
    if (cfg.c)
        os << "c=" << format_real(*cfg.c) << '\n';
    if (cfg.lambda)
        os << "lambda=" << format_real(*cfg.lambda) << '\n';
    if (cfg.s)
        os << "s=" << format_real(*cfg.s) << '\n';
    os << "y=" << format_real(cfg.y) << '\n'
       << "barrier=" << format_real(cfg.barrier) << '\n'
       << "slope=" << format_real(cfg.slope) << '\n'
       << "bounded=" << b(cfg.bounded) << '\n'
       << "horizon=" << format_real(cfg.horizon) << '\n'
       << "grid_points=" << cfg.grid_points << '\n'
       << "paths=" << cfg.paths << '\n'
       << "dt=" << format_real(cfg.dt) << '\n'
       << "seed=" << cfg.seed << '\n'
       << "workers=" << cfg.workers << '\n'
       << "bridge_correction=" << b(cfg.bridge_correction) << '\n';
    if (!cfg.output.empty())
        os << "output=" << cfg.output << '\n';
}

HeatSolution ExperimentConfig::heat() const
{
    return make_named_solution(process, CatalogParams{c, lambda, s});
}

ProcessSpec ExperimentConfig::process_spec() const
{
    return make_process(process, heat(), y, horizon);
}

MovingBoundary ExperimentConfig::boundary() const
{
    if (slope == 0.0)
        return MovingBoundary::constant(barrier, horizon);
    return MovingBoundary::affine(barrier, slope, horizon);
}

FptDensity ExperimentConfig::density() const
{
    if (bounded)
        return bounded_fpt_density(heat(), y, barrier, horizon);
    return unbounded_fpt_density(heat(), y, boundary());
}

SimConfig ExperimentConfig::sim_config() const
{
    SimConfig sc;
    sc.paths = paths;
    sc.dt = dt;
    sc.seed = seed;
    sc.workers = workers;
    sc.bridge_correction = bridge_correction;
    return sc;
}

void ExperimentConfig::validate() const
{
    detail::require(std::isfinite(horizon) && horizon > 0.0,
                    "config: horizon must be positive and finite");
    detail::require(grid_points >= 1, "config: grid_points must be at least 1");
    detail::require(workers >= 1, "config: workers must be at least 1");
    detail::require(std::isfinite(y) && std::isfinite(barrier) && std::isfinite(slope),
                    "config: y, barrier and slope must be finite");
    detail::require(barrier != y, "config: barrier a must differ from the start y");
    if (bounded) {
        detail::require(slope == 0.0, "config: the bounded case needs a constant barrier");
        detail::require(0.0 < y && y < barrier, "config: bounded case needs 0 < y < a");
    }
    process_spec().validate();
    (void)boundary();
    sim_config().validate(horizon);
}

ExperimentConfig fixture(std::string_view name)
{
    ExperimentConfig cfg;
    if (name == "example1") {
        cfg.process = "brownian_bridge";
        cfg.s = 3.0;
        cfg.y = 1.0;
        cfg.barrier = 2.0;
        cfg.slope = -1.0;
        cfg.horizon = 3.0;
    } else if (name == "example3") {
        cfg.process = "bessel_bridge";
        cfg.s = 4.0;
        cfg.y = 3.0;
        cfg.barrier = 1.0;
        cfg.horizon = 4.0;
    } else if (name == "example8") {
        cfg.process = "bessel3";
        cfg.y = 0.5;
        cfg.barrier = 1.5;
        cfg.bounded = true;
        cfg.horizon = 8.0;
    } else {
        throw PreconditionError("unknown fixture '" + std::string(name)
                                + "' (expected example1, example3 or example8)");
    }
    return cfg;
}

}  // namespace fpt::cli
