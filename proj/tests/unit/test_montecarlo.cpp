#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fpt/errors.hpp"
#include "fpt/montecarlo.hpp"
#include "oracles.hpp"

using namespace fpt;

namespace {

ProcessSpec brownian(double y, double horizon)
{
    return make_process("bm", make_catalog_solution(HeatKind::constant, {1.0}), y, horizon);
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST(Simulate, StartOnBoundaryRejected)
{
    EXPECT_THROW(simulate_paths(brownian(1.0, 1.0), MovingBoundary::constant(1.0, 1.0), {}),
                 PreconditionError);
}

TEST(Simulate, ConfigValidation)
{
    SimConfig cfg;
    cfg.paths = 0;
    EXPECT_THROW(cfg.validate(1.0), PreconditionError);
    cfg.paths = 10;
    cfg.dt = 0.2;
    EXPECT_THROW(cfg.validate(1.0), PreconditionError);
    cfg.dt = -1e-3;
    EXPECT_THROW(cfg.validate(1.0), PreconditionError);
    cfg.dt = 1e-3;
    EXPECT_NO_THROW(cfg.validate(1.0));
    EXPECT_THROW(cfg.validate(MovingBoundary::unbounded), PreconditionError);
}

TEST(Simulate, ReflectionPrinciple)
{
    SimConfig cfg;
    cfg.seed = 5;
    const auto r = simulate_paths(brownian(0.0, 1.0), MovingBoundary::constant(1.0, 1.0), cfg);
    const double p = 2 * (1 - oracle::normal_cdf(1.0));
    EXPECT_NEAR(p, 0.3173, 1e-4);
    const double n = static_cast<double>(r.size());
    EXPECT_NEAR(static_cast<double>(r.n_hit) / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(Simulate, CountsAddUp)
{
    SimConfig cfg;
    cfg.paths = 700;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        cfg.seed = seed;
        const auto r = simulate_paths(brownian(0.0, 1.0), MovingBoundary::affine(0.5, 0.5, 1.0), cfg);
        EXPECT_EQ(r.n_hit + r.n_absorbed_floor + r.n_survived_horizon, cfg.paths);
        EXPECT_EQ(r.size(), cfg.paths);
        EXPECT_EQ(r.seed, seed);
        EXPECT_EQ(r.dt, cfg.dt);
        for (const auto& rec : r.paths)
            if (rec.outcome == PathOutcome::hit) {
                EXPECT_GT(rec.time, 0.0);
                EXPECT_LE(rec.time, 1.0);
            }
        const auto hits = r.hit_times();
        EXPECT_EQ(hits.size(), r.n_hit);
        EXPECT_TRUE(std::is_sorted(hits.begin(), hits.end()));
    }
}

TEST(Simulate, DeterministicAcrossWorkers)
{
    const auto h = make_catalog_solution(HeatKind::gaussian_kernel, {3.0});
    const auto p = make_process("bridge", h, 1.0, 3.0);
    const auto b = MovingBoundary::affine(2.0, -1.0, 3.0);
    SimConfig cfg;
    cfg.paths = 1500;
    cfg.seed = 42;
    const auto ref = simulate_paths(p, b, cfg);
    for (unsigned w : {1u, 2u, 5u}) {
        cfg.workers = w;
        const auto r = simulate_paths(p, b, cfg);
        ASSERT_EQ(r.size(), ref.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            EXPECT_EQ(r.paths[i].outcome, ref.paths[i].outcome);
            EXPECT_EQ(r.paths[i].time, ref.paths[i].time);
            EXPECT_EQ(r.paths[i].final_state, ref.paths[i].final_state);
        }
    }
    cfg.seed = 43;
    const auto other = simulate_paths(p, b, cfg);
    std::size_t same = 0;
    for (std::size_t i = 0; i < other.size(); ++i)
        same += other.paths[i].time == ref.paths[i].time;
    EXPECT_LT(same, other.size() / 10);
}

TEST(Simulate, BridgePathsEndNearThePin)
{
    const auto h = make_catalog_solution(HeatKind::gaussian_kernel, {3.0});
    SimConfig cfg;
    cfg.paths = 2000;
    cfg.seed = 9;
    const auto r = simulate_paths(make_process("bridge", h, 1.0, 3.0),
                                  MovingBoundary::constant(2.0, 3.0), cfg);
    ASSERT_GT(r.n_absorbed_floor, 0u);
    for (const auto& rec : r.paths) {
        if (rec.outcome == PathOutcome::hit)
            continue;
        EXPECT_EQ(rec.outcome, PathOutcome::floor);
        EXPECT_GE(rec.time, 3.0 - 2 * cfg.dt);
        EXPECT_LT(std::abs(rec.final_state), 6 * std::sqrt(cfg.dt));
    }
}

TEST(Simulate, BesselPathsStayPositive)
{
    const auto h = make_catalog_solution(HeatKind::linear_x, {});
    SimConfig cfg;
    cfg.paths = 500;
    cfg.seed = 4;
    const auto r = simulate_paths(make_process("bes3", h, 0.05, 2.0),
                                  MovingBoundary::constant(1.5, 2.0), cfg);
    for (const auto& rec : r.paths)
        EXPECT_GT(rec.final_state, 0.0);
    EXPECT_EQ(r.n_hit + r.n_absorbed_floor + r.n_survived_horizon, cfg.paths);
}

TEST(EmpiricalCdf, Steps)
{
    const EmpiricalCdf none({}, 10);
    EXPECT_EQ(none(0.5), 0.0);
    EXPECT_EQ(none(1e9), 0.0);

    const EmpiricalCdf f({0.1, 0.2, 0.3, 0.4}, 4);
    EXPECT_EQ(f(0.05), 0.0);
    EXPECT_EQ(f(0.1), 0.25);
    EXPECT_EQ(f(0.25), 0.5);
    EXPECT_EQ(f(0.4), 1.0);

    const EmpiricalCdf sub({0.1}, 4);
    EXPECT_EQ(sub(10.0), 0.25);
}

TEST(EmpiricalCdf, FromResult)
{
    SimConfig cfg;
    cfg.paths = 300;
    const auto r = simulate_paths(brownian(0.0, 1.0), MovingBoundary::constant(1.0, 1.0), cfg);
    const auto F = empirical_cdf(r);
    EXPECT_EQ(F.sample_size(), 300u);
    EXPECT_DOUBLE_EQ(F(2.0), static_cast<double>(r.n_hit) / 300.0);
}

TEST(Ks, CriticalValues)
{
    EXPECT_NEAR(ks_critical_value(0.01, 5500), 0.02198, 1e-5);
    EXPECT_NEAR(ks_critical_value(0.05, 5500), 1.36 / std::sqrt(5500.0), 1e-15);
    EXPECT_THROW(ks_critical_value(0.1, 5500), PreconditionError);
    EXPECT_THROW(ks_critical_value(0.01, 0), PreconditionError);
}

TEST(Ks, CorrectDensityPasses)
{
    const auto b = MovingBoundary::constant(1.0, 1.0);
    const auto d = unbounded_fpt_density(make_catalog_solution(HeatKind::constant, {1.0}), 0.0,
                                         MovingBoundary::constant(1.0));
    SimConfig cfg;
    cfg.seed = 17;
    const auto r = simulate_paths(brownian(0.0, 1.0), b, cfg);
    EXPECT_LT(ks_distance(r, d), ks_critical_value(0.01, r.size()));
}

TEST(Ks, MismatchedSupports)
{
    const auto h = make_catalog_solution(HeatKind::gaussian_kernel, {2.0});
    const auto d = unbounded_fpt_density(h, 1.0, MovingBoundary::constant(2.0, 2.0));
    SimConfig cfg;
    cfg.paths = 50;
    const auto r = simulate_paths(brownian(1.0, 3.0), MovingBoundary::constant(2.0, 3.0), cfg);
    EXPECT_THROW(ks_distance(r, d), PreconditionError);
}

TEST(Ks, CdfMatchingAtJumpsLeavesOnlyTheStep)
{
    // hits at i/n against the uniform law on (0, 1]: equal at every jump,
    // so only the left limits differ, by exactly 1/n
    const std::size_t n = 8;
    SimResult r;
    for (std::size_t i = 1; i <= n; ++i)
        r.paths.push_back({PathOutcome::hit, static_cast<double>(i) / n, 1.0});
    r.n_hit = n;
    r.horizon = 1.0;
    r.dt = 1e-3;
    const FptDensity d([](double u) { return u <= 1.0 ? 1.0 : 0.0; }, 1.0, {});
    const auto F = empirical_cdf(r);
    for (double t : F.jumps())
        EXPECT_NEAR(F(t), cdf(d, t), 1e-8);
    EXPECT_NEAR(ks_distance(r, d), 1.0 / n, 1e-8);
}

TEST(Simulate, KsShrinksWithStep)
{
    // plain crossing detection so the discretisation bias is visible
    const auto b = MovingBoundary::affine(0.5, 0.5, 1.0);
    const auto d = unbounded_fpt_density(make_catalog_solution(HeatKind::constant, {1.0}), 0.0,
                                         MovingBoundary::affine(0.5, 0.5));
    std::vector<double> med;
    for (double dt : {1e-2, 1e-3, 1e-4}) {
        std::vector<double> ks;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            SimConfig cfg;
            cfg.dt = dt;
            cfg.seed = seed;
            cfg.bridge_correction = false;
            ks.push_back(ks_distance(simulate_paths(brownian(0.0, 1.0), b, cfg), d));
        }
        med.push_back(median(ks));
    }
    EXPECT_GT(med[0], med[1]);
    EXPECT_GT(med[1], med[2]);
}

TEST(Simulate, CsvLayout)
{
    SimConfig cfg;
    cfg.paths = 3;
    cfg.seed = 1;
    const auto r = simulate_paths(brownian(0.0, 1.0), MovingBoundary::constant(1.0, 1.0), cfg);
    std::ostringstream os;
    write_paths_csv(os, r);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "path_index,outcome,time");
    int rows = 0;
    while (std::getline(is, line)) {
        EXPECT_EQ(line.rfind(std::to_string(rows) + ",", 0), 0u);
        ++rows;
    }
    EXPECT_EQ(rows, 3);
}
