// One pass/fail line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fpt/brownian_fpt.hpp"
#include "fpt/burgers_classify.hpp"
#include "fpt/fpt_transform.hpp"
#include "fpt/heat_polynomials.hpp"
#include "fpt/heat_solutions.hpp"
#include "fpt/montecarlo.hpp"
#include "fpt/quadrature.hpp"
#include "fpt_cli/cli.hpp"
#include "fpt_cli/config.hpp"
#include "oracles.hpp"

using namespace fpt;

namespace {

struct Outcome
{
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("[%s] criterion %d: %s | %s | %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id,
                title, o.detail.c_str(), secs, limit_s);
    std::fflush(stdout);
}

Outcome heat_catalog()
{
    const std::vector<HeatSolution> cat{
        make_catalog_solution(HeatKind::constant, {1.0}),
        make_catalog_solution(HeatKind::exponential, {0.5}),
        make_catalog_solution(HeatKind::gaussian_kernel, {2.0}),
        make_catalog_solution(HeatKind::linear_x, {}),
        make_catalog_solution(HeatKind::bessel_bridge_kernel, {2.0}),
    };
    double heat = 0.0, burgers = 0.0;
    for (const auto& h : cat) {
        const auto grid = standard_grid(h);
        heat = std::max(heat, heat_residual(h, grid));
        burgers = std::max(burgers, burgers_residual(drift_of(h), grid));
    }
    return {heat <= 1e-8 && burgers <= 1e-6,
            "max heat residual " + fmt("%.2e", heat) + " <= 1e-8, max Burgers residual "
                + fmt("%.2e", burgers) + " <= 1e-6"};
}

Outcome cole_hopf()
{
    const auto bb = make_catalog_solution(HeatKind::bessel_bridge_kernel, {2.0});
    const std::vector<HeatSolution> parts{make_catalog_solution(HeatKind::linear_x, {}),
                                          make_catalog_solution(HeatKind::gaussian_kernel, {2.0})};
    const double err = verify_decomposition(bb, parts, standard_grid(bb));
    return {err <= 1e-10, "max |bessel_bridge - (linear_x + gaussian_kernel)| drift "
                              + fmt("%.2e", err) + " <= 1e-10"};
}

double volterra_max_error(const MovingBoundary& b, std::size_t steps,
                          const std::function<double(double)>& exact, bool relative)
{
    const auto grid = uniform_time_grid(4.0, steps);
    const auto p = volterra_fpt_density(b, 0.0, grid);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = exact(grid[i]);
        const double d = std::abs(p[i] - e);
        err = std::max(err, relative ? (e > 0.0 ? d / e : d) : d);
    }
    return err;
}

Outcome volterra_oracle()
{
    const auto affine = MovingBoundary::affine(1.0, 1.0, 4.0);
    auto exact = [](double t) { return affine_boundary_density(0.0, 1.0, 1.0, t); };
    const double rel = volterra_max_error(affine, 2000, exact, true);
    const double abs_1000 = volterra_max_error(affine, 1000, exact, false);
    const double abs_2000 = volterra_max_error(affine, 2000, exact, false);
    // the affine kernel vanishes, so its error is rounding only and cannot show an order
    const bool affine_at_roundoff = abs_1000 < 1e-12 && abs_2000 < 1e-12;
    const bool affine_ratio_ok = affine_at_roundoff || abs_1000 / abs_2000 >= 3.0;

    const oracle::DanielsBoundary d;
    const auto curved = MovingBoundary::from_functions(
        d.b(0.0), [d](double t) { return d.slope(t); }, [d](double t) { return d.b(t) - d.b(0.0); },
        4.0, "two-image");
    auto curved_exact = [d](double t) { return d.density(t); };
    const double c_1000 = volterra_max_error(curved, 1000, curved_exact, false);
    const double c_2000 = volterra_max_error(curved, 2000, curved_exact, false);
    const double ratio = c_1000 / c_2000;

    return {rel <= 1e-6 && affine_ratio_ok && ratio >= 3.0,
            "affine b=1+t: max rel error " + fmt("%.2e", rel) + " <= 1e-6 (abs error "
                + fmt("%.1e", abs_1000) + " -> " + fmt("%.1e", abs_2000)
                + ", rounding level); curved two-image boundary: max error "
                + fmt("%.2e", c_1000) + " -> " + fmt("%.2e", c_2000) + ", halving ratio "
                + fmt("%.2f", ratio) + " >= 3"};
}

Outcome series_normalisation()
{
    // both densities are below exp(-290) past t = 60
    const double exit_mass = quad::graded_simpson(
        [](double t) { return t > 0 ? two_sided_first_exit_density(0.5, 1.0, t) : 0.0; }, 0.0,
        60.0, 1e-10);
    const double upper_mass = quad::graded_simpson(
        [](double t) { return t > 0 ? upper_before_lower_density(0.0, 0.5, t, 1.0) : 0.0; }, 0.0,
        60.0, 1e-10);
    const bool ok = std::abs(exit_mass - 1.0) <= 1e-6 && std::abs(upper_mass - 0.5) <= 1e-6;
    return {ok, "exit mass " + fmt("%.10f", exit_mass) + " (1 +- 1e-6), upper-first mass "
                    + fmt("%.10f", upper_mass) + " (0.5 +- 1e-6)"};
}

Outcome bounded_mass()
{
    const auto h = make_catalog_solution(HeatKind::linear_x, {});
    double worst = 0.0;
    for (double y : {0.1, 0.5, 1.0, 1.4}) {
        const auto d = bounded_fpt_density(h, y, 1.5, 40.0);
        worst = std::max(worst, std::abs(d.mass() - 1.0));
    }
    const double fixture_mass = bounded_fpt_density(h, 0.5, 1.5, 8.0).mass();
    return {worst <= 1e-4 && std::abs(fixture_mass - 1.0) <= 1e-4,
            "3D Bessel to a=1.5 from y in {0.1,0.5,1,1.4}: max |mass-1| " + fmt("%.2e", worst)
                + "; fixture y=0.5 horizon 8 mass " + fmt("%.8f", fixture_mass)};
}

Outcome figure_reproduction()
{
    const double crit = ks_critical_value(0.01, 5500);
    bool all = true;
    std::string detail;
    for (const char* name : {"example1", "example3", "example8"}) {
        const cli::ExperimentConfig cfg = cli::fixture(name);
        const FptDensity d = cfg.density();
        const ProcessSpec p = cfg.process_spec();
        const MovingBoundary b = cfg.boundary();
        int passes = 0;
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            SimConfig sc = cfg.sim_config();
            sc.seed = seed;
            const double ks = ks_distance(simulate_paths(p, b, sc), d);
            passes += ks < crit;
            worst = std::max(worst, ks);
        }
        all = all && passes >= 95;
        detail += std::string(name) + " " + std::to_string(passes) + "/100 (max KS "
                + fmt("%.4f", worst) + ") ";
    }
    return {all, detail + "below " + fmt("%.5f", crit) + ", need >= 95/100 each"};
}

Outcome poly_identities()
{
    std::mt19937_64 eng(20240601);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    std::vector<XtPoint> pts(50);
    for (auto& p : pts) {
        p.x = u(eng);
        p.t = u(eng);
    }
    const auto rep = check_poly_identities(10, pts);
    const bool ok = rep.v_derivative <= 1e-7 && rep.w_lowering <= 1e-7 && rep.hi_chain <= 1e-7
                 && rep.hj_chain <= 1e-7 && rep.checked > 0;
    return {ok, "n<=10 at 50 points: v'_n = n v_{n-1} " + fmt("%.1e", rep.v_derivative)
                    + ", w'_{n-1} = -w_n/2 " + fmt("%.1e", rep.w_lowering) + ", log-derivative chains "
                    + fmt("%.1e", rep.hi_chain) + " / " + fmt("%.1e", rep.hj_chain) + " (<= 1e-7), "
                    + std::to_string(rep.checked)
                + " checked, " + std::to_string(rep.skipped) + " skipped"};
}

Outcome regression_guard()
{
    const cli::ExperimentConfig cfg = cli::fixture("example8");
    const SimResult r = simulate_paths(cfg.process_spec(), cfg.boundary(), cfg.sim_config());
    const FptDensity right = cfg.density();
    const FptDensity no_ratio(
        [&cfg](double u) { return upper_before_lower_density(0.0, cfg.y, u, cfg.barrier); },
        cfg.horizon, {});
    const double ks_right = ks_distance(r, right);
    const double ks_wrong = ks_distance(r, no_ratio);
    return {ks_wrong > 0.1, "KS without h-ratio " + fmt("%.4f", ks_wrong) + " > 0.1 (with ratio "
                                + fmt("%.4f", ks_right) + ")"};
}

std::string simulate_csv(const char* workers)
{
    const char* argv[] = {"fptool", "simulate", "--fixture", "example1", "--paths", "5500",
                          "--seed", "42", "--workers", workers};
    std::ostringstream out, err;
    if (cli::run_cli(10, argv, out, err) != 0)
        throw std::runtime_error("simulate failed: " + err.str());
    return out.str();
}

Outcome determinism()
{
    const std::string a = simulate_csv("1");
    const std::string b = simulate_csv("1");
    const std::string c = simulate_csv("2");
    const std::string d = simulate_csv("4");
    const bool ok = a == b && a == c && a == d && !a.empty();
    return {ok, std::string("example1 seed 42, 5500 paths: repeat ") + (a == b ? "identical" : "DIFFERS")
                    + ", workers 2 " + (a == c ? "identical" : "DIFFERS") + ", workers 4 "
                    + (a == d ? "identical" : "DIFFERS") + " (" + std::to_string(a.size())
                    + " bytes)"};
}

}  // namespace

int main()
{
    criterion(1, "heat catalog residuals", 1, heat_catalog);
    criterion(2, "Cole-Hopf decomposition", 1, cole_hopf);
    criterion(3, "Volterra vs closed form", 5, volterra_oracle);
    criterion(4, "image series normalisation", 5, series_normalisation);
    criterion(5, "bounded theorem mass", 5, bounded_mass);
    criterion(6, "figure reproduction at n=5500", 300, figure_reproduction);
    criterion(7, "heat-polynomial identities", 1, poly_identities);
    criterion(8, "h-ratio regression guard", 60, regression_guard);
    criterion(9, "simulation determinism", 60, determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
