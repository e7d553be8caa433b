#include "fpt_cli/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpt/burgers_classify.hpp"
#include "fpt/csv.hpp"
#include "fpt/errors.hpp"
#include "fpt/heat_polynomials.hpp"
#include "fpt/montecarlo.hpp"
#include "fpt_cli/config.hpp"

namespace fpt::cli {

namespace {

// flag name -> config key
constexpr std::array<std::pair<const char*, const char*>, 14> kValueFlags{{
    {"--process", "process"},
    {"--c", "c"},
    {"--lambda", "lambda"},
    {"--s", "s"},
    {"--y", "y"},
    {"--barrier", "barrier"},
    {"--slope", "slope"},
    {"--horizon", "horizon"},
    {"--grid-points", "grid_points"},
    {"--paths", "paths"},
    {"--dt", "dt"},
    {"--seed", "seed"},
    {"--workers", "workers"},
    {"--output,-o", "output"},
}};

struct ExperimentFlags
{
    std::string fixture_name;
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    CLI::Option* bounded = nullptr;
    CLI::Option* no_bridge = nullptr;

    void attach(CLI::App* sub)
    {
        sub->add_option("--fixture", fixture_name, "example1, example3 or example8");
        sub->add_option("--config", config_path, "key=value file");
        for (const auto& [flag, key] : kValueFlags)
            options[key] = sub->add_option(flag, values[key]);
        bounded = sub->add_flag("--bounded", "barrier reached from below in (0, a)");
        no_bridge = sub->add_flag("--no-bridge-correction", "plain crossing detection");
    }

    ExperimentConfig resolve() const
    {
        ExperimentConfig cfg;
        if (!fixture_name.empty())
            cfg = fixture(fixture_name);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            detail::require(static_cast<bool>(in), "cannot open config " + config_path);
            merge_config(in, cfg);
        }
        for (const auto& [key, opt] : options)
            if (opt->count() > 0)
                assign(cfg, key, values.at(key));
        if (bounded->count() > 0)
            cfg.bounded = true;
        if (no_bridge->count() > 0)
            cfg.bridge_correction = false;
        cfg.validate();
        return cfg;
    }
};

class Sink
{
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            detail::require(static_cast<bool>(file_), "cannot write " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void cmd_density(const ExperimentConfig& cfg, std::ostream& out)
{
    const FptDensity d = cfg.density();
    const double end = std::min(cfg.horizon, d.support_end());
    const std::size_t n = cfg.grid_points;
    std::vector<double> times(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        times[k] = std::min(end, cfg.horizon * static_cast<double>(k) / static_cast<double>(n));
    const std::vector<double> F = cdf_sorted(d, times);

    Sink sink(cfg.output, out);
    std::ostream& os = sink.stream();
    os << "t,density,cdf\n";
    for (std::size_t k = 0; k <= n; ++k)
        os << format_real(times[k]) << ',' << format_real(d(times[k])) << ','
           << format_real(F[k]) << '\n';
}

void cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    const SimResult r = simulate_paths(cfg.process_spec(), cfg.boundary(), cfg.sim_config());
    Sink sink(cfg.output, out);
    write_paths_csv(sink.stream(), r);
    std::ostream& info = sink.to_file() ? out : err;
    info << "n_hit=" << r.n_hit << " n_absorbed=" << r.n_absorbed_floor
         << " n_survived=" << r.n_survived_horizon << '\n';
}

bool cmd_compare(const ExperimentConfig& cfg, std::ostream& out)
{
    const FptDensity d = cfg.density();
    const SimResult r = simulate_paths(cfg.process_spec(), cfg.boundary(), cfg.sim_config());
    const double ks = ks_distance(r, d);
    const double c1 = ks_critical_value(0.01, r.size());
    const double c5 = ks_critical_value(0.05, r.size());
    const double hit_frac = static_cast<double>(r.n_hit) / static_cast<double>(r.size());

    out << "process: " << d.meta().process << '\n'
        << "boundary: " << d.meta().boundary << '\n'
        << "method: " << to_string(d.meta().method) << '\n'
        << "paths: " << r.size() << "  seed: " << r.seed << "  dt: " << format_real(r.dt) << '\n'
        << "theoretical mass: " << format_real(d.mass())
        << "  simulated hit fraction: " << format_real(hit_frac) << '\n'
        << "ks distance: " << format_real(ks) << '\n'
        << "critical 1%: " << format_real(c1) << "  critical 5%: " << format_real(c5) << '\n'
        << "result: " << (ks < c1 ? "pass" : "fail") << " at 1%, "
        << (ks < c5 ? "pass" : "fail") << " at 5%\n";

    if (!cfg.output.empty()) {
        Sink sink(cfg.output, out);
        sink.stream() << "process,paths,seed,dt,ks_distance,critical_1pct,critical_5pct,"
                         "pass_1pct,pass_5pct,mass,hit_fraction\n"
                      << d.meta().process << ',' << r.size() << ',' << r.seed << ','
                      << format_real(r.dt) << ',' << format_real(ks) << ','
                      << format_real(c1) << ',' << format_real(c5) << ','
                      << (ks < c1 ? "true" : "false") << ',' << (ks < c5 ? "true" : "false")
                      << ',' << format_real(d.mass()) << ',' << format_real(hit_frac) << '\n';
    }
    return ks < c1;
}

struct ClassifyFlags
{
    int bessel = 0;
    std::string drift;
    double s = 0.0;
    double c = 1.0;
    double lambda = 0.0;
    CLI::Option* bessel_opt = nullptr;
    CLI::Option* drift_opt = nullptr;
    CLI::Option* s_opt = nullptr;
    CLI::Option* c_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;
};

void cmd_classify(const ClassifyFlags& f, std::ostream& out)
{
    detail::require((f.bessel_opt->count() > 0) != (f.drift_opt->count() > 0),
                    "classify needs exactly one of --bessel or --drift");
    if (f.bessel_opt->count() > 0) {
        const BesselClassification bc = classify_bessel_order(f.bessel);
        out << "order,class_index,degenerate,component,kind,burgers_residual\n";
        const auto prefix = std::to_string(bc.order) + ',' + std::to_string(bc.class_index) + ','
                          + (bc.degenerate ? "true" : "false") + ',';
        if (bc.components.empty()) {
            out << prefix << ",,\n";
            return;
        }
        for (std::size_t j = 0; j < bc.components.size(); ++j) {
            const DriftSpec d = drift_of(bc.components[j]);
            out << prefix << j << ',' << bc.components[j].catalog_name() << ','
                << format_real(burgers_residual(d, drift_grid(d))) << '\n';
        }
        const DriftSpec sum = drift_of_sum(bc.components);
        out << prefix << "sum,drift_total," << format_real(burgers_residual(sum, drift_grid(sum)))
            << '\n';
        return;
    }

    CatalogParams params;
    if (f.s_opt->count() > 0)
        params.s = f.s;
    if (f.c_opt->count() > 0)
        params.c = f.c;
    if (f.lambda_opt->count() > 0)
        params.lambda = f.lambda;
    const HeatSolution target = make_named_solution(f.drift, params);
    std::vector<HeatSolution> parts;
    if (target.kind() == HeatKind::bessel_bridge_kernel) {
        parts.push_back(make_catalog_solution(HeatKind::linear_x, std::span<const double>{}));
        parts.push_back(make_catalog_solution(HeatKind::gaussian_kernel, {*target.pin_time()}));
    } else {
        parts.push_back(target);
    }
    const auto grid = standard_grid(target);
    const double decomposition = verify_decomposition(target, parts, grid);

    out << "name,role,kind,burgers_residual,decomposition_error\n";
    const DriftSpec td = drift_of(target);
    out << f.drift << ",target," << target.catalog_name() << ','
        << format_real(burgers_residual(td, drift_grid(td))) << ',' << format_real(decomposition)
        << '\n';
    for (const HeatSolution& p : parts) {
        const DriftSpec pd = drift_of(p);
        out << f.drift << ",part," << p.catalog_name() << ','
            << format_real(burgers_residual(pd, drift_grid(pd))) << ",\n";
    }
}

struct HeatpolyFlags
{
    int n = 0;
    int n_max = -1;
    double x = 0.0;
    double t = 1.0;
    bool check = false;
    std::size_t points = 50;
    std::uint64_t seed = 1;
};

void cmd_heatpoly(const HeatpolyFlags& f, std::ostream& out)
{
    if (f.check) {
        detail::require(f.n_max >= 1, "heatpoly --check needs --n-max >= 1");
        detail::require(f.points >= 1, "heatpoly --check needs at least one point");
        std::mt19937_64 eng(f.seed);
        std::uniform_real_distribution<double> u(0.1, 3.0);
        std::vector<XtPoint> pts(f.points);
        for (auto& p : pts) {
            p.x = u(eng);
            p.t = u(eng);
        }
        const PolyIdentityReport rep = check_poly_identities(f.n_max, pts);
        out << "identity,max_violation,checked,skipped\n";
        const std::pair<const char*, double> rows[] = {{"v_derivative", rep.v_derivative},
                                                       {"w_lowering", rep.w_lowering},
                                                       {"hj_chain", rep.hj_chain},
                                                       {"hi_chain", rep.hi_chain}};
        for (const auto& [name, v] : rows)
            out << name << ',' << format_real(v) << ',' << rep.checked << ',' << rep.skipped
                << '\n';
        return;
    }
    const int lo = f.n_max >= 0 ? 0 : f.n;
    const int hi = f.n_max >= 0 ? f.n_max : f.n;
    detail::require(lo >= 0 && hi <= kMaxHeatPolyDegree,
                    "heatpoly: degree must lie in [0, " + std::to_string(kMaxHeatPolyDegree) + "]");
    out << "n,x,t,v,w\n";
    for (int n = lo; n <= hi; ++n) {
        out << n << ',' << format_real(f.x) << ',' << format_real(f.t) << ','
            << format_real(heat_poly_v(n, f.x, f.t)) << ',';
        if (f.t > 0.0)
            out << format_real(assoc_w(n, f.x, f.t));
        out << '\n';
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"First-passage densities of h-transformed Brownian motion", "fptool"};
    app.require_subcommand(1);

    ExperimentFlags density_flags, simulate_flags, compare_flags, config_flags;
    auto* density = app.add_subcommand("density", "CSV of t,density,cdf");
    density_flags.attach(density);
    auto* simulate = app.add_subcommand("simulate", "CSV of simulated paths");
    simulate_flags.attach(simulate);
    auto* compare = app.add_subcommand("compare", "KS distance of simulation vs density");
    compare_flags.attach(compare);
    bool strict = false;
    compare->add_flag("--strict", strict, "exit 1 when the 1% test fails");
    auto* config = app.add_subcommand("config", "print the resolved configuration");
    config_flags.attach(config);

    ClassifyFlags cf;
    auto* classify = app.add_subcommand("classify", "Burgers class of a drift");
    cf.bessel_opt = classify->add_option("--bessel", cf.bessel, "Bessel order m");
    cf.drift_opt = classify->add_option("--drift", cf.drift, "catalog name");
    cf.s_opt = classify->add_option("--s", cf.s);
    cf.c_opt = classify->add_option("--c", cf.c);
    cf.lambda_opt = classify->add_option("--lambda", cf.lambda);

    HeatpolyFlags hf;
    auto* heatpoly = app.add_subcommand("heatpoly", "heat polynomials v_n and w_n");
    heatpoly->add_option("--n", hf.n);
    heatpoly->add_option("--n-max", hf.n_max, "all degrees 0..n-max");
    heatpoly->add_option("--x", hf.x);
    heatpoly->add_option("--t", hf.t);
    heatpoly->add_flag("--check", hf.check, "identity check at random points in (0.1, 3)^2");
    heatpoly->add_option("--points", hf.points);
    heatpoly->add_option("--seed", hf.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*density) {
            cmd_density(density_flags.resolve(), out);
        } else if (*simulate) {
            cmd_simulate(simulate_flags.resolve(), out, err);
        } else if (*compare) {
            const bool pass = cmd_compare(compare_flags.resolve(), out);
            if (strict && !pass)
                return 1;
        } else if (*config) {
            const ExperimentConfig cfg = config_flags.resolve();
            Sink sink(cfg.output, out);
            write_config(sink.stream(), cfg);
        } else if (*classify) {
            cmd_classify(cf, out);
        } else if (*heatpoly) {
            cmd_heatpoly(hf, out);
        }
    } catch (const NumericalError& e) {
        err << "fptool: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "fptool: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "fptool: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "fptool: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace fpt::cli
