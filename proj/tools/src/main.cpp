#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "output.hpp"

int main(int argc, char** argv) {
    using namespace wflow::cli;

    CLI::App app{"Parallel Weingarten flows of isoparametric hypersurfaces:\n"
                 "scalar-ODE simulation, collapse times, closed-form checks,\n"
                 "and avoidance-principle verification."};
    app.require_subcommand(1);

    CommonOptions opts;
    std::vector<std::string> suites;

    // Global flags; subcommands fall through to them.
    app.add_option("--config", opts.config_path, "JSON configuration file");
    app.add_option("--set", opts.overrides,
                   "override a config field: dotted.path=value (repeatable)");
    app.add_option("--output", opts.output_path, "output file (default: stdout)");
    app.add_option("--format", opts.format, "trajectory output format: csv or json");
    app.add_option("--jobs", opts.jobs, "parallel sweep cells (default 1)");
    app.add_option("--seed", opts.seed, "seed for randomized checks");
    app.add_option("--tol", opts.tol,
                   "tolerance: collapse quadrature (default 1e-10) or avoidance "
                   "monotonicity (default 1e-9)");
    app.add_option_function<double>(
        "--tau0", [&](double v) { opts.overrides.push_back("tau0=" + format_double(v)); },
        "override the initial focal parameter");
    app.add_option_function<double>(
        "--t-max", [&](double v) { opts.overrides.push_back("t_max=" + format_double(v)); },
        "override the time horizon");
    app.add_option_function<double>(
        "--rtol",
        [&](double v) { opts.overrides.push_back("solver.rtol=" + format_double(v)); },
        "override the solver relative tolerance");
    app.add_option_function<double>(
        "--atol",
        [&](double v) { opts.overrides.push_back("solver.atol=" + format_double(v)); },
        "override the solver absolute tolerance");
    app.add_option_function<int>(
        "--samples",
        [&](int v) { opts.overrides.push_back("output.samples=" + std::to_string(v)); },
        "number of output samples");

    auto* simulate =
        app.add_subcommand("simulate", "integrate a flow and write the trajectory");
    auto* collapse =
        app.add_subcommand("collapse", "compute the collapse time (quadrature)");
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", suites,
                       "suites to run: axioms oracle agreement qualitative avoidance "
                       "(default: all)");
    auto* sweep = app.add_subcommand("sweep", "collapse times over a parameter grid");
    auto* avoidance = app.add_subcommand("avoidance", "distance curve of a flow pair");
    auto* families = app.add_subcommand("families", "print the isoparametric catalogue");
    for (auto* sub : {simulate, collapse, verify, sweep, avoidance, families})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) return run_guarded([&] { return cmd_simulate(opts); });
    if (collapse->parsed()) return run_guarded([&] { return cmd_collapse(opts); });
    if (verify->parsed()) return run_guarded([&] { return cmd_verify(opts, suites); });
    if (sweep->parsed()) return run_guarded([&] { return cmd_sweep(opts); });
    if (avoidance->parsed()) return run_guarded([&] { return cmd_avoidance(opts); });
    if (families->parsed()) return run_guarded([] { return cmd_families(); });
    return 2;
}
