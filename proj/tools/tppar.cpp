// Command-line front end: structural checks, solves, verification and
// estimate sweeps for time-periodic parabolic problems on the whole and half
// space. See README.md for the spec file format.

#include <iostream>

#include "CLI11.hpp"
#include "tppar/errors.hpp"
#include "tppar/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tppar - spectral solver for time-periodic parabolic ADN problems"};
    app.require_subcommand(1);

    std::string spec_path;
    tppar::RunOptions opt;
    int samples = -1;
    long long seed = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", spec_path, "problem spec (JSON)")->required();
        sub->add_option("-o,--out", opt.out_dir, "output directory (default .)");
    };

    CLI::App* check = app.add_subcommand("check", "run the structural condition checkers");
    add_common(check);
    CLI::App* solve = app.add_subcommand("solve", "solve and write solution.tpf + norms.csv");
    add_common(solve);
    CLI::App* verify =
        app.add_subcommand("verify", "residual and oracle comparison -> verify.csv");
    add_common(verify);
    CLI::App* sweep = app.add_subcommand("sweep", "estimate-ratio ensemble sweep");
    add_common(sweep);
    sweep->add_option("--samples", samples, "ensemble size (overrides spec)");
    sweep->add_option("--seed", seed, "random seed (overrides spec)");
    CLI::App* ocmp = app.add_subcommand("oracle-compare", "per-mode ODE oracle table");
    add_common(ocmp);

    CLI11_PARSE(app, argc, argv);

    try {
        tppar::ProblemSpec spec = tppar::load_spec_file(spec_path);
        for (CLI::App* sub : {check, solve, verify, sweep, ocmp})
            if (sub->parsed()) opt.tasks = {sub->get_name()};
        if (samples > 0) opt.sweep_samples = samples;
        if (seed >= 0) opt.sweep_seed = static_cast<std::uint64_t>(seed);
        return tppar::run(spec, opt);
    } catch (const tppar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tppar::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
