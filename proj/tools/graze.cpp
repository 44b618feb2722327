// Experiment driver for the spectral non cut-off Boltzmann / FPL library.
//
//   graze <subcommand> [--config file] [--out dir] [--cache dir] [--n N]
//         [--eps list] [--evaluator direct|fast|both] [--seed S] [key=value ...]
//
// Subcommands: modes, fpl-modes, grazing-study, relax, bench, validate.
// Config file entries are plain key=value; command-line key=value pairs and
// the named flags override them.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "graze/experiments.hpp"

using namespace graze;

int main(int argc, char** argv) {
    CLI::App app{"Fourier-Galerkin spectral method for the non cut-off Boltzmann equation "
                 "and its grazing-collision (FPL) limit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, cache_dir, evaluator, eps;
    int n = -1;
    std::string seed;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--cache", cache_dir, "cache directory");
        sub->add_option("--n", n, "modes per axis (lattice {-N..N}^3)");
        sub->add_option("--eps", eps, "comma-separated grazing parameters, decreasing");
        sub->add_option("--evaluator", evaluator, "direct|fast|both");
        sub->add_option("--seed", seed, "RNG seed for sampled pairs/states");
        sub->add_option("overrides", overrides, "extra key=value settings");
    };

    CLI::App* c_modes = app.add_subcommand("modes", "tabulate Boltzmann kernel modes");
    CLI::App* c_fpl = app.add_subcommand("fpl-modes", "build FPL/approx split kernel fields");
    CLI::App* c_graz = app.add_subcommand("grazing-study", "grazing-limit convergence study");
    CLI::App* c_relax = app.add_subcommand("relax", "homogeneous relaxation run");
    CLI::App* c_bench = app.add_subcommand("bench", "direct vs fast evaluator timings");
    CLI::App* c_val = app.add_subcommand("validate", "run module invariants at desk scale");
    for (CLI::App* sub : {c_modes, c_fpl, c_graz, c_relax, c_bench, c_val}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        KeyValues kv;
        if (!config_path.empty()) kv = KeyValues::parse_file(config_path);
        for (const std::string& ov : overrides) {
            KeyValues one = KeyValues::parse_text(ov);
            for (const auto& [k, v] : one.kv) kv.set(k, v);
        }
        if (!out_dir.empty()) kv.set("out", out_dir);
        if (!cache_dir.empty()) kv.set("cache", cache_dir);
        if (n >= 0) kv.set("n", std::to_string(n));
        if (!eps.empty()) kv.set("eps", eps);
        if (!evaluator.empty()) kv.set("evaluator", evaluator);
        if (!seed.empty()) kv.set("seed", seed);

        ExperimentConfig cfg = ExperimentConfig::build(kv);
        if (app.got_subcommand(c_modes)) return run_modes(cfg);
        if (app.got_subcommand(c_fpl)) return run_fpl_modes(cfg);
        if (app.got_subcommand(c_graz)) return run_grazing_study(cfg);
        if (app.got_subcommand(c_relax)) return run_relax(cfg);
        if (app.got_subcommand(c_bench)) return run_bench(cfg);
        if (app.got_subcommand(c_val)) return run_validate(cfg);
    } catch (const BlowupError& e) {
        std::fprintf(stderr, "error: %s (t = %g)\n", e.what(), e.time);
        return 3;
    } catch (const GrazeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
