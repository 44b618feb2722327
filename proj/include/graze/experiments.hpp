#ifndef GRAZE_EXPERIMENTS_HPP
#define GRAZE_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "graze/config.hpp"

namespace graze {

// Resolved run configuration for the experiment subcommands.  Everything is
// carried in the key=value map (hashed into every CSV header); the fields
// below are the validated views the runners use.
struct ExperimentConfig {
    KeyValues kv;
    KernelSpec kernel;
    std::string out_dir = ".";
    std::string cache_dir;
    int N = 4;
    std::vector<double> eps_list;
    std::string evaluator = "direct";
    std::uint64_t seed = 12345;
    double tol = 1e-10;
    unsigned threads = 0;

    static ExperimentConfig build(const KeyValues& kv);
    std::vector<std::string> csv_header() const;
    std::string out_path(const std::string& name) const;
};

// Subcommand runners; each writes its outputs under out_dir and returns the
// process exit code.
int run_modes(const ExperimentConfig& cfg);
int run_fpl_modes(const ExperimentConfig& cfg);
int run_grazing_study(const ExperimentConfig& cfg);
int run_relax(const ExperimentConfig& cfg);
int run_bench(const ExperimentConfig& cfg);
int run_validate(const ExperimentConfig& cfg);

// sample set for mode studies: all pairs with |l|inf,|m|inf <= min(2,N) plus
// `extra` seeded-random pairs drawn from the full box
std::vector<std::pair<Vec3i, Vec3i>> study_sample(int N, std::uint64_t seed, int extra = 50);

// least-squares slope of log(y) against log(x); NaN when underdetermined
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace graze

#endif
