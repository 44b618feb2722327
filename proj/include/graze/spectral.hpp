#ifndef GRAZE_SPECTRAL_HPP
#define GRAZE_SPECTRAL_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "graze/boltzmann_modes.hpp"
#include "graze/fpl_modes.hpp"
#include "graze/lattice.hpp"

namespace graze {

using Coeffs = std::vector<std::complex<double>>;

// Fourier-Galerkin state: coefficients f_hat_k over k in {-N..N}^3 (lex order).
struct SpectralState {
    GridConfig grid;
    Coeffs coeffs;
    double time = 0.0;

    explicit SpectralState(const GridConfig& g) : grid(g), coeffs(g.size(), {0.0, 0.0}) {}

    std::complex<double>& at(Vec3i k) { return coeffs[grid.index(k)]; }
    const std::complex<double>& at(Vec3i k) const { return coeffs[grid.index(k)]; }

    double mass() const { return std::pow(2.0 * M_PI, 3) * coeffs[grid.index({0, 0, 0})].real(); }
    // max |f_k - conj(f_{-k})| over the box
    double hermitian_residual() const;
    void enforce_hermitian();
};

struct Moments {
    double mass = 0.0;
    Vec3d momentum{0.0, 0.0, 0.0};
    double energy = 0.0;
};

// Projection of compactly supported initial data by the discrete transform on
// an n_grid^3 uniform grid over [-pi,pi)^3.  n_grid >= 2(2N+1) so the
// quadratic collision term is alias-free on the retained modes.
// Support outside B(0,R) beyond 1e-14: throws in strict mode, else counts.
struct ProjectionReport {
    std::size_t support_violations = 0;
    double worst_violation = 0.0;
};
SpectralState project_initial(const std::function<double(Vec3d)>& f, const GridConfig& grid,
                              int n_grid, bool strict_support = false,
                              ProjectionReport* report = nullptr);

// physical-space reconstruction on an n_grid^3 uniform grid (row-major lex v index)
std::vector<double> reconstruct(const SpectralState& s, int n_grid);

Moments moments(const SpectralState& s, int n_grid);

// O(N^6) Galerkin sum: out_k = sum_{l+m=k} f_l f_m B(l,m); mode_at(l,m) is any
// inlineable mode source.
template <class ModeAt>
Coeffs collision_direct_with(const SpectralState& s, ModeAt&& mode_at, unsigned threads = 0);

Coeffs collision_direct(const SpectralState& s, const ModeTensor& modes, unsigned threads = 0);
Coeffs collision_direct(const SpectralState& s, const SplitKernel& split, unsigned threads = 0);

// O(N^3 log N) evaluator: each inner sum is a linear convolution of f_hat with
// a field-weighted f_hat, via zero-padded FFTs (size >= 4N+2 per axis), then
// combined with the k multipliers.
class FastEvaluator {
public:
    FastEvaluator(const SplitKernel& split, const GridConfig& grid);
    ~FastEvaluator();
    FastEvaluator(const FastEvaluator&) = delete;
    FastEvaluator& operator=(const FastEvaluator&) = delete;

    Coeffs operator()(const SpectralState& s);
    int fft_size() const { return L_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int L_;
};

using Evaluator = std::function<Coeffs(const SpectralState&)>;

// one explicit RK4 step; Hermitian symmetry re-enforced afterwards
SpectralState step_rk4(const SpectralState& s, const Evaluator& rhs, double dt,
                       double blowup_limit = 1e6);

// max_k sum_m |B(k-m,m)| |f_m|: linearized growth estimate used for the
// default time step dt = 0.1 / estimate.
template <class ModeAt>
double growth_estimate_with(const SpectralState& s, ModeAt&& mode_at, unsigned threads = 0);
double growth_estimate(const SpectralState& s, const SplitKernel& split, unsigned threads = 0);
double growth_estimate(const SpectralState& s, const ModeTensor& modes, unsigned threads = 0);

// sqrt((2 pi)^3 sum |a_k - b_k|^2); coefficient arrays on the same lattice
double l2_distance(const Coeffs& a, const Coeffs& b);

// CSV snapshots (deterministic lexicographic ordering)
void save_coeffs_csv(const SpectralState& s, const std::string& path,
                     const std::vector<std::string>& header_comments);
void save_physical_csv(const SpectralState& s, int n_grid, const std::string& path,
                       const std::vector<std::string>& header_comments);

// ---- template implementations ----

template <class ModeAt>
Coeffs collision_direct_with(const SpectralState& s, ModeAt&& mode_at, unsigned threads) {
    const GridConfig& g = s.grid;
    const std::size_t nb = g.size();
    Coeffs out(nb, {0.0, 0.0});
    const int N = g.N;
    parallel_for(nb, [&](std::size_t ik) {
        Vec3i k = g.vector(ik);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t im = 0; im < nb; ++im) {
            Vec3i m = g.vector(im);
            Vec3i l = k - m;
            if (std::abs(l[0]) > N || std::abs(l[1]) > N || std::abs(l[2]) > N) continue;
            acc += s.coeffs[g.index(l)] * s.coeffs[im] * mode_at(l, m);
        }
        out[ik] = acc;
    }, threads);
    return out;
}

template <class ModeAt>
double growth_estimate_with(const SpectralState& s, ModeAt&& mode_at, unsigned threads) {
    const GridConfig& g = s.grid;
    const std::size_t nb = g.size();
    const int N = g.N;
    std::vector<double> row(nb, 0.0);
    parallel_for(nb, [&](std::size_t ik) {
        Vec3i k = g.vector(ik);
        double acc = 0.0;
        for (std::size_t im = 0; im < nb; ++im) {
            Vec3i m = g.vector(im);
            Vec3i l = k - m;
            if (std::abs(l[0]) > N || std::abs(l[1]) > N || std::abs(l[2]) > N) continue;
            acc += std::abs(mode_at(l, m)) * std::abs(s.coeffs[im]);
        }
        row[ik] = acc;
    }, threads);
    double mx = 0.0;
    for (double v : row) mx = std::max(mx, v);
    return mx;
}

} // namespace graze

#endif
