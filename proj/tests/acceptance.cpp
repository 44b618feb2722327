// Acceptance suite: one line per criterion, exit code = number of failures.
// An optional argv[1] (1..10) restricts the run to a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "graze/experiments.hpp"
#include "graze/parallel.hpp"
#include "graze/spectral.hpp"

using namespace graze;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %2d [%s]: %s  (%s)\n", idx, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

std::vector<std::pair<Vec3i, Vec3i>> seeded_pairs(int N, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> U(-N, N);
    std::vector<std::pair<Vec3i, Vec3i>> out;
    for (int i = 0; i < count; ++i)
        out.push_back({{U(rng), U(rng), U(rng)}, {U(rng), U(rng), U(rng)}});
    return out;
}

// class-memoized evaluation over a pair sample
std::vector<double> memo_eval(const std::vector<std::pair<Vec3i, Vec3i>>& pairs,
                              const std::function<double(Vec3i, Vec3i)>& fn) {
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<std::pair<Vec3i, Vec3i>> reps;
    for (const auto& p : pairs) {
        std::uint64_t key = ClassKey::from_pair(p.first, p.second).packed();
        if (slot.emplace(key, reps.size()).second) reps.push_back(p);
    }
    std::vector<double> cv(reps.size());
    parallel_for(cv.size(), [&](std::size_t i) { cv[i] = fn(reps[i].first, reps[i].second); });
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out[i] = cv[slot.at(ClassKey::from_pair(pairs[i].first, pairs[i].second).packed())];
    return out;
}

SpectralState random_hermitian(const GridConfig& g, std::uint64_t seed, double amp) {
    SpectralState s(g);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> G(0.0, 1.0);
    for (auto& c : s.coeffs) c = {amp * G(rng), amp * G(rng)};
    s.enforce_hermitian();
    return s;
}

// ---------------------------------------------------------------- 1
void criterion1() {
    GridConfig grid(4);
    QuadratureSpec q;
    q.tol = 1e-10;
    BoltzmannModeComputer comp(CrossSection::cutoff(0.0), grid, q);
    auto pairs = seeded_pairs(4, 20240117, 100);

    std::vector<double> dev_ll(pairs.size()), dev_lm(pairs.size()), dev_im(pairs.size()),
        dev_null(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        auto [l, m] = pairs[i];
        double b = comp.mode(l, m);
        dev_ll[i] = std::fabs(b - comp.mode(-l, -m));
        dev_lm[i] = std::fabs(b - comp.mode(-l, m));
        std::complex<double> raw = comp.mode_raw(l, m, 96, 110);
        dev_im[i] = std::fabs(raw.imag());
        dev_null[i] = std::fabs(comp.mode(-m, m));
    });
    double w1 = 0, w2 = 0, w3 = 0, w4 = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        w1 = std::max(w1, dev_ll[i]);
        w2 = std::max(w2, dev_lm[i]);
        w3 = std::max(w3, dev_im[i]);
        w4 = std::max(w4, dev_null[i]);
    }
    bool pass = w1 <= 1e-8 && w2 <= 1e-8 && w3 <= 1e-8 && w4 <= 1e-8;
    report(1, "mode symmetry suite", pass,
           fmt("N=4 cutoff kernel, 100 seeded pairs: |B-B(-l,-m)|<=%.1e, |B-B(-l,m)|<=%.1e, "
               "imag<=%.1e, |B(-m,m)|<=%.1e (tol 1e-8)",
               w1, w2, w3, w4));
}

// ---------------------------------------------------------------- 2
void criterion2() {
    GridConfig grid(4);
    QuadratureSpec q;
    q.tol = 1e-10;
    BoltzmannModeComputer comp(CrossSection::vhs(0.0, 1.0), grid, q);
    auto pairs = study_sample(4, 20240118);
    std::vector<double> quad_vals = memo_eval(pairs, [&](Vec3i l, Vec3i m) { return comp.mode(l, m); });
    std::vector<double> vhs_vals =
        memo_eval(pairs, [&](Vec3i l, Vec3i m) { return compute_mode_vhs(0.0, 1.0, grid, l, m, q); });
    double worst = 0.0;
    for (std::size_t i = 0; i < quad_vals.size(); ++i)
        worst = std::max(worst, std::fabs(quad_vals[i] - vhs_vals[i]));

    // one-time verification of the reduction constant: the radial integral of
    // the 1D formula times C must reproduce the direct quadrature value
    Vec3i l{1, 0, 0}, m{0, 0, 0};
    double radial = vhs_radial_integral_maxwell(norm(l + m), norm(l - m), 2.0 * norm(m),
                                                grid.lambda * M_PI);
    double c_measured = comp.mode(l, m) / radial;
    double c_used = vhs_constant(0.0, 1.0);
    bool const_ok = std::fabs(c_measured - c_used) <= 1e-6 * std::fabs(c_used);

    bool pass = worst <= 1e-8 && const_ok;
    report(2, "VHS 1D reduction", pass,
           fmt("max|quad-1D|=%.2e (tol 1e-8); C_measured=%.8f vs C_used=(4pi)^2 2^{3+a}=%.8f",
               worst, c_measured, c_used));
}

// ---------------------------------------------------------------- 3 & 4
void criteria34() {
    GridConfig grid(4);
    QuadratureSpec q;
    q.tol = 1e-9;
    GrazingFamily fam = GrazingFamily::rescaled(CrossSection::power_law(0.0, 0.5));
    FplKernel fpl{0.0, fam.lambda0};
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    auto pairs = study_sample(4, 20240119);

    std::vector<double> bl = memo_eval(pairs, [&](Vec3i l, Vec3i m) {
        return fpl_mode(fpl, grid, l, m, q);
    });
    std::vector<double> max_efpl, max_ae;
    for (double eps : eps_list) {
        BoltzmannModeComputer exact(fam, eps, grid, q);
        std::vector<double> be = memo_eval(pairs, [&](Vec3i l, Vec3i m) { return exact.mode(l, m); });
        std::vector<double> ba = memo_eval(pairs, [&](Vec3i l, Vec3i m) {
            return approx_boltzmann_mode(fam, eps, grid, l, m, q);
        });
        double m1 = 0, m2 = 0;
        for (std::size_t i = 0; i < be.size(); ++i) {
            m1 = std::max(m1, std::fabs(be[i] - bl[i]));
            m2 = std::max(m2, std::fabs(ba[i] - be[i]));
        }
        max_efpl.push_back(m1);
        max_ae.push_back(m2);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < max_efpl.size(); ++i)
        decreasing = decreasing && max_efpl[i] < max_efpl[i - 1];
    double ratio = max_efpl.back() / max_efpl.front();
    bool pass3 = decreasing && ratio <= 0.10;
    report(3, "grazing-limit convergence", pass3,
           fmt("max|B_eps-B_L| = {%.3e, %.3e, %.3e, %.3e}, final/initial = %.4f (<= 0.10)",
               max_efpl[0], max_efpl[1], max_efpl[2], max_efpl[3], ratio));

    double slope = loglog_slope(eps_list, max_ae);
    bool pass4 = std::fabs(slope - 1.0) <= 0.3;
    report(4, "first-order approximation slope", pass4,
           fmt("fitted |B_approx-B_eps| slope = %.3f, required within 1 +- 0.3; measured decay "
               "is second order in eps for the rescaled family (see decisions ledger)",
               slope));
}

// ---------------------------------------------------------------- 5
void criterion5() {
    QuadratureSpec q;
    q.tol = 1e-9;
    GridConfig grid(4);
    auto pairs = study_sample(4, 20240120);
    double worst_alt = 0.0, worst_forms = 0.0;
    for (double gamma : {0.0, 1.0}) {
        FplKernel fk{gamma, 1.0};
        std::vector<double> v_main = memo_eval(pairs, [&](Vec3i l, Vec3i m) {
            return fpl_mode(fk, grid, l, m, q);
        });
        std::vector<double> v_alt = memo_eval(pairs, [&](Vec3i l, Vec3i m) {
            return fpl_mode_alt(fk, grid, l, m, q);
        });
        // grazing2-form vs clandau2-form, evaluated through the public
        // drift-diffusion integral with independent radial weights
        std::vector<double> v_g2 = memo_eval(pairs, [&](Vec3i l, Vec3i m) {
            Vec3i k = l + m;
            if (k == Vec3i{0, 0, 0}) return 0.0;
            auto z = drift_diffusion_integral([gamma](double r) { return std::pow(r, gamma); },
                                              -fk.lambda0 / 2.0, -fk.lambda0 / 8.0, to_d(k), m,
                                              grid, 120, 140, gamma);
            return z.real();
        });
        std::vector<double> v_cl = memo_eval(pairs, [&](Vec3i l, Vec3i m) {
            Vec3i k = l + m;
            if (k == Vec3i{0, 0, 0}) return 0.0;
            auto z = drift_diffusion_integral([&fk](double r) { return fk.psi(r) / (r * r); },
                                              -4.0, -1.0, to_d(k), m, grid, 120, 140, gamma);
            return z.real();
        });
        for (std::size_t i = 0; i < v_main.size(); ++i) {
            worst_alt = std::max(worst_alt, std::fabs(v_main[i] - v_alt[i]));
            worst_forms = std::max(worst_forms, std::fabs(v_g2[i] - v_cl[i]));
        }
    }
    bool pass = worst_alt <= 2e-8 && worst_forms <= 2e-8;
    report(5, "FPL representation equivalence", pass,
           fmt("gamma in {0,1}: max|fpl-alt|=%.2e, max|grazing2-clandau2|=%.2e (tol 2e-8)",
               worst_alt, worst_forms));
}

// ---------------------------------------------------------------- 6
void criterion6() {
    QuadratureSpec q;
    q.tol = 1e-10;
    // fast/direct equivalence at N in {4, 8}
    double worst_rel = 0.0;
    for (int N : {4, 8}) {
        GridConfig grid(N);
        SplitKernel sk = build_split_kernel(FplKernel{0.0, 1.0}, grid, q, FieldMethod::Radial1D);
        SpectralState s = random_hermitian(grid, 777 + N, 0.01);
        Coeffs dir = collision_direct(s, sk);
        FastEvaluator fast(sk, grid);
        Coeffs fst = fast(s);
        double w = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < dir.size(); ++i) {
            w = std::max(w, std::abs(dir[i] - fst[i]));
            scale = std::max(scale, std::abs(dir[i]));
        }
        worst_rel = std::max(worst_rel, w / scale);
    }

    // cost exponents over N = {4, 8, 16}, single-threaded timings
    std::vector<double> ns, td, tf;
    double t16_direct = 0.0, t16_fast = 0.0;
    for (int N : {4, 8, 16}) {
        GridConfig grid(N);
        SplitKernel sk = build_split_kernel(FplKernel{0.0, 1.0}, grid, q, FieldMethod::Radial1D);
        SpectralState s = random_hermitian(grid, 1000 + N, 0.01);
        auto best = [&](const std::function<void(void)>& f, int reps) {
            double b = 1e300;
            for (int r = 0; r < reps; ++r) {
                auto a0 = std::chrono::steady_clock::now();
                f();
                auto a1 = std::chrono::steady_clock::now();
                b = std::min(b, std::chrono::duration<double>(a1 - a0).count());
            }
            return b;
        };
        double tdv = best([&] { volatile double x = collision_direct(s, sk, 1)[0].real(); (void)x; },
                          N >= 16 ? 2 : 3);
        FastEvaluator fast(sk, grid);
        double tfv = best([&] { volatile double x = fast(s)[0].real(); (void)x; }, 5);
        ns.push_back(N);
        td.push_back(tdv);
        tf.push_back(tfv);
        if (N == 16) {
            t16_direct = tdv;
            t16_fast = tfv;
        }
        std::printf("  bench N=%2d: direct %.4fs fast %.4fs\n", N, tdv, tfv);
    }
    double ed = loglog_slope(ns, td), ef = loglog_slope(ns, tf);
    bool pass = worst_rel <= 1e-12 && t16_fast < t16_direct && ef <= 4.0 && ed >= 5.5;
    report(6, "fast/direct equivalence and cost", pass,
           fmt("max rel |fast-direct| = %.2e (tol 1e-12); exponents: direct %.2f (>=5.5), "
               "fast %.2f (<=4); fast cheaper at N=16: %s",
               worst_rel, ed, ef, t16_fast < t16_direct ? "yes" : "no"));
}

// ---------------------------------------------------------------- 7
void criterion7() {
    QuadratureSpec q;
    q.tol = 1e-10;
    // an off-center Maxwellian keeps every mode active while staying stable at
    // desk-scale N; mass conservation is the property under test
    auto off_center = [](Vec3d v) {
        double T = 0.16, u0 = 0.2;
        double nrm = 1.0 / std::pow(2.0 * M_PI * T, 1.5);
        double a = (v[0] - u0) * (v[0] - u0) + v[1] * v[1] + v[2] * v[2];
        return nrm * std::exp(-a / (2.0 * T));
    };

    struct Prepared {
        Evaluator rhs;
        double lam_hat;
    };
    struct Variant {
        std::string name;
        int N;
        std::function<Prepared(const GridConfig&, const SpectralState&)> make;
        double drift = 0.0;
        bool asserted = true;
    };
    std::vector<Variant> variants;

    variants.push_back({"boltzmann-cutoff(quadrature,N=2)", 2,
                        [&](const GridConfig& g, const SpectralState& s0) -> Prepared {
                            BoltzmannModeComputer comp(CrossSection::cutoff(0.0), g, q);
                            auto t = std::make_shared<ModeTensor>(build_mode_tensor(
                                [&](Vec3i l, Vec3i m) { return comp.mode(l, m); }, g, q.tol,
                                "cutoff"));
                            return {[t](const SpectralState& s) { return collision_direct(s, *t); },
                                    growth_estimate(s0, *t)};
                        },
                        0.0, true});
    variants.push_back({"vhs-maxwell(closed form,N=5)", 5,
                        [&](const GridConfig& g, const SpectralState& s0) -> Prepared {
                            double c = 1.0 / (16.0 * M_PI * M_PI);
                            auto t = std::make_shared<ModeTensor>(build_mode_tensor(
                                [&, c](Vec3i l, Vec3i m) {
                                    return compute_mode_vhs(0.0, c, g, l, m, q);
                                },
                                g, q.tol, "vhs-maxwell"));
                            return {[t](const SpectralState& s) { return collision_direct(s, *t); },
                                    growth_estimate(s0, *t)};
                        },
                        0.0, true});
    variants.push_back({"fpl(split,fast,N=6)", 6,
                        [&](const GridConfig& g, const SpectralState& s0) -> Prepared {
                            auto sk = std::make_shared<SplitKernel>(build_split_kernel(
                                FplKernel{0.0, 2.0}, g, q, FieldMethod::Radial1D));
                            auto fe = std::make_shared<FastEvaluator>(*sk, g);
                            return {[fe](const SpectralState& s) { return (*fe)(s); },
                                    growth_estimate(s0, *sk)};
                        },
                        0.0, true});
    variants.push_back({"approx-boltzmann(split,N=4,eps=0.1)", 4,
                        [&](const GridConfig& g, const SpectralState& s0) -> Prepared {
                            GrazingFamily fam =
                                GrazingFamily::rescaled(CrossSection::power_law(0.0, 0.5));
                            auto sk = std::make_shared<SplitKernel>(build_split_kernel(
                                fam, 0.1, g, q, FieldMethod::Radial1D));
                            return {[sk](const SpectralState& s) { return collision_direct(s, *sk); },
                                    growth_estimate(s0, *sk)};
                        },
                        0.0, false}); // O(eps^2) mass defect of eq. approx: reported only

    bool pass = true;
    std::string detail;
    for (auto& var : variants) {
        GridConfig grid(var.N);
        int n_grid = std::max(2 * (2 * var.N + 1), 24);
        SpectralState s0 = project_initial(off_center, grid, n_grid, false);
        Prepared prep = var.make(grid, s0);
        Evaluator rhs = prep.rhs;
        double t_end = 2.0;
        double dt = std::min(0.01, 1.0 / prep.lam_hat);
        long steps = (long)std::ceil(t_end / dt);
        dt = t_end / (double)steps;
        SpectralState s = s0;
        double m0 = s0.mass();
        Moments mom0 = moments(s0, n_grid);
        for (long i = 0; i < steps; ++i) s = step_rk4(s, rhs, dt);
        var.drift = std::fabs(s.mass() - m0) / std::fabs(m0);
        Moments mom1 = moments(s, n_grid);
        std::printf("  relax[%s]: steps=%ld mass drift %.2e | energy drift %.2e, momentum drift "
                    "%.2e (reported)\n",
                    var.name.c_str(), steps, var.drift,
                    std::fabs(mom1.energy - mom0.energy),
                    std::fabs(mom1.momentum[0] - mom0.momentum[0]));
        if (var.asserted && var.drift > 1e-8) pass = false;
        detail += fmt("%s%s: %.1e", detail.empty() ? "" : "; ", var.name.c_str(), var.drift);
    }
    report(7, "mass conservation", pass, detail + " (tol 1e-8 on asserted variants)");
}

// ---------------------------------------------------------------- 8
void criterion8() {
    QuadratureSpec q;
    q.tol = 1e-10;
    const int Nref = 16;
    GridConfig gref(Nref);
    auto maxw = [](Vec3d v) {
        double T = 0.15;
        return std::exp(-dot(v, v) / (2.0 * T)) / std::pow(2.0 * M_PI * T, 1.5);
    };
    SpectralState sref = project_initial(maxw, gref, 70, false);
    SplitKernel skref = build_split_kernel(FplKernel{0.0, 1.0}, gref, q, FieldMethod::Radial1D);
    FastEvaluator fref(skref, gref);
    Coeffs qref = fref(sref);

    std::vector<double> ns, errs;
    for (int N : {4, 6, 8}) {
        GridConfig g(N);
        SpectralState s(g);
        for (std::size_t i = 0; i < g.size(); ++i)
            s.coeffs[i] = sref.coeffs[gref.index(g.vector(i))];
        SplitKernel sk = build_split_kernel(FplKernel{0.0, 1.0}, g, q, FieldMethod::Radial1D);
        FastEvaluator fe(sk, g);
        Coeffs qn = fe(s);
        // L2 distance over the reference lattice, small-N output zero-extended
        Coeffs qn_ext(gref.size(), {0.0, 0.0});
        for (std::size_t i = 0; i < g.size(); ++i)
            qn_ext[gref.index(g.vector(i))] = qn[i];
        errs.push_back(l2_distance(qn_ext, qref));
        ns.push_back(N);
    }
    double s1 = std::log(errs[1] / errs[0]) / std::log(6.0 / 4.0);
    double s2 = std::log(errs[2] / errs[1]) / std::log(8.0 / 6.0);
    bool pass = errs[0] > errs[1] && errs[1] > errs[2] && std::fabs(s2) > std::fabs(s1);
    report(8, "spectral consistency", pass,
           fmt("L2 errors vs N_ref=16: {%.3e, %.3e, %.3e}; local slopes %.2f -> %.2f "
               "(magnitude increasing => super-algebraic)",
               errs[0], errs[1], errs[2], s1, s2));
}

// ---------------------------------------------------------------- 9
void criterion9() {
    QuadratureSpec q;
    q.tol = 1e-10;
    const int N = 8;
    GridConfig grid(N);
    int n_grid = 2 * (2 * N + 1) + 2;
    auto two_bump = [](Vec3d v) {
        double T = 0.16, u0 = 0.35;
        double nrm = 0.5 / std::pow(2.0 * M_PI * T, 1.5);
        double a = (v[0] - u0) * (v[0] - u0) + v[1] * v[1] + v[2] * v[2];
        double b = (v[0] + u0) * (v[0] + u0) + v[1] * v[1] + v[2] * v[2];
        return nrm * (std::exp(-a / (2.0 * T)) + std::exp(-b / (2.0 * T)));
    };
    SpectralState s0 = project_initial(two_bump, grid, n_grid, false);

    // matched Maxwellian from the t=0 moments, held fixed
    Moments mo = moments(s0, n_grid);
    double rho = mo.mass;
    Vec3d u{mo.momentum[0] / rho, mo.momentum[1] / rho, mo.momentum[2] / rho};
    double T = (2.0 * mo.energy / rho - dot(u, u)) / 3.0;
    auto mx = [rho, u, T](Vec3d v) {
        Vec3d w{v[0] - u[0], v[1] - u[1], v[2] - u[2]};
        return rho / std::pow(2.0 * M_PI * T, 1.5) * std::exp(-dot(w, w) / (2.0 * T));
    };
    SpectralState smax = project_initial(mx, grid, n_grid, false);

    SplitKernel sk = build_split_kernel(FplKernel{0.0, 0.7}, grid, q, FieldMethod::Radial1D);
    FastEvaluator fast(sk, grid);
    Evaluator rhs = [&](const SpectralState& s) { return fast(s); };
    double t_end = 4.0;
    double dt = 0.003;
    long steps = (long)std::ceil(t_end / dt);
    dt = t_end / (double)steps;
    long emit_every = std::max(1L, steps / 80);

    std::vector<double> dist;
    SpectralState s = s0;
    dist.push_back(l2_distance(s.coeffs, smax.coeffs));
    for (long i = 0; i < steps; ++i) {
        s = step_rk4(s, rhs, dt);
        if ((i + 1) % emit_every == 0 || i + 1 == steps)
            dist.push_back(l2_distance(s.coeffs, smax.coeffs));
    }
    std::size_t half = dist.size() / 2;
    bool monotone = true;
    for (std::size_t i = half + 1; i < dist.size(); ++i)
        if (dist[i] > dist[i - 1] * (1.0 + 1e-12)) monotone = false;
    report(9, "relaxation trend", monotone,
           fmt("FPL gamma=0, two Maxwellians, t in [0,4], %ld steps: L2 distance %.4e -> %.4e "
               "-> %.4e; nonincreasing over final half: %s",
               steps, dist.front(), dist[half], dist.back(), monotone ? "yes" : "no"));
}

// ---------------------------------------------------------------- 10
void criterion10() {
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    auto run_twice = [&](const std::string& args, const std::string& file) {
        for (const char* dir : {"acc_det_a", "acc_det_b"}) {
            KeyValues kv = KeyValues::parse_text(args);
            kv.set("out", dir);
            ExperimentConfig cfg = ExperimentConfig::build(kv);
            if (kv.get("mode", "") == "relax")
                run_relax(cfg);
            else
                run_grazing_study(cfg);
        }
        bool same = slurp(std::string("acc_det_a/") + file) == slurp(std::string("acc_det_b/") + file) &&
                    !slurp(std::string("acc_det_a/") + file).empty();
        fs::remove_all("acc_det_a");
        fs::remove_all("acc_det_b");
        return same;
    };
    bool relax_ok = run_twice(
        "mode=relax\nkind=fpl\nlambda0=1\nn=2\nt_end=0.05\nevaluator=both\nseed=11\n",
        "relax_fast.csv");
    bool study_ok = run_twice(
        "mode=study\nkind=rescaled\nnu=0.5\ngamma=0\nn=1\neps=0.1,0.05\nseed=11\ntol=1e-9\n",
        "grazing_study.csv");
    report(10, "determinism", relax_ok && study_ok,
           fmt("byte-identical reruns: relax %s, grazing-study %s", relax_ok ? "yes" : "no",
               study_ok ? "yes" : "no"));
}

} // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    auto want = [&](int i) { return only == 0 || only == i; };
    auto t0 = std::chrono::steady_clock::now();
    if (want(1)) criterion1();
    if (want(2)) criterion2();
    if (want(3) || want(4)) criteria34();
    if (want(5)) criterion5();
    if (want(6)) criterion6();
    if (want(7)) criterion7();
    if (want(8)) criterion8();
    if (want(9)) criterion9();
    if (want(10)) criterion10();
    auto t1 = std::chrono::steady_clock::now();
    std::printf("acceptance: %d failure(s), %.1f s\n", g_failures,
                std::chrono::duration<double>(t1 - t0).count());
    return g_failures;
}
