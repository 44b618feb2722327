#include <doctest.h>

#include <cmath>
#include <random>

#include "graze/boltzmann_modes.hpp"
#include "graze/fpl_modes.hpp"
#include "graze/quadrature.hpp"
#include "oracles.hpp"

using namespace graze;

namespace {
QuadratureSpec quad_tol(double tol) {
    QuadratureSpec q;
    q.tol = tol;
    return q;
}
} // namespace

TEST_CASE("fpl_mode: trivial zeros, realness, symmetry") {
    GridConfig grid(4);
    QuadratureSpec q = quad_tol(1e-10);
    FplKernel fk{0.0, 1.0};
    CHECK(fpl_mode(fk, grid, {2, -1, 0}, {-2, 1, 0}, q) == 0.0); // k = 0
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> U(-4, 4);
    for (int t = 0; t < 4; ++t) {
        Vec3i l{U(rng), U(rng), U(rng)}, m{U(rng), U(rng), U(rng)};
        double b = fpl_mode(fk, grid, l, m, q);
        CHECK(b == doctest::Approx(fpl_mode(fk, grid, -l, -m, q)).epsilon(1e-9).scale(1.0));
    }
    CHECK_THROWS_AS(fpl_mode(FplKernel{-3.0, 1.0}, grid, {1, 0, 0}, {0, 1, 0}, q), DomainError);
}

TEST_CASE("fpl_mode_alt: l=m vanishes; radially symmetric case against the angular average") {
    GridConfig grid(4);
    QuadratureSpec q = quad_tol(1e-10);
    FplKernel fk{0.0, 1.0};
    CHECK(fpl_mode_alt(fk, grid, {1, 2, 0}, {1, 2, 0}, q) == 0.0);

    // l=(1,0,0), m=0: B = int Psi [m_perp]^2-[l_perp]^2 = -int Psi [l_perp]^2;
    // the angular average of [l_perp]^2 is (2/3)|l|^2, so the oracle is the
    // 1D radial integral -(2/3)|l|^2 * 4 pi * int rho^2 Psi(rho) drho
    double Q = grid.q_max;
    std::vector<double> x, w;
    gauss_on(200, 0.0, Q, x, w);
    double rad = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rad += w[i] * x[i] * x[i] * fk.psi(x[i]);
    double oracle = -(2.0 / 3.0) * 4.0 * M_PI * rad;
    CHECK(fpl_mode_alt(fk, grid, {1, 0, 0}, {0, 0, 0}, q) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("representation equivalence: alt form and split reassembly match fpl_mode") {
    QuadratureSpec q = quad_tol(1e-10);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> U(-4, 4);
    for (double gamma : {0.0, 1.0}) {
        GridConfig grid(4);
        FplKernel fk{gamma, 1.7};
        SplitKernel sk = build_split_kernel(fk, grid, q, FieldMethod::Radial1D);
        for (int t = 0; t < 5; ++t) {
            Vec3i l{U(rng), U(rng), U(rng)}, m{U(rng), U(rng), U(rng)};
            double v = fpl_mode(fk, grid, l, m, q);
            CHECK(v == doctest::Approx(fpl_mode_alt(fk, grid, l, m, q)).epsilon(2e-9).scale(1.0));
            CHECK(v == doctest::Approx(sk.reassemble(l, m).real()).epsilon(2e-9).scale(1.0));
        }
    }
}

TEST_CASE("split fields: 3D product quadrature equals the radial reduction") {
    GridConfig grid(2);
    QuadratureSpec q = quad_tol(1e-10);
    for (double gamma : {0.0, -1.0}) {
        FplKernel fk{gamma, 1.0};
        SplitKernel s3 = build_split_kernel(fk, grid, q, FieldMethod::Volume3D);
        SplitKernel s1 = build_split_kernel(fk, grid, q, FieldMethod::Radial1D);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(s3.F[j][i] - s1.F[j][i]));
            worst = std::max(worst, std::abs(s3.G[i] - s1.G[i]));
            for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(s3.I[j][i] - s1.I[j][i]));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("split kernel structure: G(0) closed form, F parity, k=0 reassembly") {
    GridConfig grid(2);
    QuadratureSpec q = quad_tol(1e-10);
    FplKernel fk{0.0, 2.5};
    SplitKernel sk = build_split_kernel(fk, grid, q, FieldMethod::Radial1D);
    double Q = grid.q_max;
    // G(0) = -(lambda0/8) * 4 pi Q^{gamma+5}/(gamma+5)
    double g0 = -(fk.lambda0 / 8.0) * 4.0 * M_PI * std::pow(Q, 5.0) / 5.0;
    CHECK(sk.G[grid.index({0, 0, 0})].real() == doctest::Approx(g0).epsilon(1e-12));
    // F_j is a real odd field: F(-m) = -F(m) = -conj(F(m))
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Vec3i m = grid.vector(i);
        for (int j = 0; j < 3; ++j) {
            CHECK(sk.F[j][grid.index(-m)].real() ==
                  doctest::Approx(-sk.F[j][i].real()).epsilon(1e-12).scale(1.0));
            CHECK(std::fabs(sk.F[j][i].imag()) < 1e-12);
        }
    }
    // reassembly at k = 0 vanishes exactly for the FPL variant
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Vec3i m = grid.vector(i);
        CHECK(std::abs(sk.reassemble(-m, m)) == 0.0);
    }
}

TEST_CASE("approx modes: trivial zero, drift term matches the exact modes family") {
    GridConfig grid(2);
    QuadratureSpec q = quad_tol(1e-9);
    GrazingFamily fam = GrazingFamily::rescaled(CrossSection::power_law(0.0, 0.5));
    CHECK(approx_boltzmann_mode(fam, 0.1, grid, {1, -1, 2}, {1, -1, 2}, q) == 0.0);

    // |approx - exact| shrinks along the eps ladder, and the approx split
    // kernel reassembles to approx_boltzmann_mode
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> U(-2, 2);
    std::vector<std::pair<Vec3i, Vec3i>> pairs;
    for (int t = 0; t < 3; ++t)
        pairs.push_back({{U(rng), U(rng), U(rng)}, {U(rng), U(rng), U(rng)}});
    double prev = 1e300;
    for (double eps : {0.2, 0.1, 0.05}) {
        BoltzmannModeComputer exact(fam, eps, grid, q);
        SplitKernel sk = build_split_kernel(fam, eps, grid, q, FieldMethod::Radial1D);
        double worst = 0.0;
        for (auto& [l, m] : pairs) {
            double ap = approx_boltzmann_mode(fam, eps, grid, l, m, q);
            worst = std::max(worst, std::fabs(ap - exact.mode(l, m)));
            CHECK(ap == doctest::Approx(sk.reassemble(l, m).real()).epsilon(5e-9).scale(1.0));
        }
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("approx split kernel: reassembly at k=0 carries the O(eps^2) companion field") {
    // B_approx(-m,m) = C(m) = 8 pi (w1 - w2) |m| int rho^{3+g} j1(rho|m|) drho,
    // nonzero at finite eps; shrinking like eps^2
    GridConfig grid(2);
    QuadratureSpec q = quad_tol(1e-10);
    GrazingFamily fam = GrazingFamily::rescaled(CrossSection::power_law(0.0, 0.5));
    Vec3i m{1, 1, 0};
    double prev = 0.0;
    for (double eps : {0.2, 0.1}) {
        SplitKernel sk = build_split_kernel(fam, eps, grid, q, FieldMethod::Radial1D);
        double c = sk.reassemble(-m, m).real();
        double direct = approx_boltzmann_mode(fam, eps, grid, -m, m, q);
        CHECK(c == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
        if (prev != 0.0) CHECK(std::fabs(c) == doctest::Approx(std::fabs(prev) / 4.0).epsilon(0.05));
        prev = c;
    }
}

TEST_CASE("split kernel persistence round trip") {
    GridConfig grid(2);
    QuadratureSpec q = quad_tol(1e-10);
    SplitKernel sk = build_split_kernel(FplKernel{0.5, 1.3}, grid, q, FieldMethod::Radial1D);
    std::string path = "test_split_cache.grzs";
    sk.save(path);
    SplitKernel back = SplitKernel::load(path);
    CHECK(back.N == sk.N);
    CHECK(back.gamma == sk.gamma);
    CHECK(back.G == sk.G);
    for (int j = 0; j < 3; ++j) CHECK(back.F[j] == sk.F[j]);
    for (int j = 0; j < 6; ++j) CHECK(back.I[j] == sk.I[j]);
    std::remove(path.c_str());
}

TEST_CASE("grazing limit: exact modes approach fpl modes (mini ladder)") {
    GridConfig grid(2);
    QuadratureSpec q = quad_tol(1e-9);
    GrazingFamily fam = GrazingFamily::rescaled(CrossSection::power_law(0.0, 0.5));
    FplKernel fpl{0.0, fam.lambda0};
    Vec3i l{1, 0, 0}, m{0, 1, 0};
    double bl = fpl_mode(fpl, grid, l, m, q);
    double prev = 1e300;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        BoltzmannModeComputer exact(fam, eps, grid, q);
        double d = std::fabs(exact.mode(l, m) - bl);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.01 * std::fabs(bl));
}
