#include <doctest.h>

#include <cmath>

#include "graze/quadrature.hpp"
#include "graze/special.hpp"

using namespace graze;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_on(8, -1.0, 3.0, x, w);
    // int_{-1}^{3} t^7 dt = (3^8 - 1)/8
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], 7);
    CHECK(acc == doctest::Approx((std::pow(3.0, 8) - 1.0) / 8.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre resolves oscillation at the expected node budget") {
    std::vector<double> x, w;
    gauss_on(48, 0.0, 2.0 * M_PI, x, w);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::cos(10.0 * x[i]);
    CHECK(std::fabs(acc) < 1e-12);
}

TEST_CASE("graded panels handle x^{-1/2} endpoint singularity") {
    PanelRule pr = graded_toward(0.0, 1.0, 12, graded_depth_for(1e-12));
    double acc = 0.0;
    for (std::size_t i = 0; i < pr.x.size(); ++i) acc += pr.w[i] / std::sqrt(pr.x[i]);
    CHECK(acc == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("graded_integrate converges and flags divergence") {
    bool ok = false;
    double v = graded_integrate(
        [](double t) {
            double s = std::sin(0.5 * t);
            return 2.0 * s * s / (t * t);
        },
        0.0, M_PI / 2.0, 14, 1e-12, ok);
    CHECK(ok);
    // closed form: Si(pi/2) - 2/pi
    double si = 0.0;
    {
        double x = M_PI / 2.0, term = x, sum = x;
        for (int k = 1; k < 40; ++k) {
            term *= -x * x / (2.0 * k * (2.0 * k + 1.0));
            sum += term / (2.0 * k + 1.0);
        }
        si = sum;
    }
    CHECK(v == doctest::Approx(si - 2.0 / M_PI).epsilon(1e-12));

    bool ok2 = true;
    (void)graded_integrate([](double t) { return 1.0 / t; }, 0.0, 1.0, 14, 1e-12, ok2);
    CHECK_FALSE(ok2);
}

TEST_CASE("stable special functions") {
    // spherical Bessel small-argument series vs direct formulas at moderate x
    for (double x : {0.2, 0.5, 1.7, 9.3}) {
        CHECK(sph_j1(x) == doctest::Approx((std::sin(x) - x * std::cos(x)) / (x * x)).epsilon(1e-13));
        double j2 = ((3.0 - x * x) * std::sin(x) - 3.0 * x * std::cos(x)) / (x * x * x);
        CHECK(sph_j2(x) == doctest::Approx(j2).epsilon(1e-12));
    }
    // j0 + j2 = 3 j1/x recurrence
    for (double x : {1e-3, 0.1, 2.0, 11.0})
        CHECK(sph_j0(x) + sph_j2(x) == doctest::Approx(3.0 * sph_j1_over_x(x)).epsilon(1e-12));

    // J0 - 1 series consistency at the switch point and tiny arguments
    CHECK(cyl_j0_m1(0.49999) == doctest::Approx(std::cyl_bessel_j(0.0, 0.49999) - 1.0).epsilon(1e-10));
    CHECK(cyl_j0_m1(1e-9) == doctest::Approx(-2.5e-19).epsilon(1e-6));

    // bracket: e^{i d1} J0(d2) - 1 keeps its O(delta^2) real part for tiny arguments
    Bracket b = grazing_bracket(3e-9, 2e-9);
    CHECK(b.re == doctest::Approx(-(3e-9 * 3e-9) / 2.0 - (2e-9 * 2e-9) / 4.0).epsilon(1e-6));
    CHECK(b.im == doctest::Approx(3e-9).epsilon(1e-9));

    CHECK(one_minus_cos(1e-9) == doctest::Approx(5e-19).epsilon(1e-8));
}
