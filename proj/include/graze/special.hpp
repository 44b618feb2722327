#ifndef GRAZE_SPECIAL_HPP
#define GRAZE_SPECIAL_HPP

#include <cmath>

#include <gsl/gsl_sf_bessel.h>

namespace graze {

// sin(x)/x
inline double sinc(double x) {
    if (std::fabs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// spherical Bessel j0
inline double sph_j0(double x) { return sinc(x); }

// spherical Bessel j1 = (sin x - x cos x)/x^2, series below the cancellation zone
inline double sph_j1(double x) {
    if (std::fabs(x) < 0.15) {
        double x2 = x * x;
        return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)));
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x);
}

// j1(x)/x, finite at 0 (-> 1/3)
inline double sph_j1_over_x(double x) {
    if (std::fabs(x) < 0.15) {
        double x2 = x * x;
        return (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0))) / 3.0;
    }
    return sph_j1(x) / x;
}

// spherical Bessel j2 = (3/x^3 - 1/x) sin x - 3 cos x / x^2
inline double sph_j2(double x) {
    if (std::fabs(x) < 0.3) {
        double x2 = x * x;
        return x2 / 15.0 * (1.0 - x2 / 14.0 * (1.0 - x2 / 36.0 * (1.0 - x2 / 66.0)));
    }
    double x2 = x * x;
    return ((3.0 - x2) * std::sin(x) - 3.0 * x * std::cos(x)) / (x2 * x);
}

// cylindrical Bessel J0 (GSL implementation: ~100ns/call, 2e-16 accuracy;
// std::cyl_bessel_j is ~25x slower in libstdc++)
inline double cyl_j0(double x) { return gsl_sf_bessel_J0(x); }

// J0(x) - 1 without cancellation; the grazing-limit quadratures multiply this
// by weights of order 1/eps^2, so the subtraction J0(x)-1 must not lose the
// O(x^2) leading term.
inline double cyl_j0_m1(double x) {
    double ax = std::fabs(x);
    if (ax < 0.5) {
        double t = x * x;
        return -t / 4.0 *
               (1.0 - t / 16.0 * (1.0 - t / 36.0 * (1.0 - t / 64.0 * (1.0 - t / 100.0 * (1.0 - t / 144.0)))));
    }
    return gsl_sf_bessel_J0(ax) - 1.0;
}

// 1 - cos(x) = 2 sin^2(x/2), stable for tiny x
inline double one_minus_cos(double x) {
    double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

// e^{i d1} J0(d2) - 1, cancellation-free real/imag parts.
struct Bracket {
    double re, im;
};
inline Bracket grazing_bracket(double d1, double d2) {
    double J = cyl_j0(d2);
    double s = std::sin(0.5 * d1);
    return {-2.0 * s * s * J + cyl_j0_m1(d2), std::sin(d1) * J};
}

} // namespace graze

#endif
