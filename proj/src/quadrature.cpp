#include "graze/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace graze {

static GaussRule compute_gauss(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    // Newton iteration on Legendre P_n, symmetric roots
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double wgt = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = wgt;
        r.w[n - 1 - i] = wgt;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    thread_local std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

void gauss_on(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    const GaussRule& r = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        x[i] = mid + half * r.x[i];
        w[i] = half * r.w[i];
    }
}

int graded_depth_for(double tol) {
    // x^{-1/2}-type tails shrink by sqrt(1/2) per panel; 2*log2(1/tol) panels
    // push the unresolved tail below tol.
    int d = (int)std::ceil(2.0 * std::log2(1.0 / tol)) + 8;
    if (d < 40) d = 40;
    if (d > 140) d = 140;
    return d;
}

PanelRule graded_toward(double a, double b, int nodes_per_panel, int n_panels) {
    PanelRule out;
    out.x.reserve((std::size_t)nodes_per_panel * n_panels);
    out.w.reserve((std::size_t)nodes_per_panel * n_panels);
    double hi = b;
    double width = b - a;
    std::vector<double> px, pw;
    for (int p = 0; p < n_panels; ++p) {
        width *= 0.5;
        double lo = (p == n_panels - 1) ? a : a + width;
        gauss_on(nodes_per_panel, lo, hi, px, pw);
        // innermost panels first is irrelevant; keep outer->inner order deterministic
        for (int i = 0; i < nodes_per_panel; ++i) {
            out.x.push_back(px[i]);
            out.w.push_back(pw[i]);
        }
        hi = lo;
        if (lo == a) break;
    }
    return out;
}

double graded_integrate(const std::function<double(double)>& f, double a, double b,
                        int nodes_per_panel, double tol, bool& converged,
                        int min_panels, int max_panels) {
    double total = 0.0;
    double hi = b;
    double width = b - a;
    double last = 0.0;
    converged = false;
    std::vector<double> px, pw;
    for (int p = 0; p < max_panels; ++p) {
        width *= 0.5;
        double lo = a + width;
        gauss_on(nodes_per_panel, lo, hi, px, pw);
        double contrib = 0.0;
        for (int i = 0; i < nodes_per_panel; ++i) contrib += pw[i] * f(px[i]);
        total += contrib;
        hi = lo;
        double scale = std::fabs(total) > 1.0 ? std::fabs(total) : 1.0;
        double thresh = 0.25 * tol * scale; // geometric tail below the last panel stays under tol
        if (p >= min_panels && std::fabs(contrib) < thresh && std::fabs(last) < thresh) {
            converged = true;
            break;
        }
        last = contrib;
    }
    return total;
}

} // namespace graze
