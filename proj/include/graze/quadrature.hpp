#ifndef GRAZE_QUADRATURE_HPP
#define GRAZE_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace graze {

// Gauss-Legendre rule on [-1,1]; nodes/weights cached per order.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// Nodes/weights mapped to [a,b].
void gauss_on(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

// Composite rule on [a,b] with panels geometrically refined toward `a`
// (ratio 1/2).  Handles integrable endpoint singularities like x^{-sigma},
// sigma < 1; depth chosen so the truncated tail below the innermost panel is
// negligible at tolerance `tol`.
struct PanelRule {
    std::vector<double> x, w;
};
PanelRule graded_toward(double a, double b, int nodes_per_panel, int n_panels);
int graded_depth_for(double tol);

// Integrate f over [a,b] with panels refined toward `a`, walking inward until
// the innermost panel contributes less than tol * |total| (at least
// `min_panels`, at most `max_panels` panels).  Returns the integral; sets
// `converged` false when the panel contributions fail to decay (divergent
// integrand).
double graded_integrate(const std::function<double(double)>& f, double a, double b,
                        int nodes_per_panel, double tol, bool& converged,
                        int min_panels = 24, int max_panels = 220);

} // namespace graze

#endif
