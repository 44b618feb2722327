#ifndef GRAZE_CROSS_SECTIONS_HPP
#define GRAZE_CROSS_SECTIONS_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graze/errors.hpp"

namespace graze {

// Collision kernel B(q,theta) = |q|^gamma * b(cos theta), stored through the
// angular density zeta(theta) = b(cos theta) sin theta.  Physical (possibly
// singular) kernels live on (0, pi/2]; angle-independent kernels (VHS) carry
// no angular factor and extend over the whole sigma sphere, support (0, pi].
struct CrossSection {
    double gamma = 0.0;
    double nu = 0.0;                       // zeta ~ theta^{-(1+nu)} near 0; 0 for regular
    std::function<double(double)> zeta;    // angular density on (0, support_max]
    double support_max = M_PI / 2.0;
    std::optional<double> s_force;
    std::string tag = "custom";

    void validate() const;

    // b == 1 on (0, pi/2]: zeta = sin(theta)
    static CrossSection cutoff(double gamma);
    // zeta(theta) = amplitude * theta^{-(1+nu)} on (0, pi/2]
    static CrossSection power_law(double gamma, double nu, double amplitude = 1.0);
    // angle-independent C_alpha |q|^alpha over the full sphere: zeta = C_alpha sin(theta) on (0, pi]
    static CrossSection vhs(double alpha, double c_alpha = 1.0);
    // inverse s-force kernel: gamma = (s-5)/(s-1), nu = 2/(s+1)
    static CrossSection inverse_power(double s, double amplitude = 1.0);
    static CrossSection custom(double gamma, double nu, std::function<double(double)> zeta,
                               std::string tag, double support_max = M_PI / 2.0);
};

// Quadrature nodes against the angular measure zeta(theta) dtheta: for any g,
// integral zeta(theta) g(theta) dtheta ~= sum_i weight[i] * g(theta[i]).
struct AngularNodes {
    std::vector<double> theta;
    std::vector<double> weight;
};

AngularNodes angular_nodes(const CrossSection& cs, double tol, int nodes_per_panel = 12);

// Momentum-transfer cross-section A(q) = |q|^gamma * Lambda with
// Lambda = 2 pi * int_0^{pi/2} zeta(theta) (1 - cos theta) dtheta.
// Throws NonIntegrableError when the graded quadrature fails to converge.
double angular_momentum_transfer(const std::function<double(double)>& zeta, double tol);
double momentum_transfer(const CrossSection& cs, double q_norm, double tol = 1e-10);

enum class FamilyKind { LogCutoff, Rescaled, Custom };

// theta-moments of a concentrating family entering the small-angle expansion:
//   w1 = 2 pi int zeta_eps(th) sin^2(th/2) dth          (= Lambda_eps / 2)
//   w2 = 2 pi int zeta_eps(th) sin^2(th/2) cos^2(th/2) dth
struct ThetaMoments {
    double w1, w2;
};

// One-parameter kernel family concentrating on grazing collisions
// (Definition-1 style): Lambda_eps -> Lambda_0 finite while the angular mass
// escapes to theta = 0.
struct GrazingFamily {
    CrossSection base;
    FamilyKind kind = FamilyKind::Rescaled;
    double lambda0 = 0.0;
    double eps_reference = 1e-5;
    // CUSTOM only: zeta_eps(theta, eps), pass-through contract
    std::function<double(double, double)> custom_zeta_eps;

    double zeta_eps(double theta, double eps) const;
    AngularNodes angular_nodes(double eps, double tol, int nodes_per_panel = 12) const;
    double lambda_eps(double eps, double tol = 1e-10) const;
    ThetaMoments theta_moments(double eps, double tol = 1e-10) const;

    // Lambda_{eps_reference}, the stored grazing-limit constant
    double estimate_lambda0(double tol = 1e-10) const;

    static GrazingFamily log_cutoff(CrossSection base);
    static GrazingFamily rescaled(CrossSection base);
    static GrazingFamily custom(CrossSection base, std::function<double(double, double)> zeta_eps);
};

double momentum_transfer(const GrazingFamily& fam, double eps, double q_norm, double tol = 1e-10);

struct GrazingValidationRow {
    double eps;
    double lambda_eps;
    double sup_b;       // max over the theta grid of zeta_eps(theta)/sin(theta), theta >= theta1
};

struct GrazingValidationReport {
    std::vector<GrazingValidationRow> rows;
    bool lambda_cauchy = false;   // Lambda_eps Cauchy toward a finite limit within tol
    bool sup_decay = false;       // sup_b nonincreasing and below tol at the smallest eps
    bool pass() const { return lambda_cauchy && sup_decay; }
};

GrazingValidationReport validate_grazing_family(const GrazingFamily& fam,
                                                const std::vector<double>& epsilons,
                                                double theta1, double tol);

// zeta_eps evaluated at one angle; DOMAIN error outside (0, pi/2].
double eval_zeta_eps(const GrazingFamily& fam, double eps, double theta);

} // namespace graze

#endif
