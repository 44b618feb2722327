#include "graze/cross_sections.hpp"

#include <algorithm>
#include <cmath>

#include "graze/quadrature.hpp"
#include "graze/special.hpp"

namespace graze {

void CrossSection::validate() const {
    if (!(gamma >= -3.0 && gamma <= 1.0))
        throw DomainError("CrossSection: gamma must lie in [-3, 1], got " + std::to_string(gamma));
    if (!zeta) throw DomainError("CrossSection: angular density not set");
    if (!(support_max > 0.0 && support_max <= M_PI))
        throw DomainError("CrossSection: support_max outside (0, pi]");
    if (s_force) {
        double s = *s_force;
        double g = (s - 5.0) / (s - 1.0);
        double n = 2.0 / (s + 1.0);
        if (std::fabs(g - gamma) > 1e-14 || std::fabs(n - nu) > 1e-14)
            throw DomainError("CrossSection: s_force inconsistent with (gamma, nu)");
    }
    // nonnegativity, sampled
    for (int i = 1; i <= 32; ++i) {
        double th = support_max * i / 32.0;
        if (zeta(th) < 0.0)
            throw DomainError("CrossSection: zeta(theta) < 0 at theta = " + std::to_string(th));
    }
}

CrossSection CrossSection::cutoff(double gamma) {
    CrossSection cs;
    cs.gamma = gamma;
    cs.nu = 0.0;
    cs.zeta = [](double th) { return std::sin(th); };
    cs.support_max = M_PI / 2.0;
    cs.tag = "cutoff(gamma=" + std::to_string(gamma) + ")";
    return cs;
}

CrossSection CrossSection::power_law(double gamma, double nu, double amplitude) {
    CrossSection cs;
    cs.gamma = gamma;
    cs.nu = nu;
    cs.zeta = [nu, amplitude](double th) { return amplitude * std::pow(th, -(1.0 + nu)); };
    cs.support_max = M_PI / 2.0;
    cs.tag = "power(gamma=" + std::to_string(gamma) + ",nu=" + std::to_string(nu) + ")";
    return cs;
}

CrossSection CrossSection::vhs(double alpha, double c_alpha) {
    CrossSection cs;
    cs.gamma = alpha;
    cs.nu = 0.0;
    cs.zeta = [c_alpha](double th) { return c_alpha * std::sin(th); };
    cs.support_max = M_PI;
    cs.tag = "vhs(alpha=" + std::to_string(alpha) + ",C=" + std::to_string(c_alpha) + ")";
    return cs;
}

CrossSection CrossSection::inverse_power(double s, double amplitude) {
    if (!(s >= 2.0)) throw DomainError("inverse_power: s >= 2 required");
    CrossSection cs = power_law((s - 5.0) / (s - 1.0), 2.0 / (s + 1.0), amplitude);
    cs.s_force = s;
    cs.tag = "inverse_power(s=" + std::to_string(s) + ")";
    return cs;
}

CrossSection CrossSection::custom(double gamma, double nu, std::function<double(double)> zeta,
                                  std::string tag, double support_max) {
    CrossSection cs;
    cs.gamma = gamma;
    cs.nu = nu;
    cs.zeta = std::move(zeta);
    cs.support_max = support_max;
    cs.tag = std::move(tag);
    return cs;
}

namespace {
// panel depth so the unresolved endpoint tail stays below tol when the
// integrand behaves like x^{expo-1} near 0 (tail(a) ~ a^{expo})
int depth_for_tail(double expo, double tol) {
    expo = std::max(0.1, expo);
    int d = (int)std::ceil(std::log2(1.0 / tol) / expo) + 12;
    return std::clamp(d, 24, 160);
}
} // namespace

AngularNodes angular_nodes(const CrossSection& cs, double tol, int npp) {
    int depth = depth_for_tail(2.0 - cs.nu, tol);
    PanelRule pr = graded_toward(0.0, cs.support_max, npp, depth);
    AngularNodes out;
    out.theta = pr.x;
    out.weight.resize(pr.w.size());
    for (std::size_t i = 0; i < pr.x.size(); ++i) out.weight[i] = pr.w[i] * cs.zeta(pr.x[i]);
    return out;
}

double angular_momentum_transfer(const std::function<double(double)>& zeta, double tol) {
    bool ok = false;
    double lam = 2.0 * M_PI *
                 graded_integrate([&](double th) { return zeta(th) * one_minus_cos(th); }, 0.0,
                                  M_PI / 2.0, 14, tol, ok);
    if (!ok)
        throw NonIntegrableError("momentum transfer: angular quadrature did not converge "
                                 "(divergent grazing singularity?)");
    return lam;
}

double momentum_transfer(const CrossSection& cs, double q_norm, double tol) {
    if (q_norm < 0.0) throw DomainError("momentum_transfer: q_norm >= 0 required");
    double lam = angular_momentum_transfer(cs.zeta, tol);
    if (q_norm == 0.0) return cs.gamma == 0.0 ? lam : (cs.gamma > 0.0 ? 0.0 : 0.0);
    return std::pow(q_norm, cs.gamma) * lam;
}

double momentum_transfer(const GrazingFamily& fam, double eps, double q_norm, double tol) {
    if (q_norm < 0.0) throw DomainError("momentum_transfer: q_norm >= 0 required");
    double lam = fam.lambda_eps(eps, tol);
    if (q_norm == 0.0) return fam.base.gamma == 0.0 ? lam : 0.0;
    return std::pow(q_norm, fam.base.gamma) * lam;
}

double GrazingFamily::zeta_eps(double theta, double eps) const {
    if (eps <= 0.0) throw DomainError("zeta_eps: eps > 0 required");
    switch (kind) {
        case FamilyKind::LogCutoff:
            if (theta < eps) return 0.0;
            return base.zeta(theta) / std::log(1.0 / eps);
        case FamilyKind::Rescaled: {
            // defining identity: zeta_eps(th) sin^2(th/2) = (1/th) sin^2(th/(2 eps)) zeta(th/eps)
            double x = theta / eps;
            if (x > M_PI / 2.0) return 0.0;
            double s = std::sin(0.5 * theta);
            double se = std::sin(0.5 * x);
            return se * se * base.zeta(x) / (theta * s * s);
        }
        case FamilyKind::Custom:
            return custom_zeta_eps(theta, eps);
    }
    return 0.0;
}

AngularNodes GrazingFamily::angular_nodes(double eps, double tol, int npp) const {
    AngularNodes out;
    switch (kind) {
        case FamilyKind::Rescaled: {
            // in the x = theta/eps variable the family measure behaves like
            // x^{-nu} against the momentum-transfer weight: finite only for nu < 1
            if (base.nu >= 1.0)
                throw NonIntegrableError(
                    "rescaled family: Lambda_eps diverges for nu >= 1 (base nu = " +
                    std::to_string(base.nu) + ")");
            // integrate in x = theta/eps (eps-uniform measure
            //   zeta_eps(th) dth = sin^2(x/2) zeta(x) / (x sin^2(eps x/2)) dx)
            // and absorb the x^{-nu} endpoint behavior with x = t^p, which
            // leaves a t^{p(1-nu)-1}-vanishing integrand needing no deep grading
            int p = std::clamp((int)std::ceil(3.0 / (1.0 - base.nu)), 4, 12);
            double tmax = std::pow(M_PI / 2.0, 1.0 / p);
            PanelRule pr = graded_toward(0.0, tmax, npp, 26);
            out.theta.resize(pr.x.size());
            out.weight.resize(pr.x.size());
            for (std::size_t i = 0; i < pr.x.size(); ++i) {
                double t = pr.x[i];
                double x = std::pow(t, (double)p);
                double sh = std::sin(0.5 * x);
                double se = std::sin(0.5 * eps * x);
                double jac = (double)p * std::pow(t, (double)p - 1.0);
                out.theta[i] = eps * x;
                out.weight[i] = pr.w[i] * jac * sh * sh * base.zeta(x) / (x * se * se);
            }
            return out;
        }
        case FamilyKind::LogCutoff: {
            if (!(eps > 0.0 && eps < M_PI / 2.0))
                throw DomainError("log_cutoff family: eps in (0, pi/2) required");
            PanelRule pr = graded_toward(eps, M_PI / 2.0, npp, 56);
            double norm = std::log(1.0 / eps);
            out.theta = pr.x;
            out.weight.resize(pr.x.size());
            for (std::size_t i = 0; i < pr.x.size(); ++i)
                out.weight[i] = pr.w[i] * base.zeta(pr.x[i]) / norm;
            return out;
        }
        case FamilyKind::Custom: {
            PanelRule pr = graded_toward(0.0, M_PI / 2.0, npp, depth_for_tail(0.5, tol));
            out.theta = pr.x;
            out.weight.resize(pr.x.size());
            for (std::size_t i = 0; i < pr.x.size(); ++i)
                out.weight[i] = pr.w[i] * custom_zeta_eps(pr.x[i], eps);
            return out;
        }
    }
    return out;
}

double GrazingFamily::lambda_eps(double eps, double tol) const {
    if (kind == FamilyKind::Custom) {
        // adaptive: a user-supplied zeta_eps may be non-integrable
        bool ok = false;
        double lam = 2.0 * M_PI *
                     graded_integrate(
                         [&](double th) { return custom_zeta_eps(th, eps) * one_minus_cos(th); },
                         0.0, M_PI / 2.0, 14, tol, ok);
        if (!ok)
            throw NonIntegrableError("lambda_eps: custom family quadrature did not converge");
        return lam;
    }
    AngularNodes an = angular_nodes(eps, tol);
    double lam = 0.0;
    for (std::size_t i = 0; i < an.theta.size(); ++i)
        lam += an.weight[i] * one_minus_cos(an.theta[i]);
    lam *= 2.0 * M_PI;
    if (!std::isfinite(lam))
        throw NonIntegrableError("lambda_eps: divergent angular integral");
    return lam;
}

ThetaMoments GrazingFamily::theta_moments(double eps, double tol) const {
    AngularNodes an = angular_nodes(eps, tol);
    double w1 = 0.0, w2 = 0.0;
    for (std::size_t i = 0; i < an.theta.size(); ++i) {
        double sh = std::sin(0.5 * an.theta[i]);
        double ch = std::cos(0.5 * an.theta[i]);
        double b = an.weight[i] * sh * sh;
        w1 += b;
        w2 += b * ch * ch;
    }
    return {2.0 * M_PI * w1, 2.0 * M_PI * w2};
}

double GrazingFamily::estimate_lambda0(double tol) const {
    return lambda_eps(eps_reference, tol);
}

GrazingFamily GrazingFamily::log_cutoff(CrossSection base) {
    GrazingFamily f;
    f.base = std::move(base);
    f.kind = FamilyKind::LogCutoff;
    f.lambda0 = f.estimate_lambda0();
    return f;
}

GrazingFamily GrazingFamily::rescaled(CrossSection base) {
    GrazingFamily f;
    f.base = std::move(base);
    f.kind = FamilyKind::Rescaled;
    f.lambda0 = f.estimate_lambda0();
    return f;
}

GrazingFamily GrazingFamily::custom(CrossSection base,
                                    std::function<double(double, double)> zeta_eps) {
    GrazingFamily f;
    f.base = std::move(base);
    f.kind = FamilyKind::Custom;
    f.custom_zeta_eps = std::move(zeta_eps);
    f.lambda0 = f.estimate_lambda0();
    return f;
}

GrazingValidationReport validate_grazing_family(const GrazingFamily& fam,
                                                const std::vector<double>& epsilons,
                                                double theta1, double tol) {
    if (epsilons.empty()) throw DomainError("validate_grazing_family: empty eps list");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (epsilons[i] > epsilons[i - 1])
            throw DomainError("validate_grazing_family: eps list must be nonincreasing");
    if (!(theta1 > 0.0 && theta1 < M_PI / 2.0))
        throw DomainError("validate_grazing_family: theta1 in (0, pi/2) required");

    GrazingValidationReport rep;
    const int ngrid = 256;
    for (double eps : epsilons) {
        GrazingValidationRow row;
        row.eps = eps;
        row.lambda_eps = fam.lambda_eps(eps);
        double sup = 0.0;
        for (int i = 0; i <= ngrid; ++i) {
            double th = theta1 + (M_PI / 2.0 - theta1) * i / ngrid;
            sup = std::max(sup, fam.zeta_eps(th, eps) / std::sin(th));
        }
        row.sup_b = sup;
        rep.rows.push_back(row);
    }
    // Cauchy check: consecutive differences shrink and the last is within tol
    if (rep.rows.size() >= 2) {
        double last = std::fabs(rep.rows.back().lambda_eps - rep.rows[rep.rows.size() - 2].lambda_eps);
        rep.lambda_cauchy = last <= tol * std::max(1.0, std::fabs(rep.rows.back().lambda_eps));
        for (std::size_t i = 2; i < rep.rows.size(); ++i) {
            double d0 = std::fabs(rep.rows[i - 1].lambda_eps - rep.rows[i - 2].lambda_eps);
            double d1 = std::fabs(rep.rows[i].lambda_eps - rep.rows[i - 1].lambda_eps);
            if (d1 > d0 + tol) rep.lambda_cauchy = false;
        }
    } else {
        rep.lambda_cauchy = true; // single (or repeated) eps: trivially Cauchy
    }
    rep.sup_decay = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].sup_b > rep.rows[i - 1].sup_b * (1.0 + 1e-12)) rep.sup_decay = false;
    if (rep.rows.back().sup_b > tol) rep.sup_decay = false;
    return rep;
}

double eval_zeta_eps(const GrazingFamily& fam, double eps, double theta) {
    if (!(theta > 0.0 && theta <= M_PI / 2.0))
        throw DomainError("eval_zeta_eps: theta outside (0, pi/2]");
    return fam.zeta_eps(theta, eps);
}

} // namespace graze
