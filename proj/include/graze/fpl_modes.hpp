#ifndef GRAZE_FPL_MODES_HPP
#define GRAZE_FPL_MODES_HPP

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graze/boltzmann_modes.hpp"
#include "graze/cross_sections.hpp"
#include "graze/lattice.hpp"

namespace graze {

// Fokker-Planck-Landau kernel Psi(|q|) = (Lambda_0/8) |q|^{gamma+2}.
struct FplKernel {
    double gamma = 0.0;
    double lambda0 = 1.0;

    double psi_coeff() const { return lambda0 / 8.0; }
    double psi(double r) const { return psi_coeff() * std::pow(r, gamma + 2.0); }
    void validate() const {
        if (!(gamma > -3.0)) throw DomainError("FplKernel: gamma > -3 required");
        if (!(lambda0 > 0.0)) throw DomainError("FplKernel: lambda0 > 0 required");
    }
};

// Drift-diffusion mode integral over the truncated ball,
//   int e^{iq.m} w(|q|) [ c_drift * i (q.a) + c_diff * |q|^2 (a_perp)^2 ] dq,
// (a_perp)^2 = |a|^2 - (a.q/|q|)^2; azimuthal integrals in closed form.
// grading_gamma controls the radial grading (graded mesh for gamma < -1/2).
std::complex<double> drift_diffusion_integral(const std::function<double(double)>& radial_weight,
                                              double c_drift, double c_diff, Vec3d axis, Vec3i m,
                                              const GridConfig& grid, int n_rho, int n_cos,
                                              double grading_gamma = 0.0);

// FPL kernel modes, evaluated through two displayed forms that must agree:
// the grazing-limit form with weights (Lambda_0/2)|q|^gamma and the direct
// form with 4 Psi(|q|)/|q|^2 (this pins the Lambda_0/8 constant).
double fpl_mode(const FplKernel& fk, const GridConfig& grid, Vec3i l, Vec3i m,
                const QuadratureSpec& quad);

// Alternate representation int Psi(|q|) { [m_perp]^2 - [l_perp]^2 } e^{iq.m} dq.
double fpl_mode_alt(const FplKernel& fk, const GridConfig& grid, Vec3i l, Vec3i m,
                    const QuadratureSpec& quad);

// Small-angle approximate Boltzmann modes: the theta integral collapses onto
// the moments (w1, w2) of the family, leaving a drift-diffusion integral in
// d = l - m.
double approx_boltzmann_mode(const GrazingFamily& fam, double eps, const GridConfig& grid,
                             Vec3i l, Vec3i m, const QuadratureSpec& quad);

enum class SplitVariant { FplLimit, ApproxBoltzmann };
enum class FieldMethod { Volume3D, Radial1D };

// Mode decomposition into k-multipliers times m-dependent fields,
//   B(l,m) = sum_j k_j F_j(m) + k^2 G(m) + sum_jh k_j k_h I_jh(m) [+ C(m)],
// k = l+m.  The constant field C appears only for the approximate Boltzmann
// variant (it carries the m-weighted companions of the d = k - 2m expansion).
struct SplitKernel {
    int N = 0;
    SplitVariant variant = SplitVariant::FplLimit;
    double gamma = 0.0;
    double lambda0 = 0.0;   // FplLimit
    double eps = 0.0;       // ApproxBoltzmann
    double w1 = 0.0, w2 = 0.0;
    std::string tag;

    std::vector<std::complex<double>> F[3];
    std::vector<std::complex<double>> G;
    std::vector<std::complex<double>> I[6]; // (0,0),(0,1),(0,2),(1,1),(1,2),(2,2)
    std::vector<std::complex<double>> C;    // ApproxBoltzmann only

    static int ij_index(int j, int h) {
        if (j > h) std::swap(j, h);
        static const int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return map[j][h];
    }

    bool has_const_field() const { return variant == SplitVariant::ApproxBoltzmann; }
    std::complex<double> reassemble(Vec3i l, Vec3i m) const;
    double reassemble_real(Vec3i l, Vec3i m) const { return reassemble(l, m).real(); }

    // symmetry-compressed table of reassembled modes (for the direct evaluator)
    ModeTensor to_mode_tensor(const GridConfig& grid) const;

    void save(const std::string& path) const;
    static SplitKernel load(const std::string& path);
};

SplitKernel build_split_kernel(const FplKernel& fk, const GridConfig& grid,
                               const QuadratureSpec& quad,
                               FieldMethod method = FieldMethod::Volume3D, unsigned threads = 0);
SplitKernel build_split_kernel(const GrazingFamily& fam, double eps, const GridConfig& grid,
                               const QuadratureSpec& quad,
                               FieldMethod method = FieldMethod::Volume3D, unsigned threads = 0);

} // namespace graze

#endif
