#ifndef GRAZE_BOLTZMANN_MODES_HPP
#define GRAZE_BOLTZMANN_MODES_HPP

#include <complex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graze/cross_sections.hpp"
#include "graze/lattice.hpp"

namespace graze {

// Node budget for the mode quadratures.  The azimuthal integrals on both
// spheres reduce to Bessel-J0 factors and are evaluated in closed form; the
// remaining factors are radius (Gauss-Legendre, graded toward 0 for gamma<0),
// the omega-sphere polar angle (Gauss-Legendre in the cosine) and the
// scattering angle (graded Gauss panels against the angular measure).
// n_sigma_phi only feeds the literal product-quadrature reference used in
// tests.  Node counts are scaled up automatically with the lattice frequency
// and doubled until two successive refinements agree to tol.
struct QuadratureSpec {
    int n_rho = 32;
    int n_omega = 24;
    int sigma_theta_npp = 12;
    int n_sigma_phi = 48;
    double tol = 1e-10;
    int max_refine = 3;
};

// Kernel modes B(l,m) of the truncated non cut-off collision operator,
//   B(l,m) = int_{|q|<2 lambda pi} dq e^{iq.m} int_{S^2} dsigma B(q,theta)
//            [ e^{i (l-m)/2 . (q - |q| sigma)} - 1 ],
// with the bracket vanishing at theta = 0 so singular angular densities
// integrate.  One computer instance caches the angular nodes; mode() is pure
// and thread-safe.
class BoltzmannModeComputer {
public:
    BoltzmannModeComputer(const CrossSection& cs, const GridConfig& grid, QuadratureSpec quad);
    BoltzmannModeComputer(const GrazingFamily& fam, double eps, const GridConfig& grid,
                          QuadratureSpec quad);

    double mode(Vec3i l, Vec3i m) const;
    // raw complex value at a fixed node budget (no refinement); test hook
    std::complex<double> mode_raw(Vec3i l, Vec3i m, int n_rho, int n_omega) const;

    const GridConfig& grid() const { return grid_; }
    const QuadratureSpec& quad() const { return quad_; }
    const std::string& kernel_tag() const { return tag_; }

private:
    GridConfig grid_;
    QuadratureSpec quad_;
    double gamma_;
    std::string tag_;
    std::vector<double> theta_, wzeta_;   // angular measure nodes
    std::vector<double> omc_, sth_;       // 2 sin^2(theta/2), sin(theta)
    void init_tables();
};

double compute_mode(const CrossSection& cs, const GridConfig& grid, Vec3i l, Vec3i m,
                    const QuadratureSpec& quad);
double compute_mode(const GrazingFamily& fam, double eps, const GridConfig& grid, Vec3i l,
                    Vec3i m, const QuadratureSpec& quad);

// One-dimensional VHS reduction for angle-independent kernels
// B(q,theta) = C_alpha |q|^alpha over the full sigma sphere:
//   B(l,m) = C * int_0^{lambda pi} r^{2+alpha}
//            [ sinc(|l+m| r) sinc(|l-m| r) - sinc(2|m| r) ] dr,
// C = (4 pi)^2 2^{3+alpha} C_alpha.  For alpha = 0 the integral has a closed
// antiderivative; otherwise graded Gauss quadrature.
double compute_mode_vhs(double alpha, double c_alpha, const GridConfig& grid, Vec3i l, Vec3i m,
                        const QuadratureSpec& quad);
double vhs_constant(double alpha, double c_alpha);
// closed-form alpha = 0 radial integral (no constant prefactor)
double vhs_radial_integral_maxwell(double a, double b, double c, double L);

// Symmetry-compressed table of kernel modes over {-N..N}^3 pairs.
class ModeTensor {
public:
    ModeTensor() = default;
    ModeTensor(int N, double tol, std::string kernel_tag)
        : N_(N), tol_(tol), tag_(std::move(kernel_tag)) {}

    int N() const { return N_; }
    double tol() const { return tol_; }
    const std::string& kernel_tag() const { return tag_; }
    std::size_t class_count() const { return values_.size(); }

    double mode(Vec3i l, Vec3i m) const;
    void set(ClassKey key, double value) { values_[key.packed()] = value; }

    // dense pair table for the O(N^6) evaluator: index = pair(l, m)
    std::vector<double> to_dense(const GridConfig& grid) const;

    void save(const std::string& path) const;
    static ModeTensor load(const std::string& path);

    const std::unordered_map<std::uint64_t, double>& raw() const { return values_; }

private:
    int N_ = 0;
    double tol_ = 0.0;
    std::string tag_;
    std::unordered_map<std::uint64_t, double> values_;
};

// Fills every symmetry class once (parallel over classes), spot-checks the
// class-function property and the B(-m,m)=0 nullity on a seeded sample, and
// optionally persists the table.
ModeTensor build_mode_tensor(const std::function<double(Vec3i, Vec3i)>& mode_fn,
                             const GridConfig& grid, double tol, const std::string& kernel_tag,
                             const std::optional<std::string>& cache_path = std::nullopt,
                             unsigned threads = 0);

} // namespace graze

#endif
