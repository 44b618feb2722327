#include "graze/boltzmann_modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <unordered_set>

#include "graze/parallel.hpp"
#include "graze/quadrature.hpp"
#include "graze/special.hpp"

namespace graze {

namespace {

// radial nodes on [0, Q] for the weight rho^{2+gamma}: plain Gauss for
// gamma >= -0.5, graded toward 0 below that
void radial_nodes(int n, double gamma, double Q, std::vector<double>& x, std::vector<double>& w) {
    if (gamma >= -0.5) {
        gauss_on(n, 0.0, Q, x, w);
        return;
    }
    int npp = std::max(8, n / 6);
    PanelRule pr = graded_toward(0.0, Q, npp, 48);
    x = pr.x;
    w = pr.w;
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

namespace {
void validate_quad(const QuadratureSpec& q) {
    if (q.n_rho < 2 || q.n_omega < 2 || q.sigma_theta_npp < 2 || q.n_sigma_phi < 2)
        throw DomainError("QuadratureSpec: node counts must be >= 2");
    if (!(q.tol > 0.0)) throw DomainError("QuadratureSpec: tol must be positive");
}
} // namespace

BoltzmannModeComputer::BoltzmannModeComputer(const CrossSection& cs, const GridConfig& grid,
                                             QuadratureSpec quad)
    : grid_(grid), quad_(quad), gamma_(cs.gamma), tag_(cs.tag) {
    validate_quad(quad_);
    cs.validate();
    // integrable momentum transfer is the prerequisite for finite modes
    (void)angular_momentum_transfer(cs.zeta, quad_.tol);
    double dmax = 2.0 * std::sqrt(3.0) * std::max(1, grid.N);
    int npp = std::max(quad_.sigma_theta_npp,
                       (int)std::ceil(0.35 * 0.5 * grid.q_max * dmax) + 10);
    AngularNodes an = angular_nodes(cs, quad_.tol, npp);
    theta_ = an.theta;
    wzeta_ = an.weight;
    init_tables();
}

BoltzmannModeComputer::BoltzmannModeComputer(const GrazingFamily& fam, double eps,
                                             const GridConfig& grid, QuadratureSpec quad)
    : grid_(grid), quad_(quad), gamma_(fam.base.gamma),
      tag_(fam.base.tag + "@eps=" + std::to_string(eps)) {
    validate_quad(quad_);
    (void)fam.lambda_eps(eps, quad_.tol); // throws NonIntegrableError when divergent
    double dmax = 2.0 * std::sqrt(3.0) * std::max(1, grid.N);
    int npp = std::max(quad_.sigma_theta_npp,
                       (int)std::ceil(0.35 * 0.5 * grid.q_max * dmax) + 10);
    AngularNodes an = fam.angular_nodes(eps, quad_.tol, npp);
    theta_ = an.theta;
    wzeta_ = an.weight;
    init_tables();
}

void BoltzmannModeComputer::init_tables() {
    std::size_t n = theta_.size();
    omc_.resize(n);
    sth_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        omc_[i] = one_minus_cos(theta_[i]);
        sth_[i] = std::sin(theta_[i]);
    }
}

std::complex<double> BoltzmannModeComputer::mode_raw(Vec3i l, Vec3i m, int n_rho,
                                                     int n_omega) const {
    Vec3i d = l - m;
    if (d[0] == 0 && d[1] == 0 && d[2] == 0) return {0.0, 0.0};
    double dn = norm(d);
    double M = norm(m);
    double cosb = 1.0, sinb = 0.0;
    if (M > 0.0) {
        cosb = (double)dot(d, m) / (dn * M);
        if (cosb > 1.0) cosb = 1.0;
        if (cosb < -1.0) cosb = -1.0;
        sinb = std::sqrt(1.0 - cosb * cosb);
    }
    const double Q = grid_.q_max;

    std::vector<double> rho, wr;
    radial_nodes(n_rho, gamma_, Q, rho, wr);
    std::vector<double> c, wc;
    gauss_on(n_omega, -1.0, 1.0, c, wc);

    const std::size_t nt = theta_.size();
    double total_re = 0.0, total_im = 0.0;
    for (std::size_t ir = 0; ir < rho.size(); ++ir) {
        const double r = rho[ir];
        const double rw = wr[ir] * std::pow(r, 2.0 + gamma_);
        const double rM = r * M;
        double sum_re = 0.0, sum_im = 0.0;
        for (std::size_t ic = 0; ic < c.size(); ++ic) {
            const double cc = c[ic];
            const double ss = std::sqrt(std::max(0.0, 1.0 - cc * cc));
            const double u = dn * cc;       // d . omega
            const double wp = dn * ss;      // |d_perp|
            // inner scattering integral, azimuth folded into J0
            double in_re = 0.0, in_im = 0.0;
            const double h1 = 0.5 * r * u;
            const double h2 = 0.5 * r * wp;
            for (std::size_t it = 0; it < nt; ++it) {
                Bracket b = grazing_bracket(h1 * omc_[it], h2 * sth_[it]);
                in_re += wzeta_[it] * b.re;
                in_im += wzeta_[it] * b.im;
            }
            // Fourier factor over the omega azimuth
            const double arg = rM * cosb * cc;
            const double f_re = std::cos(arg) * cyl_j0(rM * sinb * ss);
            const double f_im = std::sin(arg) * cyl_j0(rM * sinb * ss);
            sum_re += wc[ic] * (f_re * in_re - f_im * in_im);
            sum_im += wc[ic] * (f_re * in_im + f_im * in_re);
        }
        total_re += rw * sum_re;
        total_im += rw * sum_im;
    }
    const double four_pi_sq = 4.0 * M_PI * M_PI;
    return {four_pi_sq * total_re, four_pi_sq * total_im};
}

double BoltzmannModeComputer::mode(Vec3i l, Vec3i m) const {
    Vec3i d = l - m;
    if (d[0] == 0 && d[1] == 0 && d[2] == 0) return 0.0;
    double osc = grid_.q_max * norm(m);
    int n_rho = std::max(quad_.n_rho, (int)std::ceil(0.55 * osc) + 14);
    int n_omega = std::max(quad_.n_omega, (int)std::ceil(0.9 * osc) + 16);

    std::complex<double> prev = mode_raw(l, m, n_rho, n_omega);
    for (int r = 0; r < quad_.max_refine; ++r) {
        n_rho = (int)std::ceil(n_rho * 1.5);
        n_omega = (int)std::ceil(n_omega * 1.5);
        std::complex<double> next = mode_raw(l, m, n_rho, n_omega);
        if (std::abs(next - prev) <= quad_.tol) {
            double scale = std::max(1.0, std::abs(next.real()));
            if (std::fabs(next.imag()) > quad_.tol * scale)
                throw QuadratureNotConvergedError(
                    "compute_mode: imaginary residue " + std::to_string(next.imag()) +
                    " above tolerance (kernel " + tag_ + ")");
            return next.real();
        }
        prev = next;
    }
    throw QuadratureNotConvergedError("compute_mode: refinements did not settle within tol for " +
                                      tag_);
}

double compute_mode(const CrossSection& cs, const GridConfig& grid, Vec3i l, Vec3i m,
                    const QuadratureSpec& quad) {
    if (!grid.in_box(l) || !grid.in_box(m))
        throw DomainError("compute_mode: (l,m) outside the lattice box");
    return BoltzmannModeComputer(cs, grid, quad).mode(l, m);
}

double compute_mode(const GrazingFamily& fam, double eps, const GridConfig& grid, Vec3i l,
                    Vec3i m, const QuadratureSpec& quad) {
    if (!grid.in_box(l) || !grid.in_box(m))
        throw DomainError("compute_mode: (l,m) outside the lattice box");
    return BoltzmannModeComputer(fam, eps, grid, quad).mode(l, m);
}

double vhs_constant(double alpha, double c_alpha) {
    return 16.0 * M_PI * M_PI * std::pow(2.0, 3.0 + alpha) * c_alpha;
}

double vhs_radial_integral_maxwell(double a, double b, double c, double L) {
    // gain: int_0^L r^2 sinc(ar) sinc(br) dr
    double gain;
    if (a == 0.0 && b == 0.0) {
        gain = L * L * L / 3.0;
    } else if (a == 0.0 || b == 0.0) {
        double k = (a == 0.0) ? b : a;
        gain = (std::sin(k * L) - k * L * std::cos(k * L)) / (k * k * k);
    } else if (a == b) {
        gain = (0.5 * L - std::sin(2.0 * a * L) / (4.0 * a)) / (a * a);
    } else {
        gain = (std::sin((a - b) * L) / (a - b) - std::sin((a + b) * L) / (a + b)) / (2.0 * a * b);
    }
    double loss;
    if (c == 0.0) {
        loss = L * L * L / 3.0;
    } else {
        loss = (std::sin(c * L) - c * L * std::cos(c * L)) / (c * c * c);
    }
    return gain - loss;
}

double compute_mode_vhs(double alpha, double c_alpha, const GridConfig& grid, Vec3i l, Vec3i m,
                        const QuadratureSpec& quad) {
    if (alpha <= -3.0) throw DomainError("compute_mode_vhs: alpha <= -3 not integrable");
    const double L = grid.lambda * M_PI;
    const double a = norm(l + m);
    const double b = norm(l - m);
    const double c = 2.0 * norm(m);
    const double C = vhs_constant(alpha, c_alpha);
    if (alpha == 0.0) return C * vhs_radial_integral_maxwell(a, b, c, L);

    auto integrand = [&](double r) {
        return std::pow(r, 2.0 + alpha) * (sinc(a * r) * sinc(b * r) - sinc(c * r));
    };
    double osc = (a + b + c) * L;
    int n = std::max(quad.n_rho * 2, (int)std::ceil(0.8 * osc) + 24);
    std::vector<double> x, w;
    double prev = 0.0;
    for (int r = 0; r <= quad.max_refine; ++r) {
        double val = 0.0;
        if (alpha >= -0.5) {
            gauss_on(n, 0.0, L, x, w);
            for (std::size_t i = 0; i < x.size(); ++i) val += w[i] * integrand(x[i]);
        } else {
            PanelRule pr = graded_toward(0.0, L, std::max(10, n / 8), 52);
            for (std::size_t i = 0; i < pr.x.size(); ++i) val += pr.w[i] * integrand(pr.x[i]);
        }
        val *= C;
        if (r > 0 && std::fabs(val - prev) <= quad.tol) return val;
        prev = val;
        n = (int)std::ceil(n * 1.5);
    }
    throw QuadratureNotConvergedError("compute_mode_vhs: radial quadrature did not converge");
}

double ModeTensor::mode(Vec3i l, Vec3i m) const {
    auto it = values_.find(ClassKey::from_pair(l, m).packed());
    if (it == values_.end())
        throw DomainError("ModeTensor: pair not tabulated (wrong N?)");
    return it->second;
}

std::vector<double> ModeTensor::to_dense(const GridConfig& grid) const {
    if (grid.N != N_) throw DimensionMismatchError("ModeTensor::to_dense: N mismatch");
    std::size_t nb = grid.size();
    std::vector<double> dense(nb * nb);
    for (std::size_t il = 0; il < nb; ++il) {
        Vec3i l = grid.vector(il);
        for (std::size_t im = 0; im < nb; ++im) {
            Vec3i m = grid.vector(im);
            dense[il * nb + im] = mode(l, m);
        }
    }
    return dense;
}

namespace {
struct CacheHeader {
    char magic[4];
    std::uint32_t version;
    std::int32_t n;
    std::uint32_t tag_len;
    double tol;
    std::uint64_t count;
    std::uint64_t checksum;
};
} // namespace

void ModeTensor::save(const std::string& path) const {
    std::vector<std::pair<std::uint64_t, double>> rows(values_.begin(), values_.end());
    std::sort(rows.begin(), rows.end());
    std::uint64_t chk = 1469598103934665603ULL;
    for (const auto& r : rows) {
        chk = fnv1a(&r.first, sizeof(r.first), chk);
        chk = fnv1a(&r.second, sizeof(r.second), chk);
    }
    CacheHeader h;
    std::memcpy(h.magic, "GRZM", 4);
    h.version = 1;
    h.n = N_;
    h.tag_len = (std::uint32_t)tag_.size();
    h.tol = tol_;
    h.count = rows.size();
    h.checksum = chk;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot open cache for writing: " + path);
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(tag_.data(), (std::streamsize)tag_.size());
    for (const auto& r : rows) {
        out.write(reinterpret_cast<const char*>(&r.first), sizeof(r.first));
        out.write(reinterpret_cast<const char*>(&r.second), sizeof(r.second));
    }
    if (!out) throw CacheError("write failed: " + path);
}

ModeTensor ModeTensor::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open cache: " + path);
    CacheHeader h;
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, "GRZM", 4) != 0)
        throw CacheError("bad cache magic: " + path);
    if (h.version != 1) throw CacheError("unsupported cache version");
    std::string tag(h.tag_len, '\0');
    in.read(tag.data(), h.tag_len);
    ModeTensor t(h.n, h.tol, tag);
    std::uint64_t chk = 1469598103934665603ULL;
    std::uint64_t prev_key = 0;
    for (std::uint64_t i = 0; i < h.count; ++i) {
        std::uint64_t key;
        double val;
        in.read(reinterpret_cast<char*>(&key), sizeof(key));
        in.read(reinterpret_cast<char*>(&val), sizeof(val));
        if (!in) throw CacheError("truncated cache: " + path);
        if (i > 0 && key <= prev_key) throw CacheError("cache keys not sorted: " + path);
        prev_key = key;
        chk = fnv1a(&key, sizeof(key), chk);
        chk = fnv1a(&val, sizeof(val), chk);
        t.values_[key] = val;
    }
    if (chk != h.checksum) throw CacheError("cache checksum mismatch: " + path);
    return t;
}

ModeTensor build_mode_tensor(const std::function<double(Vec3i, Vec3i)>& mode_fn,
                             const GridConfig& grid, double tol, const std::string& kernel_tag,
                             const std::optional<std::string>& cache_path, unsigned threads) {
    // enumerate classes with lex-first representatives
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> keys;
    std::vector<std::pair<Vec3i, Vec3i>> reps;
    const std::size_t nb = grid.size();
    for (std::size_t il = 0; il < nb; ++il) {
        Vec3i l = grid.vector(il);
        for (std::size_t im = 0; im < nb; ++im) {
            Vec3i m = grid.vector(im);
            std::uint64_t key = ClassKey::from_pair(l, m).packed();
            if (seen.insert(key).second) {
                keys.push_back(key);
                reps.emplace_back(l, m);
            }
        }
    }
    std::vector<double> vals(keys.size());
    parallel_for(keys.size(), [&](std::size_t i) { vals[i] = mode_fn(reps[i].first, reps[i].second); },
                 threads);

    ModeTensor t(grid.N, tol, kernel_tag);
    for (std::size_t i = 0; i < keys.size(); ++i)
        t.set(ClassKey::unpack(keys[i]), vals[i]);

    // spot checks: class-function property on >= 100 seeded pairs, nullity on the diagonal
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> U(-grid.N, grid.N);
    int n_samples = 100;
    std::vector<std::pair<Vec3i, Vec3i>> sample;
    for (int s = 0; s < n_samples; ++s)
        sample.emplace_back(Vec3i{U(rng), U(rng), U(rng)}, Vec3i{U(rng), U(rng), U(rng)});
    std::vector<double> direct(sample.size());
    parallel_for(sample.size(),
                 [&](std::size_t i) { direct[i] = mode_fn(sample[i].first, sample[i].second); },
                 threads);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double stored = t.mode(sample[i].first, sample[i].second);
        if (std::fabs(stored - direct[i]) > 2.0 * tol * std::max(1.0, std::fabs(stored)))
            throw QuadratureNotConvergedError(
                "build_mode_tensor: class-function check failed at sampled pair");
    }
    for (int s = 0; s < 20; ++s) {
        Vec3i m{U(rng), U(rng), U(rng)};
        double v = t.mode(-m, m);
        if (std::fabs(v) > 10.0 * tol)
            throw QuadratureNotConvergedError("build_mode_tensor: B(-m,m) nullity violated");
    }

    if (cache_path) t.save(*cache_path);
    return t;
}

} // namespace graze
