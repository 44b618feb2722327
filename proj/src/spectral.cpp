#include "graze/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>

#include "graze/parallel.hpp"

namespace graze {

namespace {

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

// smallest 5-smooth size >= n (FFTW-friendly)
int next_fast_size(int n) {
    auto smooth = [](int v) {
        for (int p : {2, 3, 5})
            while (v % p == 0) v /= p;
        return v == 1;
    };
    while (!smooth(n)) ++n;
    return n;
}

struct Fft3 {
    int n = 0;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr;

    explicit Fft3(int size) : n(size) {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        buf = fftw_alloc_complex((std::size_t)n * n * n);
        fwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft3() {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
    std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf); }
    void forward() { fftw_execute(fwd); }
    void backward() { fftw_execute(bwd); }
};

} // namespace

double SpectralState::hermitian_residual() const {
    double worst = 0.0;
    const std::size_t nb = grid.size();
    for (std::size_t i = 0; i < nb; ++i) {
        Vec3i k = grid.vector(i);
        std::complex<double> a = coeffs[i];
        std::complex<double> b = std::conj(coeffs[grid.index(-k)]);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

void SpectralState::enforce_hermitian() {
    const std::size_t nb = grid.size();
    for (std::size_t i = 0; i < nb; ++i) {
        Vec3i k = grid.vector(i);
        std::size_t j = grid.index(-k);
        if (j < i) continue;
        std::complex<double> avg = 0.5 * (coeffs[i] + std::conj(coeffs[j]));
        coeffs[i] = avg;
        coeffs[j] = std::conj(avg);
    }
}

SpectralState project_initial(const std::function<double(Vec3d)>& f, const GridConfig& grid,
                              int n_grid, bool strict_support, ProjectionReport* report) {
    if (n_grid < 2 * (2 * grid.N + 1))
        throw DomainError("project_initial: n_grid >= 2(2N+1) required for alias-free products");
    const int n = n_grid;
    Fft3 fft(n);
    std::complex<double>* buf = fft.data();

    ProjectionReport rep;
    const double R2 = grid.R * grid.R;
    for (int i = 0; i < n; ++i) {
        double vx = -M_PI + 2.0 * M_PI * i / n;
        for (int j = 0; j < n; ++j) {
            double vy = -M_PI + 2.0 * M_PI * j / n;
            for (int k = 0; k < n; ++k) {
                double vz = -M_PI + 2.0 * M_PI * k / n;
                double val = f({vx, vy, vz});
                if (vx * vx + vy * vy + vz * vz > R2 && std::fabs(val) > 1e-14) {
                    rep.support_violations++;
                    rep.worst_violation = std::max(rep.worst_violation, std::fabs(val));
                }
                buf[((std::size_t)i * n + j) * n + k] = {val, 0.0};
            }
        }
    }
    if (rep.support_violations > 0 && strict_support)
        throw SupportViolationError("project_initial: initial data nonzero outside B(0,R), worst " +
                                    std::to_string(rep.worst_violation));
    if (report) *report = rep;

    fft.forward();
    SpectralState s(grid);
    const double scale = 1.0 / ((double)n * n * n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Vec3i k = grid.vector(i);
        int a = (k[0] % n + n) % n, b = (k[1] % n + n) % n, c = (k[2] % n + n) % n;
        double sign = ((k[0] + k[1] + k[2]) % 2 == 0) ? 1.0 : -1.0;
        s.coeffs[i] = sign * scale * buf[((std::size_t)a * n + b) * n + c];
    }
    s.enforce_hermitian();
    return s;
}

std::vector<double> reconstruct(const SpectralState& s, int n_grid) {
    const int n = n_grid;
    if (n < 2 * s.grid.N + 1)
        throw DomainError("reconstruct: n_grid >= 2N+1 required");
    Fft3 fft(n);
    std::complex<double>* buf = fft.data();
    std::fill(buf, buf + (std::size_t)n * n * n, std::complex<double>{0.0, 0.0});
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        Vec3i k = s.grid.vector(i);
        int a = (k[0] % n + n) % n, b = (k[1] % n + n) % n, c = (k[2] % n + n) % n;
        double sign = ((k[0] + k[1] + k[2]) % 2 == 0) ? 1.0 : -1.0;
        buf[((std::size_t)a * n + b) * n + c] += sign * s.coeffs[i];
    }
    fft.backward();
    std::vector<double> out((std::size_t)n * n * n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real();
    return out;
}

Moments moments(const SpectralState& s, int n_grid) {
    std::vector<double> f = reconstruct(s, n_grid);
    const int n = n_grid;
    const double h3 = std::pow(2.0 * M_PI / n, 3);
    Moments mo;
    for (int i = 0; i < n; ++i) {
        double vx = -M_PI + 2.0 * M_PI * i / n;
        // odd weights symmetrized at the periodic seam: the -pi plane has no
        // +pi partner, so v there carries the average (-pi + pi)/2 = 0
        double wx = (i == 0) ? 0.0 : vx;
        for (int j = 0; j < n; ++j) {
            double vy = -M_PI + 2.0 * M_PI * j / n;
            double wy = (j == 0) ? 0.0 : vy;
            for (int k = 0; k < n; ++k) {
                double vz = -M_PI + 2.0 * M_PI * k / n;
                double wz = (k == 0) ? 0.0 : vz;
                double val = f[((std::size_t)i * n + j) * n + k];
                mo.mass += val;
                mo.momentum[0] += wx * val;
                mo.momentum[1] += wy * val;
                mo.momentum[2] += wz * val;
                mo.energy += 0.5 * (vx * vx + vy * vy + vz * vz) * val;
            }
        }
    }
    mo.mass *= h3;
    for (int d = 0; d < 3; ++d) mo.momentum[d] *= h3;
    mo.energy *= h3;
    return mo;
}

Coeffs collision_direct(const SpectralState& s, const ModeTensor& modes, unsigned threads) {
    if (modes.N() != s.grid.N)
        throw DimensionMismatchError("collision_direct: tensor N != state N");
    if (s.grid.N <= 6) {
        std::vector<double> dense = modes.to_dense(s.grid);
        const std::size_t nb = s.grid.size();
        const GridConfig& g = s.grid;
        return collision_direct_with(
            s, [&](Vec3i l, Vec3i m) { return dense[g.index(l) * nb + g.index(m)]; }, threads);
    }
    return collision_direct_with(s, [&](Vec3i l, Vec3i m) { return modes.mode(l, m); }, threads);
}

Coeffs collision_direct(const SpectralState& s, const SplitKernel& split, unsigned threads) {
    if (split.N != s.grid.N)
        throw DimensionMismatchError("collision_direct: split N != state N");
    const GridConfig& g = s.grid;
    return collision_direct_with(
        s,
        [&](Vec3i l, Vec3i m) {
            std::size_t im = g.index(m);
            Vec3i k = l + m;
            double kx = k[0], ky = k[1], kz = k[2];
            double acc = kx * split.F[0][im].real() + ky * split.F[1][im].real() +
                         kz * split.F[2][im].real();
            acc += (kx * kx + ky * ky + kz * kz) * split.G[im].real();
            acc += kx * kx * split.I[0][im].real() + ky * ky * split.I[3][im].real() +
                   kz * kz * split.I[5][im].real();
            acc += 2.0 * (kx * ky * split.I[1][im].real() + kx * kz * split.I[2][im].real() +
                          ky * kz * split.I[4][im].real());
            if (split.has_const_field()) acc += split.C[im].real();
            return acc;
        },
        threads);
}

double growth_estimate(const SpectralState& s, const SplitKernel& split, unsigned threads) {
    return growth_estimate_with(
        s, [&](Vec3i l, Vec3i m) { return split.reassemble(l, m).real(); }, threads);
}

double growth_estimate(const SpectralState& s, const ModeTensor& modes, unsigned threads) {
    if (s.grid.N <= 6) {
        std::vector<double> dense = modes.to_dense(s.grid);
        const std::size_t nb = s.grid.size();
        const GridConfig& gg = s.grid;
        return growth_estimate_with(
            s, [&, nb](Vec3i l, Vec3i m) { return dense[gg.index(l) * nb + gg.index(m)]; }, threads);
    }
    return growth_estimate_with(s, [&](Vec3i l, Vec3i m) { return modes.mode(l, m); }, threads);
}

struct FastEvaluator::Impl {
    GridConfig grid;
    SplitKernel split; // owned copy of the fields
    int L;
    Fft3 fft;
    std::vector<std::complex<double>> fhat_pad;   // FFT of padded f_hat
    std::vector<std::size_t> scatter;             // box -> padded index

    Impl(const SplitKernel& sk, const GridConfig& g, int Lsize)
        : grid(g), split(sk), L(Lsize), fft(Lsize) {
        const std::size_t nb = grid.size();
        scatter.resize(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            Vec3i k = grid.vector(i);
            int a = (k[0] % L + L) % L, b = (k[1] % L + L) % L, c = (k[2] % L + L) % L;
            scatter[i] = ((std::size_t)a * L + b) * L + c;
        }
    }

    void pad_and_forward(const Coeffs& src, std::vector<std::complex<double>>& dst) {
        const std::size_t nL = (std::size_t)L * L * L;
        std::complex<double>* buf = fft.data();
        std::fill(buf, buf + nL, std::complex<double>{0.0, 0.0});
        for (std::size_t i = 0; i < src.size(); ++i) buf[scatter[i]] = src[i];
        fft.forward();
        dst.assign(buf, buf + nL);
    }

    // conv(a, b)_k for k in the box, given spectra A and B of the padded arrays
    void convolve_to_box(const std::vector<std::complex<double>>& A,
                         const std::vector<std::complex<double>>& B, Coeffs& out_box) {
        const std::size_t nL = (std::size_t)L * L * L;
        std::complex<double>* buf = fft.data();
        const double inv = 1.0 / (double)nL;
        for (std::size_t i = 0; i < nL; ++i) buf[i] = A[i] * B[i] * inv;
        fft.backward();
        const std::size_t nb = grid.size();
        out_box.resize(nb);
        for (std::size_t i = 0; i < nb; ++i) out_box[i] = buf[scatter[i]];
    }
};

FastEvaluator::FastEvaluator(const SplitKernel& split, const GridConfig& grid) {
    if (split.N != grid.N)
        throw DimensionMismatchError("FastEvaluator: split N != grid N");
    L_ = next_fast_size(4 * grid.N + 2);
    impl_ = std::make_unique<Impl>(split, grid, L_);
}

FastEvaluator::~FastEvaluator() = default;

Coeffs FastEvaluator::operator()(const SpectralState& s) {
    Impl& im = *impl_;
    if (s.grid.N != im.grid.N)
        throw DimensionMismatchError("FastEvaluator: state N mismatch");
    const std::size_t nb = im.grid.size();
    const SplitKernel& sk = im.split;

    im.pad_and_forward(s.coeffs, im.fhat_pad);

    Coeffs weighted(nb), conv;
    Coeffs out(nb, {0.0, 0.0});
    std::vector<std::complex<double>> spec;

    auto add_field = [&](const std::vector<std::complex<double>>& field, int which) {
        for (std::size_t i = 0; i < nb; ++i) weighted[i] = s.coeffs[i] * field[i];
        im.pad_and_forward(weighted, spec);
        im.convolve_to_box(im.fhat_pad, spec, conv);
        for (std::size_t i = 0; i < nb; ++i) {
            Vec3i k = im.grid.vector(i);
            double mult;
            if (which < 0) {
                mult = 1.0; // constant field
            } else if (which < 3) {
                mult = (double)k[which];
            } else if (which == 3) {
                mult = (double)norm2(k);
            } else {
                static const int jh[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
                int j = jh[which - 4][0], h = jh[which - 4][1];
                mult = (j == h ? 1.0 : 2.0) * k[j] * k[h];
            }
            out[i] += mult * conv[i];
        }
    };

    for (int j = 0; j < 3; ++j) add_field(sk.F[j], j);
    add_field(sk.G, 3);
    for (int j = 0; j < 6; ++j) add_field(sk.I[j], 4 + j);
    if (sk.has_const_field()) add_field(sk.C, -1);
    return out;
}

SpectralState step_rk4(const SpectralState& s, const Evaluator& rhs, double dt,
                       double blowup_limit) {
    auto axpy = [&](const SpectralState& base, const Coeffs& k, double a) {
        SpectralState r = base;
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += a * k[i];
        return r;
    };
    Coeffs k1 = rhs(s);
    Coeffs k2 = rhs(axpy(s, k1, 0.5 * dt));
    Coeffs k3 = rhs(axpy(s, k2, 0.5 * dt));
    Coeffs k4 = rhs(axpy(s, k3, dt));
    SpectralState out = s;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.time = s.time + dt;
    for (const auto& c : out.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > blowup_limit)
            throw BlowupError("step_rk4: coefficient magnitude exceeded blowup limit", out.time);
    out.enforce_hermitian();
    return out;
}

double l2_distance(const Coeffs& a, const Coeffs& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("l2_distance: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(std::pow(2.0 * M_PI, 3) * s);
}

void save_coeffs_csv(const SpectralState& s, const std::string& path,
                     const std::vector<std::string>& header_comments) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot open output: " + path);
    for (const auto& h : header_comments) out << "# " << h << "\n";
    out << "k1,k2,k3,re,im\n";
    char line[160];
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        Vec3i k = s.grid.vector(i);
        std::snprintf(line, sizeof(line), "%d,%d,%d,%.17g,%.17g\n", k[0], k[1], k[2],
                      s.coeffs[i].real(), s.coeffs[i].imag());
        out << line;
    }
}

void save_physical_csv(const SpectralState& s, int n_grid, const std::string& path,
                       const std::vector<std::string>& header_comments) {
    std::vector<double> f = reconstruct(s, n_grid);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot open output: " + path);
    for (const auto& h : header_comments) out << "# " << h << "\n";
    out << "v1,v2,v3,f\n";
    char line[200];
    const int n = n_grid;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double vx = -M_PI + 2.0 * M_PI * i / n;
                double vy = -M_PI + 2.0 * M_PI * j / n;
                double vz = -M_PI + 2.0 * M_PI * k / n;
                std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", vx, vy, vz,
                              f[((std::size_t)i * n + j) * n + k]);
                out << line;
            }
}

} // namespace graze
