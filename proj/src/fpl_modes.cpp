#include "graze/fpl_modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "graze/parallel.hpp"
#include "graze/quadrature.hpp"
#include "graze/special.hpp"

namespace graze {

namespace {

void radial_nodes_w(int n, double gamma, double Q, std::vector<double>& x,
                    std::vector<double>& w) {
    if (gamma >= -0.5) {
        gauss_on(n, 0.0, Q, x, w);
    } else {
        PanelRule pr = graded_toward(0.0, Q, std::max(8, n / 6), 48);
        x = pr.x;
        w = pr.w;
    }
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

// deterministic orthonormal frame completing unit vector n
void make_frame(Vec3d n, Vec3d& e1, Vec3d& e2) {
    Vec3d t = (std::fabs(n[0]) < 0.9) ? Vec3d{1.0, 0.0, 0.0} : Vec3d{0.0, 1.0, 0.0};
    e1 = {n[1] * t[2] - n[2] * t[1], n[2] * t[0] - n[0] * t[2], n[0] * t[1] - n[1] * t[0]};
    double nn = std::sqrt(dot(e1, e1));
    e1 = {e1[0] / nn, e1[1] / nn, e1[2] / nn};
    e2 = {n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]};
}

} // namespace

namespace {

// int e^{iq.m} w(rho) [ c1 i (q.a) + c2 rho^2 (a_perp)^2 ] dq  (reduced form)
std::complex<double> dd_eval(const std::function<double(double)>& wfn, double c1, double c2,
                             Vec3d axis, Vec3i m, const GridConfig& grid, int n_rho, int n_cos,
                             double gamma_for_grading) {
    double an = std::sqrt(dot(axis, axis));
    if (an == 0.0) return {0.0, 0.0};
    double M = norm(m);
    double cosb = 1.0, sinb = 0.0;
    if (M > 0.0) {
        cosb = (axis[0] * m[0] + axis[1] * m[1] + axis[2] * m[2]) / (an * M);
        cosb = std::min(1.0, std::max(-1.0, cosb));
        sinb = std::sqrt(1.0 - cosb * cosb);
    }
    const double Q = grid.q_max;
    std::vector<double> rho, wr, c, wc;
    radial_nodes_w(n_rho, gamma_for_grading, Q, rho, wr);
    gauss_on(n_cos, -1.0, 1.0, c, wc);

    double tot_re = 0.0, tot_im = 0.0;
    for (std::size_t ir = 0; ir < rho.size(); ++ir) {
        const double r = rho[ir];
        const double rw = wr[ir] * r * r * wfn(r);
        const double rM = r * M;
        double s_re = 0.0, s_im = 0.0;
        for (std::size_t ic = 0; ic < c.size(); ++ic) {
            const double cc = c[ic];
            const double ss2 = std::max(0.0, 1.0 - cc * cc);
            const double f_mag = cyl_j0(rM * sinb * std::sqrt(ss2));
            const double arg = rM * cosb * cc;
            const double f_re = std::cos(arg) * f_mag;
            const double f_im = std::sin(arg) * f_mag;
            const double drift = c1 * r * an * cc;
            const double diff = c2 * r * r * an * an * ss2;
            // (f_re + i f_im)(diff + i drift)
            s_re += wc[ic] * (f_re * diff - f_im * drift);
            s_im += wc[ic] * (f_re * drift + f_im * diff);
        }
        tot_re += rw * s_re;
        tot_im += rw * s_im;
    }
    return {2.0 * M_PI * tot_re, 2.0 * M_PI * tot_im};
}

struct DDSizes {
    int n_rho, n_cos;
};
DDSizes dd_sizes(const QuadratureSpec& quad, const GridConfig& grid, Vec3i m) {
    double osc = grid.q_max * norm(m);
    return {std::max(quad.n_rho, (int)std::ceil(0.55 * osc) + 14),
            std::max(quad.n_omega, (int)std::ceil(0.9 * osc) + 16)};
}

double dd_refined(const std::function<double(double)>& wfn, double c1, double c2, Vec3d axis,
                  Vec3i m, const GridConfig& grid, const QuadratureSpec& quad, double gamma,
                  const char* what) {
    DDSizes sz = dd_sizes(quad, grid, m);
    std::complex<double> prev = dd_eval(wfn, c1, c2, axis, m, grid, sz.n_rho, sz.n_cos, gamma);
    for (int r = 0; r < quad.max_refine; ++r) {
        sz.n_rho = (int)std::ceil(sz.n_rho * 1.5);
        sz.n_cos = (int)std::ceil(sz.n_cos * 1.5);
        std::complex<double> next = dd_eval(wfn, c1, c2, axis, m, grid, sz.n_rho, sz.n_cos, gamma);
        if (std::abs(next - prev) <= quad.tol) {
            if (std::fabs(next.imag()) > quad.tol * std::max(1.0, std::fabs(next.real())))
                throw QuadratureNotConvergedError(std::string(what) + ": imaginary residue");
            return next.real();
        }
        prev = next;
    }
    throw QuadratureNotConvergedError(std::string(what) + ": quadrature did not converge");
}

} // namespace

std::complex<double> drift_diffusion_integral(const std::function<double(double)>& radial_weight,
                                              double c_drift, double c_diff, Vec3d axis, Vec3i m,
                                              const GridConfig& grid, int n_rho, int n_cos,
                                              double grading_gamma) {
    return dd_eval(radial_weight, c_drift, c_diff, axis, m, grid, n_rho, n_cos, grading_gamma);
}

double fpl_mode(const FplKernel& fk, const GridConfig& grid, Vec3i l, Vec3i m,
                const QuadratureSpec& quad) {
    fk.validate();
    Vec3i k = l + m;
    if (k[0] == 0 && k[1] == 0 && k[2] == 0) return 0.0;
    double g = fk.gamma;
    // grazing-limit form: -(L0/2) int e^{iqm} |q|^g { i q.k + 1/4 |q|^2 [k_perp]^2 }
    double v1 = dd_refined([g](double r) { return std::pow(r, g); }, -fk.lambda0 / 2.0,
                           -fk.lambda0 / 8.0, to_d(k), m, grid, quad, g, "fpl_mode(grazing form)");
    // direct FPL form: -4 int e^{iqm} (Psi/|q|^2) { i q.k + 1/4 |q|^2 [k_perp]^2 }
    double v2 = dd_refined([&fk](double r) { return fk.psi(r) / (r * r); }, -4.0, -1.0, to_d(k),
                           m, grid, quad, g, "fpl_mode(direct form)");
    if (std::fabs(v1 - v2) > 2.0 * quad.tol * std::max(1.0, std::fabs(v1)))
        throw QuadratureNotConvergedError("fpl_mode: grazing and direct forms disagree");
    return v1;
}

double fpl_mode_alt(const FplKernel& fk, const GridConfig& grid, Vec3i l, Vec3i m,
                    const QuadratureSpec& quad) {
    fk.validate();
    if (l == m) return 0.0;
    const double M = norm(m);
    const double L2 = (double)norm2(l);
    const double M2 = (double)norm2(m);
    double lm = 0.0; // l . mhat
    if (M > 0.0) lm = (double)dot(l, m) / M;

    DDSizes sz = dd_sizes(quad, grid, m);
    auto eval = [&](int n_rho, int n_cos) {
        std::vector<double> rho, wr, c, wc;
        radial_nodes_w(n_rho, fk.gamma, grid.q_max, rho, wr);
        gauss_on(n_cos, -1.0, 1.0, c, wc);
        double tre = 0.0, tim = 0.0;
        for (std::size_t ir = 0; ir < rho.size(); ++ir) {
            double r = rho[ir];
            double rw = wr[ir] * r * r * fk.psi(r);
            double s_re = 0.0, s_im = 0.0;
            for (std::size_t ic = 0; ic < c.size(); ++ic) {
                double cc = c[ic];
                double ss2 = 1.0 - cc * cc;
                // phi-averaged perpendicular squares (axis along mhat):
                double lq2 = cc * cc * lm * lm + 0.5 * ss2 * (L2 - lm * lm);
                double mq2 = M2 * cc * cc;
                double val = (M2 - mq2) - (L2 - lq2); // [m_perp]^2 - [l_perp]^2
                double arg = r * M * cc;
                s_re += wc[ic] * std::cos(arg) * val;
                s_im += wc[ic] * std::sin(arg) * val;
            }
            tre += rw * s_re;
            tim += rw * s_im;
        }
        return std::complex<double>(2.0 * M_PI * tre, 2.0 * M_PI * tim);
    };
    std::complex<double> prev = eval(sz.n_rho, sz.n_cos);
    for (int r = 0; r < quad.max_refine; ++r) {
        sz.n_rho = (int)std::ceil(sz.n_rho * 1.5);
        sz.n_cos = (int)std::ceil(sz.n_cos * 1.5);
        std::complex<double> next = eval(sz.n_rho, sz.n_cos);
        if (std::abs(next - prev) <= quad.tol) {
            if (std::fabs(next.imag()) > quad.tol * std::max(1.0, std::fabs(next.real())))
                throw QuadratureNotConvergedError("fpl_mode_alt: imaginary residue");
            return next.real();
        }
        prev = next;
    }
    throw QuadratureNotConvergedError("fpl_mode_alt: quadrature did not converge");
}

double approx_boltzmann_mode(const GrazingFamily& fam, double eps, const GridConfig& grid,
                             Vec3i l, Vec3i m, const QuadratureSpec& quad) {
    Vec3i d = l - m;
    if (d[0] == 0 && d[1] == 0 && d[2] == 0) return 0.0;
    ThetaMoments tm = fam.theta_moments(eps, quad.tol);
    double g = fam.base.gamma;
    return dd_refined([g](double r) { return std::pow(r, g); }, tm.w1, -tm.w2 / 4.0, to_d(d), m,
                      grid, quad, g, "approx_boltzmann_mode");
}

std::complex<double> SplitKernel::reassemble(Vec3i l, Vec3i m) const {
    GridConfig grid(N);
    if (!grid.in_box(l) || !grid.in_box(m))
        throw DomainError("SplitKernel::reassemble: pair outside box");
    std::size_t im = grid.index(m);
    Vec3i k = l + m;
    std::complex<double> acc{0.0, 0.0};
    for (int j = 0; j < 3; ++j) acc += (double)k[j] * F[j][im];
    acc += (double)norm2(k) * G[im];
    for (int j = 0; j < 3; ++j)
        for (int h = j; h < 3; ++h) {
            double mult = (j == h) ? (double)k[j] * k[h] : 2.0 * k[j] * k[h];
            acc += mult * I[ij_index(j, h)][im];
        }
    if (has_const_field()) acc += C[im];
    return acc;
}

ModeTensor SplitKernel::to_mode_tensor(const GridConfig& grid) const {
    if (grid.N != N) throw DimensionMismatchError("SplitKernel::to_mode_tensor: N mismatch");
    ModeTensor t(N, 1e-12, tag);
    std::size_t nb = grid.size();
    for (std::size_t il = 0; il < nb; ++il) {
        Vec3i l = grid.vector(il);
        for (std::size_t im = 0; im < nb; ++im) {
            Vec3i m = grid.vector(im);
            t.set(ClassKey::from_pair(l, m), reassemble(l, m).real());
        }
    }
    return t;
}

namespace {

struct FieldAccum {
    // raw building-block integrals per m:
    //   P_j = int i q_j w_drift(r) e^{iqm} dq
    //   S   = int r^2 w_diff(r) e^{iqm} dq
    //   T_jh= int w_diff(r) q_j q_h e^{iqm} dq
    std::complex<double> P[3];
    std::complex<double> S;
    std::complex<double> T[6];
};

// 3D product quadrature (rho x polar x azimuth around mhat); the azimuthal
// trapezoid is exact for the degree-<=2 trigonometric integrands.
FieldAccum fields_volume3d(Vec3i m, double gamma, const GridConfig& grid, int n_rho, int n_cos) {
    FieldAccum a{};
    double M = norm(m);
    Vec3d mhat = (M > 0.0) ? Vec3d{m[0] / M, m[1] / M, m[2] / M} : Vec3d{0.0, 0.0, 1.0};
    Vec3d e1, e2;
    make_frame(mhat, e1, e2);
    const int n_phi = 8;
    std::vector<double> rho, wr, c, wc;
    radial_nodes_w(n_rho, gamma, grid.q_max, rho, wr);
    gauss_on(n_cos, -1.0, 1.0, c, wc);
    for (std::size_t ir = 0; ir < rho.size(); ++ir) {
        double r = rho[ir];
        double rg = std::pow(r, gamma);
        double base_w = wr[ir] * r * r; // measure rho^2
        for (std::size_t ic = 0; ic < c.size(); ++ic) {
            double cc = c[ic];
            double ss = std::sqrt(std::max(0.0, 1.0 - cc * cc));
            double arg = r * M * cc;
            std::complex<double> ph{std::cos(arg), std::sin(arg)};
            std::complex<double> wq = base_w * wc[ic] * (2.0 * M_PI / n_phi) * ph;
            for (int ip = 0; ip < n_phi; ++ip) {
                double phi = 2.0 * M_PI * ip / n_phi;
                double cp = std::cos(phi), sp = std::sin(phi);
                Vec3d om{cc * mhat[0] + ss * (cp * e1[0] + sp * e2[0]),
                         cc * mhat[1] + ss * (cp * e1[1] + sp * e2[1]),
                         cc * mhat[2] + ss * (cp * e1[2] + sp * e2[2])};
                double q0 = r * om[0], q1 = r * om[1], q2 = r * om[2];
                std::complex<double> w = wq * rg;
                a.P[0] += w * std::complex<double>(0.0, 1.0) * q0;
                a.P[1] += w * std::complex<double>(0.0, 1.0) * q1;
                a.P[2] += w * std::complex<double>(0.0, 1.0) * q2;
                a.S += w * (r * r);
                a.T[0] += w * (q0 * q0);
                a.T[1] += w * (q0 * q1);
                a.T[2] += w * (q0 * q2);
                a.T[3] += w * (q1 * q1);
                a.T[4] += w * (q1 * q2);
                a.T[5] += w * (q2 * q2);
            }
        }
    }
    return a;
}

// closed radial reduction: P_j = -4pi mhat_j int rho^{3+g} j1(rho M);
// S = 4pi int rho^{4+g} j0; T = 4pi [ delta int rho^{4+g} j1/x - mhat mhat int rho^{4+g} j2 ]
FieldAccum fields_radial1d(Vec3i m, double gamma, const GridConfig& grid, int n_rho) {
    FieldAccum a{};
    double M = norm(m);
    std::vector<double> rho, wr;
    radial_nodes_w(n_rho, gamma, grid.q_max, rho, wr);
    if (M == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) s += wr[i] * std::pow(rho[i], 4.0 + gamma);
        a.S = 4.0 * M_PI * s;
        a.T[0] = a.T[3] = a.T[5] = 4.0 * M_PI * s / 3.0;
        return a;
    }
    Vec3d mhat{m[0] / M, m[1] / M, m[2] / M};
    double i1 = 0.0, i0 = 0.0, it1 = 0.0, it2 = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        double r = rho[i], x = r * M;
        double w3 = wr[i] * std::pow(r, 3.0 + gamma);
        double w4 = wr[i] * std::pow(r, 4.0 + gamma);
        i1 += w3 * sph_j1(x);
        i0 += w4 * sph_j0(x);
        it1 += w4 * sph_j1_over_x(x);
        it2 += w4 * sph_j2(x);
    }
    for (int j = 0; j < 3; ++j) a.P[j] = -4.0 * M_PI * mhat[j] * i1;
    a.S = 4.0 * M_PI * i0;
    int idx = 0;
    for (int j = 0; j < 3; ++j)
        for (int h = j; h < 3; ++h, ++idx)
            a.T[idx] = 4.0 * M_PI * ((j == h ? it1 : 0.0) - mhat[j] * mhat[h] * it2);
    return a;
}

SplitKernel assemble_split(SplitVariant variant, double gamma, double lambda0, double eps,
                           double w1, double w2, const GridConfig& grid,
                           const QuadratureSpec& quad, FieldMethod method, unsigned threads,
                           const std::string& tag) {
    SplitKernel sk;
    sk.N = grid.N;
    sk.variant = variant;
    sk.gamma = gamma;
    sk.lambda0 = lambda0;
    sk.eps = eps;
    sk.w1 = w1;
    sk.w2 = w2;
    sk.tag = tag;
    std::size_t nb = grid.size();
    for (int j = 0; j < 3; ++j) sk.F[j].assign(nb, {0.0, 0.0});
    sk.G.assign(nb, {0.0, 0.0});
    for (int j = 0; j < 6; ++j) sk.I[j].assign(nb, {0.0, 0.0});
    if (variant == SplitVariant::ApproxBoltzmann) sk.C.assign(nb, {0.0, 0.0});

    parallel_for(nb, [&](std::size_t im) {
        Vec3i m = grid.vector(im);
        double osc = grid.q_max * norm(m);
        int n_rho = std::max(quad.n_rho, (int)std::ceil(0.55 * osc) + 14);
        int n_cos = std::max(quad.n_omega, (int)std::ceil(0.9 * osc) + 16);

        FieldAccum a;
        if (method == FieldMethod::Volume3D) {
            FieldAccum a0 = fields_volume3d(m, gamma, grid, n_rho, n_cos);
            FieldAccum a1 = fields_volume3d(m, gamma, grid, (int)(n_rho * 1.5), (int)(n_cos * 1.5));
            double dev = std::abs(a1.S - a0.S);
            for (int j = 0; j < 6; ++j) dev = std::max(dev, std::abs(a1.T[j] - a0.T[j]));
            for (int j = 0; j < 3; ++j) dev = std::max(dev, std::abs(a1.P[j] - a0.P[j]));
            if (dev > 50.0 * quad.tol)
                throw QuadratureNotConvergedError("split fields (3D) did not converge");
            a = a1;
        } else {
            FieldAccum a0 = fields_radial1d(m, gamma, grid, n_rho * 3);
            FieldAccum a1 = fields_radial1d(m, gamma, grid, (int)(n_rho * 4.5));
            if (std::abs(a1.S - a0.S) > 50.0 * quad.tol)
                throw QuadratureNotConvergedError("split fields (radial) did not converge");
            a = a1;
        }

        if (variant == SplitVariant::FplLimit) {
            double c = lambda0;
            for (int j = 0; j < 3; ++j) sk.F[j][im] = -(c / 2.0) * a.P[j];
            sk.G[im] = -(c / 8.0) * a.S;
            for (int j = 0; j < 6; ++j) sk.I[j][im] = (c / 8.0) * a.T[j];
        } else {
            // d = l - m = k - 2m expansion of
            //   w1 i q.d - (w2/4) |q|^2 (d_perp)^2,  (d_perp)^2 = d^2 - (d.qhat)^2
            // F_j  = w1 P_j + w2 [ m_j S - (T m)_j ]
            // G    = -(w2/4) S
            // I_jh = (w2/4) T_jh
            // C    = -2 w1 m.P - w2 [ |m|^2 S - m.T.m ]
            std::complex<double> Tm[3];
            for (int j = 0; j < 3; ++j)
                Tm[j] = a.T[SplitKernel::ij_index(j, 0)] * (double)m[0] +
                        a.T[SplitKernel::ij_index(j, 1)] * (double)m[1] +
                        a.T[SplitKernel::ij_index(j, 2)] * (double)m[2];
            for (int j = 0; j < 3; ++j)
                sk.F[j][im] = w1 * a.P[j] + w2 * ((double)m[j] * a.S - Tm[j]);
            sk.G[im] = -(w2 / 4.0) * a.S;
            for (int j = 0; j < 6; ++j) sk.I[j][im] = (w2 / 4.0) * a.T[j];
            std::complex<double> mP = a.P[0] * (double)m[0] + a.P[1] * (double)m[1] +
                                      a.P[2] * (double)m[2];
            std::complex<double> mTm = Tm[0] * (double)m[0] + Tm[1] * (double)m[1] +
                                       Tm[2] * (double)m[2];
            sk.C[im] = -2.0 * w1 * mP - w2 * ((double)norm2(m) * a.S - mTm);
        }
    }, threads);
    return sk;
}

} // namespace

SplitKernel build_split_kernel(const FplKernel& fk, const GridConfig& grid,
                               const QuadratureSpec& quad, FieldMethod method, unsigned threads) {
    fk.validate();
    return assemble_split(SplitVariant::FplLimit, fk.gamma, fk.lambda0, 0.0, fk.lambda0 / 2.0,
                          fk.lambda0 / 2.0, grid, quad, method, threads,
                          "fpl(gamma=" + std::to_string(fk.gamma) +
                              ",lambda0=" + std::to_string(fk.lambda0) + ")");
}

SplitKernel build_split_kernel(const GrazingFamily& fam, double eps, const GridConfig& grid,
                               const QuadratureSpec& quad, FieldMethod method, unsigned threads) {
    ThetaMoments tm = fam.theta_moments(eps, quad.tol);
    return assemble_split(SplitVariant::ApproxBoltzmann, fam.base.gamma, fam.lambda0, eps, tm.w1,
                          tm.w2, grid, quad, method, threads,
                          "approx(" + fam.base.tag + ",eps=" + std::to_string(eps) + ")");
}

namespace {
struct SplitHeader {
    char magic[4];
    std::uint32_t version;
    std::int32_t n;
    std::int32_t variant;
    double gamma, lambda0, eps, w1, w2;
    std::uint32_t tag_len;
    std::uint32_t field_count;
    std::uint64_t checksum;
};
} // namespace

void SplitKernel::save(const std::string& path) const {
    std::vector<const std::vector<std::complex<double>>*> fields;
    for (int j = 0; j < 3; ++j) fields.push_back(&F[j]);
    fields.push_back(&G);
    for (int j = 0; j < 6; ++j) fields.push_back(&I[j]);
    if (has_const_field()) fields.push_back(&C);

    std::uint64_t chk = 1469598103934665603ULL;
    for (const auto* f : fields)
        chk = fnv1a(f->data(), f->size() * sizeof(std::complex<double>), chk);

    SplitHeader h;
    std::memcpy(h.magic, "GRZS", 4);
    h.version = 1;
    h.n = N;
    h.variant = (std::int32_t)variant;
    h.gamma = gamma;
    h.lambda0 = lambda0;
    h.eps = eps;
    h.w1 = w1;
    h.w2 = w2;
    h.tag_len = (std::uint32_t)tag.size();
    h.field_count = (std::uint32_t)fields.size();
    h.checksum = chk;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot open split cache for writing: " + path);
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(tag.data(), (std::streamsize)tag.size());
    for (const auto* f : fields)
        out.write(reinterpret_cast<const char*>(f->data()),
                  (std::streamsize)(f->size() * sizeof(std::complex<double>)));
    if (!out) throw CacheError("split cache write failed: " + path);
}

SplitKernel SplitKernel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open split cache: " + path);
    SplitHeader h;
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, "GRZS", 4) != 0)
        throw CacheError("bad split cache magic: " + path);
    if (h.version != 1) throw CacheError("unsupported split cache version");
    SplitKernel sk;
    sk.N = h.n;
    sk.variant = (SplitVariant)h.variant;
    sk.gamma = h.gamma;
    sk.lambda0 = h.lambda0;
    sk.eps = h.eps;
    sk.w1 = h.w1;
    sk.w2 = h.w2;
    sk.tag.resize(h.tag_len);
    in.read(sk.tag.data(), h.tag_len);
    GridConfig grid(sk.N);
    std::size_t nb = grid.size();
    std::vector<std::vector<std::complex<double>>*> fields;
    for (int j = 0; j < 3; ++j) fields.push_back(&sk.F[j]);
    fields.push_back(&sk.G);
    for (int j = 0; j < 6; ++j) fields.push_back(&sk.I[j]);
    if (sk.has_const_field()) fields.push_back(&sk.C);
    if (h.field_count != fields.size()) throw CacheError("split cache field count mismatch");
    std::uint64_t chk = 1469598103934665603ULL;
    for (auto* f : fields) {
        f->resize(nb);
        in.read(reinterpret_cast<char*>(f->data()),
                (std::streamsize)(nb * sizeof(std::complex<double>)));
        if (!in) throw CacheError("truncated split cache: " + path);
        chk = fnv1a(f->data(), nb * sizeof(std::complex<double>), chk);
    }
    if (chk != h.checksum) throw CacheError("split cache checksum mismatch: " + path);
    return sk;
}

} // namespace graze
