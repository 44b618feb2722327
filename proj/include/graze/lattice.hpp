#ifndef GRAZE_LATTICE_HPP
#define GRAZE_LATTICE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "graze/errors.hpp"

namespace graze {

using Vec3i = std::array<int, 3>;
using Vec3d = std::array<double, 3>;

inline Vec3i operator+(Vec3i a, Vec3i b) { return {a[0]+b[0], a[1]+b[1], a[2]+b[2]}; }
inline Vec3i operator-(Vec3i a, Vec3i b) { return {a[0]-b[0], a[1]-b[1], a[2]-b[2]}; }
inline Vec3i operator-(Vec3i a) { return {-a[0], -a[1], -a[2]}; }
inline long dot(Vec3i a, Vec3i b) { return (long)a[0]*b[0] + (long)a[1]*b[1] + (long)a[2]*b[2]; }
inline long norm2(Vec3i a) { return dot(a, a); }
inline double norm(Vec3i a) { return std::sqrt((double)norm2(a)); }
inline double dot(Vec3d a, Vec3d b) { return a[0]*b[0] + a[1]*b[1] + a[2]*b[2]; }
inline Vec3d to_d(Vec3i a) { return {(double)a[0], (double)a[1], (double)a[2]}; }

// Truncated/periodized velocity domain of the spectral method: period [-pi,pi]^3,
// support ball radius R = lambda*pi with lambda = 2/(3+sqrt(2)), relative
// velocities bounded by q_max = 2R.
struct GridConfig {
    int N;
    double T;
    double lambda;
    double R;
    double q_max;

    explicit GridConfig(int modes_per_axis)
        : N(modes_per_axis),
          T(M_PI),
          lambda(2.0 / (3.0 + std::sqrt(2.0))),
          R(lambda * M_PI),
          q_max(2.0 * lambda * M_PI) {
        if (N < 0) throw DomainError("GridConfig: N must be >= 0");
    }

    int side() const { return 2 * N + 1; }
    std::size_t size() const { std::size_t s = side(); return s * s * s; }

    bool in_box(Vec3i k) const {
        return std::abs(k[0]) <= N && std::abs(k[1]) <= N && std::abs(k[2]) <= N;
    }
    // lexicographic flat index of k in {-N..N}^3
    std::size_t index(Vec3i k) const {
        std::size_t nb = side();
        return ((std::size_t)(k[0] + N) * nb + (k[1] + N)) * nb + (k[2] + N);
    }
    Vec3i vector(std::size_t idx) const {
        int nb = side();
        int c = (int)(idx % nb) - N;
        int b = (int)((idx / nb) % nb) - N;
        int a = (int)(idx / ((std::size_t)nb * nb)) - N;
        return {a, b, c};
    }
};

// Symmetry class of a kernel-mode pair (l,m): the mode is a function of
// (|l+m|^2, |l-m|^2, (l+m).(l-m)) with the first two exchangeable.  The dot
// product keeps its sign: pairs such as (l,0) and (0,l) have distinct modes.
struct ClassKey {
    long a, b, d; // a <= b, d signed

    static ClassKey from_pair(Vec3i l, Vec3i m) {
        Vec3i u = l + m, w = l - m;
        long A = norm2(u), B = norm2(w), D = dot(u, w);
        if (A > B) std::swap(A, B);
        return {A, B, D};
    }
    bool operator==(const ClassKey& o) const { return a == o.a && b == o.b && d == o.d; }

    // packed key: fields fit comfortably for N <= 256
    std::uint64_t packed() const {
        return ((std::uint64_t)a << 42) | ((std::uint64_t)b << 21) |
               (std::uint64_t)(d + (1L << 20));
    }
    static ClassKey unpack(std::uint64_t p) {
        return {(long)(p >> 42), (long)((p >> 21) & 0x1FFFFF), (long)(p & 0x1FFFFF) - (1L << 20)};
    }
};

} // namespace graze

#endif
