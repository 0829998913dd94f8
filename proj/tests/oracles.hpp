#pragma once
// Reference implementations for the tests. Deliberately independent of the
// library: own Gauss-Legendre nodes, explicit HO orbitals, brute-force
// cluster integrals in spherical coordinates.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "nucent/nuclide.hpp"

namespace oracle {

constexpr double pi = std::numbers::pi;

struct Rule {
    std::vector<double> x, w;
};

/// Gauss-Legendre on [a, b] by Newton iteration on P_n.
inline Rule legendre(int n, double a, double b)
{
    Rule r;
    for (int i = 1; i <= n; ++i) {
        double z = std::cos(pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        r.x.push_back(0.5 * (a + b) - 0.5 * (b - a) * z);
        r.w.push_back((b - a) / ((1.0 - z * z) * dp * dp));
    }
    return r;
}

inline Rule composite(double a, double b, int panels, int n)
{
    Rule out;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const Rule r = legendre(n, a + p * h, a + (p + 1) * h);
        out.x.insert(out.x.end(), r.x.begin(), r.x.end());
        out.w.insert(out.w.end(), r.w.begin(), r.w.end());
    }
    return out;
}

/// 4 pi int_0^R f(x) x^2 dx
inline double radial_integral(const std::function<double(double)>& f, double R, int panels = 200, int n = 10)
{
    const Rule r = composite(0.0, R, panels, n);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        s += r.w[i] * f(r.x[i]) * r.x[i] * r.x[i];
    }
    return 4.0 * pi * s;
}

/// Explicit normalized HO radial functions, b0 = b.
inline double ho_radial(int n, int l, double b, double r)
{
    const double x = r / b;
    const double g = std::exp(-0.5 * x * x) / std::pow(pi, 0.25) / std::pow(b, 1.5);
    if (n == 1 && l == 0) {
        return 2.0 * g;
    }
    if (n == 1 && l == 1) {
        return std::sqrt(8.0 / 3.0) * x * g;
    }
    if (n == 1 && l == 2) {
        return std::sqrt(16.0 / 15.0) * x * x * g;
    }
    if (n == 2 && l == 0) {
        return std::sqrt(8.0 / 3.0) * (1.5 - x * x) * g;
    }
    return NAN;
}

/// Momentum-space radial functions: sqrt(2/pi) int j_l(kr) R_nl(r) r^2 dr,
/// done numerically.
inline double ho_radial_momentum(int n, int l, double b, double k)
{
    const Rule r = composite(0.0, 12.0 * b, 120, 10);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        s += r.w[i] * std::sph_bessel(l, k * r.x[i]) * ho_radial(n, l, b, r.x[i]) * r.x[i] * r.x[i];
    }
    return std::sqrt(2.0 / pi) * s;
}

struct V3 {
    double x, y, z;
};
inline double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(V3 a) { return std::sqrt(dot(a, a)); }

/// Slater density matrix, trace A, b0 = 1.
inline double rho0(const nucent::Nuclide& nuc, V3 a, V3 b)
{
    const double ra = norm(a), rb = norm(b);
    const double c = (ra > 0 && rb > 0) ? dot(a, b) / (ra * rb) : 1.0;
    double s = 0.0;
    for (const auto& o : nuc.occupations()) {
        const int l = o.shell.l;
        const double pl = std::legendre(l, std::clamp(c, -1.0, 1.0));
        s += 4.0 * o.eta * (2 * l + 1) / (4.0 * pi) * ho_radial(o.shell.n, l, 1.0, ra)
             * ho_radial(o.shell.n, l, 1.0, rb) * pl;
    }
    return s;
}

/// int d3r2 g(1,1';2) [rho0(1,1') rho0(2,2) - 1/4 rho0(1,2) rho0(2,1')]
/// with g = f(r12) f(r1'2) - 1, f = 1 - exp(-y r^2), in spherical coordinates.
inline double two_body(const nucent::Nuclide& nuc, double y, V3 r1, V3 r1p, int panels = 24, int nr = 8,
                       int nt = 24, int np = 24)
{
    const Rule rr = composite(0.0, 7.0, panels, nr);
    const Rule rt = legendre(nt, -1.0, 1.0);
    const Rule rp = legendre(np, 0.0, 2.0 * pi);
    const double d11 = rho0(nuc, r1, r1p);
    double s = 0.0;
    for (std::size_t i = 0; i < rr.x.size(); ++i) {
        const double r = rr.x[i];
        for (std::size_t j = 0; j < rt.x.size(); ++j) {
            const double ct = rt.x[j];
            const double st = std::sqrt(1.0 - ct * ct);
            for (std::size_t k = 0; k < rp.x.size(); ++k) {
                const V3 r2{r * st * std::cos(rp.x[k]), r * st * std::sin(rp.x[k]), r * ct};
                const V3 d1{r1.x - r2.x, r1.y - r2.y, r1.z - r2.z};
                const V3 d2{r1p.x - r2.x, r1p.y - r2.y, r1p.z - r2.z};
                const double f1 = 1.0 - std::exp(-y * dot(d1, d1));
                const double f2 = 1.0 - std::exp(-y * dot(d2, d2));
                const double br = d11 * rho0(nuc, r2, r2) - 0.25 * rho0(nuc, r1, r2) * rho0(nuc, r2, r1p);
                s += rr.w[i] * rt.w[j] * rp.w[k] * r * r * (f1 * f2 - 1.0) * br;
            }
        }
    }
    return s;
}

/// 4 pi int j0(qr) f(r) r^2 dr
inline double fourier(const std::function<double(double)>& f, double q, double R, int panels = 200)
{
    return radial_integral([&](double r) { return f(r) * (q * r > 0 ? std::sin(q * r) / (q * r) : 1.0); }, R,
                           panels);
}

/// -4 pi int f ln f x^2 dx, skipping f <= 0
inline double entropy(const std::function<double(double)>& f, double R, int panels = 400)
{
    return radial_integral(
        [&](double x) {
            const double v = f(x);
            return v > 0 ? -v * std::log(v) : 0.0;
        },
        R, panels);
}

}  // namespace oracle
