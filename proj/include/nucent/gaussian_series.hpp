#pragma once

#include <functional>
#include <vector>

namespace nucent {

/// exp(-gamma x^2) * sum_j coef[j] x^(2j)
struct GaussianTerm {
    double gamma;
    std::vector<double> coef;

    double operator()(double x) const;
};

/// A spherically symmetric function written as a finite sum of even
/// polynomials times Gaussians. Every density, form factor and momentum
/// distribution built from HO orbitals and a Gaussian Jastrow factor has
/// this form, and the class is closed under the 3-D Fourier transform.
class GaussianSeries {
public:
    GaussianSeries() = default;
    explicit GaussianSeries(std::vector<GaussianTerm> terms) : terms_(std::move(terms)) {}

    double operator()(double x) const;

    const std::vector<GaussianTerm>& terms() const { return terms_; }

    /// 4 pi int_0^inf x^(2+m) f(x) dx; m > -3.
    double moment(int m) const;

    /// 4 pi int_0^inf j0(q x) f(x) x^2 dx as a new series in q.
    GaussianSeries fourier() const;

    /// x -> amplitude * f(x / length).
    GaussianSeries rescaled(double length, double amplitude) const;

    GaussianSeries& operator+=(const GaussianSeries& other);
    GaussianSeries& operator*=(double factor);
    friend GaussianSeries operator+(GaussianSeries a, const GaussianSeries& b) { return a += b; }
    friend GaussianSeries operator*(GaussianSeries a, double f) { return a *= f; }

private:
    std::vector<GaussianTerm> terms_;
};

/// Recovers the polynomial part of exp(-gamma x^2) * P(x^2), deg P <= degree,
/// from values of P sampled at `degree + 1` points x^2 = 0, h, 2h, ...
/// The sampler receives x^2. A further sample at x^2 = (degree + 1.5) h is
/// compared against the interpolant; the relative mismatch is written to
/// `mismatch` when non-null.
GaussianTerm interpolate_gaussian_term(double gamma, int degree, double h,
                                       const std::function<double(double)>& poly_at_x2,
                                       double* mismatch = nullptr);

}  // namespace nucent
