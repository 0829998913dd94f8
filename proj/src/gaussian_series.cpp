#include "nucent/gaussian_series.hpp"

#include <cmath>
#include <numbers>

#include "nucent/error.hpp"

namespace nucent {

double GaussianTerm::operator()(double x) const
{
    const double x2 = x * x;
    double poly = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) {
        poly = poly * x2 + *it;
    }
    return std::exp(-gamma * x2) * poly;
}

double GaussianSeries::operator()(double x) const
{
    double sum = 0.0;
    for (const auto& t : terms_) {
        sum += t(x);
    }
    return sum;
}

double GaussianSeries::moment(int m) const
{
    if (m <= -3) {
        throw InvalidInput("GaussianSeries::moment: order must exceed -3");
    }
    double sum = 0.0;
    for (const auto& t : terms_) {
        for (std::size_t j = 0; j < t.coef.size(); ++j) {
            const double p = (2.0 * j + 3.0 + m) / 2.0;
            sum += t.coef[j] * std::tgamma(p) / (2.0 * std::pow(t.gamma, p));
        }
    }
    return 4.0 * std::numbers::pi * sum;
}

GaussianSeries GaussianSeries::fourier() const
{
    // int_0^inf exp(-g x^2) x^(2j+2) j0(qx) dx
    //   = Gamma(j+3/2) / (2 g^(j+3/2)) exp(-z) 1F1(-j; 3/2; z),  z = q^2/(4g)
    std::vector<GaussianTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        GaussianTerm ft{1.0 / (4.0 * t.gamma), std::vector<double>(t.coef.size(), 0.0)};
        for (std::size_t j = 0; j < t.coef.size(); ++j) {
            const double jd = static_cast<double>(j);
            const double lead = 4.0 * std::numbers::pi * t.coef[j] * std::tgamma(jd + 1.5)
                                / (2.0 * std::pow(t.gamma, jd + 1.5));
            // Pochhammer ratio (-j)_m / ((3/2)_m m!) times (1/(4g))^m
            double c = 1.0;
            for (std::size_t m = 0; m <= j; ++m) {
                ft.coef[m] += lead * c;
                c *= (static_cast<double>(m) - jd) / ((1.5 + m) * (m + 1.0)) * ft.gamma;
            }
        }
        out.push_back(std::move(ft));
    }
    return GaussianSeries(std::move(out));
}

GaussianSeries GaussianSeries::rescaled(double length, double amplitude) const
{
    std::vector<GaussianTerm> out = terms_;
    const double inv_l2 = 1.0 / (length * length);
    for (auto& t : out) {
        t.gamma *= inv_l2;
        double f = amplitude;
        for (auto& c : t.coef) {
            c *= f;
            f *= inv_l2;
        }
    }
    return GaussianSeries(std::move(out));
}

GaussianSeries& GaussianSeries::operator+=(const GaussianSeries& other)
{
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

GaussianSeries& GaussianSeries::operator*=(double factor)
{
    for (auto& t : terms_) {
        for (auto& c : t.coef) {
            c *= factor;
        }
    }
    return *this;
}

GaussianTerm interpolate_gaussian_term(double gamma, int degree, double h,
                                       const std::function<double(double)>& poly_at_x2, double* mismatch)
{
    const int n = degree + 1;
    std::vector<double> t(n), dd(n);
    for (int i = 0; i < n; ++i) {
        t[i] = i * h;
        dd[i] = poly_at_x2(t[i]);
    }
    // Newton divided differences
    for (int k = 1; k < n; ++k) {
        for (int i = n - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (t[i] - t[i - k]);
        }
    }
    // expand the Newton form into monomial coefficients
    std::vector<double> coef(n, 0.0);
    for (int k = n - 1; k >= 0; --k) {
        // coef <- coef * (x - t[k]) + dd[k]
        for (int i = n - 1; i >= 1; --i) {
            coef[i] = coef[i - 1] - t[k] * coef[i];
        }
        coef[0] = -t[k] * coef[0] + dd[k];
    }
    GaussianTerm term{gamma, std::move(coef)};
    if (mismatch) {
        const double tc = (degree + 1.5) * h;
        const double expect = poly_at_x2(tc);
        double got = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            got = got * tc + term.coef[i];
        }
        double scale = std::abs(expect);
        for (int i = 0; i < n; ++i) {
            scale = std::max(scale, std::abs(term.coef[i]) * std::pow(tc, i));
        }
        *mismatch = scale > 0.0 ? std::abs(got - expect) / scale : 0.0;
    }
    return term;
}

}  // namespace nucent
