#include "nucent/hobasis.hpp"

#include <gsl/gsl_sf_laguerre.h>

#include <cmath>
#include <numbers>

#include "nucent/error.hpp"

namespace nucent {

namespace {

// N_nl^2 for b0 = 1: 2 (n-1)! / Gamma(n - 1 + l + 3/2)
double norm_squared(Shell s)
{
    return 2.0 * std::tgamma(s.n) / std::tgamma(s.n - 1 + s.l + 1.5);
}

void check_radius(double r, const char* what)
{
    if (!(r >= 0.0)) {
        throw InvalidInput(std::string(what) + ": argument must be non-negative");
    }
}

}  // namespace

HOParams::HOParams(double b0) : b0_(b0)
{
    if (!(b0 > 0.0) || !std::isfinite(b0)) {
        throw InvalidInput("HOParams: b0 must be positive and finite");
    }
}

double ho_radial(Shell shell, HOParams ho, double r)
{
    check_radius(r, "ho_radial");
    const double x = r / ho.b0();
    const double lag = gsl_sf_laguerre_n(shell.n - 1, shell.l + 0.5, x * x);
    return std::sqrt(norm_squared(shell)) * std::pow(x, shell.l) * lag * std::exp(-0.5 * x * x)
           / std::pow(ho.b0(), 1.5);
}

double ho_density(const Nuclide& nuclide, HOParams ho, double r)
{
    check_radius(r, "ho_density");
    double sum = 0.0;
    for (const auto& occ : nuclide.occupations()) {
        const double R = ho_radial(occ.shell, ho, r);
        sum += occ.shell.capacity() * occ.eta * R * R;
    }
    return sum / (4.0 * std::numbers::pi * nuclide.A());
}

double ho_momentum_density(const Nuclide& nuclide, HOParams ho, double k)
{
    check_radius(k, "ho_momentum_density");
    return ho_density(nuclide, HOParams(1.0 / ho.b0()), k);
}

double ho_form_factor(const Nuclide& nuclide, HOParams ho, double q)
{
    check_radius(q, "ho_form_factor");
    const double x = q * ho.b0() * q * ho.b0();
    double sum = 0.0;
    for (const auto& occ : nuclide.occupations()) {
        double poly = 1.0;
        if (occ.shell == shell_1p) {
            poly = 1.0 - x / 6.0;
        } else if (occ.shell == shell_1d) {
            poly = 1.0 - x / 3.0 + x * x / 60.0;
        } else if (occ.shell == shell_2s) {
            poly = 1.0 - x / 3.0 + x * x / 24.0;
        }
        sum += occ.shell.capacity() * occ.eta * poly;
    }
    return sum / nuclide.A() * std::exp(-x / 4.0);
}

GaussianSeries ho_density_series(const Nuclide& nuclide)
{
    // R_nl^2 = N^2 r^(2l) L^2(r^2) exp(-r^2); L = 1 except 2s, where L = 3/2 - r^2
    std::vector<double> coef(5, 0.0);
    for (const auto& occ : nuclide.occupations()) {
        const double w = occ.shell.capacity() * occ.eta * norm_squared(occ.shell)
                         / (4.0 * std::numbers::pi * nuclide.A());
        if (occ.shell == shell_2s) {
            coef[0] += w * 2.25;
            coef[1] -= w * 3.0;
            coef[2] += w;
        } else {
            coef[occ.shell.l] += w;
        }
    }
    return GaussianSeries({GaussianTerm{1.0, std::move(coef)}});
}

}  // namespace nucent
