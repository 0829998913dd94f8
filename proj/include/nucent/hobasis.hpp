#pragma once

#include "nucent/gaussian_series.hpp"
#include "nucent/nuclide.hpp"

namespace nucent {

/// Oscillator length b0 = (hbar / m omega)^(1/2) in fm.
class HOParams {
public:
    explicit HOParams(double b0);
    double b0() const { return b0_; }

private:
    double b0_;
};

/// Normalized HO radial function R_nl(r; b0) in fm^(-3/2):
/// int_0^inf R_nl^2 r^2 dr = 1.
double ho_radial(Shell shell, HOParams ho, double r);

/// Uncorrelated one-body density (1/A) sum capacity * eta * R_nl^2 / 4pi,
/// normalized to one, in fm^-3.
double ho_density(const Nuclide& nuclide, HOParams ho, double r);

/// HO momentum distribution, normalized to one, in fm^3. HO eigenstates are
/// Fourier self-dual, so this is ho_density with b0 -> 1/b0 and r -> k.
double ho_momentum_density(const Nuclide& nuclide, HOParams ho, double k);

/// Point form factor 4 pi int j0(qr) rho_HO(r) r^2 dr in closed form.
double ho_form_factor(const Nuclide& nuclide, HOParams ho, double q);

/// The HO density in units b0 = 1 as a Gaussian series (one term, gamma = 1).
GaussianSeries ho_density_series(const Nuclide& nuclide);

}  // namespace nucent
