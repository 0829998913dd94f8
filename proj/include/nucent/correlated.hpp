#pragma once

#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "nucent/gaussian_series.hpp"
#include "nucent/hobasis.hpp"
#include "nucent/nuclide.hpp"

namespace nucent {

/// Jastrow strength y in f(r) = 1 - exp(-y (r/b0)^2). Smaller y means
/// stronger short-range correlations; the uncorrelated sentinel stands for
/// y = infinity (the HO limit).
class Correlation {
public:
    explicit Correlation(double y);
    static Correlation uncorrelated() { return Correlation(); }

    bool is_uncorrelated() const { return uncorrelated_; }
    /// +inf for the uncorrelated sentinel.
    double y() const;
    /// 1/y, zero in the HO limit.
    double inverse() const { return uncorrelated_ ? 0.0 : 1.0 / y_; }

private:
    Correlation() = default;
    double y_ = 0.0;
    bool uncorrelated_ = true;
};

/// Grid controls. Lengths are in units of b0.
struct QuadratureSpec {
    double r_max_multiplier = 64.0;  // hard cap for radial/momentum integrals
    double panel_width = 0.25;       // Gauss-Legendre panel width
    int panel_nodes = 16;
    int legendre_order = 8;          // partial-wave route: starting L_max
    int legendre_order_limit = 16;   // partial-wave route: escalation cap
    int partial_wave_radial_nodes = 64;
    double tolerance = 1e-10;

    /// Throws InvalidInput on non-positive fields or L_max < 2 l_max.
    void validate(const Nuclide& nuclide) const;
};

/// 1 - exp(-y r_b^2); r_b >= 0.
double jastrow_f(Correlation corr, double r_b);

/// Correlated one-body density matrix of an N=Z shell nucleus in the
/// two-body approximation of the factor cluster expansion:
///
///   rho(1,1') = N0/A [ rho0(1,1') + int d3r2 g(1,1';2) ( rho0(1,1') rho0(2,2)
///                                         - 1/4 rho0(1,2) rho0(2,1') ) ]
///
/// with g = f(r12) f(r1'2) - 1 and rho0 the HO Slater density matrix (trace A).
/// The r2 integrals are Gaussian times polynomial and are evaluated exactly
/// by Gauss-Hermite cubature; the diagonal and the centre-of-mass-integrated
/// density matrix are then carried as Gaussian series, which gives rho(r),
/// F(q), n(k) and <r^2> in closed form. Immutable after construction.
class CorrelatedModel {
public:
    CorrelatedModel(Nuclide nuclide, HOParams ho, Correlation corr, QuadratureSpec spec = {});

    const Nuclide& nuclide() const { return nuclide_; }
    HOParams ho() const { return ho_; }
    Correlation correlation() const { return corr_; }
    const QuadratureSpec& spec() const { return spec_; }

    /// N0 such that 4 pi int rho(r) r^2 dr = 1 (equal to 1 in the HO limit).
    double normalization_factor() const { return n0_; }

    /// rho(r) in fm^-3.
    double density(double r) const;

    /// rho(r1, r1') for |r1| = r1, |r1'| = r1p, cos of the angle between them.
    double density_matrix(double r1, double r1p, double cos_omega) const;

    /// n(k) in fm^3, normalized to one.
    double momentum_distribution(double k) const;

    /// F(q) = 4 pi int j0(qr) rho(r) r^2 dr.
    double form_factor(double q) const;

    /// <r^2>/b0^2 = R1 + R2(y).
    double mean_square_radius() const;

    /// Densities as Gaussian series in physical units (fm, fm^-1).
    const GaussianSeries& density_series() const { return density_; }
    const GaussianSeries& form_factor_series() const { return form_factor_; }
    const GaussianSeries& momentum_series() const;

    /// Centre-of-mass-integrated density matrix G(s) = int d3R rho(R+s/2, R-s/2),
    /// whose Fourier transform is (2 pi)^3 n(k). Physical units.
    const GaussianSeries& relative_density_matrix() const;

private:
    Nuclide nuclide_;
    HOParams ho_;
    Correlation corr_;
    QuadratureSpec spec_;
    double n0_ = 1.0;
    GaussianSeries density_;
    GaussianSeries form_factor_;

    struct Lazy {
        std::once_flag once;
        GaussianSeries relative;
        GaussianSeries momentum;
    };
    std::shared_ptr<Lazy> lazy_;
    void build_momentum() const;
};

/// Momentum distribution from the Legendre expansion of rho(r, r', cos w):
/// n(k) = (2/pi) sum_l int int j_l(kr) j_l(kr') rho_l(r, r') r^2 r'^2 dr dr',
/// rho_l = (2l+1)/2 int rho P_l. L_max starts at spec.legendre_order and is
/// doubled until the last l-contribution falls below 1e-8 of the total at
/// every requested k; NumericalError when spec.legendre_order_limit is hit.
struct PartialWaveMomentum {
    std::vector<double> k;
    std::vector<double> n;                   // summed over l
    std::vector<std::vector<double>> by_l;   // [k][l]
    int l_max;
};
PartialWaveMomentum momentum_distribution_partial_waves(const CorrelatedModel& model,
                                                        std::span<const double> k);

/// Writes two-column profile data (x, value) with a leading '#' header that
/// echoes the model and grid parameters.
enum class ProfileKind { density, momentum, form_factor };
void write_profile(std::ostream& out, const CorrelatedModel& model, ProfileKind kind, double x_max,
                   int points);

}  // namespace nucent
