#pragma once

#include <span>
#include <string>
#include <vector>

#include "nucent/correlated.hpp"
#include "nucent/infoentropy.hpp"

namespace nucent {

/// Radius corrections and constants used to turn a point radius into a
/// charge radius:
///   r_ch^2 = b0^2 (r_b^2 - cm_coefficient / A) + r_p^2 + df_const.
/// cm_coefficient = 3/2 is the small-q limit of the Tassie-Barker factor.
/// r_p is set so that r_p^2 + df_const = 0.8084 fm^2, which is what the
/// tabulated HO oscillator lengths imply.
struct ChargeCorrections {
    double hbar_c = 197.327;      // MeV fm
    double nucleon_mass = 938.918;  // MeV
    double r_p = 0.8867;          // fm
    double df_const = 0.0221;     // hbar^2 / (2 m^2 c^2), fm^2
    double cm_coefficient = 1.5;
    bool tassie_barker = true;    // apply exp(q^2 b0^2 / 4A) to F_ch

    /// r_p^2 + df_const.
    double radius_shift() const { return r_p * r_p + df_const; }
    /// Throws InvalidInput on negative entries.
    void validate() const;
};

/// c0 + c1 x^lambda with x = 1/y and c0 held fixed.
struct PowerLawFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double lambda = 0.0;
    double residual = 0.0;  // max relative deviation on the fitted points

    double operator()(double inv_y) const;
};

/// a + b ln A.
struct LogFit {
    double a = 0.0;
    double b = 0.0;
};

struct SweepRow {
    double y, inv_y;
    double S_r, S_k, S;
    double r_b;
    double clipped_mass;
    bool valid;
};

struct SweepTable {
    std::string nuclide;
    int A = 0;
    std::vector<SweepRow> rows;  // sorted by 1/y

    /// S and r_b increase with 1/y.
    bool is_monotone() const;
};

/// n values of y with 1/y log-spaced on [inv_lo, inv_hi].
std::vector<double> log_grid(double inv_lo, double inv_hi, int n);

/// Largest 1/y <= inv_hi at which the truncated expansion still gives a
/// nonnegative density and momentum distribution (no clipped mass) and a
/// positive normalization. Bisection to 1e-4 relative; returns inv_hi when
/// the whole range is clean.
double validity_edge(const Nuclide& nuclide, double inv_hi = 0.40, const QuadratureSpec& spec = {});

/// 8 points with 1/y log-spaced on [0.05, min(0.40, validity_edge)].
std::vector<double> default_sweep_grid(const Nuclide& nuclide, const QuadratureSpec& spec = {});

/// Entropy sum and r_b at every y (y = inf allowed). S and r_b do not depend
/// on b0; it only sets the units of the intermediate model.
SweepTable sweep(const Nuclide& nuclide, std::span<const double> y_grid, const QuadratureSpec& spec = {},
                 double b0 = 1.0);

/// Least squares for (c1, lambda) with c0 fixed, damped Gauss-Newton from
/// lambda in {0.5, 1, 1.5, 2, 2.5}. Needs at least 4 points with two distinct
/// positive x.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> v, double c0);

/// S_A(y) = s0 + s1 (1/y)^lambda_s over the valid rows.
PowerLawFit fit_entropy_law(const SweepTable& table, double s0);

/// r_b(y) = r0 + r1 (1/y)^lambda_r; r0 must be sqrt(R1) of the nuclide.
PowerLawFit fit_radius_law(const SweepTable& table, const Nuclide& nuclide, double r0);

/// S as a function of r_b obtained by eliminating y between the two laws.
double entropy_from_radius(const PowerLawFit& sfit, const PowerLawFit& rfit, double r_b);

/// Straight line through (ln A1, S1), (ln A2, S2).
LogFit loglaw_from_points(int A1, double S1, int A2, double S2);
/// The He4 / Ca40 anchored law.
LogFit loglaw_from_anchors(double S4, double S40);

double predict_entropy(const LogFit& fit, double A);

/// Inverts the entropy law; S_target must exceed s0.
Correlation solve_y(const PowerLawFit& sfit, double S_target);

/// Charge radius of a model with the given corrections.
double charge_radius(const Nuclide& nuclide, double b0, double r_b2, const ChargeCorrections& corr = {});

/// b0 such that the charge radius of the correlated model equals r_ch_exp,
/// by Brent's method on [0.5, 3] fm with the model rebuilt at every trial b0.
HOParams solve_b0(const Nuclide& nuclide, Correlation corr, double r_ch_exp, const ChargeCorrections& cc = {},
                  const QuadratureSpec& spec = {});

}  // namespace nucent
