#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nucent/correlated.hpp"
#include "nucent/scaling.hpp"

namespace nucent {

struct DataPoint {
    double q;      // fm^-1
    double value;  // |F_ch|
    double sigma;  // NaN when not given
};

/// |F_ch(q)| points for one nucleus. `source` says where the numbers come from
/// and is required.
struct ExperimentalDataset {
    std::string nuclide;
    std::vector<DataPoint> points;
    std::string source;

    /// q strictly increasing, values >= 0, a source tag; throws InvalidInput.
    void validate(std::size_t min_points = 1) const;
};

/// CSV with header `q,fch,sigma` (sigma column optional). Lines starting
/// with '#' are comments; `# source: ...` fills the provenance field.
ExperimentalDataset read_dataset(std::istream& in, const std::string& nuclide);
ExperimentalDataset load_dataset(const std::filesystem::path& path, const std::string& nuclide);

/// Tassie-Barker exp(q^2 b0^2 / 4A) (unity when disabled).
double cm_factor(double q, double b0, int A, const ChargeCorrections& corr);
/// exp(-q^2 r_p^2 / 6).
double proton_factor(double q, const ChargeCorrections& corr);
/// exp(-q^2 df_const / 6).
double darwin_foldy_factor(double q, const ChargeCorrections& corr);

/// F(q) f_cm f_p f_DF.
double charge_form_factor(const CorrelatedModel& model, double q, const ChargeCorrections& corr = {});

struct SigmaFloor {
    double relative = 0.05;
    double absolute = 1e-5;
};

/// sum (|F_ch(q_i)| - v_i)^2 / sigma_i^2; points without sigma use
/// max(relative * v_i, absolute).
double chi_square(const std::function<double(double)>& fch, const ExperimentalDataset& data,
                  const SigmaFloor& floor = {});

struct FitResult {
    std::string nuclide;
    double b0 = 0.0;
    double y = 0.0;  // +inf in the HO case
    double chi2 = 0.0;
    double r_ch = 0.0;
    double S = 0.0;
    int evaluations = 0;
};

/// Minimizes chi_square over y in [2, 20] (golden section, then parabolic
/// steps) with b0 fixed at every trial y by the charge-radius constraint.
/// Trial y at which the truncation breaks down count as infinitely bad.
FitResult fit_anchor(const Nuclide& nuclide, const ExperimentalDataset& data, double r_ch_exp,
                     const ChargeCorrections& corr = {}, const QuadratureSpec& spec = {},
                     const SigmaFloor& floor = {});

/// HO case: b0^2 = (r_ch^2 - r_p^2 - df_const) / (R1 - cm_coefficient / A).
/// chi2 is filled in when a dataset is given, NaN otherwise.
FitResult ho_baseline(const Nuclide& nuclide, double r_ch_exp, const ChargeCorrections& corr = {},
                      const ExperimentalDataset* data = nullptr, const SigmaFloor& floor = {});

}  // namespace nucent
