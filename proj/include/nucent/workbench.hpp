#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nucent/ffit.hpp"
#include "nucent/scaling.hpp"

namespace nucent {

enum class OutputFormat { text, records };

/// Everything a run depends on. Read from flat `key = value` text; unknown
/// keys are rejected.
struct RunConfig {
    ChargeCorrections corrections;
    QuadratureSpec quadrature;
    std::string grid;  // empty: default per nucleus; "lo:hi:n" in 1/y or "y1,y2,..."
    double sweep_b0 = 1.0;
    std::filesystem::path data_dir = "data";
    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::text;
    // S(4), S(40) fixing the log law used by `determine`
    double anchor_s4 = 6.7068;
    double anchor_s40 = 8.8620;
    std::vector<std::string> extra_nuclide_files;

    void set(const std::string& key, const std::string& value);
    /// Resolved key/value pairs, in a fixed order.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

RunConfig read_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Grid for a nuclide: the configured one, else default_sweep_grid.
std::vector<double> resolve_grid(const std::string& grid, const Nuclide& nuclide, const QuadratureSpec& spec);

/// Experimental charge radii (fm). Builtin copy of the shipped table.
const std::map<std::string, double>& reference_charge_radii();
/// `nuclide,r_ch` CSV with a header line.
std::map<std::string, double> load_radii(const std::filesystem::path& path);

/// Nuclide lookup including user tables named in the config.
Nuclide resolve_nuclide(const std::string& name, const RunConfig& cfg);

struct HoLimitReport {
    std::string nuclide;
    double s0;
    double r0;
};
HoLimitReport cmd_ho_limit(const std::string& nuclide, const RunConfig& cfg);

struct SweepReport {
    SweepTable table;
    double s0;
    PowerLawFit entropy_fit;
    PowerLawFit radius_fit;
};
/// Sweep plus both power-law fits; writes sweep_<nuc>, the fitted curves and
/// the sweep points as plot files under out_dir.
SweepReport cmd_sweep(const std::string& nuclide, const RunConfig& cfg);

struct AnchorReport {
    FitResult he4, ca40;
    FitResult he4_ho, ca40_ho;
    LogFit law;
};
/// Fits y and b0 of He4 and Ca40 to the form-factor data in
/// data_dir/formfactors and builds the log law from the two entropy sums.
AnchorReport cmd_fit_anchors(const RunConfig& cfg);

struct DeterminedRow {
    std::string nuclide;
    bool ok = false;
    std::string note;  // why a row failed
    double s_target = 0.0;
    PowerLawFit entropy_fit;
    PowerLawFit radius_fit;
    FitResult src;
    FitResult ho;
};
/// S(A) from the log law, y from the entropy law, b0 from the charge radius,
/// for every nucleus; chi^2 filled in where a dataset exists. Writes
/// table_I and table_II analogues.
std::vector<DeterminedRow> cmd_determine(const std::vector<std::string>& nuclides, const LogFit& law,
                                         const RunConfig& cfg);

enum class CaseSelector { src, ho, both };
/// |F_ch(q)| on q in [0, 4] fm^-1 for the determined parameters, plus the
/// data points when a dataset exists. Returns the files written.
std::vector<std::filesystem::path> cmd_plot_data(const std::string& nuclide, CaseSelector which, const LogFit& law,
                                                 const RunConfig& cfg);

/// Writes out_dir/manifest.txt: command, resolved constants, quadrature and
/// grid settings. No timestamps, so identical runs give identical files.
void write_manifest(const RunConfig& cfg, const std::string& command, const std::vector<std::string>& nuclides);

}  // namespace nucent
