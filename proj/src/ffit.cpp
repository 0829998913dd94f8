#include "nucent/ffit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "nucent/error.hpp"
#include "nucent/infoentropy.hpp"

namespace nucent {

void ExperimentalDataset::validate(std::size_t min_points) const
{
    if (source.empty()) {
        throw InvalidInput("dataset " + nuclide + ": source tag is required");
    }
    if (points.size() < min_points) {
        throw InvalidInput("dataset " + nuclide + ": need at least " + std::to_string(min_points) + " points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!(p.q >= 0) || !(p.value >= 0) || (i > 0 && !(p.q > points[i - 1].q))) {
            throw InvalidInput("dataset " + nuclide + ": q must increase and values be nonnegative (row "
                               + std::to_string(i + 1) + ")");
        }
        if (!std::isnan(p.sigma) && !(p.sigma > 0)) {
            throw InvalidInput("dataset " + nuclide + ": sigma must be positive");
        }
    }
}

namespace {

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(trim(cell));
    }
    return out;
}

}  // namespace

ExperimentalDataset read_dataset(std::istream& in, const std::string& nuclide)
{
    ExperimentalDataset data;
    data.nuclide = nuclide;
    std::string line;
    std::vector<std::string> header;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("source:", 0) == 0) {
                data.source += (data.source.empty() ? "" : " ") + trim(body.substr(7));
            }
            continue;
        }
        auto cells = split_csv(line);
        if (header.empty()) {
            header = cells;
            if (header.size() < 2 || header[0] != "q" || header[1] != "fch"
                || (header.size() > 2 && header[2] != "sigma") || header.size() > 3) {
                throw InvalidInput("dataset " + nuclide + ": header must be q,fch[,sigma]");
            }
            continue;
        }
        if (cells.size() != header.size() && !(header.size() == 3 && cells.size() == 2)) {
            throw InvalidInput("dataset " + nuclide + ": wrong column count on line " + std::to_string(lineno));
        }
        DataPoint p{0, 0, std::numeric_limits<double>::quiet_NaN()};
        try {
            p.q = std::stod(cells[0]);
            p.value = std::stod(cells[1]);
            if (cells.size() == 3 && !cells[2].empty()) {
                p.sigma = std::stod(cells[2]);
            }
        } catch (const std::exception&) {
            throw InvalidInput("dataset " + nuclide + ": unparsable number on line " + std::to_string(lineno));
        }
        data.points.push_back(p);
    }
    if (header.empty()) {
        throw InvalidInput("dataset " + nuclide + ": missing header");
    }
    data.validate();
    return data;
}

ExperimentalDataset load_dataset(const std::filesystem::path& path, const std::string& nuclide)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open dataset " + path.string());
    }
    return read_dataset(in, nuclide);
}

namespace {

void check_q(double q, const char* what)
{
    if (!(q >= 0.0)) {
        throw InvalidInput(std::string(what) + ": q must be non-negative");
    }
}

}  // namespace

double cm_factor(double q, double b0, int A, const ChargeCorrections& corr)
{
    check_q(q, "cm_factor");
    return corr.tassie_barker ? std::exp(q * q * b0 * b0 / (4.0 * A)) : 1.0;
}

double proton_factor(double q, const ChargeCorrections& corr)
{
    check_q(q, "proton_factor");
    return std::exp(-q * q * corr.r_p * corr.r_p / 6.0);
}

double darwin_foldy_factor(double q, const ChargeCorrections& corr)
{
    check_q(q, "darwin_foldy_factor");
    return std::exp(-q * q * corr.df_const / 6.0);
}

double charge_form_factor(const CorrelatedModel& model, double q, const ChargeCorrections& corr)
{
    return model.form_factor(q) * cm_factor(q, model.ho().b0(), model.nuclide().A(), corr) * proton_factor(q, corr)
           * darwin_foldy_factor(q, corr);
}

double chi_square(const std::function<double(double)>& fch, const ExperimentalDataset& data, const SigmaFloor& floor)
{
    if (data.points.empty()) {
        throw InvalidInput("chi_square: empty dataset");
    }
    double sum = 0.0;
    for (const auto& p : data.points) {
        const double sigma = std::isnan(p.sigma) ? std::max(floor.relative * p.value, floor.absolute) : p.sigma;
        const double d = (std::abs(fch(p.q)) - p.value) / sigma;
        sum += d * d;
    }
    return sum;
}

namespace {

class AnchorObjective {
public:
    AnchorObjective(const Nuclide& nuclide, const ExperimentalDataset& data, double r_ch, const ChargeCorrections& corr,
                    const QuadratureSpec& spec, const SigmaFloor& floor)
        : nuclide_(nuclide), data_(data), r_ch_(r_ch), corr_(corr), spec_(spec), floor_(floor)
    {
    }

    double operator()(double y)
    {
        if (auto it = cache_.find(y); it != cache_.end()) {
            return it->second;
        }
        double chi2 = std::numeric_limits<double>::infinity();
        try {
            const HOParams ho = solve_b0(nuclide_, Correlation(y), r_ch_, corr_, spec_);
            CorrelatedModel model(nuclide_, ho, Correlation(y), spec_);
            chi2 = chi_square([&](double q) { return charge_form_factor(model, q, corr_); }, data_, floor_);
        } catch (const NumericalError&) {
            // truncation breakdown or no radius solution at this y
        }
        cache_[y] = chi2;
        return chi2;
    }

    int evaluations() const { return static_cast<int>(cache_.size()); }

private:
    const Nuclide& nuclide_;
    const ExperimentalDataset& data_;
    double r_ch_;
    const ChargeCorrections& corr_;
    const QuadratureSpec& spec_;
    const SigmaFloor& floor_;
    std::map<double, double> cache_;
};

}  // namespace

FitResult fit_anchor(const Nuclide& nuclide, const ExperimentalDataset& data, double r_ch_exp,
                     const ChargeCorrections& corr, const QuadratureSpec& spec, const SigmaFloor& floor)
{
    data.validate(3);
    corr.validate();
    AnchorObjective chi2(nuclide, data, r_ch_exp, corr, spec, floor);

    // golden section on [2, 20]
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 2.0, b = 20.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = chi2(c), fd = chi2(d);
    while (b - a > 1e-3) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = chi2(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = chi2(d);
        }
    }
    double best = fc <= fd ? c : d;
    double fbest = std::min(fc, fd);
    if (!std::isfinite(fbest)) {
        throw NumericalError("fit_anchor: no admissible y in [2, 20] for " + nuclide.name());
    }
    // parabolic refinement through three equally spaced points
    double h = 1e-3;
    for (int it = 0; it < 20 && h > 1e-9; ++it) {
        const double fl = chi2(best - h), fr = chi2(best + h);
        const double curv = fl - 2.0 * fbest + fr;
        if (!(curv > 0) || !std::isfinite(fl) || !std::isfinite(fr)) {
            break;
        }
        const double step = 0.5 * h * (fl - fr) / curv;
        const double trial = best + std::clamp(step, -h, h);
        const double ft = chi2(trial);
        if (ft < fbest) {
            best = trial;
            fbest = ft;
        }
        h *= 0.1;
    }

    FitResult out;
    out.nuclide = nuclide.name();
    out.y = best;
    out.chi2 = fbest;
    const HOParams ho = solve_b0(nuclide, Correlation(best), r_ch_exp, corr, spec);
    out.b0 = ho.b0();
    CorrelatedModel model(nuclide, ho, Correlation(best), spec);
    out.r_ch = charge_radius(nuclide, ho.b0(), model.mean_square_radius(), corr);
    out.S = entropy_sum(model).S;
    out.evaluations = chi2.evaluations();
    return out;
}

FitResult ho_baseline(const Nuclide& nuclide, double r_ch_exp, const ChargeCorrections& corr,
                      const ExperimentalDataset* data, const SigmaFloor& floor)
{
    corr.validate();
    const double num = r_ch_exp * r_ch_exp - corr.radius_shift();
    const double den = r1_moment(nuclide) - corr.cm_coefficient / nuclide.A();
    if (!(num > 0) || !(den > 0)) {
        throw NumericalError("ho_baseline: no positive b0 reproduces r_ch = " + std::to_string(r_ch_exp) + " fm");
    }
    FitResult out;
    out.nuclide = nuclide.name();
    out.b0 = std::sqrt(num / den);
    out.y = std::numeric_limits<double>::infinity();
    CorrelatedModel model(nuclide, HOParams(out.b0), Correlation::uncorrelated());
    out.r_ch = charge_radius(nuclide, out.b0, model.mean_square_radius(), corr);
    out.S = entropy_sum(model).S;
    out.chi2 = std::numeric_limits<double>::quiet_NaN();
    if (data) {
        out.chi2 = chi_square([&](double q) { return charge_form_factor(model, q, corr); }, *data, floor);
    }
    return out;
}

}  // namespace nucent
