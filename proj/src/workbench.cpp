#include "nucent/workbench.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <variant>

#include "nucent/error.hpp"
#include "nucent/infoentropy.hpp"

namespace nucent {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return d;
    } catch (const std::exception&) {
        throw InvalidInput("config: " + key + " expects a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v)
{
    const double d = to_double(key, v);
    if (d != std::floor(d)) {
        throw InvalidInput("config: " + key + " expects an integer, got '" + v + "'");
    }
    return static_cast<int>(d);
}

double positive(const std::string& key, double d)
{
    if (!(d > 0)) {
        throw InvalidInput("config: " + key + " must be positive");
    }
    return d;
}

// shortest text that reads back to the same double
std::string num(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    if (key == "r_p") {
        corrections.r_p = positive(key, to_double(key, v));
    } else if (key == "df_const") {
        corrections.df_const = positive(key, to_double(key, v));
    } else if (key == "cm_coefficient") {
        corrections.cm_coefficient = to_double(key, v);
        corrections.validate();
    } else if (key == "tassie_barker") {
        if (v != "true" && v != "false") {
            throw InvalidInput("config: tassie_barker expects true or false");
        }
        corrections.tassie_barker = v == "true";
    } else if (key == "r_max_multiplier") {
        quadrature.r_max_multiplier = positive(key, to_double(key, v));
    } else if (key == "panel_width") {
        quadrature.panel_width = positive(key, to_double(key, v));
    } else if (key == "panel_nodes") {
        quadrature.panel_nodes = static_cast<int>(positive(key, to_int(key, v)));
    } else if (key == "legendre_order") {
        quadrature.legendre_order = static_cast<int>(positive(key, to_int(key, v)));
    } else if (key == "legendre_order_limit") {
        quadrature.legendre_order_limit = static_cast<int>(positive(key, to_int(key, v)));
    } else if (key == "partial_wave_radial_nodes") {
        quadrature.partial_wave_radial_nodes = static_cast<int>(positive(key, to_int(key, v)));
    } else if (key == "tolerance") {
        quadrature.tolerance = positive(key, to_double(key, v));
    } else if (key == "grid") {
        grid = v;
    } else if (key == "sweep_b0") {
        sweep_b0 = positive(key, to_double(key, v));
    } else if (key == "data_dir") {
        data_dir = v;
    } else if (key == "out_dir") {
        out_dir = v;
    } else if (key == "format") {
        if (v == "text") {
            format = OutputFormat::text;
        } else if (v == "records") {
            format = OutputFormat::records;
        } else {
            throw InvalidInput("config: format must be text or records");
        }
    } else if (key == "anchor_s4") {
        anchor_s4 = to_double(key, v);
    } else if (key == "anchor_s40") {
        anchor_s40 = to_double(key, v);
    } else if (key == "nuclide_table") {
        extra_nuclide_files.push_back(v);
    } else {
        throw InvalidInput("config: unknown key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const
{
    std::vector<std::pair<std::string, std::string>> out{
        {"hbar_c", num(corrections.hbar_c)},
        {"nucleon_mass", num(corrections.nucleon_mass)},
        {"r_p", num(corrections.r_p)},
        {"df_const", num(corrections.df_const)},
        {"cm_coefficient", num(corrections.cm_coefficient)},
        {"tassie_barker", corrections.tassie_barker ? "true" : "false"},
        {"r_max_multiplier", num(quadrature.r_max_multiplier)},
        {"panel_width", num(quadrature.panel_width)},
        {"panel_nodes", std::to_string(quadrature.panel_nodes)},
        {"legendre_order", std::to_string(quadrature.legendre_order)},
        {"legendre_order_limit", std::to_string(quadrature.legendre_order_limit)},
        {"partial_wave_radial_nodes", std::to_string(quadrature.partial_wave_radial_nodes)},
        {"tolerance", num(quadrature.tolerance)},
        {"grid", grid.empty() ? "default" : grid},
        {"sweep_b0", num(sweep_b0)},
        {"data_dir", data_dir.string()},
        {"out_dir", out_dir.string()},
        {"format", format == OutputFormat::text ? "text" : "records"},
        {"anchor_s4", num(anchor_s4)},
        {"anchor_s40", num(anchor_s40)},
    };
    for (const auto& f : extra_nuclide_files) {
        out.emplace_back("nuclide_table", f);
    }
    return out;
}

RunConfig read_config(std::istream& in)
{
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("config: line " + std::to_string(lineno) + " is not key = value");
        }
        cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open config " + path.string());
    }
    return read_config(in);
}

std::vector<double> resolve_grid(const std::string& grid, const Nuclide& nuclide, const QuadratureSpec& spec)
{
    if (grid.empty()) {
        return default_sweep_grid(nuclide, spec);
    }
    if (grid.find(':') != std::string::npos) {
        std::stringstream ss(grid);
        std::string a, b, c;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        std::getline(ss, c);
        return log_grid(to_double("grid", trim(a)), to_double("grid", trim(b)), to_int("grid", trim(c)));
    }
    std::vector<double> ys;
    std::stringstream ss(grid);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        ys.push_back(cell == "inf" ? std::numeric_limits<double>::infinity() : to_double("grid", cell));
        if (!(ys.back() > 0.0)) {
            throw InvalidInput("grid: y values must be positive, got '" + cell + "'");
        }
    }
    if (ys.empty()) {
        throw InvalidInput("grid: no values");
    }
    return ys;
}

const std::map<std::string, double>& reference_charge_radii()
{
    static const std::map<std::string, double> radii{
        {"He4", 1.676}, {"C12", 2.471}, {"O16", 2.730}, {"Mg24", 3.075}, {"Si28", 3.086},
        {"S32", 3.248}, {"Ar36", 3.327}, {"Ar36-2s", 3.327}, {"Ca40", 3.479},
    };
    return radii;
}

std::map<std::string, double> load_radii(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open radii table " + path.string());
    }
    std::map<std::string, double> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InvalidInput("radii table: expected nuclide,r_ch");
        }
        out[trim(line.substr(0, comma))] = to_double("r_ch", trim(line.substr(comma + 1)));
    }
    return out;
}

Nuclide resolve_nuclide(const std::string& name, const RunConfig& cfg)
{
    std::vector<Nuclide> extra;
    for (const auto& file : cfg.extra_nuclide_files) {
        std::ifstream in(file);
        if (!in) {
            throw InvalidInput("cannot open nuclide table " + file);
        }
        auto more = read_nuclide_table(in);
        extra.insert(extra.end(), more.begin(), more.end());
    }
    return find_nuclide(name, extra);
}

namespace {

using Cell = std::variant<std::string, double>;

// Writes rows either as tab-separated text with 4 decimals or as JSON lines
// at full precision.
class TableWriter {
public:
    TableWriter(const RunConfig& cfg, const std::string& stem, std::vector<std::string> columns)
        : format_(cfg.format), columns_(std::move(columns))
    {
        fs::create_directories(cfg.out_dir);
        path_ = cfg.out_dir / (stem + (format_ == OutputFormat::text ? ".tsv" : ".jsonl"));
        out_.open(path_);
        if (!out_) {
            throw InvalidInput("cannot write " + path_.string());
        }
        if (format_ == OutputFormat::text) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                out_ << (i ? "\t" : "") << columns_[i];
            }
            out_ << "\n";
        }
    }

    void row(const std::vector<Cell>& cells)
    {
        if (format_ == OutputFormat::text) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out_ << (i ? "\t" : "");
                if (const auto* s = std::get_if<std::string>(&cells[i])) {
                    out_ << *s;
                } else {
                    const double d = std::get<double>(cells[i]);
                    if (std::isinf(d)) {
                        out_ << "inf";
                    } else if (std::isnan(d)) {
                        out_ << "-";
                    } else {
                        out_ << std::fixed << std::setprecision(4) << d;
                    }
                }
            }
            out_ << "\n";
        } else {
            nlohmann::ordered_json j;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (const auto* s = std::get_if<std::string>(&cells[i])) {
                    j[columns_[i]] = *s;
                } else {
                    const double d = std::get<double>(cells[i]);
                    if (std::isfinite(d)) {
                        j[columns_[i]] = d;
                    } else {
                        j[columns_[i]] = std::isinf(d) ? "inf" : "nan";
                    }
                }
            }
            out_ << j.dump() << "\n";
        }
    }

    const fs::path& path() const { return path_; }

private:
    OutputFormat format_;
    std::vector<std::string> columns_;
    fs::path path_;
    std::ofstream out_;
};

void write_xy(const fs::path& path, const std::string& header, const std::vector<std::pair<double, double>>& xy)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot write " + path.string());
    }
    out << "# " << header << "\n" << std::setprecision(10);
    for (const auto& [x, v] : xy) {
        out << x << " " << v << "\n";
    }
}

std::map<std::string, double> radii_for(const RunConfig& cfg)
{
    const fs::path table = cfg.data_dir / "radii.csv";
    if (fs::exists(table)) {
        auto radii = load_radii(table);
        for (const auto& [k, v] : reference_charge_radii()) {
            radii.emplace(k, v);
        }
        return radii;
    }
    return reference_charge_radii();
}

std::optional<ExperimentalDataset> dataset_for(const std::string& name, const RunConfig& cfg)
{
    const fs::path file = cfg.data_dir / "formfactors" / (name + ".csv");
    if (!fs::exists(file)) {
        return std::nullopt;
    }
    return load_dataset(file, name);
}

double ho_entropy(const Nuclide& nuclide, const QuadratureSpec& spec)
{
    return entropy_sum(CorrelatedModel(nuclide, HOParams(1.0), Correlation::uncorrelated(), spec)).S;
}

}  // namespace

HoLimitReport cmd_ho_limit(const std::string& name, const RunConfig& cfg)
{
    const Nuclide nuclide = resolve_nuclide(name, cfg);
    HoLimitReport rep{nuclide.name(), ho_entropy(nuclide, cfg.quadrature), std::sqrt(r1_moment(nuclide))};
    TableWriter t(cfg, "ho_limit_" + nuclide.name(), {"nuclide", "s0A", "r0A"});
    t.row({rep.nuclide, rep.s0, rep.r0});
    return rep;
}

SweepReport cmd_sweep(const std::string& name, const RunConfig& cfg)
{
    const Nuclide nuclide = resolve_nuclide(name, cfg);
    const auto grid = resolve_grid(cfg.grid, nuclide, cfg.quadrature);
    SweepReport rep;
    rep.table = sweep(nuclide, grid, cfg.quadrature, cfg.sweep_b0);
    rep.s0 = ho_entropy(nuclide, cfg.quadrature);
    rep.entropy_fit = fit_entropy_law(rep.table, rep.s0);
    rep.radius_fit = fit_radius_law(rep.table, nuclide, std::sqrt(r1_moment(nuclide)));

    TableWriter t(cfg, "sweep_" + nuclide.name(), {"y", "inv_y", "S_r", "S_k", "S", "r_b", "clipped_mass", "valid"});
    std::vector<std::pair<double, double>> s_pts, r_pts, s_curve, r_curve;
    double inv_max = 0.0;
    for (const auto& r : rep.table.rows) {
        t.row({r.y, r.inv_y, r.S_r, r.S_k, r.S, r.r_b, r.clipped_mass, std::string(r.valid ? "yes" : "no")});
        s_pts.emplace_back(r.inv_y, r.S);
        r_pts.emplace_back(r.inv_y, r.r_b);
        inv_max = std::max(inv_max, r.inv_y);
    }
    for (int i = 0; i <= 100; ++i) {
        const double x = 1.1 * inv_max * i / 100.0;
        s_curve.emplace_back(x, rep.entropy_fit(x));
        r_curve.emplace_back(x, rep.radius_fit(x));
    }
    const std::string n = nuclide.name();
    write_xy(cfg.out_dir / ("entropy_points_" + n + ".dat"), "1/y S " + n, s_pts);
    write_xy(cfg.out_dir / ("radius_points_" + n + ".dat"), "1/y r_b " + n, r_pts);
    write_xy(cfg.out_dir / ("entropy_curve_" + n + ".dat"), "1/y S fitted " + n, s_curve);
    write_xy(cfg.out_dir / ("radius_curve_" + n + ".dat"), "1/y r_b fitted " + n, r_curve);

    TableWriter f(cfg, "fit_" + n, {"nuclide", "s0A", "s1A", "lambda_sA", "r0A", "r1A", "lambda_rA", "res_s", "res_r"});
    f.row({n, rep.entropy_fit.c0, rep.entropy_fit.c1, rep.entropy_fit.lambda, rep.radius_fit.c0, rep.radius_fit.c1,
           rep.radius_fit.lambda, rep.entropy_fit.residual, rep.radius_fit.residual});
    return rep;
}

AnchorReport cmd_fit_anchors(const RunConfig& cfg)
{
    const auto radii = radii_for(cfg);
    AnchorReport rep;
    auto fit = [&](const std::string& name, FitResult& src, FitResult& ho) {
        const Nuclide nuclide = resolve_nuclide(name, cfg);
        const auto data = dataset_for(name, cfg);
        if (!data) {
            throw InvalidInput("fit-anchors: no dataset " + (cfg.data_dir / "formfactors" / (name + ".csv")).string());
        }
        const double r = radii.at(name);
        src = fit_anchor(nuclide, *data, r, cfg.corrections, cfg.quadrature);
        ho = ho_baseline(nuclide, r, cfg.corrections, &*data);
    };
    fit("He4", rep.he4, rep.he4_ho);
    fit("Ca40", rep.ca40, rep.ca40_ho);
    rep.law = loglaw_from_anchors(rep.he4.S, rep.ca40.S);

    TableWriter t(cfg, "anchors", {"nuclide", "case", "b0", "y", "chi2", "r_ch", "S"});
    for (const auto* r : {&rep.he4, &rep.he4_ho, &rep.ca40, &rep.ca40_ho}) {
        t.row({r->nuclide, std::string(std::isinf(r->y) ? "HO" : "SRC"), r->b0, r->y, r->chi2, r->r_ch, r->S});
    }
    TableWriter l(cfg, "loglaw", {"a", "b"});
    l.row({rep.law.a, rep.law.b});
    return rep;
}

std::vector<DeterminedRow> cmd_determine(const std::vector<std::string>& nuclides, const LogFit& law,
                                         const RunConfig& cfg)
{
    const auto radii = radii_for(cfg);
    std::vector<DeterminedRow> rows;
    for (const auto& name : nuclides) {
        DeterminedRow row;
        const Nuclide nuclide = resolve_nuclide(name, cfg);
        row.nuclide = nuclide.name();
        const auto rit = radii.find(nuclide.name());
        if (rit == radii.end()) {
            throw InvalidInput("determine: no charge radius for " + nuclide.name());
        }
        const double r_ch = rit->second;
        const auto data = dataset_for(nuclide.name(), cfg);
        row.ho = ho_baseline(nuclide, r_ch, cfg.corrections, data ? &*data : nullptr);

        const auto table = sweep(nuclide, resolve_grid(cfg.grid, nuclide, cfg.quadrature), cfg.quadrature,
                                 cfg.sweep_b0);
        row.entropy_fit = fit_entropy_law(table, row.ho.S);
        row.radius_fit = fit_radius_law(table, nuclide, std::sqrt(r1_moment(nuclide)));
        row.s_target = predict_entropy(law, nuclide.A());
        try {
            const Correlation corr = solve_y(row.entropy_fit, row.s_target);
            const HOParams ho = solve_b0(nuclide, corr, r_ch, cfg.corrections, cfg.quadrature);
            CorrelatedModel model(nuclide, ho, corr, cfg.quadrature);
            row.src.nuclide = nuclide.name();
            row.src.b0 = ho.b0();
            row.src.y = corr.y();
            row.src.r_ch = charge_radius(nuclide, ho.b0(), model.mean_square_radius(), cfg.corrections);
            row.src.S = entropy_sum(model).S;
            row.src.chi2 = data ? chi_square([&](double q) { return charge_form_factor(model, q, cfg.corrections); },
                                             *data)
                                : std::numeric_limits<double>::quiet_NaN();
            row.ok = true;
        } catch (const NumericalError& e) {
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }

    TableWriter t1(cfg, "table_I", {"nuclide", "s0A", "s1A", "lambda_sA", "r0A", "r1A", "lambda_rA"});
    TableWriter t2(cfg, "table_II", {"nuclide", "case", "b0", "y", "chi2", "r_ch", "S", "note"});
    for (const auto& r : rows) {
        t1.row({r.nuclide, r.entropy_fit.c0, r.entropy_fit.c1, r.entropy_fit.lambda, r.radius_fit.c0, r.radius_fit.c1,
                r.radius_fit.lambda});
        if (r.ok) {
            t2.row({r.nuclide, std::string("SRC"), r.src.b0, r.src.y, r.src.chi2, r.src.r_ch, r.src.S, std::string("")});
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            t2.row({r.nuclide, std::string("SRC"), nan, nan, nan, nan, r.s_target, std::string("no solution")});
        }
        t2.row({r.nuclide, std::string("HO"), r.ho.b0, r.ho.y, r.ho.chi2, r.ho.r_ch, r.ho.S, std::string("")});
    }
    return rows;
}

std::vector<fs::path> cmd_plot_data(const std::string& name, CaseSelector which, const LogFit& law,
                                    const RunConfig& cfg)
{
    const Nuclide nuclide = resolve_nuclide(name, cfg);
    const auto det = cmd_determine({name}, law, cfg);
    const auto& row = det.front();
    std::vector<fs::path> written;
    auto curve = [&](const CorrelatedModel& model, const std::string& tag) {
        std::vector<std::pair<double, double>> xy;
        for (int i = 0; i <= 400; ++i) {
            const double q = 4.0 * i / 400.0;
            xy.emplace_back(q, std::abs(charge_form_factor(model, q, cfg.corrections)));
        }
        std::ostringstream h;
        h << "q |F_ch| " << nuclide.name() << " " << tag << " b0=" << model.ho().b0() << " y=" << model.correlation().y();
        const fs::path p = cfg.out_dir / ("fch_" + nuclide.name() + "_" + tag + ".dat");
        write_xy(p, h.str(), xy);
        written.push_back(p);
    };
    if (which != CaseSelector::ho) {
        if (!row.ok) {
            throw NumericalError("plot-data: no SRC parameters for " + nuclide.name() + ": " + row.note);
        }
        curve(CorrelatedModel(nuclide, HOParams(row.src.b0), Correlation(row.src.y), cfg.quadrature), "src");
    }
    if (which != CaseSelector::src) {
        curve(CorrelatedModel(nuclide, HOParams(row.ho.b0), Correlation::uncorrelated(), cfg.quadrature), "ho");
    }
    if (const auto data = dataset_for(nuclide.name(), cfg)) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& p : data->points) {
            xy.emplace_back(p.q, p.value);
        }
        const fs::path p = cfg.out_dir / ("fch_" + nuclide.name() + "_data.dat");
        write_xy(p, "q |F_ch| " + nuclide.name() + " data: " + data->source, xy);
        written.push_back(p);
    }
    return written;
}

void write_manifest(const RunConfig& cfg, const std::string& command, const std::vector<std::string>& nuclides)
{
    fs::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir / "manifest.txt");
    if (!out) {
        throw InvalidInput("cannot write manifest in " + cfg.out_dir.string());
    }
    out << "command = " << command << "\n";
    out << "nuclides =";
    for (const auto& n : nuclides) {
        out << " " << n;
    }
    out << "\n";
    for (const auto& [k, v] : cfg.entries()) {
        out << k << " = " << v << "\n";
    }
    out << "radius_shift = " << num(cfg.corrections.radius_shift()) << "\n";
}

}  // namespace nucent
