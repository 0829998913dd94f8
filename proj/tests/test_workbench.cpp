#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nucent/error.hpp"
#include "nucent/infoentropy.hpp"
#include "nucent/workbench.hpp"
#include "reference.hpp"

using namespace nucent;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag)
{
    const fs::path p = fs::temp_directory_path() / ("nucent_wb_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

RunConfig config(const std::string& tag)
{
    RunConfig cfg;
    cfg.data_dir = fs::path(NUCENT_SOURCE_DIR) / "data";
    cfg.out_dir = scratch(tag);
    return cfg;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        out[e.path().filename().string()] = slurp(e.path());
    }
    return out;
}

std::vector<std::pair<double, double>> read_xy(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::vector<std::pair<double, double>> xy;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        double x = 0, v = 0;
        ls >> x >> v;
        xy.emplace_back(x, v);
    }
    return xy;
}

const LogFit printed{ref::printed_a, ref::printed_b};

}  // namespace

TEST_CASE("config parsing")
{
    std::istringstream in("# comment\nr_p = 0.8\n\ngrid = 0.05:0.3:6\nformat = records\ntassie_barker = false\n"
                          "panel_nodes = 12\n");
    const auto cfg = read_config(in);
    CHECK(cfg.corrections.r_p == 0.8);
    CHECK(cfg.grid == "0.05:0.3:6");
    CHECK(cfg.format == OutputFormat::records);
    CHECK_FALSE(cfg.corrections.tassie_barker);
    CHECK(cfg.quadrature.panel_nodes == 12);
    bool seen = false;
    for (const auto& [k, v] : cfg.entries()) {
        if (k == "r_p") {
            CHECK(v == "0.8");
            seen = true;
        }
    }
    CHECK(seen);

    const char* bad[] = {"colour = blue\n", "r_p = -0.8\n", "r_p = abc\n", "r_p\n", "format = xml\n",
                         "tassie_barker = maybe\n", "panel_nodes = 0\n"};
    for (const char* text : bad) {
        CAPTURE(text);
        std::istringstream b(text);
        CHECK_THROWS_AS(read_config(b), InvalidInput);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/nucent.cfg"), InvalidInput);
}

TEST_CASE("grid strings")
{
    const auto he = builtin_nuclide("He4");
    CHECK(resolve_grid("", he, {}) == default_sweep_grid(he));
    CHECK(resolve_grid("0.05:0.4:8", he, {}) == log_grid(0.05, 0.4, 8));
    const auto list = resolve_grid("inf,10,5", he, {});
    REQUIRE(list.size() == 3);
    CHECK(std::isinf(list[0]));
    CHECK(list[2] == 5.0);
    for (const char* g : {"0.05:0.4", "a,b", "0.4:0.05:8", "-3"}) {
        CAPTURE(g);
        CHECK_THROWS_AS(resolve_grid(g, he, {}), InvalidInput);
    }
}

TEST_CASE("radii table")
{
    const auto file = load_radii(fs::path(NUCENT_SOURCE_DIR) / "data" / "radii.csv");
    for (const auto& row : ref::fits) {
        CHECK(file.at(row.name) == row.r_ch);
        CHECK(reference_charge_radii().at(row.name) == row.r_ch);
    }
}

TEST_CASE("ho-limit")
{
    const auto cfg = config("ho");
    const std::tuple<const char*, double, double> rows[] = {
        {"He4", 6.4342, 1.2247}, {"Mg24", 8.0933, 1.6330}, {"Si28", 8.2096, 1.6691}};
    for (const auto& [name, s0, r0] : rows) {
        const auto r = cmd_ho_limit(name, cfg);
        CHECK(std::abs(r.s0 - s0) < 0.002);
        CHECK(std::abs(r.r0 - r0) < 1e-4);
        CHECK(fs::exists(cfg.out_dir / ("ho_limit_" + std::string(name) + ".tsv")));
    }
    CHECK_THROWS_AS(cmd_ho_limit("Xx99", cfg), InvalidInput);
}

TEST_CASE("sweep command")
{
    const auto cfg = config("sweep");
    const auto he = cmd_sweep("He4", cfg);
    CHECK(he.table.rows.size() == 8);
    CHECK(he.table.is_monotone());
    const auto curve = read_xy(cfg.out_dir / "entropy_curve_He4.dat");
    REQUIRE_FALSE(curve.empty());
    CHECK(curve.front().first == 0.0);
    CHECK(curve.front().second == doctest::Approx(he.s0).epsilon(1e-9));
    CHECK(read_xy(cfg.out_dir / "entropy_points_He4.dat").size() == 8);
    CHECK(fs::exists(cfg.out_dir / "sweep_He4.tsv"));
    CHECK(fs::exists(cfg.out_dir / "fit_He4.tsv"));

    const auto c12 = cmd_sweep("C12", cfg);
    CHECK(c12.entropy_fit.lambda == doctest::Approx(1.1548).epsilon(0.10));
}

TEST_CASE("structured records")
{
    auto cfg = config("records");
    cfg.format = OutputFormat::records;
    cmd_ho_limit("O16", cfg);
    const auto text = slurp(cfg.out_dir / "ho_limit_O16.jsonl");
    CHECK(text.find("\"nuclide\":\"O16\"") != std::string::npos);
    CHECK(text.find("\"r0A\":1.5") != std::string::npos);
}

TEST_CASE("determine on all eight nuclei")
{
    const auto cfg = config("det");
    std::vector<std::string> names;
    for (const auto& row : ref::fits) {
        names.push_back(row.name);
    }
    const auto rows = cmd_determine(names, loglaw_from_anchors(ref::anchor_s4, ref::anchor_s40), cfg);
    REQUIRE(rows.size() == 8);
    std::map<std::string, DeterminedRow> by;
    for (const auto& r : rows) {
        CAPTURE(r.nuclide);
        CHECK(r.ok);
        by[r.nuclide] = r;
    }
    CHECK(std::abs(by["C12"].src.y - 7.1) < 0.4);
    CHECK(std::abs(by["C12"].src.b0 - 1.56) < 0.02);
    CHECK(by["Ar36"].src.y < by["S32"].src.y);
    CHECK(by["O16"].src.y < by["C12"].src.y);
    CHECK(by["Ca40"].s_target == doctest::Approx(ref::anchor_s40).epsilon(1e-12));
    // chi^2 only where a dataset exists
    CHECK(std::isfinite(by["He4"].src.chi2));
    CHECK(std::isnan(by["C12"].src.chi2));
    CHECK(fs::exists(cfg.out_dir / "table_I.tsv"));
    CHECK(fs::exists(cfg.out_dir / "table_II.tsv"));

    // a law below the HO entropy gives a flagged row, not an exception
    const auto flat = cmd_determine({"O16"}, LogFit{5.0, 0.0}, cfg);
    CHECK_FALSE(flat.front().ok);
    CHECK_FALSE(flat.front().note.empty());
}

TEST_CASE("outputs are deterministic")
{
    auto cfg = config("repeat");
    auto run = [&] {
        write_manifest(cfg, "determine", {"He4", "O16"});
        cmd_determine({"He4", "O16"}, printed, cfg);
        cmd_plot_data("O16", CaseSelector::both, printed, cfg);
        return snapshot(cfg.out_dir);
    };
    const auto first = run();
    const auto second = run();
    CHECK(first.size() >= 4);
    CHECK(first == second);
}

TEST_CASE("plot data")
{
    const auto cfg = config("plot");
    const auto files = cmd_plot_data("O16", CaseSelector::both, printed, cfg);
    CHECK(files.size() == 2);
    const auto src = read_xy(cfg.out_dir / "fch_O16_src.dat");
    const auto ho = read_xy(cfg.out_dir / "fch_O16_ho.dat");
    REQUIRE(src.size() == 401);
    REQUIRE(ho.size() == 401);
    CHECK(src.front().second == 1.0);
    CHECK(ho.front().second == 1.0);
    const auto at = [](const std::vector<std::pair<double, double>>& xy, double q) {
        for (const auto& [x, v] : xy) {
            if (std::abs(x - q) < 1e-9) {
                return v;
            }
        }
        return std::nan("");
    };
    const double a = at(src, 3.5), b = at(ho, 3.5);
    CHECK(std::max(a / b, b / a) > 2.0);

    // C12: two minima with correlations
    cmd_plot_data("C12", CaseSelector::src, printed, cfg);
    const auto c12 = read_xy(cfg.out_dir / "fch_C12_src.dat");
    int minima = 0;
    for (std::size_t i = 1; i + 1 < c12.size(); ++i) {
        minima += c12[i].second < c12[i - 1].second && c12[i].second < c12[i + 1].second;
    }
    CHECK(minima >= 2);

    const auto he = cmd_plot_data("He4", CaseSelector::ho, printed, cfg);
    CHECK(he.size() == 2);  // HO curve plus data points
    CHECK(fs::exists(cfg.out_dir / "fch_He4_data.dat"));
}

TEST_CASE("anchor log law")
{
    CHECK(loglaw_from_anchors(ref::anchor_s4, ref::anchor_s40).b == doctest::Approx(ref::printed_b).epsilon(1e-4));
    CHECK(loglaw_from_anchors(7.2, 7.2).b == 0.0);

    // datasets generated by the model itself, written to a private data dir
    auto cfg = config("anchors_out");
    cfg.data_dir = scratch("anchors_data");
    fs::create_directories(cfg.data_dir / "formfactors");
    const std::tuple<const char*, double, double> gen[] = {{"He4", 1.26, 3.9}, {"Ca40", 1.85, 7.3}};
    std::ofstream radii(cfg.data_dir / "radii.csv");
    radii << "nuclide,r_ch\n";
    std::map<std::string, double> s_true;
    for (const auto& [name, b0, y] : gen) {
        const auto nuc = builtin_nuclide(name);
        const CorrelatedModel m(nuc, HOParams(b0), Correlation(y));
        radii << name << "," << charge_radius(nuc, b0, m.mean_square_radius()) << "\n";
        std::ofstream d(cfg.data_dir / "formfactors" / (std::string(name) + ".csv"));
        d << "# source: generated at b0 = " << b0 << ", y = " << y << "\nq,fch,sigma\n";
        d.precision(12);
        for (double q = 0.3; q < 3.0; q += 0.15) {
            const double v = std::abs(charge_form_factor(m, q));
            d << q << "," << v << "," << std::max(0.05 * v, 1e-5) << "\n";
        }
        s_true[name] = entropy_sum(m).S;
    }
    radii.close();
    const auto rep = cmd_fit_anchors(cfg);
    const auto expect = loglaw_from_anchors(s_true["He4"], s_true["Ca40"]);
    CHECK(rep.law.a == doctest::Approx(expect.a).epsilon(0.01));
    CHECK(rep.law.b == doctest::Approx(expect.b).epsilon(0.01));
    CHECK(rep.he4.chi2 < rep.he4_ho.chi2);
}

TEST_CASE("missing dataset is reported")
{
    auto cfg = config("nodata");
    cfg.data_dir = scratch("empty_data");
    CHECK_THROWS_AS(cmd_fit_anchors(cfg), InvalidInput);
}
