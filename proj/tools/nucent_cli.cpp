// nucent: entropy sums, scaling laws and (b0, y) determination for N=Z
// s-p and s-d shell nuclei with short-range correlations.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>

#include "nucent/error.hpp"
#include "nucent/workbench.hpp"

using namespace nucent;

namespace {

void fail(const char* kind, const std::string& message, int code)
{
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << std::endl;
    std::exit(code);
}

std::string e2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string f4(double v)
{
    if (std::isinf(v)) {
        return "inf";
    }
    if (std::isnan(v)) {
        return "-";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Information entropy and short-range correlations in N=Z light nuclei"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, data_dir, out_dir, grid, format;
    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--data-dir", data_dir, "directory holding radii.csv and formfactors/");
    app.add_option("--out-dir", out_dir, "where tables, plot files and manifest.txt go");
    app.add_option("--grid", grid, "sweep grid: lo:hi:n (1/y, log spaced) or y1,y2,...");
    app.add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));

    std::vector<std::string> nuclides;
    std::string case_sel = "both";
    std::vector<double> loglaw;
    bool from_anchors = false;

    auto* ho = app.add_subcommand("ho-limit", "HO-limit entropy sum s0A and r0A = sqrt(R1)");
    ho->add_option("--nuclide", nuclides, "nuclide label")->required();

    auto* sw = app.add_subcommand("sweep", "entropy sum and r_b over a y grid, with power-law fits");
    sw->add_option("--nuclide", nuclides, "nuclide label")->required();

    auto* fa = app.add_subcommand("fit-anchors", "fit He4 and Ca40 form factors, build S = a + b ln A");

    auto* det = app.add_subcommand("determine", "y and b0 for each nucleus from the log law and its charge radius");
    det->add_option("--nuclide", nuclides, "nuclide labels (default: the eight table nuclei)");
    det->add_option("--loglaw", loglaw, "a b of S = a + b ln A (default: from anchor_s4/anchor_s40)")->expected(2);
    det->add_flag("--from-anchors", from_anchors, "fit the anchors first and use their log law");

    auto* pd = app.add_subcommand("plot-data", "|F_ch(q)| curves on [0, 4] fm^-1 and data points");
    pd->add_option("--nuclide", nuclides, "nuclide label")->required();
    pd->add_option("--case", case_sel, "src, ho or both")->check(CLI::IsMember({"src", "ho", "both"}));
    pd->add_option("--loglaw", loglaw, "a b of S = a + b ln A")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fail("usage", e.what(), 64);
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!data_dir.empty()) {
            cfg.data_dir = data_dir;
        }
        if (!out_dir.empty()) {
            cfg.out_dir = out_dir;
        }
        if (!grid.empty()) {
            cfg.grid = grid;
        }
        if (!format.empty()) {
            cfg.set("format", format);
        }
        auto law_from_cfg = [&] {
            return loglaw.size() == 2 ? LogFit{loglaw[0], loglaw[1]} : loglaw_from_anchors(cfg.anchor_s4, cfg.anchor_s40);
        };

        if (*ho) {
            write_manifest(cfg, "ho-limit", nuclides);
            std::vector<HoLimitReport> rows;
            for (const auto& n : nuclides) {
                rows.push_back(cmd_ho_limit(n, cfg));
            }
            std::cout << "nuclide\ts0A\tr0A\n";
            for (const auto& r : rows) {
                std::cout << r.nuclide << "\t" << f4(r.s0) << "\t" << f4(r.r0) << "\n";
            }
        } else if (*sw) {
            write_manifest(cfg, "sweep", nuclides);
            for (const auto& n : nuclides) {
                const auto r = cmd_sweep(n, cfg);
                std::cout << "# " << r.table.nuclide << "\n1/y\tS_r\tS_k\tS\tr_b\n";
                for (const auto& row : r.table.rows) {
                    std::cout << f4(row.inv_y) << "\t" << f4(row.S_r) << "\t" << f4(row.S_k) << "\t" << f4(row.S)
                              << "\t" << f4(row.r_b) << (row.valid ? "" : "\t(clipped)") << "\n";
                }
                std::cout << "s0A s1A lambda_sA = " << f4(r.entropy_fit.c0) << " " << f4(r.entropy_fit.c1) << " "
                          << f4(r.entropy_fit.lambda) << "  residual " << e2(r.entropy_fit.residual) << "\n";
                std::cout << "r0A r1A lambda_rA = " << f4(r.radius_fit.c0) << " " << f4(r.radius_fit.c1) << " "
                          << f4(r.radius_fit.lambda) << "  residual " << e2(r.radius_fit.residual) << "\n";
            }
        } else if (*fa) {
            write_manifest(cfg, "fit-anchors", {"He4", "Ca40"});
            const auto r = cmd_fit_anchors(cfg);
            std::cout << "nuclide\tcase\tb0\ty\tchi2\tr_ch\tS\n";
            for (const auto* f : {&r.he4, &r.he4_ho, &r.ca40, &r.ca40_ho}) {
                std::cout << f->nuclide << "\t" << (std::isinf(f->y) ? "HO" : "SRC") << "\t" << f4(f->b0) << "\t"
                          << f4(f->y) << "\t" << std::fixed << std::setprecision(2) << f->chi2 << "\t" << f4(f->r_ch)
                          << "\t" << f4(f->S) << "\n";
            }
            std::cout << "a = " << f4(r.law.a) << "  b = " << f4(r.law.b) << "\n";
        } else if (*det) {
            if (nuclides.empty()) {
                nuclides = table_nuclide_names();
            }
            write_manifest(cfg, "determine", nuclides);
            LogFit law = law_from_cfg();
            if (from_anchors) {
                law = cmd_fit_anchors(cfg).law;
            }
            std::cout << "# S = " << f4(law.a) << " + " << f4(law.b) << " ln A\n";
            std::cout << "nuclide\tcase\tb0\ty\tchi2\tr_ch\tS\n";
            for (const auto& r : cmd_determine(nuclides, law, cfg)) {
                if (r.ok) {
                    std::cout << r.nuclide << "\tSRC\t" << f4(r.src.b0) << "\t" << f4(r.src.y) << "\t" << f4(r.src.chi2)
                              << "\t" << f4(r.src.r_ch) << "\t" << f4(r.src.S) << "\n";
                } else {
                    std::cout << r.nuclide << "\tSRC\tno solution: " << r.note << "\n";
                }
                std::cout << r.nuclide << "\tHO\t" << f4(r.ho.b0) << "\tinf\t" << f4(r.ho.chi2) << "\t"
                          << f4(r.ho.r_ch) << "\t" << f4(r.ho.S) << "\n";
            }
        } else if (*pd) {
            write_manifest(cfg, "plot-data", nuclides);
            const CaseSelector which = case_sel == "src" ? CaseSelector::src
                                       : case_sel == "ho" ? CaseSelector::ho
                                                          : CaseSelector::both;
            for (const auto& n : nuclides) {
                for (const auto& p : cmd_plot_data(n, which, law_from_cfg(), cfg)) {
                    std::cout << p.string() << "\n";
                }
            }
        }
    } catch (const InvalidInput& e) {
        fail("invalid_input", e.what(), 2);
    } catch (const NumericalError& e) {
        fail("numerical", e.what(), 3);
    } catch (const std::exception& e) {
        fail("internal", e.what(), 1);
    }
    return 0;
}
