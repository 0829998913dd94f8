#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <optional>

#include "nucent/error.hpp"
#include "nucent/ffit.hpp"
#include "nucent/infoentropy.hpp"
#include "nucent/scaling.hpp"

namespace py = pybind11;
using namespace nucent;

namespace {

// None or inf means the uncorrelated limit
Correlation correlation(std::optional<double> y)
{
    return (!y || std::isinf(*y)) ? Correlation::uncorrelated() : Correlation(*y);
}

Nuclide nuclide_arg(const py::object& obj)
{
    if (py::isinstance<py::str>(obj)) {
        return builtin_nuclide(obj.cast<std::string>());
    }
    return obj.cast<Nuclide>();
}

// scalar in, scalar out; array in, array of the same shape out
template <class F>
py::object elementwise(F f, const py::object& x)
{
    if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) {
        return py::float_(f(x.cast<double>()));
    }
    auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(x);
    if (!in) {
        throw InvalidInput("expected a number or an array of numbers");
    }
    py::array_t<double> out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
    const double* src = in.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < in.size(); ++i) {
        dst[i] = f(src[i]);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Correlated HO densities, information entropies and charge form factors";

    static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
    static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const InvalidInput& e) {
            PyErr_SetString(invalid.ptr(), e.what());
        } catch (const NumericalError& e) {
            PyErr_SetString(numerical.ptr(), e.what());
        }
    });

    m.attr("entropic_bound") = entropic_bound;

    py::class_<Nuclide>(m, "Nuclide")
        .def(py::init([](std::string name, int A, double eta_1s, double eta_1p, double eta_1d, double eta_2s) {
                 std::vector<ShellOccupation> occ;
                 const std::pair<Shell, double> all[] = {
                     {shell_1s, eta_1s}, {shell_1p, eta_1p}, {shell_1d, eta_1d}, {shell_2s, eta_2s}};
                 for (const auto& [s, e] : all) {
                     if (e > 0.0) {
                         occ.push_back({s, e});
                     }
                 }
                 return Nuclide(std::move(name), A, std::move(occ));
             }),
             py::arg("name"), py::arg("A"), py::arg("eta_1s") = 1.0, py::arg("eta_1p") = 0.0,
             py::arg("eta_1d") = 0.0, py::arg("eta_2s") = 0.0)
        .def_property_readonly("name", &Nuclide::name)
        .def_property_readonly("A", &Nuclide::A)
        .def_property_readonly("Z", &Nuclide::Z)
        .def_property_readonly("r1_moment", [](const Nuclide& n) { return r1_moment(n); })
        .def("__repr__", [](const Nuclide& n) { return "Nuclide('" + n.name() + "', A=" + std::to_string(n.A()) + ")"; });

    m.def("builtin_nuclide", [](const std::string& name) { return builtin_nuclide(name); }, py::arg("name"));
    m.def("builtin_nuclide_names", &builtin_nuclide_names);
    m.def("table_nuclide_names", &table_nuclide_names);

    py::class_<CorrelatedModel>(m, "CorrelatedModel")
        .def(py::init([](const py::object& nuc, double b0, std::optional<double> y) {
                 return CorrelatedModel(nuclide_arg(nuc), HOParams(b0), correlation(y));
             }),
             py::arg("nuclide"), py::arg("b0"), py::arg("y") = py::none())
        .def_property_readonly("nuclide", &CorrelatedModel::nuclide)
        .def_property_readonly("b0", [](const CorrelatedModel& mo) { return mo.ho().b0(); })
        .def_property_readonly("y", [](const CorrelatedModel& mo) { return mo.correlation().y(); })
        .def_property_readonly("normalization_factor", &CorrelatedModel::normalization_factor)
        .def("density",
             [](const CorrelatedModel& mo, const py::object& r) {
                 return elementwise([&](double v) { return mo.density(v); }, r);
             })
        .def("momentum_distribution",
             [](const CorrelatedModel& mo, const py::object& k) {
                 return elementwise([&](double v) { return mo.momentum_distribution(v); }, k);
             })
        .def("form_factor",
             [](const CorrelatedModel& mo, const py::object& q) {
                 return elementwise([&](double v) { return mo.form_factor(v); }, q);
             })
        .def("charge_form_factor",
             [](const CorrelatedModel& mo, const py::object& q) {
                 return elementwise([&](double v) { return charge_form_factor(mo, v); }, q);
             })
        .def("density_matrix", &CorrelatedModel::density_matrix, py::arg("r1"), py::arg("r1p"), py::arg("cos_omega"))
        .def("mean_square_radius", &CorrelatedModel::mean_square_radius);

    py::class_<EntropyReport>(m, "EntropyReport")
        .def_readonly("S_r", &EntropyReport::S_r)
        .def_readonly("S_k", &EntropyReport::S_k)
        .def_readonly("S", &EntropyReport::S)
        .def_readonly("bound_satisfied", &EntropyReport::bound_satisfied)
        .def_readonly("clipped_mass", &EntropyReport::clipped_mass)
        .def_readonly("valid", &EntropyReport::valid);
    m.def("entropy_sum", &entropy_sum, py::arg("model"));

    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def(py::init([](double c0, double c1, double lambda) { return PowerLawFit{c0, c1, lambda, 0.0}; }),
             py::arg("c0"), py::arg("c1"), py::arg("lam"))
        .def_readonly("c0", &PowerLawFit::c0)
        .def_readonly("c1", &PowerLawFit::c1)
        .def_readonly("lam", &PowerLawFit::lambda)
        .def_readonly("residual", &PowerLawFit::residual)
        .def("__call__", &PowerLawFit::operator(), py::arg("inv_y"));

    py::class_<LogFit>(m, "LogFit")
        .def(py::init([](double a, double b) { return LogFit{a, b}; }), py::arg("a"), py::arg("b"))
        .def_readonly("a", &LogFit::a)
        .def_readonly("b", &LogFit::b);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("y", &SweepRow::y)
        .def_readonly("inv_y", &SweepRow::inv_y)
        .def_readonly("S_r", &SweepRow::S_r)
        .def_readonly("S_k", &SweepRow::S_k)
        .def_readonly("S", &SweepRow::S)
        .def_readonly("r_b", &SweepRow::r_b)
        .def_readonly("clipped_mass", &SweepRow::clipped_mass)
        .def_readonly("valid", &SweepRow::valid);
    py::class_<SweepTable>(m, "SweepTable")
        .def_readonly("nuclide", &SweepTable::nuclide)
        .def_readonly("rows", &SweepTable::rows)
        .def("is_monotone", &SweepTable::is_monotone);

    m.def("log_grid", &log_grid, py::arg("inv_lo"), py::arg("inv_hi"), py::arg("n"));
    m.def(
        "default_sweep_grid", [](const py::object& nuc) { return default_sweep_grid(nuclide_arg(nuc)); },
        py::arg("nuclide"));
    m.def(
        "sweep", [](const py::object& nuc, const std::vector<double>& ys) { return sweep(nuclide_arg(nuc), ys); },
        py::arg("nuclide"), py::arg("y_grid"));
    m.def("fit_power_law", &fit_power_law, py::arg("x"), py::arg("v"), py::arg("c0"));
    m.def("fit_entropy_law", &fit_entropy_law, py::arg("table"), py::arg("s0"));
    m.def(
        "fit_radius_law",
        [](const SweepTable& t, const py::object& nuc, double r0) { return fit_radius_law(t, nuclide_arg(nuc), r0); },
        py::arg("table"), py::arg("nuclide"), py::arg("r0"));
    m.def("entropy_from_radius", &entropy_from_radius, py::arg("sfit"), py::arg("rfit"), py::arg("r_b"));
    m.def("loglaw_from_anchors", &loglaw_from_anchors, py::arg("S4"), py::arg("S40"));
    m.def("predict_entropy", &predict_entropy, py::arg("fit"), py::arg("A"));
    m.def(
        "solve_y", [](const PowerLawFit& f, double s) { return solve_y(f, s).y(); }, py::arg("sfit"),
        py::arg("S_target"));
    m.def(
        "solve_b0",
        [](const py::object& nuc, std::optional<double> y, double r_ch) {
            return solve_b0(nuclide_arg(nuc), correlation(y), r_ch).b0();
        },
        py::arg("nuclide"), py::arg("y"), py::arg("r_ch_exp"));

    py::class_<DataPoint>(m, "DataPoint")
        .def_readonly("q", &DataPoint::q)
        .def_readonly("value", &DataPoint::value)
        .def_readonly("sigma", &DataPoint::sigma);
    py::class_<ExperimentalDataset>(m, "ExperimentalDataset")
        .def_readonly("nuclide", &ExperimentalDataset::nuclide)
        .def_readonly("points", &ExperimentalDataset::points)
        .def_readonly("source", &ExperimentalDataset::source);
    m.def(
        "load_dataset", [](const std::string& path, const std::string& nuc) { return load_dataset(path, nuc); },
        py::arg("path"), py::arg("nuclide"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("nuclide", &FitResult::nuclide)
        .def_readonly("b0", &FitResult::b0)
        .def_readonly("y", &FitResult::y)
        .def_readonly("chi2", &FitResult::chi2)
        .def_readonly("r_ch", &FitResult::r_ch)
        .def_readonly("S", &FitResult::S);
    m.def(
        "fit_anchor",
        [](const py::object& nuc, const ExperimentalDataset& d, double r_ch) {
            return fit_anchor(nuclide_arg(nuc), d, r_ch);
        },
        py::arg("nuclide"), py::arg("dataset"), py::arg("r_ch_exp"));
    m.def(
        "ho_baseline",
        [](const py::object& nuc, double r_ch, const ExperimentalDataset* d) {
            return ho_baseline(nuclide_arg(nuc), r_ch, {}, d);
        },
        py::arg("nuclide"), py::arg("r_ch_exp"), py::arg("dataset") = nullptr);
}
