#include "nucent/scaling.hpp"

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multifit_nlinear.h>
#include <gsl/gsl_roots.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "nucent/error.hpp"

namespace nucent {

void ChargeCorrections::validate() const
{
    if (!(r_p >= 0) || !(df_const >= 0) || !(cm_coefficient >= 0) || !(hbar_c > 0) || !(nucleon_mass > 0)) {
        throw InvalidInput("ChargeCorrections: entries must be nonnegative");
    }
}

double PowerLawFit::operator()(double inv_y) const
{
    if (!(inv_y >= 0.0)) {
        throw InvalidInput("PowerLawFit: 1/y must be nonnegative");
    }
    return inv_y == 0.0 ? c0 : c0 + c1 * std::pow(inv_y, lambda);
}

bool SweepTable::is_monotone() const
{
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].S > rows[i - 1].S) || !(rows[i].r_b > rows[i - 1].r_b)) {
            return false;
        }
    }
    return true;
}

std::vector<double> log_grid(double inv_lo, double inv_hi, int n)
{
    if (!(inv_lo > 0) || !(inv_hi > inv_lo) || n < 2) {
        throw InvalidInput("log_grid: need 0 < lo < hi and n >= 2");
    }
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        y[i] = 1.0 / (inv_lo * std::pow(inv_hi / inv_lo, t));
    }
    return y;
}

namespace {

bool clean_at(const Nuclide& nuclide, double inv_y, const QuadratureSpec& spec)
{
    try {
        CorrelatedModel model(nuclide, HOParams(1.0), Correlation(1.0 / inv_y), spec);
        return entropy_sum(model).clipped_mass == 0.0;
    } catch (const NumericalError&) {
        return false;
    } catch (const InvalidInput&) {
        return false;
    }
}

}  // namespace

double validity_edge(const Nuclide& nuclide, double inv_hi, const QuadratureSpec& spec)
{
    if (!(inv_hi > 0)) {
        throw InvalidInput("validity_edge: upper bound must be positive");
    }
    if (clean_at(nuclide, inv_hi, spec)) {
        return inv_hi;
    }
    double lo = 0.0;
    double hi = inv_hi;
    while (hi - lo > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        (clean_at(nuclide, mid, spec) ? lo : hi) = mid;
    }
    if (lo == 0.0) {
        throw NumericalError("validity_edge: no clean point found for " + nuclide.name());
    }
    return lo;
}

std::vector<double> default_sweep_grid(const Nuclide& nuclide, const QuadratureSpec& spec)
{
    return log_grid(0.05, validity_edge(nuclide, 0.40, spec), 8);
}

SweepTable sweep(const Nuclide& nuclide, std::span<const double> y_grid, const QuadratureSpec& spec, double b0)
{
    std::vector<double> ys(y_grid.begin(), y_grid.end());
    for (double y : ys) {
        if (!(y > 0)) {
            throw InvalidInput("sweep: y values must be positive");
        }
    }
    std::sort(ys.begin(), ys.end(), std::greater<>());
    if (std::adjacent_find(ys.begin(), ys.end()) != ys.end()) {
        throw InvalidInput("sweep: y values must be distinct");
    }
    SweepTable table;
    table.nuclide = nuclide.name();
    table.A = nuclide.A();
    for (double y : ys) {
        const Correlation corr = std::isinf(y) ? Correlation::uncorrelated() : Correlation(y);
        CorrelatedModel model(nuclide, HOParams(b0), corr, spec);
        const auto e = entropy_sum(model);
        table.rows.push_back({y, corr.inverse(), e.S_r, e.S_k, e.S, std::sqrt(model.mean_square_radius()),
                              e.clipped_mass, e.valid});
    }
    return table;
}

namespace {

struct PowerData {
    const double* x;
    const double* v;
    std::size_t n;
    double c0;
};

int power_f(const gsl_vector* p, void* data, gsl_vector* f)
{
    const auto* d = static_cast<const PowerData*>(data);
    const double c1 = gsl_vector_get(p, 0);
    const double lam = gsl_vector_get(p, 1);
    for (std::size_t i = 0; i < d->n; ++i) {
        gsl_vector_set(f, i, d->c0 + c1 * std::pow(d->x[i], lam) - d->v[i]);
    }
    return GSL_SUCCESS;
}

int power_df(const gsl_vector* p, void* data, gsl_matrix* J)
{
    const auto* d = static_cast<const PowerData*>(data);
    const double c1 = gsl_vector_get(p, 0);
    const double lam = gsl_vector_get(p, 1);
    for (std::size_t i = 0; i < d->n; ++i) {
        const double xl = std::pow(d->x[i], lam);
        gsl_matrix_set(J, i, 0, xl);
        gsl_matrix_set(J, i, 1, d->x[i] > 0 ? c1 * xl * std::log(d->x[i]) : 0.0);
    }
    return GSL_SUCCESS;
}

struct Workspace {
    gsl_multifit_nlinear_workspace* w;
    ~Workspace() { gsl_multifit_nlinear_free(w); }
};

}  // namespace

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> v, double c0)
{
    if (x.size() != v.size()) {
        throw InvalidInput("fit_power_law: x and v differ in length");
    }
    std::vector<double> xs;
    for (double xi : x) {
        if (!(xi >= 0) || !std::isfinite(xi)) {
            throw InvalidInput("fit_power_law: x must be finite and nonnegative");
        }
        if (xi > 0 && std::find(xs.begin(), xs.end(), xi) == xs.end()) {
            xs.push_back(xi);
        }
    }
    if (x.size() < 4 || xs.size() < 2) {
        throw InvalidInput("fit_power_law: need at least 4 points and two distinct positive x");
    }
    PowerData data{x.data(), v.data(), x.size(), c0};
    gsl_multifit_nlinear_fdf fdf{};
    fdf.f = power_f;
    fdf.df = power_df;
    fdf.n = x.size();
    fdf.p = 2;
    fdf.params = &data;

    auto params = gsl_multifit_nlinear_default_parameters();
    params.trs = gsl_multifit_nlinear_trs_lm;
    gsl_error_handler_t* old_handler = gsl_set_error_handler_off();

    PowerLawFit best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (double lam0 : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        // c1 from linear least squares at the trial exponent
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double xl = std::pow(x[i], lam0);
            num += xl * (v[i] - c0);
            den += xl * xl;
        }
        double start[2] = {num / den, lam0};
        gsl_vector_view p0 = gsl_vector_view_array(start, 2);
        Workspace ws{gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &params, x.size(), 2)};
        gsl_multifit_nlinear_init(&p0.vector, &fdf, ws.w);
        double cost = 0.0;
        gsl_blas_ddot(gsl_multifit_nlinear_residual(ws.w), gsl_multifit_nlinear_residual(ws.w), &cost);
        for (int it = 0; it < 500; ++it) {
            if (gsl_multifit_nlinear_iterate(ws.w) != GSL_SUCCESS) {
                break;
            }
            double next = 0.0;
            gsl_blas_ddot(gsl_multifit_nlinear_residual(ws.w), gsl_multifit_nlinear_residual(ws.w), &next);
            const double gain = cost - next;
            cost = next;
            int info = 0;
            if ((gain >= 0 && gain < 1e-12 * std::max(1.0, cost) && it > 0)
                || gsl_multifit_nlinear_test(1e-14, 1e-14, 0.0, &info, ws.w) == GSL_SUCCESS) {
                break;
            }
        }
        const double c1 = gsl_vector_get(gsl_multifit_nlinear_position(ws.w), 0);
        const double lam = gsl_vector_get(gsl_multifit_nlinear_position(ws.w), 1);
        if (std::isfinite(cost) && cost < best_cost && c1 > 0 && lam > 0) {
            best_cost = cost;
            best = PowerLawFit{c0, c1, lam, 0.0};
        }
    }
    gsl_set_error_handler(old_handler);
    if (!std::isfinite(best_cost)) {
        throw NumericalError("fit_power_law: no start converged to c1 > 0, lambda > 0");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        best.residual = std::max(best.residual, std::abs(best(x[i]) - v[i]) / std::abs(v[i]));
    }
    return best;
}

namespace {

template <class Get>
PowerLawFit fit_column(const SweepTable& table, double c0, Get get)
{
    std::vector<double> x, v;
    for (const auto& row : table.rows) {
        if (row.valid) {
            x.push_back(row.inv_y);
            v.push_back(get(row));
        }
    }
    return fit_power_law(x, v, c0);
}

}  // namespace

PowerLawFit fit_entropy_law(const SweepTable& table, double s0)
{
    return fit_column(table, s0, [](const SweepRow& r) { return r.S; });
}

PowerLawFit fit_radius_law(const SweepTable& table, const Nuclide& nuclide, double r0)
{
    const double expect = std::sqrt(r1_moment(nuclide));
    if (std::abs(r0 - expect) > 1e-9 * expect) {
        std::ostringstream msg;
        msg << "fit_radius_law: r0 = " << r0 << " but sqrt(R1) = " << expect << " for " << nuclide.name();
        throw InvalidInput(msg.str());
    }
    return fit_column(table, r0, [](const SweepRow& r) { return r.r_b; });
}

double entropy_from_radius(const PowerLawFit& sfit, const PowerLawFit& rfit, double r_b)
{
    if (!(r_b >= rfit.c0)) {
        throw InvalidInput("entropy_from_radius: r_b below the uncorrelated radius");
    }
    return sfit.c0 + sfit.c1 * std::pow((r_b - rfit.c0) / rfit.c1, sfit.lambda / rfit.lambda);
}

LogFit loglaw_from_points(int A1, double S1, int A2, double S2)
{
    if (!std::isfinite(S1) || !std::isfinite(S2) || A1 < 1 || A2 < 1 || A1 == A2) {
        throw InvalidInput("loglaw_from_points: need finite entropies at two distinct A");
    }
    const double l1 = std::log(static_cast<double>(A1));
    const double l2 = std::log(static_cast<double>(A2));
    return {(S1 * l2 - S2 * l1) / (l2 - l1), (S2 - S1) / (l2 - l1)};
}

LogFit loglaw_from_anchors(double S4, double S40) { return loglaw_from_points(4, S4, 40, S40); }

double predict_entropy(const LogFit& fit, double A)
{
    if (!(A >= 1)) {
        throw InvalidInput("predict_entropy: A must be at least 1");
    }
    return fit.a + fit.b * std::log(A);
}

Correlation solve_y(const PowerLawFit& sfit, double S_target)
{
    if (!(S_target > sfit.c0)) {
        std::ostringstream msg;
        msg << "solve_y: no solution, S = " << S_target << " does not exceed s0 = " << sfit.c0;
        throw NumericalError(msg.str());
    }
    return Correlation(std::pow(sfit.c1 / (S_target - sfit.c0), 1.0 / sfit.lambda));
}

double charge_radius(const Nuclide& nuclide, double b0, double r_b2, const ChargeCorrections& corr)
{
    const double r2 = b0 * b0 * (r_b2 - corr.cm_coefficient / nuclide.A()) + corr.radius_shift();
    if (!(r2 > 0)) {
        throw NumericalError("charge_radius: mean square charge radius is not positive");
    }
    return std::sqrt(r2);
}

namespace {

struct RadiusTarget {
    const Nuclide* nuclide;
    Correlation corr;
    double target;
    const ChargeCorrections* cc;
    const QuadratureSpec* spec;
};

double radius_mismatch(double b0, void* p)
{
    const auto* t = static_cast<const RadiusTarget*>(p);
    CorrelatedModel model(*t->nuclide, HOParams(b0), t->corr, *t->spec);
    const double r2 = b0 * b0 * (model.mean_square_radius() - t->cc->cm_coefficient / t->nuclide->A())
                      + t->cc->radius_shift();
    return r2 - t->target * t->target;
}

}  // namespace

HOParams solve_b0(const Nuclide& nuclide, Correlation corr, double r_ch_exp, const ChargeCorrections& cc,
                  const QuadratureSpec& spec)
{
    cc.validate();
    if (!(r_ch_exp > 0)) {
        throw InvalidInput("solve_b0: charge radius must be positive");
    }
    constexpr double lo = 0.5, hi = 3.0;
    RadiusTarget target{&nuclide, corr, r_ch_exp, &cc, &spec};
    const double f_lo = radius_mismatch(lo, &target);
    const double f_hi = radius_mismatch(hi, &target);
    if (f_lo * f_hi > 0) {
        std::ostringstream msg;
        msg << "solve_b0: no root in [" << lo << ", " << hi << "] fm for " << nuclide.name()
            << " (mismatch " << f_lo << " and " << f_hi << " fm^2)";
        throw NumericalError(msg.str());
    }
    gsl_function fn{radius_mismatch, &target};
    std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> solver(
        gsl_root_fsolver_alloc(gsl_root_fsolver_brent), gsl_root_fsolver_free);
    gsl_root_fsolver_set(solver.get(), &fn, lo, hi);
    for (int it = 0; it < 200; ++it) {
        gsl_root_fsolver_iterate(solver.get());
        const double a = gsl_root_fsolver_x_lower(solver.get());
        const double b = gsl_root_fsolver_x_upper(solver.get());
        if (gsl_root_test_interval(a, b, 1e-13, 1e-13) == GSL_SUCCESS) {
            return HOParams(gsl_root_fsolver_root(solver.get()));
        }
    }
    throw NumericalError("solve_b0: Brent iteration did not converge");
}

}  // namespace nucent
