#include "nucent/infoentropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nucent/error.hpp"
#include "nucent/quadrature.hpp"

namespace nucent {

namespace {

constexpr double increment_tol = 1e-8;
constexpr double norm_tol = 1e-4;

}  // namespace

EntropyIntegral entropy_integral(const std::function<double(double)>& f, double scale, const QuadratureSpec& spec)
{
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidInput("entropy_integral: scale must be positive");
    }
    const double width = spec.panel_width * scale;
    const double limit = spec.r_max_multiplier * scale;
    const auto unit = gauss_legendre(spec.panel_nodes, 0.0, 1.0);
    constexpr double four_pi = 4.0 * std::numbers::pi;

    EntropyIntegral out;
    double x0 = 0.0;
    bool done = false;
    while (!done) {
        if (x0 >= limit) {
            std::ostringstream msg;
            msg << "entropy_integral: tail still contributing at " << x0 / scale << " scale lengths";
            throw NumericalError(msg.str());
        }
        double ds = 0.0, dn = 0.0, dc = 0.0;
        for (std::size_t i = 0; i < unit.size(); ++i) {
            const double x = x0 + width * unit.nodes[i];
            const double w = four_pi * width * unit.weights[i] * x * x;
            const double v = f(x);
            if (v > 0.0) {
                ds -= w * v * std::log(v);
                dn += w * v;
            } else {
                dc -= w * v;
                dn += w * v;
            }
        }
        out.value += ds;
        out.norm += dn;
        out.clipped_mass += dc;
        x0 += width;
        // the bulk sits within a few scale lengths; don't stop on a node
        done = x0 >= 4.0 * scale && std::abs(ds) < increment_tol && std::abs(dn) < increment_tol;
    }
    out.extent = x0;
    if (std::abs(out.norm - 1.0) > norm_tol) {
        std::ostringstream msg;
        msg << "entropy_integral: distribution not normalized (integral " << out.norm << ")";
        throw InvalidInput(msg.str());
    }
    return out;
}

EntropyIntegral entropy_position(const std::function<double(double)>& rho, double b0, const QuadratureSpec& spec)
{
    return entropy_integral(rho, b0, spec);
}

EntropyIntegral entropy_momentum(const std::function<double(double)>& n, double b0, const QuadratureSpec& spec)
{
    if (!(b0 > 0.0)) {
        throw InvalidInput("entropy_momentum: b0 must be positive");
    }
    return entropy_integral(n, 1.0 / b0, spec);
}

EntropyReport entropy_sum(const CorrelatedModel& model)
{
    const double b0 = model.ho().b0();
    const auto r = entropy_position([&](double x) { return model.density(x); }, b0, model.spec());
    const auto k = entropy_momentum([&](double x) { return model.momentum_distribution(x); }, b0, model.spec());
    EntropyReport rep;
    rep.S_r = r.value;
    rep.S_k = k.value;
    rep.S = rep.S_r + rep.S_k;
    rep.clipped_mass = r.clipped_mass + k.clipped_mass;
    rep.valid = rep.clipped_mass <= clipped_mass_limit;
    rep.bound_satisfied = rep.S >= entropic_bound - 1e-6;
    return rep;
}

}  // namespace nucent
