#include "nucent/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "nucent/error.hpp"

namespace nucent {

QuadratureRule gauss_legendre(int n, double a, double b)
{
    if (n < 1) {
        throw InvalidInput("gauss_legendre: need at least one node");
    }
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), gsl_integration_glfixed_table_free);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &rule.nodes[i], &rule.weights[i],
                                      table.get());
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel)
{
    QuadratureRule out;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        auto panel = gauss_legendre(nodes_per_panel, a + p * width, a + (p + 1) * width);
        out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return out;
}

const QuadratureRule& gauss_hermite(int n)
{
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) {
        return it->second;
    }
    std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<size_t>(n), 0.0, 1.0, 0.0,
                                    0.0),
        gsl_integration_fixed_free);
    if (!ws) {
        throw NumericalError("gauss_hermite: GSL allocation failed");
    }
    QuadratureRule rule;
    const double* x = gsl_integration_fixed_nodes(ws.get());
    const double* w = gsl_integration_fixed_weights(ws.get());
    rule.nodes.assign(x, x + n);
    rule.weights.assign(w, w + n);
    return cache.emplace(n, std::move(rule)).first->second;
}

double integrate_to_infinity(const std::function<double(double)>& f, double panel, int nodes_per_panel,
                             double tol, double max_extent)
{
    const auto unit = gauss_legendre(nodes_per_panel, 0.0, panel);
    double total = 0.0;
    for (double start = 0.0; start < max_extent; start += panel) {
        double piece = 0.0;
        for (std::size_t i = 0; i < unit.size(); ++i) {
            piece += unit.weights[i] * f(start + unit.nodes[i]);
        }
        total += piece;
        // need at least a few panels so a vanishing integrand at the origin does not stop early
        if (start >= 4.0 * panel && std::abs(piece) < tol) {
            return total;
        }
    }
    std::ostringstream msg;
    msg << "integrate_to_infinity: tail not below " << tol << " by extent " << max_extent;
    throw NumericalError(msg.str());
}

}  // namespace nucent
