#pragma once

#include <functional>
#include <vector>

namespace nucent {

/// A fixed quadrature rule: sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sum += weights[i] * f(nodes[i]);
        }
        return sum;
    }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Legendre panels of equal width covering [a, b].
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel);

/// n-point Gauss-Hermite rule for the weight exp(-x^2) on the real line.
/// Exact for polynomials of degree <= 2n-1.
const QuadratureRule& gauss_hermite(int n);

/// Integrates f over [0, inf) on Gauss-Legendre panels of width `panel`,
/// adding panels until one contributes less than `tol` in absolute value.
/// Throws NumericalError if `max_extent` is reached first.
double integrate_to_infinity(const std::function<double(double)>& f, double panel, int nodes_per_panel,
                             double tol, double max_extent);

}  // namespace nucent
