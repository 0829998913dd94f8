#pragma once

#include <functional>

#include "nucent/correlated.hpp"

namespace nucent {

/// 3 (1 + ln pi), the lower bound on S_r + S_k in three dimensions.
inline constexpr double entropic_bound = 6.434189657547;

/// One entropy integral -4 pi int f ln f x^2 dx.
struct EntropyIntegral {
    double value = 0.0;
    double norm = 0.0;          // 4 pi int f x^2 dx over the same grid
    double clipped_mass = 0.0;  // 4 pi int |f| x^2 dx where f <= 0
    double extent = 0.0;        // where the tail extension stopped
};

/// Entropy of a spherically symmetric distribution normalized to one.
/// `scale` is its natural length (b0 in r space, 1/b0 in k space); panels of
/// spec.panel_width * scale are added until both the entropy and the norm
/// increments fall below 1e-8. Nonpositive values are left out of the
/// integral and counted in clipped_mass. Throws InvalidInput when the norm
/// is off by more than 1e-4, NumericalError when r_max_multiplier * scale is
/// reached before the tail has died out.
EntropyIntegral entropy_integral(const std::function<double(double)>& f, double scale,
                                 const QuadratureSpec& spec = {});

/// S_r = -int rho ln rho d3r.
EntropyIntegral entropy_position(const std::function<double(double)>& rho, double b0,
                                 const QuadratureSpec& spec = {});

/// S_k = -int n ln n d3k.
EntropyIntegral entropy_momentum(const std::function<double(double)>& n, double b0,
                                 const QuadratureSpec& spec = {});

struct EntropyReport {
    double S_r = 0.0;
    double S_k = 0.0;
    double S = 0.0;
    bool bound_satisfied = false;
    double clipped_mass = 0.0;  // r and k space together
    bool valid = true;          // false once clipped_mass exceeds 1e-4
};

inline constexpr double clipped_mass_limit = 1e-4;

EntropyReport entropy_sum(const CorrelatedModel& model);

}  // namespace nucent
