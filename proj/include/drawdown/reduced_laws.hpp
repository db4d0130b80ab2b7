#pragma once

#include "drawdown/common.hpp"

namespace drawdown {

// Laws of the reduced pair on {H_I < H_S}:
//   X = sqrt(2 lambda) (D+_T - D-_T) / sinh(sqrt(2 lambda) D-_T),
//   Y = cosh(sqrt(2 lambda) D-_T).
// Both are free of lambda; X > 0 and Y > 1 almost surely.

/// Joint density of (X, Y): 2 (2 + x) / (1 + y)^2 e^{-x y}, x > 0, y > 1.
inline double reduced_xy_joint_density(double x, double y) {
    require(x > 0.0, "reduced laws: requires x > 0");
    require(y > 1.0, "reduced laws: requires y > 1");
    const double d = 1.0 + y;
    return 2.0 * (2.0 + x) / (d * d) * std::exp(-x * y);
}

/// Marginal density of Y: 2 (2y + 1) / (y (1 + y))^2, y > 1.
inline double reduced_y_density(double y) {
    require(y > 1.0, "reduced laws: requires y > 1");
    const double d = y * (1.0 + y);
    return 2.0 * (2.0 * y + 1.0) / (d * d);
}

/// Survival P(Y > u) = 2 / (u (1 + u)), u >= 1 (equals 1 at u = 1).
inline double reduced_y_survival(double u) {
    require(u >= 1.0, "reduced laws: requires u >= 1");
    return 2.0 / (u * (1.0 + u));
}

struct ReducedXYLaws {
    double joint_density;
    double y_density;
    double y_survival;
};

inline ReducedXYLaws reduced_xy_laws(double x, double y) {
    return {reduced_xy_joint_density(x, y), reduced_y_density(y), reduced_y_survival(y)};
}

}  // namespace drawdown
