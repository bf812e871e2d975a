#pragma once

#include <Eigen/Core>

#include "infogeo/types.hpp"

namespace infogeo {

/// Hellinger distance 2 * || sqrt(p) - sqrt(q) ||, the chordal distance
/// between the square-root representations. Range [0, 2*sqrt(2)].
double hellinger_distance(const SimplexPoint& p, const SimplexPoint& q);

/// Geodesic (great-circle) distance 2 * arccos <sqrt(p), sqrt(q)> on the
/// sphere representation; the inner product is clamped to [-1, 1] before
/// arccos. Range [0, pi].
double info_distance_multinomial(const SimplexPoint& p, const SimplexPoint& q);

/// x / n: simultaneously the nonparametric density estimate and the
/// unrestricted minimum-Hellinger-distance estimate.
SimplexPoint empirical_distribution(const CountVector& x);

/// k x k Fisher information of the multinomial in the parametrization that
/// drops the last coordinate: diag(1/theta_i) + (1/theta_{k+1}) * ones.
/// Requires theta strictly interior to the simplex.
Eigen::MatrixXd fisher_information(const SimplexPoint& theta);

/// n * (x/n - theta0)' I(theta0) (x/n - theta0) over the first k coordinates.
double wald_statistic(const CountVector& x, const SimplexPoint& theta0);

/// Squared Hellinger distance h^2(x/n, theta0).
double hd_statistic(const CountVector& x, const SimplexPoint& theta0);

/// Likelihood ratio statistic G^2 = 2 sum_j x_j log(x_j / (n theta0_j)).
/// Zero-count terms contribute exactly 0; x_j > 0 with theta0_j = 0 gives +inf.
double likelihood_ratio_statistic(const CountVector& x, const SimplexPoint& theta0);

/// Pearson X^2 = sum_j (x_j - n theta0_j)^2 / (n theta0_j).
double pearson_statistic(const CountVector& x, const SimplexPoint& theta0);

}  // namespace infogeo
