#pragma once

#include "infogeo/rng.hpp"
#include "infogeo/types.hpp"

namespace infogeo {

/// Quantile of the chi-squared distribution with df degrees of freedom:
/// the q with CDF(q) = prob, |CDF(q) - prob| <= 1e-12. Bracketing bisection
/// refined with Newton steps on the regularized lower incomplete gamma.
double chi2_quantile(int df, double prob);

/// Upper tail probability P(chi2(df) > x), absolute accuracy ~1e-14.
double chi2_survival(int df, double x);

/// Log of the multinomial pmf. Categories with x_i = 0 contribute nothing;
/// theta_i = 0 with x_i > 0 yields -infinity rather than an error.
double multinomial_log_pmf(const SimplexPoint& theta, const CountVector& x);

/// Draw counts for n trials by sequential conditional binomials.
/// Deterministic given the seed; consumes one stream.
CountVector multinomial_sample(const SimplexPoint& theta, int n, RngSeed seed);

}  // namespace infogeo
