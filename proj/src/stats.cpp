#include "infogeo/stats.hpp"

#include <cmath>
#include <limits>

#include "infogeo/errors.hpp"

namespace infogeo {

namespace {

// Regularized incomplete gamma, series branch (x < a + 1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma, continued fraction branch (x >= a + 1),
// modified Lentz iteration.
double gamma_q_contfrac(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double regularized_gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double chi2_pdf(int df, double x) {
  if (x <= 0.0) return 0.0;
  const double a = 0.5 * df;
  return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * std::log(2.0) - std::lgamma(a));
}

}  // namespace

double chi2_survival(int df, double x) {
  if (df < 1) throw ValidationError("chi2_survival: df must be >= 1");
  if (!(x >= 0.0)) throw ValidationError("chi2_survival: x must be nonnegative");
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double chi2_quantile(int df, double prob) {
  if (df < 1) throw ValidationError("chi2_quantile: df must be >= 1");
  if (!(prob > 0.0 && prob < 1.0)) throw ValidationError("chi2_quantile: prob must lie in (0,1)");

  const double a = 0.5 * df;
  auto cdf = [a](double q) { return regularized_gamma_p(a, 0.5 * q); };

  double lo = 0.0;
  double hi = 2.0 * df + 20.0;
  while (cdf(hi) < prob) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("chi2_quantile: bracket expansion failed");
  }

  // Bisect to a narrow bracket, then polish with safeguarded Newton steps.
  for (int i = 0; i < 120 && hi - lo > 1e-13 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < prob ? lo : hi) = mid;
  }
  double q = 0.5 * (lo + hi);
  for (int i = 0; i < 6; ++i) {
    const double f = cdf(q) - prob;
    const double d = chi2_pdf(df, q);
    if (d <= 0.0) break;
    double step = f / d;
    double next = q - step;
    if (next <= lo || next >= hi) break;
    q = next;
    if (std::abs(step) < 1e-15 * (1.0 + q)) break;
  }
  return q;
}

double multinomial_log_pmf(const SimplexPoint& theta, const CountVector& x) {
  if (theta.size() != x.size())
    throw ValidationError("multinomial_log_pmf: dimension mismatch");
  double lp = std::lgamma(x.n() + 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int xi = x[i];
    if (xi == 0) continue;
    if (theta[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += xi * std::log(theta[i]) - std::lgamma(xi + 1.0);
  }
  return lp;
}

CountVector multinomial_sample(const SimplexPoint& theta, int n, RngSeed seed) {
  if (n < 1) throw ValidationError("multinomial_sample: n must be >= 1");
  RngStream rng(seed);
  const std::size_t k1 = theta.size();
  std::vector<int> counts(k1, 0);
  int remaining = n;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < k1 && remaining > 0; ++i) {
    if (mass <= 0.0) break;
    double pi = theta[i] / mass;
    if (pi > 1.0) pi = 1.0;
    counts[i] = rng.next_binomial(remaining, pi);
    remaining -= counts[i];
    mass -= theta[i];
  }
  counts[k1 - 1] += remaining;
  return CountVector(std::move(counts));
}

}  // namespace infogeo
