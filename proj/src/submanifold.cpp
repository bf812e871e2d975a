#include "infogeo/submanifold.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "infogeo/manifold.hpp"
#include "infogeo/numeric.hpp"

namespace infogeo {

std::vector<SimplexPoint> Submanifold::sample(int m, RngSeed seed) const {
  if (m < 1) throw ValidationError("Submanifold::sample: m must be >= 1");
  RngStream rng(seed);
  std::vector<SimplexPoint> out;
  out.reserve(m);
  std::vector<double> tau(param_dim());
  for (int i = 0; i < m; ++i) {
    for (int a = 0; a < param_dim(); ++a) {
      const auto [lo, hi] = domain(a);
      tau[a] = lo + (hi - lo) * rng.next_double();
    }
    out.push_back(map(tau));
  }
  return out;
}

SimplexPoint HardyWeinberg::map(std::span<const double> tau) const {
  if (tau.size() != 1) throw ValidationError("HardyWeinberg::map: one parameter expected");
  return hw_map(tau[0]);
}

std::optional<std::vector<double>> HardyWeinberg::restricted_estimate(const CountVector& x) const {
  return std::vector<double>{hw_restricted_mhde(x)};
}

std::pair<double, double> SphericalSubfamily::domain(int) const {
  return {0.0, std::numbers::pi / 2.0};
}

SimplexPoint SphericalSubfamily::map(std::span<const double> tau) const {
  if (tau.size() != 2) throw ValidationError("SphericalSubfamily::map: two parameters expected");
  return spherical_map(tau[0], tau[1]).to_simplex();
}

std::optional<std::vector<double>> SphericalSubfamily::restricted_estimate(
    const CountVector& x) const {
  const auto [t1, t2] = spherical_restricted_mle(x);
  return std::vector<double>{t1, t2};
}

SpherePoint SphericalSubfamily::null_point() {
  return SpherePoint({0.3, 0.3, 0.3, 0.5, 0.4, 0.4, 0.4});
}

SimplexPoint hw_map(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw ValidationError("hw_map: tau outside [0,1]");
  const double om = 1.0 - tau;
  return SimplexPoint({tau * tau, 2.0 * tau * om, om * om});
}

namespace {

// <sigma(tau), sqrt(x/n)> on the Hardy-Weinberg curve.
struct HwObjective {
  double s1, s2, s3;  // sqrt(x_i / n)
  double operator()(double tau) const {
    return tau * s1 + std::sqrt(2.0 * tau * (1.0 - tau)) * s2 + (1.0 - tau) * s3;
  }
};

}  // namespace

double hw_restricted_mhde(const CountVector& x) {
  if (x.size() != 3) throw ValidationError("hw_restricted_mhde: trinomial counts required");
  if (x.n() < 1) throw ValidationError("hw_restricted_mhde: n must be >= 1");
  const double n = x.n();
  const HwObjective f{std::sqrt(x[0] / n), std::sqrt(x[1] / n), std::sqrt(x[2] / n)};

  // Coarse bracket over 21 grid points, golden-section polish around the best
  // one, then pick among {0, 1, polished} with plateau ties going to smaller tau.
  constexpr int grid_points = 21;
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(i / 20.0);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = std::max(0, best - 1) / 20.0;
  const double hi = std::min(grid_points - 1, best + 1) / 20.0;
  const auto [polished, polished_val] = golden_section_max(f, lo, hi, 1e-11);

  // Snap to an endpoint whenever it matches the polished value to rounding
  // (the curve's speed is unbounded at tau = 0 and 1, so "almost 1" and
  // "exactly 1" give visibly different arc lengths). A genuine plateau
  // resolves to the smaller tau because 0 is tested last.
  constexpr double tie_tol = 1e-12;
  double tau = polished;
  double val = polished_val;
  for (double cand : {1.0, 0.0}) {
    const double cv = f(cand);
    if (cv >= val - tie_tol) {
      tau = cand;
      val = std::max(val, cv);
    }
  }
  return tau;
}

double hw_info_distance(double tau0, double tau1) {
  if (!(tau0 >= 0.0 && tau0 <= 1.0 && tau1 >= 0.0 && tau1 <= 1.0))
    throw ValidationError("hw_info_distance: tau outside [0,1]");
  const double lo = std::min(tau0, tau1);
  const double hi = std::max(tau0, tau1);
  if (lo == hi) return 0.0;

  // Substitute tau = sin^2(u); the speed integrand becomes bounded, with
  // removable singularities only at u = 0 and u = pi/2, which are nudged.
  auto speed_u = [](double u) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    const double tau = s * s;
    const double om = c * c;
    const double ratio = (1.0 - 2.0 * tau) * (1.0 - 2.0 * tau) / (2.0 * tau * om);
    return 2.0 * std::sqrt(2.0 + ratio) * 2.0 * s * c;
  };
  constexpr double nudge = 1e-12;
  double ulo = std::asin(std::sqrt(lo));
  double uhi = std::asin(std::sqrt(hi));
  if (lo == 0.0) ulo = nudge;
  if (hi == 1.0) uhi = std::numbers::pi / 2.0 - nudge;
  if (uhi <= ulo) return 0.0;
  return adaptive_simpson(speed_u, ulo, uhi, 1e-10);
}

double hw_unrestricted_statistic(const CountVector& x, double tau_bar) {
  if (x.size() != 3)
    throw ValidationError("hw_unrestricted_statistic: trinomial counts required");
  if (!(tau_bar > 0.0 && tau_bar < 1.0))
    throw ValidationError("hw_unrestricted_statistic: tau_bar outside (0,1)");
  const double n = x.n();
  const double ip = tau_bar * std::sqrt(x[0] / n) +
                    std::sqrt(2.0 * tau_bar * (1.0 - tau_bar) * x[1] / n) +
                    (1.0 - tau_bar) * std::sqrt(x[2] / n);
  return 2.0 * std::acos(clamp_to_unit(ip));
}

SpherePoint spherical_map(double tau1, double tau2) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(tau1 >= 0.0 && tau1 <= half_pi && tau2 >= 0.0 && tau2 <= half_pi))
    throw ValidationError("spherical_map: tau outside [0, pi/2]^2");
  const double rho = std::sqrt(0.48);
  return SpherePoint({0.3, 0.3, 0.3, 0.5, rho * std::cos(tau1) * std::sin(tau2),
                      rho * std::sin(tau1) * std::sin(tau2), rho * std::cos(tau2)});
}

std::pair<double, double> spherical_restricted_mle(const CountVector& x) {
  if (x.size() != 7)
    throw ValidationError("spherical_restricted_mle: 7-category counts required");
  const double x5 = x[4], x6 = x[5], x7 = x[6];
  const double tail = x5 + x6;
  const double tau1 = tail > 0.0 ? std::asin(std::sqrt(x6 / tail)) : 0.0;
  const double all = tail + x7;
  const double tau2 = all > 0.0 ? std::asin(std::sqrt(tail / all)) : 0.0;
  return {tau1, tau2};
}

double spherical_restricted_lrt(const CountVector& x, const SpherePoint& sigma_bar) {
  if (x.size() != 7 || sigma_bar.size() != 7)
    throw ValidationError("spherical_restricted_lrt: 7-category inputs required");
  const auto [t1, t2] = spherical_restricted_mle(x);
  const SimplexPoint fitted = spherical_map(t1, t2).to_simplex();
  const SimplexPoint null = sigma_bar.to_simplex();
  double s = 0.0;
  for (std::size_t j = 0; j < 7; ++j) {
    if (x[j] == 0) continue;
    s += x[j] * (std::log(fitted[j]) - std::log(null[j]));
  }
  return 2.0 * s;
}

}  // namespace infogeo
