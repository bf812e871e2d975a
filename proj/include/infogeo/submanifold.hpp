#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "infogeo/rng.hpp"
#include "infogeo/types.hpp"

namespace infogeo {

/// A parametric family of multinomial distributions indexed by a box in
/// parameter space. `sample` draws parameters uniformly over the box, which
/// is how unknown families are probed when only sampling is possible.
class Submanifold {
 public:
  virtual ~Submanifold() = default;

  virtual int param_dim() const = 0;
  virtual int categories() const = 0;  // k+1
  virtual std::pair<double, double> domain(int axis) const = 0;
  virtual SimplexPoint map(std::span<const double> tau) const = 0;

  /// Family-specific restricted parameter estimate, when one is available.
  virtual std::optional<std::vector<double>> restricted_estimate(const CountVector&) const {
    return std::nullopt;
  }

  std::vector<SimplexPoint> sample(int m, RngSeed seed) const;
};

/// The 1-parameter trinomial curve psi(tau) = (tau^2, 2 tau (1-tau), (1-tau)^2),
/// tau in [0,1]. restricted_estimate returns the minimum-Hellinger-distance tau.
class HardyWeinberg final : public Submanifold {
 public:
  int param_dim() const override { return 1; }
  int categories() const override { return 3; }
  std::pair<double, double> domain(int) const override { return {0.0, 1.0}; }
  SimplexPoint map(std::span<const double> tau) const override;
  std::optional<std::vector<double>> restricted_estimate(const CountVector& x) const override;
};

/// The 2-parameter spherical family of 7-category distributions with fixed
/// head (0.3, 0.3, 0.3, 0.5) and tail of squared norm 0.48, parametrized by
/// spherical angles on [0, pi/2]^2. restricted_estimate returns the
/// (closed-form) restricted maximum-likelihood angles.
class SphericalSubfamily final : public Submanifold {
 public:
  int param_dim() const override { return 2; }
  int categories() const override { return 7; }
  std::pair<double, double> domain(int) const override;
  SimplexPoint map(std::span<const double> tau) const override;
  std::optional<std::vector<double>> restricted_estimate(const CountVector& x) const override;

  static SpherePoint null_point();  // sigma-bar = (0.3,0.3,0.3,0.5,0.4,0.4,0.4)
};

SimplexPoint hw_map(double tau);

/// Global maximizer over tau in [0,1] of
///   tau sqrt(x1/n) + sqrt(2 tau (1-tau) x2/n) + (1-tau) sqrt(x3/n),
/// accurate to 1e-8; plateau ties resolve to the smallest tau.
double hw_restricted_mhde(const CountVector& x);

/// Arc length along the curve between tau0 and tau1, by adaptive quadrature
/// of the sphere-representation speed 2 sqrt(2 + (1-2t)^2 / (2t(1-t)))
/// after the substitution t = sin^2(u) that removes the endpoint
/// singularities. Symmetric in its arguments; absolute accuracy ~1e-9.
double hw_info_distance(double tau0, double tau1);

/// 2 arccos( tau_bar sqrt(x1/n) + sqrt(2 tau_bar (1-tau_bar) x2/n)
///           + (1-tau_bar) sqrt(x3/n) ), tau_bar in (0,1). Agrees with
/// info_distance_multinomial(empirical(x), hw_map(tau_bar)) to roundoff.
double hw_unrestricted_statistic(const CountVector& x, double tau_bar);

SpherePoint spherical_map(double tau1, double tau2);

/// Coordinate-wise minimizers of the separable restricted negative
/// log-likelihood: tau1 = arcsin sqrt(x6/(x5+x6)),
/// tau2 = arcsin sqrt((x5+x6)/(x5+x6+x7)); zero denominators give the
/// boundary value 0.
std::pair<double, double> spherical_restricted_mle(const CountVector& x);

/// -2 log likelihood ratio of sigma_bar against the fitted subfamily point,
/// with cell probabilities sigma^2.
double spherical_restricted_lrt(const CountVector& x, const SpherePoint& sigma_bar);

}  // namespace infogeo
