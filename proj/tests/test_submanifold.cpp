#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "infogeo/manifold.hpp"
#include "infogeo/rng.hpp"
#include "infogeo/stats.hpp"
#include "infogeo/submanifold.hpp"

using namespace infogeo;

namespace {

// Closed-form arc length along the curve, derived by simplifying the speed
// to sqrt(2)/sqrt(t(1-t)) and integrating. Oracle only; the shipped path is
// quadrature.
double hw_arc_closed_form(double t0, double t1) {
  return 2.0 * std::sqrt(2.0) * std::abs(std::asin(std::sqrt(t1)) - std::asin(std::sqrt(t0)));
}

double hw_objective(double tau, const CountVector& x) {
  const double n = x.n();
  return tau * std::sqrt(x[0] / n) + std::sqrt(2.0 * tau * (1.0 - tau) * x[1] / n) +
         (1.0 - tau) * std::sqrt(x[2] / n);
}

}  // namespace

TEST_CASE("hw_map values and domain") {
  const SimplexPoint p = hw_map(0.3);
  CHECK(p[0] == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.42).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(0.49).epsilon(1e-15));
  const SimplexPoint mid = hw_map(0.5);
  CHECK(mid[0] == doctest::Approx(0.25));
  CHECK(mid[1] == doctest::Approx(0.5));
  const SimplexPoint one = hw_map(1.0);
  CHECK(one[0] == 1.0);
  CHECK(one[1] == 0.0);
  CHECK_THROWS_AS(hw_map(-0.01), ValidationError);
  CHECK_THROWS_AS(hw_map(1.01), ValidationError);
}

TEST_CASE("hw_restricted_mhde matches the reference table") {
  CHECK(hw_restricted_mhde(CountVector({1, 1, 1})) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(hw_restricted_mhde(CountVector({0, 3, 0})) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(hw_restricted_mhde(CountVector({3, 0, 0})) == 1.0);
  CHECK(hw_restricted_mhde(CountVector({2, 0, 1})) == 1.0);
  CHECK(hw_restricted_mhde(CountVector({1, 0, 2})) == 0.0);
  CHECK(hw_restricted_mhde(CountVector({0, 0, 3})) == 0.0);
  // Interior optima have closed forms from the stationarity condition.
  CHECK(hw_restricted_mhde(CountVector({2, 1, 0})) ==
        doctest::Approx(0.5 + std::sqrt(2.0) / 4.0).epsilon(1e-8));
  CHECK(hw_restricted_mhde(CountVector({1, 2, 0})) ==
        doctest::Approx((5.0 + std::sqrt(5.0)) / 10.0).epsilon(1e-8));
  CHECK(hw_restricted_mhde(CountVector({0, 2, 1})) ==
        doctest::Approx((5.0 - std::sqrt(5.0)) / 10.0).epsilon(1e-8));
  CHECK(hw_restricted_mhde(CountVector({0, 1, 2})) ==
        doctest::Approx(0.5 - std::sqrt(2.0) / 4.0).epsilon(1e-8));
  // Published table values, which carry ~5e-6 of optimizer slack.
  CHECK(hw_restricted_mhde(CountVector({2, 1, 0})) == doctest::Approx(0.8535517).epsilon(1e-4));
  CHECK(hw_restricted_mhde(CountVector({0, 2, 1})) == doctest::Approx(0.2763984).epsilon(1e-4));
}

TEST_CASE("hw_restricted_mhde plateau ties take the smaller tau") {
  CHECK(hw_restricted_mhde(CountVector({1, 0, 1})) == 0.0);
  CHECK(hw_restricted_mhde(CountVector({2, 0, 2})) == 0.0);
}

TEST_CASE("hw_restricted_mhde beats every fine-grid point") {
  RngStream rng({51, 0});
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<int> c(3, 0);
    for (int t = 0; t < 12; ++t) c[static_cast<int>(rng.next_double() * 3) % 3]++;
    const CountVector x(c);
    const double tau = hw_restricted_mhde(x);
    const double val = hw_objective(tau, x);
    for (int g = 0; g <= 1000; ++g)
      CHECK(val >= hw_objective(g / 1000.0, x) - 1e-9);
  }
}

TEST_CASE("hw_info_distance reference values and oracle agreement") {
  CHECK(hw_info_distance(0.3, 0.5) == doctest::Approx(0.581973).epsilon(1e-5));
  CHECK(std::abs(hw_info_distance(0.3, 1.0) - 2.803414) < 1e-6);
  CHECK(hw_info_distance(0.3, 0.3) == 0.0);
  CHECK(hw_info_distance(0.5, 0.3) == doctest::Approx(hw_info_distance(0.3, 0.5)));

  for (int g = 0; g <= 100; ++g) {
    const double tau = g / 100.0;
    CHECK(std::abs(hw_info_distance(0.3, tau) - hw_arc_closed_form(0.3, tau)) < 1e-8);
  }
}

TEST_CASE("hw_info_distance is additive along the curve") {
  const std::vector<double> taus{0.0, 0.12, 0.3, 0.55, 0.81, 1.0};
  for (std::size_t a = 0; a + 2 < taus.size(); ++a)
    for (std::size_t b = a + 1; b + 1 < taus.size(); ++b)
      for (std::size_t c = b + 1; c < taus.size(); ++c)
        CHECK(hw_info_distance(taus[a], taus[b]) + hw_info_distance(taus[b], taus[c]) ==
              doctest::Approx(hw_info_distance(taus[a], taus[c])).epsilon(1e-9));
}

TEST_CASE("restricted paths are never shorter than ambient geodesics") {
  RngStream rng({52, 0});
  for (int rep = 0; rep < 100; ++rep) {
    const double t0 = rng.next_double();
    const double t1 = rng.next_double();
    CHECK(hw_info_distance(t0, t1) >=
          info_distance_multinomial(hw_map(t0), hw_map(t1)) - 1e-10);
  }
}

TEST_CASE("hw_unrestricted_statistic values and ambient equality") {
  CHECK(hw_unrestricted_statistic(CountVector({2, 1, 0}), 0.3) ==
        doctest::Approx(1.806363).epsilon(1e-6));
  CHECK(hw_unrestricted_statistic(CountVector({0, 1, 2}), 0.3) ==
        doctest::Approx(0.662028).epsilon(1e-6));
  // Exact null fit: x/n == psi(0.5) with no rounding.
  CHECK(hw_unrestricted_statistic(CountVector({1, 2, 1}), 0.5) < 1e-6);

  RngStream rng({53, 0});
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<int> c(3, 0);
    for (int t = 0; t < 10; ++t) c[static_cast<int>(rng.next_double() * 3) % 3]++;
    const CountVector x(c);
    const double tau_bar = 0.05 + 0.9 * rng.next_double();
    CHECK(hw_unrestricted_statistic(x, tau_bar) ==
          doctest::Approx(info_distance_multinomial(empirical_distribution(x), hw_map(tau_bar)))
              .epsilon(1e-12));
  }
  CHECK_THROWS_AS(hw_unrestricted_statistic(CountVector({1, 1, 1}), 0.0), ValidationError);
}

TEST_CASE("spherical_map geometry") {
  const double tau2 = std::atan(std::sqrt(2.0));
  const SpherePoint bar = spherical_map(std::numbers::pi / 4.0, tau2);
  const SpherePoint expect = SphericalSubfamily::null_point();
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(bar[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  const SpherePoint axis = spherical_map(0.0, std::numbers::pi / 2.0);
  CHECK(axis[4] == doctest::Approx(std::sqrt(0.48)).epsilon(1e-12));
  CHECK(axis[5] == doctest::Approx(0.0));
  CHECK(std::abs(axis[6]) < 1e-15);

  RngStream rng({54, 0});
  for (int rep = 0; rep < 100; ++rep) {
    const SpherePoint p = spherical_map(rng.next_double() * std::numbers::pi / 2.0,
                                        rng.next_double() * std::numbers::pi / 2.0);
    double ss = 0.0;
    for (std::size_t i = 0; i < 7; ++i) ss += p[i] * p[i];
    CHECK(ss == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(spherical_map(-0.1, 1.0), ValidationError);
  CHECK_THROWS_AS(spherical_map(0.1, 2.0), ValidationError);
}

TEST_CASE("spherical_restricted_mle closed form") {
  const CountVector obs({3, 5, 4, 6, 9, 2, 1});
  const auto [t1, t2] = spherical_restricted_mle(obs);
  CHECK(t1 == doctest::Approx(0.4405107).epsilon(1e-6));
  CHECK(t2 == doctest::Approx(1.277954).epsilon(1e-6));
  CHECK(t1 == doctest::Approx(std::asin(std::sqrt(2.0 / 11.0))).epsilon(1e-14));
  CHECK(t2 == doctest::Approx(std::asin(std::sqrt(11.0 / 12.0))).epsilon(1e-14));

  const auto [s1, s2] = spherical_restricted_mle(CountVector({0, 0, 0, 0, 4, 4, 0}));
  CHECK(s1 == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));

  const auto [b1, b2] = spherical_restricted_mle(CountVector({1, 0, 0, 0, 0, 0, 2}));
  CHECK(b1 == 0.0);
  CHECK(b2 == 0.0);
  const auto [c1, c2] = spherical_restricted_mle(CountVector({0, 0, 0, 0, 0, 3, 1}));
  CHECK(c1 == doctest::Approx(std::numbers::pi / 2.0));
  CHECK(c2 == doctest::Approx(std::asin(std::sqrt(0.75))));
}

TEST_CASE("spherical_restricted_mle agrees with a zoomed grid search") {
  RngStream rng({55, 0});
  auto neg_loglik = [](const CountVector& x, double t1, double t2) {
    // Independent objective: minus log-likelihood of the tail categories.
    const double rho = std::sqrt(0.48);
    const double p5 = std::pow(rho * std::cos(t1) * std::sin(t2), 2);
    const double p6 = std::pow(rho * std::sin(t1) * std::sin(t2), 2);
    const double p7 = std::pow(rho * std::cos(t2), 2);
    double ll = 0.0;
    if (x[4] > 0) ll += x[4] * std::log(p5);
    if (x[5] > 0) ll += x[5] * std::log(p6);
    if (x[6] > 0) ll += x[6] * std::log(p7);
    return -ll;
  };
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<int> c(7, 0);
    c[0] = 1;
    for (int t = 0; t < 14; ++t) c[4 + static_cast<int>(rng.next_double() * 3) % 3]++;
    const CountVector x(c);
    const auto [t1, t2] = spherical_restricted_mle(x);
    // Four-level grid zoom reaches ~1e-7 resolution in each coordinate.
    double lo1 = 0.0, hi1 = std::numbers::pi / 2.0, lo2 = lo1, hi2 = hi1;
    double g1 = 0.0, g2 = 0.0;
    for (int level = 0; level < 4; ++level) {
      double best = std::numeric_limits<double>::infinity();
      const int steps = 100;
      for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
          const double a = lo1 + (hi1 - lo1) * i / steps;
          const double b = lo2 + (hi2 - lo2) * j / steps;
          const double v = neg_loglik(x, a, b);
          if (v < best) {
            best = v;
            g1 = a;
            g2 = b;
          }
        }
      }
      const double w1 = (hi1 - lo1) / steps, w2 = (hi2 - lo2) / steps;
      lo1 = std::max(0.0, g1 - w1);
      hi1 = std::min(std::numbers::pi / 2.0, g1 + w1);
      lo2 = std::max(0.0, g2 - w2);
      hi2 = std::min(std::numbers::pi / 2.0, g2 + w2);
    }
    CHECK(std::abs(t1 - g1) < 1e-6);
    CHECK(std::abs(t2 - g2) < 1e-6);
  }
}

TEST_CASE("spherical restricted likelihood ratio test") {
  const CountVector obs({3, 5, 4, 6, 9, 2, 1});
  const SpherePoint bar = SphericalSubfamily::null_point();
  const double lrt = spherical_restricted_lrt(obs, bar);
  CHECK(lrt == doctest::Approx(9.051566).epsilon(1e-6));
  CHECK(std::abs(lrt - (36.0 * std::log(3.0) - 44.0 * std::log(2.0))) < 1e-12);
  CHECK(std::abs(chi2_survival(2, lrt) - 0.01082623) < 1e-7);

  // Counts matching the null's tail proportions fit perfectly.
  CHECK(spherical_restricted_lrt(CountVector({1, 1, 1, 1, 2, 2, 2}), bar) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("submanifold interface samples inside the domain box") {
  const HardyWeinberg hw;
  const SphericalSubfamily sph;
  CHECK(hw.param_dim() == 1);
  CHECK(sph.param_dim() == 2);
  CHECK(hw.categories() == 3);
  CHECK(sph.categories() == 7);

  const auto hw_pts = hw.sample(20, {77, 0});
  CHECK(hw_pts.size() == 20);
  for (const auto& p : hw_pts) CHECK(p.size() == 3);
  const auto sph_pts = sph.sample(20, {77, 1});
  for (const auto& p : sph_pts) CHECK(p.size() == 7);

  const auto est = hw.restricted_estimate(CountVector({1, 1, 1}));
  REQUIRE(est.has_value());
  CHECK((*est)[0] == doctest::Approx(0.5).epsilon(1e-8));
  const auto est2 = sph.restricted_estimate(CountVector({3, 5, 4, 6, 9, 2, 1}));
  REQUIRE(est2.has_value());
  CHECK((*est2)[0] == doctest::Approx(0.4405107).epsilon(1e-6));
}
