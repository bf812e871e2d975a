#include "infogeo/manifold.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "infogeo/numeric.hpp"

namespace infogeo {

SimplexPoint::SimplexPoint(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("SimplexPoint: empty probability vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("SimplexPoint: entry outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    throw ValidationError("SimplexPoint: entries sum to " + std::to_string(sum) +
                          ", not 1");
}

bool SimplexPoint::interior() const {
  for (double p : probs_)
    if (p <= 0.0) return false;
  return true;
}

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ValidationError("SpherePoint: empty coordinate vector");
  double ss = 0.0;
  for (double c : coords_) {
    if (!(c >= 0.0)) throw ValidationError("SpherePoint: negative coordinate");
    ss += c * c;
  }
  if (std::abs(std::sqrt(ss) - 1.0) > kSimplexTol)
    throw ValidationError("SpherePoint: norm is " + std::to_string(std::sqrt(ss)) +
                          ", not 1");
}

SpherePoint SpherePoint::from_simplex(const SimplexPoint& p) {
  std::vector<double> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = std::sqrt(p[i]);
  return SpherePoint(std::move(c));
}

SimplexPoint SpherePoint::to_simplex() const {
  std::vector<double> p(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) p[i] = coords_[i] * coords_[i];
  return SimplexPoint(std::move(p));
}

CountVector::CountVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw ValidationError("CountVector: empty counts");
  long long sum = 0;
  for (int c : counts_) {
    if (c < 0) throw ValidationError("CountVector: negative count");
    sum += c;
  }
  if (sum > std::numeric_limits<int>::max())
    throw ValidationError("CountVector: trial count overflows int");
  n_ = static_cast<int>(sum);
}

namespace {

void require_same_dim(const SimplexPoint& p, const SimplexPoint& q, const char* where) {
  if (p.size() != q.size())
    throw ValidationError(std::string(where) + ": dimension mismatch");
}

double sqrt_inner_product(const SimplexPoint& p, const SimplexPoint& q) {
  double ip = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) ip += std::sqrt(p[i]) * std::sqrt(q[i]);
  return ip;
}

double squared_hellinger(const SimplexPoint& p, const SimplexPoint& q) {
  double ss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    ss += d * d;
  }
  return 4.0 * ss;
}

}  // namespace

double hellinger_distance(const SimplexPoint& p, const SimplexPoint& q) {
  require_same_dim(p, q, "hellinger_distance");
  return std::sqrt(squared_hellinger(p, q));
}

double info_distance_multinomial(const SimplexPoint& p, const SimplexPoint& q) {
  require_same_dim(p, q, "info_distance_multinomial");
  return 2.0 * std::acos(clamp_to_unit(sqrt_inner_product(p, q)));
}

SimplexPoint empirical_distribution(const CountVector& x) {
  if (x.n() < 1) throw ValidationError("empirical_distribution: n must be >= 1");
  std::vector<double> p(x.size());
  const double n = x.n();
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] / n;
  return SimplexPoint(std::move(p));
}

Eigen::MatrixXd fisher_information(const SimplexPoint& theta) {
  const int k = static_cast<int>(theta.size()) - 1;
  if (k < 1) throw ValidationError("fisher_information: need at least 2 categories");
  if (!theta.interior())
    throw NumericalError("fisher_information: singular at the simplex boundary");
  Eigen::MatrixXd info(k, k);
  const double last = 1.0 / theta[k];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      info(i, j) = (i == j ? 1.0 / theta[i] : 0.0) + last;
  return info;
}

double wald_statistic(const CountVector& x, const SimplexPoint& theta0) {
  if (x.size() != theta0.size()) throw ValidationError("wald_statistic: dimension mismatch");
  if (x.n() < 1) throw ValidationError("wald_statistic: n must be >= 1");
  const Eigen::MatrixXd info = fisher_information(theta0);
  const int k = static_cast<int>(info.rows());
  Eigen::VectorXd d(k);
  const double n = x.n();
  for (int i = 0; i < k; ++i) d(i) = x[i] / n - theta0[i];
  return n * d.dot(info * d);
}

double hd_statistic(const CountVector& x, const SimplexPoint& theta0) {
  return squared_hellinger(empirical_distribution(x), theta0);
}

double likelihood_ratio_statistic(const CountVector& x, const SimplexPoint& theta0) {
  if (x.size() != theta0.size())
    throw ValidationError("likelihood_ratio_statistic: dimension mismatch");
  if (x.n() < 1) throw ValidationError("likelihood_ratio_statistic: n must be >= 1");
  const double n = x.n();
  double g2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    if (theta0[j] <= 0.0) return std::numeric_limits<double>::infinity();
    g2 += x[j] * std::log(x[j] / (n * theta0[j]));
  }
  return 2.0 * g2;
}

double pearson_statistic(const CountVector& x, const SimplexPoint& theta0) {
  if (x.size() != theta0.size())
    throw ValidationError("pearson_statistic: dimension mismatch");
  if (x.n() < 1) throw ValidationError("pearson_statistic: n must be >= 1");
  const double n = x.n();
  double x2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double e = n * theta0[j];
    if (e <= 0.0)
      throw NumericalError("pearson_statistic: zero expected count in category " +
                           std::to_string(j));
    const double d = x[j] - e;
    x2 += d * d / e;
  }
  return x2;
}

}  // namespace infogeo
