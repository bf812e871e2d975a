#pragma once

#include <cstddef>
#include <vector>

#include "infogeo/errors.hpp"

namespace infogeo {

// Shared tolerance for the simplex/sphere membership invariants.
inline constexpr double kSimplexTol = 1e-12;

/// Probability vector over k+1 categories (a point on the k-dimensional
/// unit simplex). Entries lie in [0,1] and sum to 1 within kSimplexTol.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }  // k+1 categories
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  /// True when every entry is strictly positive.
  bool interior() const;

 private:
  std::vector<double> probs_;
};

/// Square-root representation of a probability vector: a unit vector with
/// nonnegative entries (the portion of the unit sphere in the nonnegative
/// orthant).
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);

  static SpherePoint from_simplex(const SimplexPoint& p);
  SimplexPoint to_simplex() const;

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

/// Observed multinomial counts. The trial count n is the sum of the entries,
/// so the sum invariant holds by construction.
class CountVector {
 public:
  explicit CountVector(std::vector<int> counts);

  std::size_t size() const { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }
  const std::vector<int>& counts() const { return counts_; }
  int n() const { return n_; }

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

}  // namespace infogeo
