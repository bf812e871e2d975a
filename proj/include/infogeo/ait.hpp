#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "infogeo/embedding.hpp"
#include "infogeo/exact_test.hpp"
#include "infogeo/rng.hpp"
#include "infogeo/types.hpp"

namespace infogeo {

enum class GraphRule { Knn, Epsilon };

struct FitParams {
  GraphRule rule = GraphRule::Knn;
  double graph_value = 5.0;  // K for Knn, epsilon for Epsilon
  int dim = 1;               // embedding dimension r
  // Out-of-sample defaults track dim: ell = 2 with the law of cosines when
  // dim == 1, ell = dim + 1 with the centroid otherwise.
  std::optional<int> ell;
  std::optional<OosMode> oos_mode;
  int max_iter = 500;
  double tol = 1e-9;
};

/// A learned Euclidean picture of a sampled family of distributions.
/// distributions[0] is the null; config row 0 is its embedded location.
struct EmbeddedSubmanifold {
  std::vector<SimplexPoint> distributions;
  Eigen::MatrixXd sqrt_probs;  // row i = sqrt(distributions[i]), cached for distance queries
  Eigen::MatrixXd geodesics;   // shortest-path dissimilarities the embedding was fit to
  Configuration config;
  int null_index = 0;
  GraphRule graph_rule = GraphRule::Knn;
  double graph_value = 0.0;
  int effective_k = 0;
  int dim = 1;
  int ell = 2;
  OosMode oos_mode = OosMode::LawOfCosines1D;
};

struct AitResult {
  double statistic = 0.0;
  double p_value = 0.0;
  int replicates = 0;
  int exceed_count = 0;
  RngSeed seed;
  bool add_one = false;  // p-value convention: plain fraction by default
};

/// Pairwise Hellinger distances -> neighborhood graph -> shortest paths ->
/// raw-stress embedding. Deterministic given its inputs. The null must be
/// first; requires at least dim + 1 points in total.
EmbeddedSubmanifold fit_submanifold(std::vector<SimplexPoint> dists, const FitParams& params);

/// || y - z_bar ||: Hellinger distances from the density estimate to the m
/// sampled distributions (the null is not a landmark candidate), out-of-sample
/// embedding from the ell nearest, then Euclidean distance to the embedded null.
double ait_statistic(const EmbeddedSubmanifold& sub, const SimplexPoint& density);
double ait_statistic(const EmbeddedSubmanifold& sub, const CountVector& x);

/// Monte Carlo significance: B samples of size x.n() from the null, each
/// reduced to its statistic; p = #(replicate >= observed) / B (ties count as
/// exceedances; the add-one variant uses (count+1)/(B+1)). Replicate b draws
/// from stream seed.stream_id + b, so results are independent of threading.
AitResult mc_significance(const EmbeddedSubmanifold& sub, const CountVector& x, int B,
                          RngSeed seed, bool add_one = false);

struct EnumeratedAitTest {
  OutcomeTable table;
  RandomizedTest test;
};

/// Evaluate the statistic on every outcome of the n-trial experiment and
/// build the exact size-alpha randomized test, enabling exact power curves.
/// Guarded by outcome_cap; alpha <= 0 yields the never-rejecting test.
EnumeratedAitTest randomized_ait_test(const EmbeddedSubmanifold& sub, double alpha, int n,
                                      long long outcome_cap = 1'000'000);

}  // namespace infogeo
