#include "infogeo/ait.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "infogeo/manifold.hpp"
#include "infogeo/stats.hpp"

namespace infogeo {

namespace {

Eigen::MatrixXd sqrt_rows(const std::vector<SimplexPoint>& dists) {
  const int count = static_cast<int>(dists.size());
  const int dim = static_cast<int>(dists[0].size());
  Eigen::MatrixXd s(count, dim);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < dim; ++j) s(i, j) = std::sqrt(dists[i][j]);
  return s;
}

}  // namespace

EmbeddedSubmanifold fit_submanifold(std::vector<SimplexPoint> dists, const FitParams& params) {
  const int count = static_cast<int>(dists.size());
  if (count < 2) throw ValidationError("fit_submanifold: need the null plus at least one sample");
  if (params.dim < 1) throw ValidationError("fit_submanifold: dim must be >= 1");
  if (count - 1 < params.dim)
    throw ValidationError("fit_submanifold: need at least dim sampled distributions");

  EmbeddedSubmanifold sub;
  sub.graph_rule = params.rule;
  sub.graph_value = params.graph_value;
  sub.dim = params.dim;
  sub.oos_mode = params.oos_mode.value_or(params.dim == 1 ? OosMode::LawOfCosines1D
                                                          : OosMode::Centroid);
  sub.ell = params.ell.value_or(sub.oos_mode == OosMode::LawOfCosines1D ? 2 : params.dim + 1);
  if (sub.ell > count - 1)
    throw ValidationError("fit_submanifold: ell exceeds the number of sampled distributions");

  const DissimilarityMatrix h = pairwise_hellinger(dists);
  NeighborhoodGraph graph;
  if (params.rule == GraphRule::Knn) {
    graph = build_knn_graph(h, static_cast<int>(params.graph_value));
    sub.effective_k = graph.effective_k;
  } else {
    graph = build_epsilon_graph(h, params.graph_value);
  }
  const DissimilarityMatrix delta = shortest_paths(graph);
  sub.config = embed_raw_stress(delta, params.dim, std::nullopt, params.max_iter, params.tol);
  sub.geodesics = delta.values();
  sub.sqrt_probs = sqrt_rows(dists);
  sub.distributions = std::move(dists);
  return sub;
}

double ait_statistic(const EmbeddedSubmanifold& sub, const SimplexPoint& density) {
  const int dim = static_cast<int>(sub.sqrt_probs.cols());
  if (static_cast<int>(density.size()) != dim)
    throw ValidationError("ait_statistic: dimension mismatch");
  const int m = static_cast<int>(sub.distributions.size()) - 1;

  Eigen::VectorXd sq(dim);
  for (int j = 0; j < dim; ++j) sq(j) = std::sqrt(density[j]);

  // Hellinger distances to the sampled distributions only; the null is the
  // reference point of the test, not a landmark candidate.
  std::vector<std::pair<int, double>> candidates(m);
  for (int i = 1; i <= m; ++i)
    candidates[i - 1] = {i, 2.0 * (sq.transpose() - sub.sqrt_probs.row(i)).norm()};
  std::partial_sort(candidates.begin(), candidates.begin() + sub.ell, candidates.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second < b.second;
                      return a.first < b.first;
                    });
  const Eigen::VectorXd y =
      embed_out_of_sample(sub.config, std::span(candidates).first(sub.ell), sub.ell,
                          sub.oos_mode);
  return (y - sub.config.points.row(sub.null_index).transpose()).norm();
}

double ait_statistic(const EmbeddedSubmanifold& sub, const CountVector& x) {
  return ait_statistic(sub, empirical_distribution(x));
}

AitResult mc_significance(const EmbeddedSubmanifold& sub, const CountVector& x, int B,
                          RngSeed seed, bool add_one) {
  if (B < 1) throw ValidationError("mc_significance: B must be >= 1");
  AitResult result;
  result.statistic = ait_statistic(sub, x);
  result.replicates = B;
  result.seed = seed;
  result.add_one = add_one;

  const SimplexPoint& null_dist = sub.distributions[sub.null_index];
  const int n = x.n();
  const double observed = result.statistic;
  int exceed = 0;
#pragma omp parallel for schedule(static) reduction(+ : exceed)
  for (int b = 0; b < B; ++b) {
    const RngSeed replicate_seed{seed.master_seed, seed.stream_id + static_cast<std::uint64_t>(b)};
    const CountVector xb = multinomial_sample(null_dist, n, replicate_seed);
    if (ait_statistic(sub, xb) >= observed) ++exceed;
  }
  result.exceed_count = exceed;
  result.p_value = add_one ? (exceed + 1.0) / (B + 1.0) : static_cast<double>(exceed) / B;
  return result;
}

EnumeratedAitTest randomized_ait_test(const EmbeddedSubmanifold& sub, double alpha, int n,
                                      long long outcome_cap) {
  const int k1 = static_cast<int>(sub.distributions[sub.null_index].size());
  outcome_count(n, k1, outcome_cap);

  EnumeratedAitTest out;
  out.table = make_outcome_table(n, k1, sub.distributions[sub.null_index],
                                 [&](const CountVector& x) { return ait_statistic(sub, x); });
  if (alpha <= 0.0) {
    out.test = RandomizedTest{};  // never rejects
    return out;
  }
  out.test = build_exact_test(out.table, alpha);
  return out;
}

}  // namespace infogeo
