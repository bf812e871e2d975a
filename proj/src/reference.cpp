#include "infogeo/reference.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "infogeo/manifold.hpp"
#include "infogeo/stats.hpp"

namespace infogeo::reference {

DissimilarityMatrix pairwise_hellinger(std::span<const SimplexPoint> dists) {
  const int count = static_cast<int>(dists.size());
  if (count < 2) throw ValidationError("pairwise_hellinger: need at least 2 distributions");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(count, count);
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) h(i, j) = hellinger_distance(dists[i], dists[j]);
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) h(j, i) = h(i, j);
  return DissimilarityMatrix(std::move(h));
}

DissimilarityMatrix shortest_paths_dijkstra(const NeighborhoodGraph& g) {
  const int n = g.vertex_count;
  const auto adj = g.adjacency();
  constexpr double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, inf);
  for (int s = 0; s < n; ++s) {
    std::vector<double> row(n, inf);
    row[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
    frontier.push({0.0, s});
    while (!frontier.empty()) {
      const auto [dv, v] = frontier.top();
      frontier.pop();
      if (dv > row[v]) continue;
      for (const auto& [w, weight] : adj[v]) {
        const double cand = dv + weight;
        if (cand < row[w]) {
          row[w] = cand;
          frontier.push({cand, w});
        }
      }
    }
    for (int j = 0; j < n; ++j) dist(s, j) = row[j];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(dist(i, j)))
        throw NumericalError("shortest_paths_dijkstra: graph is not connected");
      dist(j, i) = dist(i, j);
    }
    dist(i, i) = 0.0;
  }
  return DissimilarityMatrix(std::move(dist));
}

DissimilarityMatrix shortest_paths_floyd_warshall(const NeighborhoodGraph& g) {
  const int n = g.vertex_count;
  constexpr double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, inf);
  for (int i = 0; i < n; ++i) dist(i, i) = 0.0;
  for (const GraphEdge& e : g.edges) {
    dist(e.i, e.j) = std::min(dist(e.i, e.j), e.weight);
    dist(e.j, e.i) = dist(e.i, e.j);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dist(i, k) + dist(k, j) < dist(i, j)) dist(i, j) = dist(i, k) + dist(k, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(dist(i, j)))
        throw NumericalError("shortest_paths_floyd_warshall: graph is not connected");
      dist(j, i) = dist(i, j);
    }
  return DissimilarityMatrix(std::move(dist));
}

OutcomeTable make_outcome_table(int n, int k_plus_1, const SimplexPoint& null_dist,
                                const std::function<double(const CountVector&)>& statistic) {
  OutcomeTable table;
  table.outcomes = enumerate_outcomes(n, k_plus_1);
  const int count = static_cast<int>(table.outcomes.size());
  table.null_probs.resize(count);
  table.statistics.resize(count);
  for (int i = 0; i < count; ++i) {
    table.null_probs[i] = std::exp(multinomial_log_pmf(null_dist, table.outcomes[i]));
    table.statistics[i] = statistic(table.outcomes[i]);
  }
  return table;
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
  int exceed = 0;
  for (int b = 0; b < B; ++b) {
    const RngSeed replicate_seed{seed.master_seed, seed.stream_id + static_cast<std::uint64_t>(b)};
    const CountVector xb = multinomial_sample(null_dist, x.n(), replicate_seed);
    if (ait_statistic(sub, xb) >= result.statistic) ++exceed;
  }
  result.exceed_count = exceed;
  result.p_value = add_one ? (exceed + 1.0) / (B + 1.0) : static_cast<double>(exceed) / B;
  return result;
}

}  // namespace infogeo::reference
