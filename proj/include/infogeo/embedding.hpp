#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "infogeo/types.hpp"

namespace infogeo {

/// Symmetric nonnegative matrix with zero diagonal and finite entries.
class DissimilarityMatrix {
 public:
  explicit DissimilarityMatrix(Eigen::MatrixXd values);

  int size() const { return static_cast<int>(values_.rows()); }
  double operator()(int i, int j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

struct GraphEdge {
  int i;
  int j;
  double weight;
};

/// Undirected weighted graph over the input points. For KNN graphs,
/// effective_k records the K that actually produced a connected graph
/// (>= the requested K when auto-repair kicked in); 0 for epsilon graphs.
struct NeighborhoodGraph {
  int vertex_count = 0;
  std::vector<GraphEdge> edges;
  int requested_k = 0;
  int effective_k = 0;
  double epsilon = 0.0;

  std::vector<std::vector<std::pair<int, double>>> adjacency() const;
};

/// Embedding coordinates (one row per input point) with the final raw
/// stress and the per-iteration stress trace of the majorization run.
struct Configuration {
  Eigen::MatrixXd points;  // (m+1) x dim
  int dim = 0;
  double stress = 0.0;
  int iterations = 0;
  std::vector<double> stress_history;
};

enum class OosMode { LawOfCosines1D, Centroid };

/// Matrix of pairwise Hellinger distances; rows evaluated in parallel.
DissimilarityMatrix pairwise_hellinger(std::span<const SimplexPoint> dists);

/// Symmetric ("or"-rule) K-nearest-neighbor graph. If the graph is
/// disconnected, K is incremented until it connects; the caller reads
/// effective_k to see what was used.
NeighborhoodGraph build_knn_graph(const DissimilarityMatrix& d, int k);

/// Edge (i,j) iff d(i,j) <= epsilon. No auto-repair: a disconnected result
/// raises DisconnectedGraphError naming the components.
NeighborhoodGraph build_epsilon_graph(const DissimilarityMatrix& d, double epsilon);

/// All-pairs shortest path distances, Dijkstra from each vertex (sources in
/// parallel). Output is exactly symmetric with zero diagonal.
DissimilarityMatrix shortest_paths(const NeighborhoodGraph& g);

/// Minimize the raw stress sum_{i<j} w_ij (||z_i - z_j|| - delta_ij)^2 over
/// configurations Z in R^(N x r) by majorization, started from classical
/// scaling. Weights default to all ones. Stress is nonincreasing across
/// iterations; stops on relative stress decrease < tol or at max_iter.
Configuration embed_raw_stress(const DissimilarityMatrix& delta, int r,
                               const std::optional<Eigen::MatrixXd>& weights = std::nullopt,
                               int max_iter = 500, double tol = 1e-9);

/// Place a new point into an existing configuration from its distances to
/// embedded landmarks. `landmarks` pairs (configuration row index, distance),
/// nearest first; the first `ell` entries are used.
///   LawOfCosines1D (dim 1, ell 2): project onto the landmark line through
///     z1, z2 at signed offset (a^2 + s^2 - b^2) / (2 s) from z1.
///   Centroid: mean of the ell landmark rows.
Eigen::VectorXd embed_out_of_sample(const Configuration& config,
                                    std::span<const std::pair<int, double>> landmarks,
                                    int ell, OosMode mode);

}  // namespace infogeo
