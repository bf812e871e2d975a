#include "infogeo/embedding.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "infogeo/manifold.hpp"

namespace infogeo {

DissimilarityMatrix::DissimilarityMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  const auto rows = values_.rows();
  if (rows < 1 || values_.cols() != rows)
    throw ValidationError("DissimilarityMatrix: square matrix required");
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (values_(i, i) != 0.0)
      throw ValidationError("DissimilarityMatrix: nonzero diagonal");
    for (Eigen::Index j = i + 1; j < rows; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw ValidationError("DissimilarityMatrix: entries must be finite and nonnegative");
      if (std::abs(v - values_(j, i)) > 1e-12)
        throw ValidationError("DissimilarityMatrix: matrix not symmetric");
    }
  }
}

std::vector<std::vector<std::pair<int, double>>> NeighborhoodGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, double>>> adj(vertex_count);
  for (const GraphEdge& e : edges) {
    adj[e.i].push_back({e.j, e.weight});
    adj[e.j].push_back({e.i, e.weight});
  }
  return adj;
}

DissimilarityMatrix pairwise_hellinger(std::span<const SimplexPoint> dists) {
  const int count = static_cast<int>(dists.size());
  if (count < 2) throw ValidationError("pairwise_hellinger: need at least 2 distributions");
  const std::size_t dim = dists[0].size();
  for (const SimplexPoint& p : dists)
    if (p.size() != dim) throw ValidationError("pairwise_hellinger: dimension mismatch");

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(count, count);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) h(i, j) = hellinger_distance(dists[i], dists[j]);
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) h(j, i) = h(i, j);
  return DissimilarityMatrix(std::move(h));
}

namespace {

std::vector<std::vector<int>> connected_components(int n, const std::vector<GraphEdge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const GraphEdge& e : edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    components.emplace_back();
    std::vector<int> stack{s};
    label[s] = static_cast<int>(components.size()) - 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      components.back().push_back(v);
      for (int w : adj[v]) {
        if (label[w] < 0) {
          label[w] = label[v];
          stack.push_back(w);
        }
      }
    }
    std::sort(components.back().begin(), components.back().end());
  }
  return components;
}

std::vector<GraphEdge> knn_edges(const DissimilarityMatrix& d, int k) {
  const int n = d.size();
  std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    // Neighbors ranked by (distance, index) so ties resolve deterministically.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (a == i) return false;
      if (b == i) return true;
      if (d(i, a) != d(i, b)) return d(i, a) < d(i, b);
      return a < b;
    });
    for (int r = 0; r < k && r < n - 1; ++r) {
      const int j = order[r];
      linked[std::min(i, j)][std::max(i, j)] = true;
    }
  }
  std::vector<GraphEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (linked[i][j]) edges.push_back({i, j, d(i, j)});
  return edges;
}

}  // namespace

NeighborhoodGraph build_knn_graph(const DissimilarityMatrix& d, int k) {
  const int n = d.size();
  if (k < 1) throw ValidationError("build_knn_graph: K must be >= 1");
  if (n < 2) throw ValidationError("build_knn_graph: need at least 2 vertices");
  const int requested = std::min(k, n - 1);
  for (int kk = requested; kk <= n - 1; ++kk) {
    std::vector<GraphEdge> edges = knn_edges(d, kk);
    if (connected_components(n, edges).size() == 1) {
      NeighborhoodGraph g;
      g.vertex_count = n;
      g.edges = std::move(edges);
      g.requested_k = k;
      g.effective_k = kk;
      return g;
    }
  }
  // K = n-1 yields the complete graph, which is connected.
  throw NumericalError("build_knn_graph: unreachable");
}

NeighborhoodGraph build_epsilon_graph(const DissimilarityMatrix& d, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("build_epsilon_graph: epsilon must be > 0");
  const int n = d.size();
  NeighborhoodGraph g;
  g.vertex_count = n;
  g.epsilon = epsilon;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d(i, j) <= epsilon) g.edges.push_back({i, j, d(i, j)});
  const auto components = connected_components(n, g.edges);
  if (components.size() > 1) {
    std::ostringstream msg;
    msg << "build_epsilon_graph: graph with epsilon=" << epsilon << " splits into "
        << components.size() << " components:";
    for (const auto& comp : components) {
      msg << " {";
      for (std::size_t t = 0; t < comp.size(); ++t) msg << (t ? "," : "") << comp[t];
      msg << "}";
    }
    throw DisconnectedGraphError(msg.str(), components);
  }
  return g;
}

DissimilarityMatrix shortest_paths(const NeighborhoodGraph& g) {
  const int n = g.vertex_count;
  if (n < 1) throw ValidationError("shortest_paths: empty graph");
  const auto adj = g.adjacency();
  constexpr double inf = std::numeric_limits<double>::infinity();
  using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMatrixXd dist = RowMatrixXd::Constant(n, n, inf);

#pragma omp parallel
  {
    std::vector<double> row(n);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
#pragma omp for schedule(dynamic)
    for (int s = 0; s < n; ++s) {
      std::fill(row.begin(), row.end(), inf);
      row[s] = 0.0;
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
  }

  // Exact symmetry: keep the lower-source row of each pair.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(dist(i, j)))
        throw DisconnectedGraphError("shortest_paths: graph is not connected",
                                     connected_components(n, g.edges));
      dist(j, i) = dist(i, j);
    }
    dist(i, i) = 0.0;
  }
  return DissimilarityMatrix(Eigen::MatrixXd(dist));
}

namespace {

// Hot loops write one logical row per thread; row-major storage keeps those
// writes in disjoint cache lines.
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// sqrt(max(eigenvalue, 0)) coordinates from double-centered squared
// dissimilarities: the classical-scaling warm start.
Eigen::MatrixXd classical_scaling(const Eigen::MatrixXd& delta, int r) {
  const Eigen::Index n = delta.rows();
  Eigen::MatrixXd b = -0.5 * delta.cwiseProduct(delta);
  const Eigen::VectorXd row_mean = b.rowwise().mean();
  const double total_mean = b.mean();
  b.colwise() -= row_mean;
  b.rowwise() -= row_mean.transpose();
  b.array() += total_mean;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, r);
  for (int c = 0; c < r; ++c) {
    const Eigen::Index src = n - 1 - c;  // eigenvalues ascend in Eigen
    if (src < 0) break;
    const double lambda = solver.eigenvalues()(src);
    if (lambda > 0.0) coords.col(c) = solver.eigenvectors().col(src) * std::sqrt(lambda);
  }
  return coords;
}

RowMatrixXd config_distances(const RowMatrixXd& z) {
  const int n = static_cast<int>(z.rows());
  RowMatrixXd d = RowMatrixXd::Zero(n, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = (z.row(i) - z.row(j)).norm();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(j, i) = d(i, j);
  return d;
}

double raw_stress(const RowMatrixXd& dz, const RowMatrixXd& delta,
                  const RowMatrixXd& w) {
  const int n = static_cast<int>(dz.rows());
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double r = dz(i, j) - delta(i, j);
      acc += w(i, j) * r * r;
    }
    partial[i] = acc;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += partial[i];
  return total;
}

}  // namespace

Configuration embed_raw_stress(const DissimilarityMatrix& delta_in, int r,
                               const std::optional<Eigen::MatrixXd>& weights, int max_iter,
                               double tol) {
  const int n = delta_in.size();
  if (r < 1) throw ValidationError("embed_raw_stress: r must be >= 1");
  if (n < 2) throw ValidationError("embed_raw_stress: need at least 2 points");
  const Eigen::MatrixXd& delta = delta_in.values();
  if (delta.maxCoeff() <= 0.0)
    throw NumericalError("embed_raw_stress: all dissimilarities are zero");

  const bool unit_weights = !weights.has_value();
  RowMatrixXd w;
  Eigen::MatrixXd v_pinv;
  if (unit_weights) {
    w = RowMatrixXd::Ones(n, n);
    w.diagonal().setZero();
  } else {
    w = *weights;
    if (w.rows() != n || w.cols() != n)
      throw ValidationError("embed_raw_stress: weight matrix size mismatch");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!(w(i, j) >= 0.0) || std::abs(w(i, j) - w(j, i)) > 1e-12)
          throw ValidationError("embed_raw_stress: weights must be symmetric nonnegative");
      }
    }
    w.diagonal().setZero();
    // Moore-Penrose inverse of the weight Laplacian via the rank-one shift.
    Eigen::MatrixXd v = Eigen::MatrixXd(w.colwise().sum().asDiagonal()) - w;
    const Eigen::MatrixXd shift = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    v_pinv = (v + shift).inverse() - shift;
  }

  const RowMatrixXd delta_rows = delta;
  RowMatrixXd z = classical_scaling(delta, r);
  RowMatrixXd dz = config_distances(z);

  Configuration config;
  config.dim = r;
  double stress = raw_stress(dz, delta_rows, w);
  config.stress_history.push_back(stress);

  RowMatrixXd bz(n, r);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Guttman transform: row i of B(Z) Z, accumulated in a fixed j order so
    // the result does not depend on the thread count. The accumulator lives
    // per thread, outside the row loop, to keep allocations off the hot path.
#pragma omp parallel
    {
      Eigen::RowVectorXd acc(r);
#pragma omp for schedule(static)
      for (int i = 0; i < n; ++i) {
        acc.setZero();
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const double dij = dz(i, j);
          if (dij <= 0.0) continue;
          acc += (w(i, j) * delta_rows(i, j) / dij) * (z.row(i) - z.row(j));
        }
        bz.row(i) = acc;
      }
    }
    if (unit_weights) {
      z = bz / static_cast<double>(n);
    } else {
      z = v_pinv * bz;
    }
    dz = config_distances(z);
    const double next = raw_stress(dz, delta_rows, w);
    config.stress_history.push_back(next);
    config.iterations = iter + 1;
    const double decrease = stress - next;
    stress = next;
    if (next <= 1e-30) break;
    if (decrease < tol * std::max(stress, 1e-300)) break;
  }
  config.points = z;
  config.stress = stress;
  return config;
}

Eigen::VectorXd embed_out_of_sample(const Configuration& config,
                                    std::span<const std::pair<int, double>> landmarks,
                                    int ell, OosMode mode) {
  if (ell < 1) throw ValidationError("embed_out_of_sample: ell must be >= 1");
  if (static_cast<int>(landmarks.size()) < ell)
    throw ValidationError("embed_out_of_sample: fewer landmarks than ell");
  for (const auto& [idx, dist] : landmarks) {
    if (idx < 0 || idx >= config.points.rows())
      throw ValidationError("embed_out_of_sample: landmark index out of range");
    if (!(dist >= 0.0)) throw ValidationError("embed_out_of_sample: negative distance");
  }

  if (mode == OosMode::LawOfCosines1D) {
    if (config.dim != 1 || ell != 2)
      throw ValidationError("embed_out_of_sample: law of cosines requires dim 1 and ell 2");
    const double z1 = config.points(landmarks[0].first, 0);
    const double z2 = config.points(landmarks[1].first, 0);
    const double a = landmarks[0].second;
    const double b = landmarks[1].second;
    Eigen::VectorXd y(1);
    if (a == 0.0) {
      y(0) = z1;
      return y;
    }
    const double s = std::abs(z2 - z1);
    if (s == 0.0) {
      y(0) = z1;  // coincident landmarks: no direction to project along
      return y;
    }
    const double offset = (a * a + s * s - b * b) / (2.0 * s);
    y(0) = z1 + offset * (z2 > z1 ? 1.0 : -1.0);
    return y;
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(config.dim);
  for (int t = 0; t < ell; ++t) y += config.points.row(landmarks[t].first);
  return y / static_cast<double>(ell);
}

}  // namespace infogeo
