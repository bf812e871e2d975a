#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "infogeo/embedding.hpp"
#include "infogeo/manifold.hpp"
#include "infogeo/rng.hpp"
#include "infogeo/submanifold.hpp"

using namespace infogeo;

namespace {

double hw_arc_closed_form(double t0, double t1) {
  return 2.0 * std::sqrt(2.0) * std::abs(std::asin(std::sqrt(t1)) - std::asin(std::sqrt(t0)));
}

std::vector<SimplexPoint> random_simplices(RngStream& rng, int count, int dim) {
  std::vector<SimplexPoint> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> v(dim);
    double sum = 0.0;
    for (int j = 0; j < dim; ++j) {
      v[j] = 0.05 + rng.next_double();
      sum += v[j];
    }
    for (double& x : v) x /= sum;
    out.emplace_back(std::move(v));
  }
  return out;
}

DissimilarityMatrix line_dissimilarity(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = std::abs(xs[i] - xs[j]);
  return DissimilarityMatrix(std::move(d));
}

}  // namespace

TEST_CASE("dissimilarity matrix validation") {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
  CHECK_THROWS_AS(DissimilarityMatrix{ones}, ValidationError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  asym(1, 0) = 2.0;
  CHECK_THROWS_AS(DissimilarityMatrix{asym}, ValidationError);
  Eigen::MatrixXd neg = Eigen::MatrixXd::Zero(2, 2);
  neg(0, 1) = neg(1, 0) = -0.5;
  CHECK_THROWS_AS(DissimilarityMatrix{neg}, ValidationError);
}

TEST_CASE("pairwise hellinger matrix") {
  const std::vector<SimplexPoint> pts{hw_map(0.3), hw_map(0.3), hw_map(0.5)};
  const DissimilarityMatrix d = pairwise_hellinger(pts);
  CHECK(d(0, 1) == doctest::Approx(0.0));
  CHECK(d(0, 2) == doctest::Approx(hellinger_distance(hw_map(0.3), hw_map(0.5))));

  // Cross-check the chord against the inner-product identity.
  double ip = 0.0;
  for (int i = 0; i < 3; ++i) ip += std::sqrt(hw_map(0.3)[i]) * std::sqrt(hw_map(0.5)[i]);
  CHECK(d(0, 2) * d(0, 2) == doctest::Approx(8.0 - 8.0 * ip).epsilon(1e-12));

  RngStream rng({71, 0});
  const auto rand_pts = random_simplices(rng, 20, 4);
  const DissimilarityMatrix dr = pairwise_hellinger(rand_pts);
  CHECK(dr.size() == 20);  // construction enforces symmetry and zero diagonal
}

TEST_CASE("knn graph connectivity and auto-repair") {
  // K = N-1 is the complete graph.
  RngStream rng({72, 0});
  const auto pts = random_simplices(rng, 8, 3);
  const DissimilarityMatrix d = pairwise_hellinger(pts);
  const NeighborhoodGraph complete = build_knn_graph(d, 7);
  CHECK(complete.edges.size() == 8 * 7 / 2);
  CHECK(complete.effective_k == 7);

  // Two tight clusters far apart: K=1 disconnects, repair bumps K.
  const DissimilarityMatrix line =
      line_dissimilarity({0.0, 0.01, 0.02, 1.0, 1.01, 1.02});
  const NeighborhoodGraph repaired = build_knn_graph(line, 1);
  CHECK(repaired.requested_k == 1);
  CHECK(repaired.effective_k > 1);
  std::vector<int> degree(6, 0);
  for (const GraphEdge& e : repaired.edges) {
    degree[e.i]++;
    degree[e.j]++;
  }
  for (int deg : degree) CHECK(deg >= 1);
  CHECK_THROWS_AS(build_knn_graph(line, 0), ValidationError);
}

TEST_CASE("epsilon graph edge rule and failure modes") {
  const DissimilarityMatrix grid = line_dissimilarity({0.0, 1.0, 2.0, 3.0, 4.0});
  // 1.5 * spacing keeps exactly the adjacent pairs.
  const NeighborhoodGraph path = build_epsilon_graph(grid, 1.5);
  CHECK(path.edges.size() == 4);
  for (const GraphEdge& e : path.edges) CHECK(e.j - e.i == 1);

  const NeighborhoodGraph complete = build_epsilon_graph(grid, 10.0);
  CHECK(complete.edges.size() == 10);

  try {
    build_epsilon_graph(grid, 0.5);
    FAIL("expected DisconnectedGraphError");
  } catch (const DisconnectedGraphError& err) {
    CHECK(err.components().size() == 5);
    CHECK(std::string(err.what()).find("components") != std::string::npos);
  }
  CHECK_THROWS_AS(build_epsilon_graph(grid, 0.0), ValidationError);
}

TEST_CASE("shortest paths on a metric complete graph keep direct edges") {
  RngStream rng({73, 0});
  const auto pts = random_simplices(rng, 12, 3);
  const DissimilarityMatrix h = pairwise_hellinger(pts);
  const NeighborhoodGraph g = build_knn_graph(h, 11);
  const DissimilarityMatrix sp = shortest_paths(g);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      CHECK(sp(i, j) <= h(i, j) + 1e-15);
      CHECK(sp(i, j) == doctest::Approx(h(i, j)).epsilon(1e-13));
    }
}

TEST_CASE("shortest paths on a unit path graph count hops") {
  NeighborhoodGraph g;
  g.vertex_count = 6;
  for (int i = 0; i + 1 < 6; ++i) g.edges.push_back({i, i + 1, 1.0});
  const DissimilarityMatrix sp = shortest_paths(g);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(sp(i, j) == doctest::Approx(std::abs(i - j)));
}

TEST_CASE("shortest paths reject disconnected graphs") {
  NeighborhoodGraph g;
  g.vertex_count = 4;
  g.edges.push_back({0, 1, 1.0});
  g.edges.push_back({2, 3, 1.0});
  CHECK_THROWS_AS(shortest_paths(g), DisconnectedGraphError);
}

TEST_CASE("graph geodesics track the curve's arc length") {
  const int m = 100;
  RngStream rng({74, 0});
  std::vector<double> taus(m);
  std::vector<SimplexPoint> pts;
  for (int i = 0; i < m; ++i) {
    taus[i] = rng.next_double();
    pts.push_back(hw_map(taus[i]));
  }
  const DissimilarityMatrix h = pairwise_hellinger(pts);
  const NeighborhoodGraph g = build_knn_graph(h, 5);
  const DissimilarityMatrix sp = shortest_paths(g);
  int ok = 0, total = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double truth = hw_arc_closed_form(taus[i], taus[j]);
      if (truth == 0.0) continue;
      ++total;
      if (std::abs(sp(i, j) - truth) / truth < 0.05) ++ok;
      CHECK(sp(i, j) >= h(i, j) - 1e-12);  // paths cannot beat the direct chord
    }
  CHECK(static_cast<double>(ok) / total >= 0.95);
}

TEST_CASE("raw stress embedding recovers realizable geometry") {
  RngStream rng({75, 0});
  const int n = 20, r = 2;
  Eigen::MatrixXd pts(n, r);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < r; ++c) pts(i, c) = rng.next_double() * 4.0 - 2.0;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  const Configuration config = embed_raw_stress(DissimilarityMatrix(d), r);
  CHECK(config.stress < 1e-10);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      CHECK((config.points.row(i) - config.points.row(j)).norm() ==
            doctest::Approx(d(i, j)).epsilon(1e-5));
}

TEST_CASE("two points embed at their exact separation") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 1) = d(1, 0) = 0.75;
  const Configuration config = embed_raw_stress(DissimilarityMatrix(d), 1);
  CHECK((config.points.row(0) - config.points.row(1)).norm() ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(config.stress == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("stress decreases monotonically") {
  RngStream rng({76, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 8 + static_cast<int>(rng.next_double() * 8);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = 0.05 + rng.next_double();
    const Configuration config =
        embed_raw_stress(DissimilarityMatrix(d), 2, std::nullopt, 60, 0.0);
    for (std::size_t t = 1; t < config.stress_history.size(); ++t)
      CHECK(config.stress_history[t] <= config.stress_history[t - 1] * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("embedding is equivariant under input permutation") {
  RngStream rng({78, 0});
  const int n = 14;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = 0.2 + rng.next_double();

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[static_cast<int>(rng.next_double() * (i + 1))]);
  Eigen::MatrixXd dp(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dp(i, j) = d(perm[i], perm[j]);

  const Configuration base = embed_raw_stress(DissimilarityMatrix(d), 2);
  const Configuration permuted = embed_raw_stress(DissimilarityMatrix(dp), 2);
  CHECK(permuted.stress == doctest::Approx(base.stress).epsilon(1e-8));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double base_dist = (base.points.row(perm[i]) - base.points.row(perm[j])).norm();
      const double perm_dist = (permuted.points.row(i) - permuted.points.row(j)).norm();
      CHECK(perm_dist == doctest::Approx(base_dist).epsilon(1e-6));
    }
}

TEST_CASE("degenerate and weighted embedding inputs") {
  const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(4, 4);
  const DissimilarityMatrix degenerate(zeros);
  CHECK_THROWS_AS(embed_raw_stress(degenerate, 1), NumericalError);

  RngStream rng({77, 0});
  const int n = 10;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = 0.1 + rng.next_double();
  const Configuration unweighted = embed_raw_stress(DissimilarityMatrix(d), 2);
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
  ones.diagonal().setZero();
  const Configuration weighted = embed_raw_stress(DissimilarityMatrix(d), 2, ones);
  CHECK(weighted.stress == doctest::Approx(unweighted.stress).epsilon(1e-9));

  Eigen::MatrixXd bad = ones;
  bad(0, 1) = -1.0;
  CHECK_THROWS_AS(embed_raw_stress(DissimilarityMatrix(d), 2, bad), ValidationError);
}

TEST_CASE("out-of-sample embedding formulas") {
  Configuration line;
  line.dim = 1;
  line.points = Eigen::MatrixXd(3, 1);
  line.points << 0.0, 1.0, 2.0;

  // Equidistant from the two nearest landmarks lands at the midpoint.
  std::vector<std::pair<int, double>> lm{{0, 0.6}, {1, 0.6}};
  CHECK(embed_out_of_sample(line, lm, 2, OosMode::LawOfCosines1D)(0) ==
        doctest::Approx(0.5).epsilon(1e-14));

  // Zero distance to the nearest returns that landmark exactly.
  std::vector<std::pair<int, double>> zero{{1, 0.0}, {0, 1.0}};
  CHECK(embed_out_of_sample(line, zero, 2, OosMode::LawOfCosines1D)(0) == 1.0);

  // Coincident landmarks fall back to the first.
  Configuration flat;
  flat.dim = 1;
  flat.points = Eigen::MatrixXd(2, 1);
  flat.points << 0.7, 0.7;
  std::vector<std::pair<int, double>> co{{0, 0.3}, {1, 0.4}};
  CHECK(embed_out_of_sample(flat, co, 2, OosMode::LawOfCosines1D)(0) == 0.7);

  Configuration plane;
  plane.dim = 2;
  plane.points = Eigen::MatrixXd(3, 2);
  plane.points << 0.0, 0.0, 2.0, 0.0, 1.0, 3.0;
  std::vector<std::pair<int, double>> cen{{0, 1.0}, {1, 1.0}, {2, 1.0}};
  const Eigen::VectorXd y = embed_out_of_sample(plane, cen, 3, OosMode::Centroid);
  CHECK(y(0) == doctest::Approx(1.0));
  CHECK(y(1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(embed_out_of_sample(plane, cen, 3, OosMode::LawOfCosines1D),
                  ValidationError);
  CHECK_THROWS_AS(embed_out_of_sample(plane, cen, 5, OosMode::Centroid), ValidationError);
}
