#pragma once

#include "infogeo/ait.hpp"
#include "infogeo/embedding.hpp"
#include "infogeo/exact_test.hpp"

// Serial reference implementations of the parallel kernels. Kept simple and
// single-threaded so tests can pin the OpenMP paths against them; the
// benchmark target times both. shortest_paths_floyd_warshall is a genuinely
// different algorithm, so it doubles as an independent oracle for the
// Dijkstra path (agreement to roundoff, not bitwise).

namespace infogeo::reference {

DissimilarityMatrix pairwise_hellinger(std::span<const SimplexPoint> dists);

DissimilarityMatrix shortest_paths_dijkstra(const NeighborhoodGraph& g);
DissimilarityMatrix shortest_paths_floyd_warshall(const NeighborhoodGraph& g);

OutcomeTable make_outcome_table(int n, int k_plus_1, const SimplexPoint& null_dist,
                                const std::function<double(const CountVector&)>& statistic);

AitResult mc_significance(const EmbeddedSubmanifold& sub, const CountVector& x, int B,
                          RngSeed seed, bool add_one = false);

}  // namespace infogeo::reference
