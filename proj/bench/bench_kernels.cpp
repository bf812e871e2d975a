// Times the OpenMP kernels against their serial reference implementations.
//
//   bench_kernels [points] [replicates]
//
// points controls the synthetic problem sizes (default 500), replicates the
// Monte Carlo benchmark (default 4000).

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "infogeo/ait.hpp"
#include "infogeo/reference.hpp"
#include "infogeo/submanifold.hpp"

using namespace infogeo;

namespace {

double time_ms(const std::function<void()>& fn, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (ms < best) best = ms;
  }
  return best;
}

void report(const char* kernel, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", kernel, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 500;
  const int replicates = argc > 2 ? std::atoi(argv[2]) : 4000;
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("points=%d replicates=%d threads=%d\n", points, replicates, threads);
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  RngStream rng({1234, 0});
  std::vector<SimplexPoint> pts{hw_map(0.3)};
  for (int i = 1; i < points; ++i) pts.push_back(hw_map(rng.next_double()));

  DissimilarityMatrix h = pairwise_hellinger(pts);
  report("pairwise_hellinger",
         time_ms([&] { (void)reference::pairwise_hellinger(pts); }),
         time_ms([&] { (void)pairwise_hellinger(pts); }));

  const NeighborhoodGraph g = build_knn_graph(h, 6);
  report("shortest_paths (dijkstra)",
         time_ms([&] { (void)reference::shortest_paths_dijkstra(g); }),
         time_ms([&] { (void)shortest_paths(g); }));
  report("shortest_paths vs floyd",
         time_ms([&] { (void)reference::shortest_paths_floyd_warshall(g); }),
         time_ms([&] { (void)shortest_paths(g); }));

  const DissimilarityMatrix delta = shortest_paths(g);
  auto embed_once = [&] { (void)embed_raw_stress(delta, 2, std::nullopt, 60, 0.0); };
#ifdef _OPENMP
  const double embed_serial = time_ms([&] {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    embed_once();
    omp_set_num_threads(saved);
  });
#else
  const double embed_serial = time_ms(embed_once);
#endif
  report("embed_raw_stress (60 it)", embed_serial, time_ms(embed_once));

  const SphericalSubfamily family;
  std::vector<SimplexPoint> sphere{SphericalSubfamily::null_point().to_simplex()};
  for (auto& p : family.sample(100, {77, 0})) sphere.push_back(std::move(p));
  FitParams params;
  params.graph_value = 10;
  params.dim = 2;
  const EmbeddedSubmanifold sub = fit_submanifold(std::move(sphere), params);
  const CountVector x({3, 5, 4, 6, 9, 2, 1});
  report("mc_significance",
         time_ms([&] { (void)reference::mc_significance(sub, x, replicates, {5, 0}); }),
         time_ms([&] { (void)mc_significance(sub, x, replicates, {5, 0}); }));

  auto stat = [&](const CountVector& o) { return ait_statistic(sub, o); };
  report("outcome table (n=12, k+1=7)",
         time_ms([&] { (void)reference::make_outcome_table(12, 7, sub.distributions[0], stat); }),
         time_ms([&] { (void)make_outcome_table(12, 7, sub.distributions[0], stat); }));
  return 0;
}
