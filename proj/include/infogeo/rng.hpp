#pragma once

#include <cstdint>
#include <random>

namespace infogeo {

/// Names one reproducible random stream. Equal (master_seed, stream_id)
/// pairs yield identical variate sequences on every run and under any
/// thread count; distinct stream_ids give statistically independent
/// streams, so parallel consumers key streams by work item, not by thread.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

class RngStream {
 public:
  explicit RngStream(RngSeed seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_double();

  /// Exact Binomial(n, p) draw by inversion, walking outward from the mode.
  /// O(sqrt(n p (1-p))) expected work, stable for n up to ~1e9.
  int next_binomial(int n, double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace infogeo
