#include "infogeo/rng.hpp"

#include <cmath>

#include "infogeo/errors.hpp"

namespace infogeo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(RngSeed seed) {
  // Hash (master_seed, stream_id) into one well-mixed engine seed so that
  // nearby stream ids land in unrelated engine states.
  std::uint64_t s = seed.master_seed;
  std::uint64_t h = splitmix64(s);
  s = h ^ seed.stream_id;
  engine_.seed(splitmix64(s));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RngStream::next_binomial(int n, double p) {
  if (n < 0) throw ValidationError("next_binomial: n must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("next_binomial: p must lie in [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;

  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  const double u = next_double();

  // Inversion from the mode: accumulate pmf mass outward until u is covered.
  const int mode = static_cast<int>((n + 1) * q);
  const double log_pm = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                        std::lgamma(n - mode + 1.0) + mode * std::log(q) +
                        (n - mode) * std::log1p(-q);
  const double pm = std::exp(log_pm);
  double cum = pm;
  int k = mode;
  if (u > cum) {
    const double ratio = q / (1.0 - q);
    double p_up = pm, p_dn = pm;
    int up = mode, dn = mode;
    k = -1;
    while (k < 0) {
      bool moved = false;
      if (up < n) {
        p_up *= ratio * (n - up) / (up + 1.0);
        ++up;
        cum += p_up;
        moved = true;
        if (u <= cum) {
          k = up;
          break;
        }
      }
      if (dn > 0) {
        p_dn *= dn * (1.0 - q) / (q * (n - dn + 1.0));
        --dn;
        cum += p_dn;
        moved = true;
        if (u <= cum) {
          k = dn;
          break;
        }
      }
      if (!moved) {
        // Support exhausted; u fell into mass lost to rounding.
        k = n;
        break;
      }
    }
  }
  return flip ? n - k : k;
}

}  // namespace infogeo
