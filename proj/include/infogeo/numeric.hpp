#pragma once

#include <cmath>
#include <utility>

namespace infogeo {

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
/// The integrand must be finite on [a, b].
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 45) {
  struct Impl {
    const F& f;
    double recurse(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
      }
      return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f}.recurse(a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Golden-section search for the maximizer of a unimodal function on
/// [lo, hi]; stops when the bracket is narrower than xtol. Returns
/// (argmax, max value) at the bracket midpoint.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, f(mid)};
}

inline double clamp_to_unit(double x) {
  if (x > 1.0) return 1.0;
  if (x < -1.0) return -1.0;
  return x;
}

}  // namespace infogeo
