#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "lovegeo/errors.hpp"

namespace lovegeo {

// Binomial coefficient as a double (exact for the small orders used here).
inline double binomial(int n, int p) {
  if (p < 0 || p > n) return 0.0;
  if (p > n - p) p = n - p;
  double b = 1.0;
  for (int i = 1; i <= p; ++i) b = b * (n - p + i) / i;
  return b;
}

// x^e with an integer-exponent fast path; e need not be an integer
// (n/k - 2 is rational in general).
inline double pow_real(double x, double e) {
  const double r = std::round(e);
  if (r == e && std::abs(r) <= 512.0) {
    double p = 1.0;
    double base = x;
    std::int64_t m = static_cast<std::int64_t>(std::abs(r));
    while (m > 0) {
      if (m & 1) p *= base;
      base *= base;
      m >>= 1;
    }
    return r < 0.0 ? 1.0 / p : p;
  }
  return std::exp(e * std::log(x));
}

// (y + delta)^a - y^a computed without cancellation for small delta (y > 0).
inline double pow_diff_delta(double y, double delta, double a) {
  return pow_real(y, a) * std::expm1(a * std::log1p(delta / y));
}

// Safeguarded Newton iteration on a bracket [lo, hi] carrying a sign change.
// Falls back to bisection whenever the Newton step leaves the bracket or
// fails to make progress; converges when the step size drops below tol_abs.
inline double find_root_bracketed(const std::function<double(double)>& f,
                                  const std::function<double(double)>& df,
                                  double lo, double hi, double tol_abs) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw DomainError("find_root_bracketed: no sign change on bracket");
  if (flo > 0.0) std::swap(lo, hi);  // keep f(lo) < 0 < f(hi)
  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0)
      lo = x;
    else
      hi = x;
    const double d = df ? df(x) : 0.0;
    const double a = std::min(lo, hi), b = std::max(lo, hi);
    double next;
    // Bisect when Newton exits the bracket or converges too slowly.
    const bool newton_ok =
        d != 0.0 && (x - fx / d) > a && (x - fx / d) < b &&
        std::abs(2.0 * fx) <= std::abs(dx_old * d);
    if (newton_ok) {
      next = x - fx / d;
    } else {
      next = 0.5 * (lo + hi);
    }
    dx_old = dx;
    dx = std::abs(next - x);
    x = next;
    if (dx <= tol_abs) return x;
  }
  return x;
}

}  // namespace lovegeo
