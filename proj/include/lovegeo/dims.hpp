#pragma once

#include <string>

#include "lovegeo/errors.hpp"

namespace lovegeo {

// Dimension pair (n, k): the hypersurface dimension n and the Lovelock
// degree k, restricted to 2 <= 2k <= n-1.  Every module validates its
// inputs through this type.
struct DimensionPair {
  int n = 3;
  int k = 1;

  DimensionPair(int n_, int k_) : n(n_), k(k_) {
    if (k < 1 || 2 * k > n - 1)
      throw DomainError("DimensionPair requires 2 <= 2k <= n-1, got n=" +
                        std::to_string(n) + " k=" + std::to_string(k));
  }

  // q = n/(2k) - 1, the decay-rate parameter of the asymptotic expansion.
  double q() const { return 0.5 * static_cast<double>(n) / k - 1.0; }

  // n/k - 2 == 2q, the exponent of the model potential 1 - 2m r^-(n/k-2).
  double potential_exponent() const {
    return static_cast<double>(n - 2 * k) / k;
  }

  // k/(n-2k), the exponent of the horizon radius (2m)^(k/(n-2k)).
  double horizon_exponent() const {
    return static_cast<double>(k) / (n - 2 * k);
  }
};

inline bool operator==(const DimensionPair& a, const DimensionPair& b) {
  return a.n == b.n && a.k == b.k;
}

}  // namespace lovegeo
