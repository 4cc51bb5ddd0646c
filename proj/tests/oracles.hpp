#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// algorithms: plain exhaustive loops over small boxes.

#include "nullray/lattice.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

namespace nullray::oracle {

inline bool two_squares_exhaustive(Integer n) {
  for (Integer x = 0; x * x <= n; ++x)
    for (Integer y = x; x * x + y * y <= n; ++y)
      if (x * x + y * y == n)
        return true;
  return false;
}

inline bool three_squares_exhaustive(Integer n) {
  for (Integer x = 0; x * x <= n; ++x)
    for (Integer y = x; x * x + y * y <= n; ++y)
      for (Integer z = y; x * x + y * y + z * z <= n; ++z)
        if (x * x + y * y + z * z == n)
          return true;
  return false;
}

inline bool is_square(Integer n) {
  if (n < 0)
    return false;
  auto r = static_cast<Integer>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

/// Every (v, w) in [-bound, bound]^{n1+n2} with |v|^2 = |w|^2 != 0 and
/// k.v + p.w = 0, scanned naively. Returns the lexicographically largest
/// primitive solution (or nullopt).
inline std::optional<IntVector> naive_witness(Signature sig, const IntVector& freq, Integer bound) {
  const int dim = sig.total();
  IntVector x = IntVector::Constant(dim, -bound);
  std::optional<IntVector> best;
  while (true) {
    const Integer a = x.head(sig.n1).squaredNorm();
    const Integer b = x.tail(sig.n2).squaredNorm();
    if (a == b && a != 0 && freq.dot(x) == 0) {
      Integer g = 0;
      for (int i = 0; i < dim; ++i)
        g = std::gcd(g, x[i]);
      if (g == 1 && (!best || lex_compare(x, *best) > 0))
        best = x;
    }
    int j = dim - 1;
    for (; j >= 0; --j) {
      if (x[j] < bound) {
        ++x[j];
        break;
      }
      x[j] = -bound;
    }
    if (j < 0)
      break;
  }
  return best;
}

} // namespace nullray::oracle
