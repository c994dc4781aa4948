#pragma once

// Slow reference routes that avoid the closed forms entirely: theta comes
// from expanding the polynomial, so agreement with the fast counters is a
// genuine cross-check.

#include <vector>

#include "bincyc/counting.hpp"
#include "bincyc/cyclotomic.hpp"

namespace bincyc {

// H_gamma(x) with theta taken from the polynomial oracle. The oracle caps m
// at 10^5, so x is capped the same way.
inline u64 h_gamma_count_oracle(double x, double gamma) {
  if (!(x >= 2.0)) throw std::domain_error("h_gamma_count_oracle: x must be >= 2");
  if (x > static_cast<double>(oracle_limit_max))
    throw capacity_error("h_gamma_count_oracle: x exceeds the oracle cap");
  const ThetaThreshold thr(gamma);
  DecisionStats stats;
  const u64 xf = static_cast<u64>(x);
  std::vector<u64> ps = primes_in_range(2, xf / 2);
  u64 h = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const u64 m = ps[i] * ps[j];
      if (m > xf) break;
      if (thr.passes(theta_direct(m), m, stats)) ++h;
    }
  }
  return h;
}

}  // namespace bincyc
