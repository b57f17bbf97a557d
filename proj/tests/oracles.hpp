#pragma once

// Test-only reference implementations. These deliberately avoid the library
// code paths they are used to check.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace oracle {

// Plain bisection; f(lo) and f(hi) must bracket a sign change.
template <class F>
double bisect(F f, double lo, double hi, int iterations = 200) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo <= 0.0 && f_hi >= 0.0) && !(f_lo >= 0.0 && f_hi <= 0.0))
    throw std::invalid_argument("bisect: endpoints do not bracket a root");
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct PatternStats {
  double p_delivery = 0.0;
  double expected_attempts_capped = 0.0;
};

// Exact delivery probability and capped attempt count for m hops under an
// attempt budget a, by enumerating all 2^a success/failure patterns. The
// m-th success position is the total attempt count T; outage packets spend
// the whole budget.
inline PatternStats enumerate_attempt_patterns(int a, int m, double p) {
  if (a < 1 || a > 24 || m < 1)
    throw std::invalid_argument("enumerate_attempt_patterns: need 1 <= a <= 24, m >= 1");
  // extended-precision accumulation: 2^a additions of O(a)-sized terms
  // would otherwise round past the 1e-12 comparisons this oracle backs
  long double p_delivery = 0.0L, expected = 0.0L;
  for (std::uint32_t mask = 0; mask < (1u << a); ++mask) {
    int successes = 0;
    int t_m = 0;  // attempt index of the m-th success, 0 if never reached
    for (int bit = 0; bit < a; ++bit) {
      if (mask & (1u << bit)) {
        ++successes;
        if (successes == m) {
          t_m = bit + 1;
          break;
        }
      }
    }
    const int total_successes = __builtin_popcount(mask);
    const long double weight =
        std::pow(static_cast<long double>(p), total_successes) *
        std::pow(1.0L - static_cast<long double>(p), a - total_successes);
    if (t_m > 0) {
      p_delivery += weight;
      expected += weight * t_m;
    } else {
      expected += weight * a;
    }
  }
  return {static_cast<double>(p_delivery), static_cast<double>(expected)};
}

// E[min(T, a)] for T ~ Geometric(p): telescoping the tail sum gives
// sum_{t=1}^{a} P(T >= t) = (1 - (1-p)^a) / p.
inline double capped_geometric_mean(int a, double p) {
  if (p == 1.0) return 1.0;
  return (1.0 - std::pow(1.0 - p, a)) / p;
}

}  // namespace oracle
