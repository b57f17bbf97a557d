#pragma once

#include <vector>

#include "ratc/params.hpp"

namespace ratc {

// Total-attempts model for m equidistant hops under an attempt budget a:
// each hop needs a geometric(p) number of transmissions, so the total
// T = T_1 + ... + T_m is Pascal(m, p), and {T <= a} = {S_a >= m} with
// S_a ~ Binomial(a, p).
struct PascalModel {
  long long m;  // hops; m = 0 is the degenerate empty route (T = 0)
  double p;     // per-hop success probability in (0, 1]
  long long a;  // attempt budget, >= 1
};

// P(T = n) = C(n-1, m-1) * p^m * (1-p)^(n-m); 0 for n < m. Log-domain.
double pascal_pmf(const PascalModel& model, long long n);

// Binomial mass and tails, log-domain, stable for a up to ~1e4.
// Conventions: cdf(k < 0) = 0, cdf(k >= a) = 1, sf(k <= 0) = 1, sf(k > a) = 0.
double binom_pmf(long long a, double p, long long k);
double binom_cdf(long long a, double p, long long k);  // P(S_a <= k)
double binom_sf(long long a, double p, long long k);   // P(S_a >= k)

// P(T <= a) = P(S_a >= m); this is the end-to-end delivery probability.
double prob_delivery(const PascalModel& model);

// E[min(T, a)] by direct summation of the Pascal mass plus the capped tail.
double expected_attempts_capped(const PascalModel& model);

// Same quantity through the binomial-tail rearrangement
//   p * E[T ^ a] = m * P(T <= a) + (p*a + m) * P(S_a <= m-1) - m * P(S_{a+1} <= m);
// an independent route the direct sum must agree with to 1e-12.
double expected_attempts_capped_from_tails(const PascalModel& model);

// Slack of the budget-relaxation bound:
//   gap(m) = p * E[T ^ a] - m * P(T <= a),
// nonnegative for all 0 <= m <= a, which is exactly the statement that
// P(T <= a) / E[T ^ a] <= p / m = 1 / E[T].
double attempt_bound_gap(const PascalModel& model);

// gap(m+1) - gap(m), computed from attempt_bound_gap. Closed form:
// m * P(S_a = m). Requires 0 <= m <= a-1.
double attempt_bound_gap_delta(const PascalModel& model);

struct PerHopCountRow {
  long long m;
  double p_s;
  double p_delivery;               // P(T(m) <= a)
  double expected_attempts_capped; // E[T(m) ^ a]
  double objective;                // p_delivery / expected_attempts_capped
};

struct FiniteCapacityResult {
  double capacity;  // lambda * log(1+beta) * R * max_m objective
  long long m_star;
  double p_out;     // P(T(m_star) > a)
  std::vector<PerHopCountRow> per_m_table;
};

// Exact finite-budget capacity: evaluates the objective for every
// m in {1, ..., a} with p = p_s(m) and maximizes. Ties break toward
// smaller m.
FiniteCapacityResult capacity_finite(const NetworkParams& p, long long a);

}  // namespace ratc
