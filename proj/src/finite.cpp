#include "ratc/finite.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ratc/analytic.hpp"

namespace ratc {

namespace {

double log_choose(long long n, long long k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

void check_model(const PascalModel& model) {
  if (model.m < 0)
    throw std::invalid_argument("hop count m must be >= 0");
  if (model.a < 1)
    throw std::invalid_argument("attempt budget a must be >= 1");
  if (!(model.p > 0.0) || !(model.p <= 1.0))
    throw std::invalid_argument("per-hop success probability must be in (0, 1]");
}

double check_tail_p(double p) {
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("probability must be in [0, 1]");
  return p;
}

}  // namespace

double pascal_pmf(const PascalModel& model, long long n) {
  check_model(model);
  if (n < model.m) return 0.0;
  if (model.m == 0) return n == 0 ? 1.0 : 0.0;
  if (model.p == 1.0) return n == model.m ? 1.0 : 0.0;
  return std::exp(log_choose(n - 1, model.m - 1) +
                  static_cast<double>(model.m) * std::log(model.p) +
                  static_cast<double>(n - model.m) * std::log1p(-model.p));
}

double binom_pmf(long long a, double p, long long k) {
  check_tail_p(p);
  if (k < 0 || k > a) return 0.0;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == a ? 1.0 : 0.0;
  return std::exp(log_choose(a, k) + static_cast<double>(k) * std::log(p) +
                  static_cast<double>(a - k) * std::log1p(-p));
}

double binom_cdf(long long a, double p, long long k) {
  check_tail_p(p);
  if (k < 0) return 0.0;
  if (k >= a) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;  // k < a here
  double sum = 0.0;
  for (long long j = 0; j <= k; ++j) sum += binom_pmf(a, p, j);
  return sum;
}

double binom_sf(long long a, double p, long long k) {
  check_tail_p(p);
  if (k > a) return 0.0;
  if (k <= 0) return 1.0;
  if (p == 0.0) return 0.0;  // k >= 1 here
  if (p == 1.0) return 1.0;
  double sum = 0.0;
  for (long long j = k; j <= a; ++j) sum += binom_pmf(a, p, j);
  return sum;
}

double prob_delivery(const PascalModel& model) {
  check_model(model);
  if (model.m == 0) return 1.0;
  if (model.a < model.m) return 0.0;
  return binom_sf(model.a, model.p, model.m);
}

double expected_attempts_capped(const PascalModel& model) {
  check_model(model);
  if (model.m == 0) return 0.0;
  if (model.a <= model.m) return static_cast<double>(model.a);  // T >= m always
  double sum = 0.0;
  for (long long n = model.m; n <= model.a; ++n)
    sum += static_cast<double>(n) * pascal_pmf(model, n);
  // P(T > a) = P(S_a <= m-1)
  sum += static_cast<double>(model.a) * binom_cdf(model.a, model.p, model.m - 1);
  return sum;
}

double expected_attempts_capped_from_tails(const PascalModel& model) {
  check_model(model);
  if (model.m == 0) return 0.0;
  const double p = model.p;
  const double a = static_cast<double>(model.a);
  const double m = static_cast<double>(model.m);
  const double deliver = prob_delivery(model);
  const double miss = binom_cdf(model.a, p, model.m - 1);
  const double miss_next = binom_cdf(model.a + 1, p, model.m);
  return (m * deliver + (p * a + m) * miss - m * miss_next) / p;
}

double attempt_bound_gap(const PascalModel& model) {
  check_model(model);
  if (model.m > model.a)
    throw std::invalid_argument("gap is defined for m <= a");
  if (model.m == 0) return 0.0;
  return model.p * expected_attempts_capped(model) -
         static_cast<double>(model.m) * prob_delivery(model);
}

double attempt_bound_gap_delta(const PascalModel& model) {
  check_model(model);
  if (model.m > model.a - 1)
    throw std::invalid_argument("gap delta is defined for m <= a-1");
  PascalModel next = model;
  next.m = model.m + 1;
  return attempt_bound_gap(next) - attempt_bound_gap(model);
}

FiniteCapacityResult capacity_finite(const NetworkParams& p, long long a) {
  if (a < 1)
    throw std::invalid_argument("attempt budget a must be >= 1");

  FiniteCapacityResult result;
  result.per_m_table.reserve(static_cast<std::size_t>(a));
  long long best_m = 1;
  double best_objective = -1.0;
  for (long long m = 1; m <= a; ++m) {
    PascalModel model{m, per_hop_success(p, static_cast<double>(m)), a};
    PerHopCountRow row;
    row.m = m;
    row.p_s = model.p;
    row.p_delivery = prob_delivery(model);
    row.expected_attempts_capped = expected_attempts_capped(model);
    row.objective = row.p_delivery / row.expected_attempts_capped;
    if (row.objective > best_objective) {  // strict: ties keep the smaller m
      best_objective = row.objective;
      best_m = m;
    }
    result.per_m_table.push_back(row);
  }
  result.m_star = best_m;
  result.capacity = p.lambda() * p.rate() * p.R() * best_objective;
  result.p_out = 1.0 - result.per_m_table[static_cast<std::size_t>(best_m - 1)].p_delivery;
  return result;
}

}  // namespace ratc
