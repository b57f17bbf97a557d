#include "ratc/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ratc::mc {

namespace {

constexpr double kMinDistanceSq = 1e-24;  // (1e-12)^2 floor on |X_i|^2

std::uint64_t fmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return fmix64(state);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// r^-alpha from r^2, with cheap paths for the common exponents.
double inv_dist_pow(double r2, double alpha) {
  if (alpha == 4.0) return 1.0 / (r2 * r2);
  if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
  if (alpha == 6.0) return 1.0 / (r2 * r2 * r2);
  return std::pow(r2, -0.5 * alpha);
}

double bernoulli_std_error(double p_hat, long long n) {
  if (n < 2) return std::numeric_limits<double>::infinity();
  const double var = p_hat * (1.0 - p_hat) * static_cast<double>(n) /
                     static_cast<double>(n - 1);
  return std::sqrt(var / static_cast<double>(n));
}

struct MomentAccumulator {
  long long n = 0;
  double sum_x = 0.0;   // delivered indicator
  double sum_y = 0.0;   // capped attempts
  double sum_y2 = 0.0;
  double sum_xy = 0.0;

  void add(double x, double y) {
    ++n;
    sum_x += x;
    sum_y += y;
    sum_y2 += y * y;
    sum_xy += x * y;
  }
};

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  // chain the three keys through the finalizer, then expand to the state
  std::uint64_t x = fmix64(seed + 0x9E3779B97F4A7C15ULL);
  x = fmix64(x ^ (stream + 0xD1B54A32D192ED03ULL));
  x = fmix64(x ^ (substream + 0x8CB92BA72F3D8DD7ULL));
  s_[0] = splitmix64(x);
  s_[1] = splitmix64(x);
  s_[2] = splitmix64(x);
  s_[3] = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

Rng::result_type Rng::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::exponential() {
  return -std::log1p(-uniform01());
}

long long Rng::poisson(double mean) {
  std::poisson_distribution<long long> dist(mean);
  return dist(*this);
}

double truncation_radius(const NetworkParams& p, const SimConfig& cfg,
                         double hop_distance) {
  if (cfg.region_radius) return *cfg.region_radius;
  if (p.lambda() == 0.0) return 0.0;
  const double pi = std::acos(-1.0);
  const double target =
      p.eta() > 0.0
          ? cfg.truncation_epsilon * p.eta()
          : cfg.truncation_epsilon * p.rho() * std::pow(hop_distance, -p.alpha());
  // solve 2*pi*lambda*rho * b^(2-alpha) / (alpha-2) = target
  return std::pow(2.0 * pi * p.lambda() * p.rho() / ((p.alpha() - 2.0) * target),
                  1.0 / (p.alpha() - 2.0));
}

double sample_sinr(const NetworkParams& p, const SimConfig& cfg,
                   double hop_distance, Rng& rng, std::uint64_t* floor_hits) {
  if (!(hop_distance > 0.0))
    throw std::invalid_argument("hop_distance must be > 0");
  const double pi = std::acos(-1.0);
  double interference = 0.0;
  if (p.lambda() > 0.0) {
    const double b = truncation_radius(p, cfg, hop_distance);
    const double b2 = b * b;
    const long long count = rng.poisson(p.lambda() * pi * b2);
    for (long long i = 0; i < count; ++i) {
      double r2 = b2 * rng.uniform01();  // |X|^2 is uniform on [0, b^2]
      if (r2 < kMinDistanceSq) {
        r2 = kMinDistanceSq;
        if (floor_hits) ++*floor_hits;
      }
      interference += rng.exponential() * inv_dist_pow(r2, p.alpha());
    }
    interference *= p.rho();
  }
  const double signal =
      p.rho() * rng.exponential() * std::pow(hop_distance, -p.alpha());
  return signal / (interference + p.eta());
}

PacketOutcome simulate_packet(const NetworkParams& p, const SimConfig& cfg,
                              long long m, long long a, Rng& rng,
                              std::uint64_t* floor_hits) {
  if (m < 1 || a < 1)
    throw std::invalid_argument("simulate_packet requires m >= 1 and a >= 1");
  if (m > a) return {false, a};  // T >= m > a: outage before the route can finish
  const double hop_distance = p.R() / static_cast<double>(m);
  long long attempts = 0;
  for (long long hop = 0; hop < m; ++hop) {
    for (;;) {
      if (attempts == a) return {false, a};
      ++attempts;
      if (sample_sinr(p, cfg, hop_distance, rng, floor_hits) >= p.beta()) break;
    }
  }
  return {true, attempts};
}

SimEstimate estimate_single_hop_ps(const NetworkParams& p, const SimConfig& cfg) {
  if (cfg.trials < 1)
    throw std::invalid_argument("trials must be >= 1");
  long long successes = 0;
  for (long long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, 1, static_cast<std::uint64_t>(i));
    if (sample_sinr(p, cfg, p.R(), rng) >= p.beta()) ++successes;
  }
  const double mean = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  return {mean, bernoulli_std_error(mean, cfg.trials), cfg.trials, cfg.seed};
}

SimObjectiveRow estimate_objective_row(const NetworkParams& p, long long m,
                                       long long a, const SimConfig& cfg,
                                       std::uint64_t* floor_hits) {
  if (cfg.trials < 2) throw std::invalid_argument("trials must be >= 2");
  MomentAccumulator acc;
  for (long long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(i));
    const PacketOutcome out = simulate_packet(p, cfg, m, a, rng, floor_hits);
    acc.add(out.delivered ? 1.0 : 0.0, static_cast<double>(out.attempts));
  }
  const double n = static_cast<double>(acc.n);
  const double mean_x = acc.sum_x / n;
  const double mean_y = acc.sum_y / n;
  const double var_x = (acc.sum_x - n * mean_x * mean_x) / (n - 1.0);
  const double var_y = (acc.sum_y2 - n * mean_y * mean_y) / (n - 1.0);
  const double cov = (acc.sum_xy - n * mean_x * mean_y) / (n - 1.0);
  const double ratio = mean_x / mean_y;
  // delta method for the variance of a ratio of correlated means
  const double ratio_var =
      (var_x + ratio * ratio * var_y - 2.0 * ratio * cov) / (mean_y * mean_y * n);

  SimObjectiveRow row;
  row.m = m;
  row.p_delivery = {mean_x, bernoulli_std_error(mean_x, acc.n), acc.n, cfg.seed};
  row.expected_attempts = {mean_y, std::sqrt(std::max(var_y, 0.0) / n), acc.n, cfg.seed};
  row.objective = {ratio, std::sqrt(std::max(ratio_var, 0.0)), acc.n, cfg.seed};
  return row;
}

SimCapacityResult estimate_capacity_finite(const NetworkParams& p, long long a,
                                           const SimConfig& cfg) {
  if (a < 1) throw std::invalid_argument("attempt budget a must be >= 1");

  SimCapacityResult result;
  result.table.reserve(static_cast<std::size_t>(a));
  double best_objective = -1.0;
  long long best_m = 1;
  for (long long m = 1; m <= a; ++m) {
    const SimObjectiveRow row =
        estimate_objective_row(p, m, a, cfg, &result.floor_hits);
    result.table.push_back(row);
    if (row.objective.mean > best_objective) {
      best_objective = row.objective.mean;
      best_m = m;
    }
  }
  result.m_star = best_m;
  result.capacity = p.lambda() * p.rate() * p.R() * best_objective;
  return result;
}

SimEstimate truncation_bias_probe(const NetworkParams& p, const SimConfig& cfg) {
  if (cfg.trials < 2) throw std::invalid_argument("trials must be >= 2");
  if (p.lambda() == 0.0) return {0.0, 0.0, cfg.trials, cfg.seed};

  const double pi = std::acos(-1.0);
  const double b = truncation_radius(p, cfg, p.R());
  const double near2 = b * b;
  const double far2 = 4.0 * near2;  // doubled radius
  const double mean_count = p.lambda() * pi * far2;
  const double signal_scale = p.rho() * std::pow(p.R(), -p.alpha());

  long long n = 0;
  double sum = 0.0, sum_sq = 0.0;
  for (long long i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed, 0, static_cast<std::uint64_t>(i));
    const long long count = rng.poisson(mean_count);
    double interference_full = 0.0, interference_near = 0.0;
    for (long long j = 0; j < count; ++j) {
      double r2 = far2 * rng.uniform01();
      if (r2 < kMinDistanceSq) r2 = kMinDistanceSq;
      const double term = rng.exponential() * inv_dist_pow(r2, p.alpha());
      interference_full += term;
      if (r2 <= near2) interference_near += term;
    }
    interference_full *= p.rho();
    interference_near *= p.rho();
    const double signal = signal_scale * rng.exponential();
    const double full_ok = signal / (interference_full + p.eta()) >= p.beta();
    const double near_ok = signal / (interference_near + p.eta()) >= p.beta();
    const double diff = near_ok - full_ok;  // in {-1, 0, 1}, near can only gain
    ++n;
    sum += diff;
    sum_sq += diff * diff;
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(n)),
          cfg.trials, cfg.seed};
}

}  // namespace ratc::mc
