#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ratc/params.hpp"

namespace ratc::mc {

// Simulation controls. The interference field is truncated to a disk whose
// radius keeps the expected ignored far-field power,
// 2*pi*lambda*rho*b^(2-alpha)/(alpha-2), below truncation_epsilon * eta
// (below truncation_epsilon * rho * d^-alpha when eta = 0, d the hop
// distance). region_radius overrides the derived value when set.
struct SimConfig {
  long long trials = 100000;
  std::uint64_t seed = 1;
  double truncation_epsilon = 1e-3;
  std::optional<double> region_radius;
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  long long trials = 0;
  std::uint64_t seed = 0;
};

// xoshiro256++ with the stream state derived from (seed, stream, substream)
// through the splitmix64 finalizer. Every Monte Carlo trial gets its own
// stream keyed by (seed, hop-count, trial-index), so results do not depend
// on how trials are partitioned across workers.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }
  result_type operator()() { return next(); }

  double uniform01();    // [0, 1)
  double exponential();  // unit mean
  long long poisson(double mean);

 private:
  result_type next();
  std::uint64_t s_[4];
};

// Truncation disk radius for one hop of length hop_distance (0 when
// lambda == 0; the configured override when present).
double truncation_radius(const NetworkParams& p, const SimConfig& cfg,
                         double hop_distance);

// One draw of the received SINR over hop_distance: Poisson(lambda*pi*b^2)
// interferers uniform on the disk, iid unit-mean exponential fades on every
// link. Interferer distances are floored at 1e-12 against the path-loss
// singularity; floor_hits (when given) counts how often that fired.
double sample_sinr(const NetworkParams& p, const SimConfig& cfg,
                   double hop_distance, Rng& rng,
                   std::uint64_t* floor_hits = nullptr);

struct PacketOutcome {
  bool delivered = false;
  long long attempts = 0;  // == a on outage (the budget is fully spent)
};

// Sends one packet over m equidistant hops with a total attempt budget a.
// Every attempt draws a fresh interference field and fresh fades.
PacketOutcome simulate_packet(const NetworkParams& p, const SimConfig& cfg,
                              long long m, long long a, Rng& rng,
                              std::uint64_t* floor_hits = nullptr);

// Fraction of single transmissions over distance R that clear the SINR
// threshold. Deterministic given (seed, trials).
SimEstimate estimate_single_hop_ps(const NetworkParams& p, const SimConfig& cfg);

struct SimObjectiveRow {
  long long m;
  SimEstimate p_delivery;
  SimEstimate expected_attempts;  // E[T ^ a], outages counted as a
  SimEstimate objective;          // ratio estimate, delta-method std error
};

// One row of the empirical per-M table: cfg.trials packets at hop count m,
// budget a, trial i drawing from the stream keyed by (seed, m, i).
SimObjectiveRow estimate_objective_row(const NetworkParams& p, long long m,
                                       long long a, const SimConfig& cfg,
                                       std::uint64_t* floor_hits = nullptr);

struct SimCapacityResult {
  double capacity;  // lambda * log(1+beta) * R * max_m objective
  long long m_star; // empirical argmax, ties toward smaller m
  std::vector<SimObjectiveRow> table;
  std::uint64_t floor_hits = 0;
};

// Empirical counterpart of the exact finite-budget capacity: per-M delivery
// probability, capped attempts, and their ratio, for M in {1, ..., a}.
SimCapacityResult estimate_capacity_finite(const NetworkParams& p, long long a,
                                           const SimConfig& cfg);

// Coupled truncation diagnostic: samples the field out to twice the derived
// radius and scores each trial at both radii, so the returned mean is a
// direct estimate of the success-probability shift caused by truncation
// (positive = more successes with the near field only).
SimEstimate truncation_bias_probe(const NetworkParams& p, const SimConfig& cfg);

}  // namespace ratc::mc
