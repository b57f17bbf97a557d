#pragma once

#include <array>
#include <optional>
#include <string>

#include "ratc/params.hpp"

namespace ratc {

// Equidistant relaying plan: m hops of length R/m each, all statistically
// identical, with per-hop success probability
//   p_s(m) = exp(-k1 * m^-alpha - k2 * m^-2).
struct HopPlan {
  double m;
  double hop_distance;
  double p_s;
  double expected_attempts_per_hop;  // 1 / p_s
};

HopPlan make_hop_plan(const NetworkParams& p, double m);  // requires m >= 1

enum class MStarMethod {
  closed_form_alpha3_cardano,
  closed_form_alpha3_trig,
  closed_form_alpha4,
  numeric,
};

std::string to_string(MStarMethod method);

enum class SolveMode { auto_closed_form, force_numeric };

// Optimal hop count: the largest positive root of
//   g(M) = M^alpha - 2*k2*M^(alpha-2) - alpha*k1 = 0,
// which is the stationarity condition of p_s(M)/M.
struct MStarSolution {
  double m_star_continuous;
  long long m_star_integer;  // argmax of p_s(M)/M over integers >= 1
  MStarMethod method;
  std::optional<double> discriminant;  // 9*k1^2/4 - 8*k2^3/27, alpha == 3 only
};

// Probability that a single transmission over the full distance R clears the
// SINR threshold: exp(-k1 - k2).
double single_hop_success(const NetworkParams& p);

// p_s(m) for m >= 1 equidistant hops. Strictly increasing in m, -> 1 as
// m -> infinity. Throws std::invalid_argument for m < 1.
double per_hop_success(const NetworkParams& p, double m);

// Density of successful single-shot transmissions at rate log(1+beta)
// spanning distance R: p_s * lambda * log(1+beta) * R.
double single_hop_capacity(const NetworkParams& p);

// Budget-relaxed capacity at a fixed hop count:
//   lambda * log(1+beta) * R * p_s(m) / m,  m >= 1.
// Unimodal in m whenever k1, k2 > 0.
double cub_at(const NetworkParams& p, double m);

// Solves g(M) = 0 for the continuous optimum. Closed forms are used for
// alpha in {3, 4} unless force_numeric is requested; every other alpha > 2
// is solved by bracketed bisection on the largest sign change. Throws
// std::invalid_argument when k1 = k2 = 0 (no interior optimum; p_s(M)/M is
// maximized trivially at M = 1).
MStarSolution solve_mstar(const NetworkParams& p,
                          SolveMode mode = SolveMode::auto_closed_form);

// The three real roots of the alpha = 3 stationarity cubic in the
// three-real-root regime (discriminant < 0), largest first. Exactly one is
// positive. Requires alpha == 3 and discriminant < 0.
std::array<double, 3> mstar_alpha3_all_roots(const NetworkParams& p);

// Integer argmax of p_s(M)/M over M in {1, ..., a_cap} (unbounded when
// a_cap is absent, in which case unimodality reduces the search to the
// neighbors of the continuous root). Ties break toward smaller M.
long long mstar_integer(const NetworkParams& p,
                        std::optional<long long> a_cap = std::nullopt);

// p_s at the optimum expressed two ways, one driven by the interference
// constant k2 and one by the noise constant k1:
//   interference_form = exp((2/alpha - 1) * k2 / m*^2     - 1/alpha)
//   noise_form        = exp((alpha/2 - 1) * k1 / m*^alpha - 1/2)
// Both equal p_s(m*) when m* satisfies the stationarity equation; a
// disagreement beyond 1e-10 throws std::invalid_argument.
struct OptimalSuccess {
  double interference_form;
  double noise_form;
};

OptimalSuccess optimal_success_probability(const NetworkParams& p, double m_star);

enum class CapacityMethod { upper_bound, exact_finite_a, simulated };

std::string to_string(CapacityMethod method);

struct CapacityResult {
  double capacity;  // lambda * log(1+beta) * R * p_s(m*) / m*, continuous m*
  CapacityMethod method;
  double m_star_continuous;
  long long m_star_integer;
  double capacity_at_integer;  // same objective at the integer maximizer; <= capacity
  double p_s_at_m_star;
  double expected_attempts_per_hop;
};

// Hop-optimized budget-relaxed capacity.
CapacityResult cub_optimal(const NetworkParams& p);

// Exact high-SNR expression for alpha = 4:
//   sqrt(lambda) * log(1+beta) / (pi * beta^(1/4)) * exp(-eta/(rho*pi^4*lambda^2) - 1/2).
// Throws std::invalid_argument unless alpha == 4.
double high_snr_limit_alpha4(const NetworkParams& p);

// lim_{lambda -> inf} C_ub / sqrt(lambda) =
//   e^(-1/2) * log(1+beta) / (sqrt(2*K_alpha) * beta^(1/alpha)).
double scaling_constant(double alpha, double beta,
                        RateLogBase base = RateLogBase::natural);

namespace detail {
// log p_s at arbitrary m > 0; used internally where the continuous optimum
// may fall below one hop.
double log_ps(double k1, double k2, double alpha, double m);
}  // namespace detail

}  // namespace ratc
