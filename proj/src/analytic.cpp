#include "ratc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratc {

namespace detail {

double log_ps(double k1, double k2, double alpha, double m) {
  return -k1 * std::pow(m, -alpha) - k2 / (m * m);
}

}  // namespace detail

namespace {

double ps_at(const DerivedConstants& d, double alpha, double m) {
  return std::exp(detail::log_ps(d.k1, d.k2, alpha, m));
}

// g(M) = M^alpha - 2*k2*M^(alpha-2) - alpha*k1
double stationarity_poly(double k1, double k2, double alpha, double m) {
  return std::pow(m, alpha) - 2.0 * k2 * std::pow(m, alpha - 2.0) - alpha * k1;
}

// Largest positive root of g. g has exactly one positive root beyond the
// stationary point of M^alpha - 2*k2*M^(alpha-2), so a right-to-left scan
// over the bracket cannot miss it.
double solve_numeric(double k1, double k2, double alpha) {
  const double lo_limit = 1e-6;
  double hi = 10.0 * std::max({2.0 * std::sqrt(2.0 * k2),
                               2.0 * std::pow(alpha * k1, 1.0 / alpha), 1.0});
  while (!(stationarity_poly(k1, k2, alpha, hi) > 0.0)) hi *= 2.0;

  // scan from the right for the first sign change
  const int scan_points = 256;
  const double step = std::pow(hi / lo_limit, 1.0 / scan_points);
  double above = hi;
  double below = lo_limit;
  for (double m = hi / step; m > lo_limit; m /= step) {
    if (stationarity_poly(k1, k2, alpha, m) <= 0.0) {
      below = m;
      break;
    }
    above = m;
  }

  // bisection to relative 1e-13
  for (int i = 0; i < 200 && (above - below) > 1e-13 * above; ++i) {
    const double mid = 0.5 * (below + above);
    if (stationarity_poly(k1, k2, alpha, mid) <= 0.0)
      below = mid;
    else
      above = mid;
  }
  return 0.5 * (below + above);
}

// Discriminant of the depressed cubic M^3 - 2*k2*M - 3*k1.
double cubic_discriminant(double k1, double k2) {
  return 2.25 * k1 * k1 - (8.0 / 27.0) * k2 * k2 * k2;
}

// Three-real-root branch of M^3 - 2*k2*M - 3*k1 = 0. With
// phi = arccos(3*k1/(2*zeta)), zeta = (2/3)*sqrt(2*k2^3/3), the roots are
// 2*sqrt(2*k2/3)*cos(phi/3 - 2*pi*j/3). Writing w = arcsin(3*k1/(2*zeta))/3
// (so phi/3 = pi/6 - w) keeps the near-zero middle root relatively accurate
// when k1 is tiny.
struct TrigRoots {
  double largest, middle, smallest;
};

TrigRoots alpha3_trig_roots(double k1, double k2) {
  const double zeta = (2.0 / 3.0) * std::sqrt(2.0 * k2 * k2 * k2 / 3.0);
  const double w = std::asin(std::clamp(1.5 * k1 / zeta, -1.0, 1.0)) / 3.0;
  const double amp = 2.0 * std::sqrt(2.0 * k2 / 3.0);
  const double pi = std::acos(-1.0);
  return {amp * std::cos(pi / 6.0 - w), -amp * std::sin(w),
          -amp * std::cos(pi / 6.0 + w)};
}

double solve_alpha3(double k1, double k2, MStarMethod& method) {
  if (cubic_discriminant(k1, k2) >= 0.0) {
    method = MStarMethod::closed_form_alpha3_cardano;
    const double s = std::sqrt(cubic_discriminant(k1, k2));
    // 1.5*k1 - s cancels when k2 is small; its conjugate form
    // (8/27)*k2^3 / (1.5*k1 + s) is exact (k1 > 0 whenever D >= 0 here)
    const double minor = (8.0 / 27.0) * k2 * k2 * k2 / (1.5 * k1 + s);
    return std::cbrt(1.5 * k1 + s) + std::cbrt(minor);
  }
  // three real roots; the largest is the single positive one
  method = MStarMethod::closed_form_alpha3_trig;
  return alpha3_trig_roots(k1, k2).largest;
}

double solve_alpha4(double k1, double k2) {
  return std::sqrt(k2 + std::sqrt(k2 * k2 + 4.0 * k1));
}

double objective(const DerivedConstants& d, double alpha, double m) {
  return ps_at(d, alpha, m) / m;
}

struct ContinuousSolve {
  double m;
  MStarMethod method;
  std::optional<double> discriminant;
};

ContinuousSolve solve_continuous(const NetworkParams& p, const DerivedConstants& d,
                                 SolveMode mode) {
  if (d.k1 == 0.0 && d.k2 == 0.0)
    throw std::invalid_argument("k1 = k2 = 0 is degenerate: p_s(M)/M has no interior optimum");

  ContinuousSolve sol;
  sol.method = MStarMethod::numeric;
  if (p.alpha() == 3.0) sol.discriminant = cubic_discriminant(d.k1, d.k2);

  if (mode == SolveMode::auto_closed_form && p.alpha() == 3.0) {
    MStarMethod method;
    sol.m = solve_alpha3(d.k1, d.k2, method);
    sol.method = method;
  } else if (mode == SolveMode::auto_closed_form && p.alpha() == 4.0) {
    sol.m = solve_alpha4(d.k1, d.k2);
    sol.method = MStarMethod::closed_form_alpha4;
  } else {
    sol.m = solve_numeric(d.k1, d.k2, p.alpha());
  }
  return sol;
}

// p_s(M)/M is unimodal with its peak at the continuous root, so the integer
// argmax is among {1, floor, ceil} clamped to the cap; ties break toward
// smaller M.
long long integer_argmax(const NetworkParams& p, const DerivedConstants& d,
                         double m_continuous, std::optional<long long> a_cap) {
  long long lo = std::max<long long>(1, static_cast<long long>(std::floor(m_continuous)));
  long long hi = std::max<long long>(1, static_cast<long long>(std::ceil(m_continuous)));
  if (a_cap) {
    lo = std::min(lo, *a_cap);
    hi = std::min(hi, *a_cap);
  }
  if (lo == hi) return lo;
  return objective(d, p.alpha(), static_cast<double>(lo)) >=
                 objective(d, p.alpha(), static_cast<double>(hi))
             ? lo
             : hi;
}

}  // namespace

std::string to_string(MStarMethod method) {
  switch (method) {
    case MStarMethod::closed_form_alpha3_cardano: return "closed_form_alpha3_cardano";
    case MStarMethod::closed_form_alpha3_trig: return "closed_form_alpha3_trig";
    case MStarMethod::closed_form_alpha4: return "closed_form_alpha4";
    case MStarMethod::numeric: return "numeric";
  }
  return "unknown";
}

std::string to_string(CapacityMethod method) {
  switch (method) {
    case CapacityMethod::upper_bound: return "upper-bound";
    case CapacityMethod::exact_finite_a: return "exact-finite-A";
    case CapacityMethod::simulated: return "simulated";
  }
  return "unknown";
}

HopPlan make_hop_plan(const NetworkParams& p, double m) {
  const double ps = per_hop_success(p, m);
  return HopPlan{m, p.R() / m, ps, 1.0 / ps};
}

double single_hop_success(const NetworkParams& p) {
  const DerivedConstants d = derive(p);
  return std::exp(-d.k1 - d.k2);
}

double per_hop_success(const NetworkParams& p, double m) {
  if (!(m >= 1.0))
    throw std::invalid_argument("hop count m must be >= 1");
  const DerivedConstants d = derive(p);
  return ps_at(d, p.alpha(), m);
}

double single_hop_capacity(const NetworkParams& p) {
  return single_hop_success(p) * p.lambda() * p.rate() * p.R();
}

double cub_at(const NetworkParams& p, double m) {
  return p.lambda() * p.rate() * p.R() * per_hop_success(p, m) / m;
}

MStarSolution solve_mstar(const NetworkParams& p, SolveMode mode) {
  const DerivedConstants d = derive(p);
  const ContinuousSolve sol = solve_continuous(p, d, mode);
  return MStarSolution{sol.m, integer_argmax(p, d, sol.m, std::nullopt),
                       sol.method, sol.discriminant};
}

std::array<double, 3> mstar_alpha3_all_roots(const NetworkParams& p) {
  if (p.alpha() != 3.0)
    throw std::invalid_argument("three-real-root form requires alpha == 3");
  const DerivedConstants d = derive(p);
  if (!(cubic_discriminant(d.k1, d.k2) < 0.0))
    throw std::invalid_argument("three-real-root form requires a negative discriminant");
  const TrigRoots roots = alpha3_trig_roots(d.k1, d.k2);
  return {roots.largest, roots.middle, roots.smallest};
}

long long mstar_integer(const NetworkParams& p, std::optional<long long> a_cap) {
  if (a_cap && *a_cap < 1)
    throw std::invalid_argument("a_cap must be >= 1");
  const DerivedConstants d = derive(p);
  if (d.k1 == 0.0 && d.k2 == 0.0) return 1;
  const ContinuousSolve sol = solve_continuous(p, d, SolveMode::auto_closed_form);
  return integer_argmax(p, d, sol.m, a_cap);
}

OptimalSuccess optimal_success_probability(const NetworkParams& p, double m_star) {
  if (!(m_star > 0.0))
    throw std::invalid_argument("m_star must be > 0");
  const DerivedConstants d = derive(p);
  const double a = p.alpha();
  OptimalSuccess s;
  s.interference_form =
      std::exp((2.0 / a - 1.0) * d.k2 / (m_star * m_star) - 1.0 / a);
  s.noise_form =
      std::exp((a / 2.0 - 1.0) * d.k1 * std::pow(m_star, -a) - 0.5);
  if (std::abs(s.interference_form - s.noise_form) > 1e-10)
    throw std::invalid_argument("optimal-success forms disagree: m_star does not satisfy the stationarity equation");
  return s;
}

CapacityResult cub_optimal(const NetworkParams& p) {
  const DerivedConstants d = derive(p);
  const MStarSolution sol = solve_mstar(p);
  const double scale = p.lambda() * p.rate() * p.R();

  CapacityResult r;
  r.method = CapacityMethod::upper_bound;
  r.m_star_continuous = sol.m_star_continuous;
  r.m_star_integer = sol.m_star_integer;
  r.p_s_at_m_star = ps_at(d, p.alpha(), sol.m_star_continuous);
  r.expected_attempts_per_hop = 1.0 / r.p_s_at_m_star;
  r.capacity = scale * objective(d, p.alpha(), sol.m_star_continuous);
  r.capacity_at_integer =
      scale * objective(d, p.alpha(), static_cast<double>(sol.m_star_integer));
  return r;
}

double high_snr_limit_alpha4(const NetworkParams& p) {
  if (p.alpha() != 4.0)
    throw std::invalid_argument("the high-SNR expression applies to alpha == 4 only");
  const double pi = std::acos(-1.0);
  const double pi4 = pi * pi * pi * pi;
  const double noise_term =
      p.lambda() > 0.0
          ? p.eta() / (p.rho() * pi4 * p.lambda() * p.lambda())
          : std::numeric_limits<double>::infinity();
  return std::sqrt(p.lambda()) * p.rate() /
         (pi * std::pow(p.beta(), 0.25)) * std::exp(-noise_term - 0.5);
}

double scaling_constant(double alpha, double beta, RateLogBase base) {
  if (!(beta > 0.0))
    throw std::invalid_argument("beta must be > 0");
  const double k = kappa_alpha(alpha);  // rejects alpha <= 2
  return std::exp(-0.5) * rate_term(beta, base) /
         (std::sqrt(2.0 * k) * std::pow(beta, 1.0 / alpha));
}

}  // namespace ratc
