#include "ratc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "ratc/analytic.hpp"
#include "ratc/finite.hpp"
#include "ratc/montecarlo.hpp"
#include "ratc/params_json.hpp"

namespace ratc::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return fmt12(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

// json null renders as an empty CSV cell; used for not-applicable columns.
json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

struct Report {
  json metadata;                 // "# " comment line (the JSON-encoded run spec)
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json summary;                  // optional trailing "# summary=" line

  void write_csv(std::ostream& out) const {
    out << "# " << metadata.dump() << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
    if (!summary.is_null()) out << "# summary=" << summary.dump() << "\n";
  }

  void write_json(std::ostream& out) const {
    json doc;
    doc["spec"] = metadata;
    doc["columns"] = columns;
    doc["rows"] = rows;
    if (!summary.is_null()) doc["summary"] = summary;
    out << doc.dump(2) << "\n";
  }

  void write(OutFormat format, std::ostream& out) const {
    if (format == OutFormat::csv)
      write_csv(out);
    else
      write_json(out);
  }
};

json sim_config_json(const RunSpec& spec) {
  json j{{"trials", spec.trials},
         {"seed", spec.seed},
         {"truncation_epsilon", spec.truncation_epsilon}};
  j["region_radius"] = spec.region_radius ? json(*spec.region_radius) : json(nullptr);
  return j;
}

json metadata_for(const RunSpec& spec, const NetworkParams& params) {
  json meta{{"command", spec.command},
            {"format", spec.format == OutFormat::csv ? "csv" : "json"},
            {"params", to_json(params)}};
  if (spec.command == "exact" || spec.command == "simulate") meta["A"] = spec.a;
  if (spec.command == "simulate") meta["sim"] = sim_config_json(spec);
  if (spec.command == "figure") meta["figure"] = spec.figure;
  if (spec.sweep)
    meta["sweep"] = json{{"var", spec.sweep->var}, {"spec", spec.sweep->spec}};
  else
    meta["sweep"] = nullptr;
  return meta;
}

RunSpec apply_sweep_value(RunSpec spec, const std::string& var, double value) {
  if (var == "lambda") spec.lambda = value;
  else if (var == "alpha") spec.alpha = value;
  else if (var == "beta") spec.beta = value;
  else if (var == "R") spec.R = value;
  else if (var == "rho") spec.rho = value;
  else if (var == "eta") { spec.eta = value; spec.snr.reset(); }
  else if (var == "snr") { spec.snr = value; spec.eta.reset(); }
  else if (var == "A") spec.a = static_cast<long long>(std::llround(value));
  else throw std::invalid_argument("unknown sweep variable \"" + var + "\" (expected a parameter field or A)");
  return spec;
}

// Upper bound restricted to integer hop counts in {1, ..., a}.
struct RestrictedBound {
  long long m_star;
  double capacity;
};

RestrictedBound cub_restricted(const NetworkParams& params, long long a) {
  const long long m_ub = mstar_integer(params, a);
  return {m_ub, cub_at(params, static_cast<double>(m_ub))};
}

int run_analytic(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.sweep && spec.sweep->var == "A") {
    err << "the analytic command has no attempt budget; sweep a parameter field instead\n";
    return kExitUsage;
  }
  Report report;
  report.metadata = metadata_for(spec, build_params(spec));
  report.columns = {"lambda", "alpha", "beta", "R", "rho", "eta", "snr",
                    "k_alpha", "k1", "k2",
                    "m_star_continuous", "m_star_integer", "method", "discriminant",
                    "p_s_m_star_interference", "p_s_m_star_noise",
                    "expected_attempts_per_hop",
                    "c_ub", "c_ub_integer_m", "scaling_constant",
                    "high_snr_limit_alpha4"};

  std::vector<RunSpec> points;
  if (spec.sweep)
    for (double v : spec.sweep->values)
      points.push_back(apply_sweep_value(spec, spec.sweep->var, v));
  else
    points.push_back(spec);

  for (const RunSpec& point : points) {
    const NetworkParams params = build_params(point);
    const DerivedConstants d = derive(params);
    const MStarSolution sol = solve_mstar(params);
    const OptimalSuccess ps = optimal_success_probability(params, sol.m_star_continuous);
    const CapacityResult cap = cub_optimal(params);
    const double high_snr =
        params.alpha() == 4.0 ? high_snr_limit_alpha4(params)
                              : std::numeric_limits<double>::quiet_NaN();
    report.rows.push_back(
        {params.lambda(), params.alpha(), params.beta(), params.R(), params.rho(),
         params.eta(), d.snr, d.k_alpha, d.k1, d.k2,
         sol.m_star_continuous, sol.m_star_integer, to_string(sol.method),
         sol.discriminant ? json(*sol.discriminant) : json(nullptr),
         ps.interference_form, ps.noise_form, 1.0 / ps.interference_form,
         cap.capacity, cap.capacity_at_integer,
         scaling_constant(params.alpha(), params.beta(), params.log_base()),
         num_or_null(high_snr)});
  }
  report.write(spec.format, out);
  return kExitOk;
}

int run_exact(const RunSpec& spec, std::ostream& out, std::ostream&) {
  Report report;
  report.metadata = metadata_for(spec, build_params(spec));

  if (spec.sweep) {
    report.columns = {spec.sweep->var, "c_exact", "m_star_exact", "p_out",
                      "c_ub", "m_star_ub"};
    for (double v : spec.sweep->values) {
      const RunSpec point = apply_sweep_value(spec, spec.sweep->var, v);
      const NetworkParams params = build_params(point);
      if (point.a < 1) throw std::invalid_argument("attempt budget A must be >= 1");
      const FiniteCapacityResult exact = capacity_finite(params, point.a);
      const RestrictedBound ub = cub_restricted(params, point.a);
      report.rows.push_back({v, exact.capacity, exact.m_star, exact.p_out,
                             ub.capacity, ub.m_star});
    }
    report.write(spec.format, out);
    return kExitOk;
  }

  const NetworkParams params = build_params(spec);
  if (spec.a < 1) throw std::invalid_argument("attempt budget A must be >= 1");
  const FiniteCapacityResult exact = capacity_finite(params, spec.a);
  const RestrictedBound ub = cub_restricted(params, spec.a);
  const double scale = params.lambda() * params.rate() * params.R();

  report.columns = {"m", "p_s", "p_delivery", "expected_attempts_capped",
                    "objective", "c_exact_at_m", "c_ub_at_m"};
  for (const PerHopCountRow& row : exact.per_m_table)
    report.rows.push_back({row.m, row.p_s, row.p_delivery,
                           row.expected_attempts_capped, row.objective,
                           scale * row.objective,
                           cub_at(params, static_cast<double>(row.m))});
  report.summary = json{{"c_exact", exact.capacity},
                        {"m_star_exact", exact.m_star},
                        {"p_out", exact.p_out},
                        {"c_ub", ub.capacity},
                        {"m_star_ub", ub.m_star}};
  report.write(spec.format, out);
  return kExitOk;
}

int run_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.sweep) {
    err << "the simulate command does not support sweeps\n";
    return kExitUsage;
  }
  const NetworkParams params = build_params(spec);
  if (spec.a < 1) throw std::invalid_argument("attempt budget A must be >= 1");
  if (spec.m && (*spec.m < 1 || *spec.m > spec.a))
    throw std::invalid_argument("M must lie in {1, ..., A}");
  mc::SimConfig cfg{spec.trials, spec.seed, spec.truncation_epsilon,
                    spec.region_radius};

  Report report;
  report.metadata = metadata_for(spec, params);
  report.columns = {"m", "trials", "seed",
                    "p_delivery_sim", "p_delivery_se", "p_delivery_exact",
                    "e_capped_sim", "e_capped_se", "e_capped_exact",
                    "objective_sim", "objective_se", "objective_exact",
                    "agree_3se"};

  std::vector<long long> hop_counts;
  if (spec.m)
    hop_counts.push_back(*spec.m);
  else
    for (long long m = 1; m <= spec.a; ++m) hop_counts.push_back(m);

  std::uint64_t floor_hits = 0;
  bool all_agree = true;
  double best_objective = -1.0;
  long long best_m = 1;
  for (long long m : hop_counts) {
    const mc::SimObjectiveRow sim =
        mc::estimate_objective_row(params, m, spec.a, cfg, &floor_hits);
    const PascalModel model{m, per_hop_success(params, static_cast<double>(m)),
                            spec.a};
    const double p_exact = prob_delivery(model);
    const double e_exact = expected_attempts_capped(model);
    const double obj_exact = p_exact / e_exact;

    // a row agrees when every estimate sits within 3 standard errors of the
    // exact value (tiny slack absorbs exact-match rows whose spread is 0)
    const auto within = [](const mc::SimEstimate& est, double exact) {
      return std::abs(est.mean - exact) <= 3.0 * est.std_error + 1e-12;
    };
    const bool agree = within(sim.p_delivery, p_exact) &&
                       within(sim.expected_attempts, e_exact) &&
                       within(sim.objective, obj_exact);
    all_agree = all_agree && agree;
    if (sim.objective.mean > best_objective) {
      best_objective = sim.objective.mean;
      best_m = m;
    }
    report.rows.push_back({m, sim.objective.trials, sim.objective.seed,
                           sim.p_delivery.mean, sim.p_delivery.std_error, p_exact,
                           sim.expected_attempts.mean, sim.expected_attempts.std_error,
                           e_exact,
                           sim.objective.mean, sim.objective.std_error, obj_exact,
                           agree ? "pass" : "fail"});
  }
  report.summary = json{
      {"capacity_sim", params.lambda() * params.rate() * params.R() * best_objective},
      {"m_star_sim", best_m},
      {"floor_hits", floor_hits}};
  report.write(spec.format, out);
  if (!all_agree) {
    err << "simulation disagrees with the exact model beyond 3 standard errors\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---- figure datasets ------------------------------------------------------

// Default study profile used where a figure does not pin a value:
// R = 1, beta = 3, alpha = 3; single-point figures use lambda = 0.1 and
// snr = 10; sweeps use lambda in logrange(1e-2, 1e3, 60) and
// snr in {0, 10, 30} dB. All of it is echoed in the metadata line.
struct FigureProfile {
  double R = 1.0;
  double beta = 3.0;
  double alpha = 3.0;
  double lambda = 0.1;
  double snr = 10.0;
};

std::vector<double> logrange(double lo, double hi, int n) {
  std::vector<double> values;
  values.reserve(n);
  for (int i = 0; i < n; ++i)
    values.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) /
                                                               (n - 1)));
  return values;
}

int run_figure(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.figure < 1 || spec.figure > 7) {
    err << "unknown figure id " << spec.figure << " (expected 1..7)\n";
    return kExitUsage;
  }
  const FigureProfile prof;
  const auto profile_params = [&](double lambda, double alpha, double snr) {
    return NetworkParams::from_snr(lambda, alpha, prof.beta, prof.R, 1.0, snr);
  };
  const std::vector<double> snr_db_set{0.0, 10.0, 30.0};
  const std::vector<double> alpha_set{3.0, 4.0};

  Report report;
  json meta{{"command", "figure"},
            {"figure", spec.figure},
            {"format", spec.format == OutFormat::csv ? "csv" : "json"},
            {"profile", {{"R", prof.R}, {"beta", prof.beta}, {"alpha", prof.alpha},
                         {"lambda", prof.lambda}, {"snr", prof.snr},
                         {"lambda_sweep", "logrange(1e-2,1e3,60)"},
                         {"snr_db_set", snr_db_set},
                         {"fig6_settings", "(lambda=0.1, snr=10 dB), (lambda=1, snr=30 dB)"}}}};
  report.metadata = meta;

  const NetworkParams base = profile_params(prof.lambda, prof.alpha, prof.snr);
  const double scale = base.lambda() * base.rate() * base.R();

  switch (spec.figure) {
    case 1: {
      report.columns = {"A", "c_exact", "c_ub"};
      for (long long a = 1; a <= 50; ++a)
        report.rows.push_back({a, capacity_finite(base, a).capacity,
                               cub_restricted(base, a).capacity});
      break;
    }
    case 2:
    case 3: {
      const long long a = spec.figure == 2 ? 6 : 12;
      report.columns = {"m", "c_exact_at_m", "c_ub_at_m"};
      const FiniteCapacityResult exact = capacity_finite(base, a);
      for (const PerHopCountRow& row : exact.per_m_table)
        report.rows.push_back({row.m, scale * row.objective,
                               cub_at(base, static_cast<double>(row.m))});
      break;
    }
    case 4: {
      report.columns = {"A", "m_star_exact", "m_star_ub"};
      for (long long a = 1; a <= 50; ++a)
        report.rows.push_back({a, capacity_finite(base, a).m_star,
                               mstar_integer(base, a)});
      break;
    }
    case 5: {
      report.columns = {"alpha", "snr_db", "lambda", "m_star_continuous",
                        "m_star_over_sqrt_lambda"};
      for (double alpha : alpha_set)
        for (double snr_db : snr_db_set)
          for (double lambda : logrange(1e-2, 1e3, 60)) {
            const NetworkParams params =
                profile_params(lambda, alpha, std::pow(10.0, snr_db / 10.0));
            const double m_star = solve_mstar(params).m_star_continuous;
            report.rows.push_back({alpha, snr_db, lambda, m_star,
                                   m_star / std::sqrt(lambda)});
          }
      break;
    }
    case 6: {
      report.columns = {"lambda", "snr_db", "m", "c_ub_at_m"};
      const std::vector<std::pair<double, double>> settings{{0.1, 10.0}, {1.0, 30.0}};
      for (const auto& [lambda, snr_db] : settings) {
        const NetworkParams params =
            profile_params(lambda, prof.alpha, std::pow(10.0, snr_db / 10.0));
        for (long long m = 1; m <= 40; ++m)
          report.rows.push_back({lambda, snr_db, m,
                                 cub_at(params, static_cast<double>(m))});
      }
      break;
    }
    case 7: {
      report.columns = {"alpha", "snr_db", "lambda", "c_ub_over_sqrt_lambda",
                        "scaling_constant"};
      for (double alpha : alpha_set)
        for (double snr_db : snr_db_set)
          for (double lambda : logrange(1e-2, 1e3, 60)) {
            const NetworkParams params =
                profile_params(lambda, alpha, std::pow(10.0, snr_db / 10.0));
            report.rows.push_back({alpha, snr_db, lambda,
                                   cub_optimal(params).capacity / std::sqrt(lambda),
                                   scaling_constant(alpha, prof.beta)});
          }
      break;
    }
    default:
      return kExitUsage;
  }
  report.write(spec.format, out);
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct WorstCase {
  double value = 0.0;
  std::string where;

  void update(double v, const std::string& w) {
    if (v > value) {
      value = v;
      where = w;
    }
  }
};

std::string tuple_tag(long long a, long long m, double p) {
  std::ostringstream os;
  os << "(A=" << a << ", M=" << m << ", p=" << p << ")";
  return os.str();
}

int run_verify(const RunSpec& spec, std::ostream& out, std::ostream&) {
  bool pass = true;
  long long checks = 0;

  // --- finite-budget grid ---------------------------------------------
  double min_gap = std::numeric_limits<double>::infinity();
  std::string min_gap_at;
  WorstCase delta_err, pair_sum_err, recursion_err, ratio_err, route_err;
  const double perturbation = spec.perturb ? 0.02 : 0.0;

  for (long long a = 1; a <= 30; ++a) {
    for (int pi = 1; pi <= 19; ++pi) {
      const double p = 0.05 * pi;
      for (long long m = 0; m <= a; ++m) {
        const PascalModel model{m, p, a};
        ++checks;

        const double gap = attempt_bound_gap(model);
        if (gap < min_gap) {
          min_gap = gap;
          min_gap_at = tuple_tag(a, m, p);
        }

        if (m >= 1) {
          // relative: the rearranged route divides by p, which scales its
          // rounding floor past any fixed absolute tolerance
          const double direct = expected_attempts_capped(model);
          const double tails = expected_attempts_capped_from_tails(model);
          route_err.update(std::abs(direct - tails) / std::max(1.0, direct),
                           tuple_tag(a, m, p));
        }

        if (m <= a - 1) {
          // closed form of the gap increment; the perturbation is the
          // negative control knob and must trip the check when nonzero
          const double p_used = std::min(p + perturbation, 1.0);
          const double closed =
              static_cast<double>(m) * binom_pmf(a, p_used, m);
          delta_err.update(std::abs(attempt_bound_gap_delta(model) - closed),
                           tuple_tag(a, m, p));

          // p * sum_{n=m}^{a} P(S_n = m) = P(S_{a+1} >= m+1)
          double partial = 0.0;
          for (long long n = m; n <= a; ++n) partial += binom_pmf(n, p, m);
          pair_sum_err.update(std::abs(p * partial - binom_sf(a + 1, p, m + 1)),
                              tuple_tag(a, m, p));

          // (1-p)(m+1) P(S_a = m+1) = p (a-m) P(S_a = m)
          ratio_err.update(
              std::abs((1.0 - p) * static_cast<double>(m + 1) * binom_pmf(a, p, m + 1) -
                       p * static_cast<double>(a - m) * binom_pmf(a, p, m)),
              tuple_tag(a, m, p));
        }

        // P(S_a <= m-1) = (1-p) P(S_{a-1} <= m-1) + p P(S_{a-1} <= m-2)
        recursion_err.update(
            std::abs(binom_cdf(a, p, m - 1) -
                     ((1.0 - p) * binom_cdf(a - 1, p, m - 1) +
                      p * binom_cdf(a - 1, p, m - 2))),
            tuple_tag(a, m, p));
      }
    }
  }

  const bool finite_ok = min_gap >= -1e-12 && delta_err.value <= 1e-12 &&
                         pair_sum_err.value <= 1e-12 &&
                         recursion_err.value <= 1e-12 &&
                         ratio_err.value <= 1e-12 && route_err.value <= 1e-12;
  pass = pass && finite_ok;

  out << "bound-gap grid: A in 1..30, M in 0..A, p in 0.05..0.95 step 0.05 ("
      << checks << " models)\n";
  if (spec.perturb) out << "  negative control active: p biased by +0.02 in the gap-increment closed form\n";
  out << "  min gap                       : " << fmt12(min_gap) << "  at " << min_gap_at << "\n";
  out << "  worst |delta - m*P(S_A=m)|    : " << fmt12(delta_err.value) << "  at " << delta_err.where << "\n";
  out << "  worst tail pair-sum residual  : " << fmt12(pair_sum_err.value) << "  at " << pair_sum_err.where << "\n";
  out << "  worst tail recursion residual : " << fmt12(recursion_err.value) << "  at " << recursion_err.where << "\n";
  out << "  worst mass ratio residual     : " << fmt12(ratio_err.value) << "  at " << ratio_err.where << "\n";
  out << "  worst capped-mean route (rel) : " << fmt12(route_err.value) << "  at " << route_err.where << "\n";
  out << "  " << (finite_ok ? "PASS" : "FAIL") << "\n";

  // --- analytic grid ----------------------------------------------------
  WorstCase root_residual, first_order, form_spread, closed_vs_numeric,
      vieta_err;
  long long regime_mismatches = 0, positive_root_violations = 0, points = 0;
  const double inf = std::numeric_limits<double>::infinity();

  for (double lambda : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3})
    for (double snr : {1.0, 10.0, 100.0, inf})
      for (double beta : {1.0, 3.0, 10.0})
        for (double alpha : {2.5, 3.0, 3.5, 4.0, 5.0, 6.0})
          for (double R : {0.5, 1.0, 2.0}) {
            const NetworkParams params =
                NetworkParams::from_snr(lambda, alpha, beta, R, 1.0, snr);
            const DerivedConstants d = derive(params);
            std::ostringstream tag;
            tag << "(lambda=" << lambda << ", snr=" << snr << ", beta=" << beta
                << ", alpha=" << alpha << ", R=" << R << ")";
            ++points;

            const MStarSolution sol = solve_mstar(params);
            const double m = sol.m_star_continuous;
            const double g = std::pow(m, alpha) -
                             2.0 * d.k2 * std::pow(m, alpha - 2.0) -
                             alpha * d.k1;
            root_residual.update(
                std::abs(g) / std::max(std::pow(m, alpha), 1.0), tag.str());
            first_order.update(std::abs(1.0 - d.k1 * alpha * std::pow(m, -alpha) -
                                        2.0 * d.k2 / (m * m)),
                               tag.str());

            const OptimalSuccess ps = optimal_success_probability(params, m);
            const double ps_direct = std::exp(detail::log_ps(d.k1, d.k2, alpha, m));
            form_spread.update(
                std::max(std::abs(ps.interference_form - ps.noise_form),
                         std::abs(ps.interference_form - ps_direct)),
                tag.str());

            if (alpha == 3.0 || alpha == 4.0) {
              const double numeric =
                  solve_mstar(params, SolveMode::force_numeric).m_star_continuous;
              closed_vs_numeric.update(std::abs(m - numeric) / numeric, tag.str());
            }
            if (alpha == 3.0) {
              // discriminant sign must match the density threshold
              // lambda <= (3/2)^(5/3) (eta/rho)^(2/3) / K_3
              const double threshold =
                  std::pow(1.5, 5.0 / 3.0) *
                  std::pow(params.eta() / params.rho(), 2.0 / 3.0) /
                  kappa_alpha(3.0);
              const bool predicted_nonneg = lambda <= threshold;
              if (predicted_nonneg != (*sol.discriminant >= 0.0)) ++regime_mismatches;
              if (*sol.discriminant < 0.0) {
                const auto roots = mstar_alpha3_all_roots(params);
                // k1 = 0 makes the middle root exactly zero; ignore its
                // rounding noise when counting
                int positive = 0;
                for (double r : roots) positive += r > 1e-12 * roots[0];
                if (positive != 1) ++positive_root_violations;
                const double prod = roots[0] * roots[1] * roots[2];
                const double pair = roots[0] * roots[1] + roots[0] * roots[2] +
                                    roots[1] * roots[2];
                vieta_err.update(
                    std::max(std::abs(prod - 3.0 * d.k1) / std::max(3.0 * d.k1, 1.0),
                             std::abs(pair + 2.0 * d.k2) / std::max(2.0 * d.k2, 1.0)),
                    tag.str());
              }
            }
          }

  const bool analytic_ok =
      root_residual.value <= 1e-9 && first_order.value <= 1e-9 &&
      form_spread.value <= 1e-10 && closed_vs_numeric.value <= 1e-9 &&
      regime_mismatches == 0 && positive_root_violations == 0 &&
      vieta_err.value <= 1e-9;
  pass = pass && analytic_ok;

  out << "optimal-hop grid: lambda {1e-3..1e3}, snr {1,10,100,inf}, beta {1,3,10}, "
         "alpha {2.5,3,3.5,4,5,6}, R {0.5,1,2} (" << points << " points)\n";
  out << "  worst root residual (rel)     : " << fmt12(root_residual.value) << "  at " << root_residual.where << "\n";
  out << "  worst first-order residual    : " << fmt12(first_order.value) << "  at " << first_order.where << "\n";
  out << "  worst optimal-p_s form spread : " << fmt12(form_spread.value) << "  at " << form_spread.where << "\n";
  out << "  worst closed vs numeric (rel) : " << fmt12(closed_vs_numeric.value) << "  at " << closed_vs_numeric.where << "\n";
  out << "  discriminant regime mismatches: " << regime_mismatches << "\n";
  out << "  cubic positive-root violations: " << positive_root_violations << "\n";
  out << "  worst cubic vieta residual    : " << fmt12(vieta_err.value) << "  at " << vieta_err.where << "\n";
  out << "  " << (analytic_ok ? "PASS" : "FAIL") << "\n";

  out << "verify: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitVerification;
}

}  // namespace

std::vector<double> parse_sweep_values(const std::string& text) {
  std::vector<double> values;
  const std::string logrange_prefix = "logrange(";
  if (text.rfind(logrange_prefix, 0) == 0 && text.back() == ')') {
    const std::string inner =
        text.substr(logrange_prefix.size(), text.size() - logrange_prefix.size() - 1);
    double lo = 0.0, hi = 0.0;
    int n = 0;
    char extra = 0;
    if (std::sscanf(inner.c_str(), "%lf , %lf , %d %c", &lo, &hi, &n, &extra) != 3 ||
        !(lo > 0.0) || !(hi > 0.0) || n < 1)
      throw std::invalid_argument("bad logrange spec \"" + text +
                                  "\" (expected logrange(lo,hi,n) with lo,hi > 0, n >= 1)");
    return logrange(lo, hi, n);
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("bad sweep value \"" + item + "\"");
    values.push_back(v);
  }
  if (values.empty())
    throw std::invalid_argument("empty sweep value list");
  return values;
}

void load_config_file(const std::string& path, RunSpec& spec) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("bad config file \"" + path + "\": " + e.what());
  }
  if (j.contains("lambda")) spec.lambda = j["lambda"].get<double>();
  if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) spec.beta = j["beta"].get<double>();
  if (j.contains("R")) spec.R = j["R"].get<double>();
  if (j.contains("rho")) spec.rho = j["rho"].get<double>();
  if (j.contains("eta")) {
    spec.eta = j["eta"].get<double>();
    spec.snr.reset();
  }
  if (j.contains("rate_log_base"))
    spec.log_base = j["rate_log_base"].get<std::string>();
}

NetworkParams build_params(const RunSpec& spec) {
  if (spec.eta && spec.snr)
    throw std::invalid_argument("eta and snr are mutually exclusive");
  const RateLogBase base = rate_log_base_from_string(spec.log_base);
  if (spec.eta)
    return NetworkParams(spec.lambda, spec.alpha, spec.beta, spec.R, spec.rho,
                         *spec.eta, base);
  return NetworkParams::from_snr(spec.lambda, spec.alpha, spec.beta, spec.R,
                                 spec.rho, spec.snr.value_or(10.0), base);
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.command == "analytic") return run_analytic(spec, out, err);
    if (spec.command == "exact") return run_exact(spec, out, err);
    if (spec.command == "simulate") return run_simulate(spec, out, err);
    if (spec.command == "figure") return run_figure(spec, out, err);
    if (spec.command == "verify") return run_verify(spec, out, err);
    err << "unknown command \"" << spec.command << "\"\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ratc::cli
