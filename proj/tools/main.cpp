#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ratc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"random access transport capacity: closed-form bound, exact finite-budget value, and Monte Carlo validation"};
  app.require_subcommand(1);

  double lambda = 0.1, alpha = 3.0, beta = 3.0, R = 1.0, rho = 1.0;
  double eta = 0.0, snr = 10.0, eps = 1e-3, region_radius = 0.0;
  std::string log_base = "natural", config_path, sweep_text, out_path, format = "csv";
  long long a = 12, m = 1, trials = 10000;
  std::uint64_t seed = 1;
  int figure = 0;
  bool perturb = false;

  CLI::App* analytic = app.add_subcommand("analytic", "optimal hop count and the hop-optimized capacity bound");
  CLI::App* exact = app.add_subcommand("exact", "exact finite-budget capacity C(A) with the per-M table");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates with 3-sigma agreement flags");
  CLI::App* figure_cmd = app.add_subcommand("figure", "study dataset behind one of the standard figures");
  CLI::App* verify = app.add_subcommand("verify", "identity and property grids; nonzero exit on any violation");

  for (CLI::App* cmd : {analytic, exact, simulate, figure_cmd, verify}) {
    cmd->add_option("--lambda", lambda, "interferer density (per unit area, >= 0)");
    cmd->add_option("--alpha", alpha, "path loss exponent (> 2)");
    cmd->add_option("--beta", beta, "per-hop SINR threshold (linear, > 0)");
    cmd->add_option("--R", R, "source-destination distance (> 0)");
    cmd->add_option("--rho", rho, "transmit power (> 0)");
    CLI::Option* eta_opt = cmd->add_option("--eta", eta, "noise power (>= 0)");
    CLI::Option* snr_opt = cmd->add_option("--snr", snr, "end-to-end SNR (> 0); alternative to --eta");
    eta_opt->excludes(snr_opt);
    snr_opt->excludes(eta_opt);
    cmd->add_option("--log-base", log_base, "rate log base: natural | base2")
        ->check(CLI::IsMember({"natural", "base2"}));
    cmd->add_option("--config", config_path, "JSON file with parameter fields (flags override)");
    cmd->add_option("--out", out_path, "write the report here instead of stdout");
    cmd->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  for (CLI::App* cmd : {analytic, exact})
    cmd->add_option("--sweep", sweep_text, "<var>=v1,v2,... or <var>=logrange(lo,hi,n)");
  for (CLI::App* cmd : {exact, simulate})
    cmd->add_option("--A", a, "attempt budget (>= 1)");
  simulate->add_option("--M", m, "simulate a single hop count instead of 1..A");
  simulate->add_option("--trials", trials, "Monte Carlo trials per hop count");
  simulate->add_option("--seed", seed, "RNG seed (same seed => identical output bytes)");
  simulate->add_option("--truncation-epsilon", eps, "relative far-field truncation bias bound");
  simulate->add_option("--region-radius", region_radius, "override the derived interference disk radius");
  figure_cmd->add_option("--figure", figure, "figure id, 1..7")->required();
  verify->add_flag("--perturb", perturb, "negative control: bias one identity so verification must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  ratc::cli::RunSpec spec;
  spec.command = sub->get_name();

  // not every option exists on every subcommand
  const auto given = [sub](const char* name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  if (given("--config")) {
    try {
      ratc::cli::load_config_file(config_path, spec);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  if (given("--lambda")) spec.lambda = lambda;
  if (given("--alpha")) spec.alpha = alpha;
  if (given("--beta")) spec.beta = beta;
  if (given("--R")) spec.R = R;
  if (given("--rho")) spec.rho = rho;
  if (given("--eta")) {
    spec.eta = eta;
    spec.snr.reset();
  }
  if (given("--snr")) {
    spec.snr = snr;
    spec.eta.reset();
  }
  if (given("--log-base")) spec.log_base = log_base;
  if (given("--A")) spec.a = a;
  if (given("--M")) spec.m = m;
  spec.trials = trials;
  spec.seed = seed;
  spec.truncation_epsilon = eps;
  if (given("--region-radius")) spec.region_radius = region_radius;
  spec.figure = figure;
  spec.perturb = perturb;
  spec.format = format == "json" ? ratc::cli::OutFormat::json : ratc::cli::OutFormat::csv;

  if (given("--sweep")) {
    const std::size_t pos = sweep_text.find('=');
    if (pos == std::string::npos) {
      std::cerr << "bad --sweep \"" << sweep_text << "\" (expected <var>=<values>)\n";
      return 2;
    }
    ratc::cli::SweepSpec sweep;
    sweep.var = sweep_text.substr(0, pos);
    sweep.spec = sweep_text.substr(pos + 1);
    try {
      sweep.values = ratc::cli::parse_sweep_values(sweep.spec);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    spec.sweep = sweep;
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file \"" << out_path << "\"\n";
      return 2;
    }
    return ratc::cli::run(spec, out, std::cerr);
  }
  return ratc::cli::run(spec, std::cout, std::cerr);
}
