#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ratc/params.hpp"

namespace ratc::cli {

enum class OutFormat { csv, json };

struct SweepSpec {
  std::string var;  // lambda | alpha | beta | R | rho | eta | snr | A
  std::string spec; // original text, echoed in report metadata
  std::vector<double> values;
};

// Everything one invocation needs. Parameter inputs are raw here; they are
// validated when NetworkParams is constructed, per sweep point.
struct RunSpec {
  std::string command;  // analytic | exact | simulate | figure | verify
  double lambda = 0.1;
  double alpha = 3.0;
  double beta = 3.0;
  double R = 1.0;
  double rho = 1.0;
  std::optional<double> eta;  // mutually exclusive with snr
  std::optional<double> snr;  // defaults to 10 when neither is given
  std::string log_base = "natural";
  long long a = 12;
  std::optional<long long> m;  // simulate: single hop count instead of 1..A
  long long trials = 10000;
  std::uint64_t seed = 1;
  double truncation_epsilon = 1e-3;
  std::optional<double> region_radius;
  int figure = 0;       // figure command only
  bool perturb = false; // verify: negative control, must make it fail
  std::optional<SweepSpec> sweep;
  OutFormat format = OutFormat::csv;
};

// Parses "v1,v2,..." or "logrange(lo,hi,n)".
std::vector<double> parse_sweep_values(const std::string& text);

// Loads parameter fields from a JSON config file into the spec; fields the
// file omits keep their current values. Flags are applied afterwards by the
// caller, so they override the file. Throws std::invalid_argument on
// unreadable or malformed files.
void load_config_file(const std::string& path, RunSpec& spec);

// Resolves the eta/snr parameterization and validates.
NetworkParams build_params(const RunSpec& spec);

// Runs one command, writing the report to `out` and diagnostics to `err`.
// Exit codes: 0 success, 2 parameter/usage error, 3 verification failure.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace ratc::cli
