#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ratc {

// Base used for the spectral-efficiency term log(1+beta). All ratios and
// argmaxes are invariant to the choice; only the units of reported
// capacities change (nats vs bits per s/Hz/m).
enum class RateLogBase { natural, base2 };

std::string to_string(RateLogBase base);
RateLogBase rate_log_base_from_string(const std::string& s);

// log(1+beta) in the configured base.
double rate_term(double beta, RateLogBase base);

// K_alpha = 2*pi^2 / (alpha * sin(2*pi/alpha)). Finite and positive for
// alpha > 2; diverges as alpha -> 2+. Throws std::invalid_argument for
// alpha <= 2.
double kappa_alpha(double alpha);

// Physical scenario for one source-destination pair embedded in a Poisson
// field of interferers. Immutable; construction validates:
//   lambda >= 0, alpha > 2, beta > 0, R > 0, rho > 0, eta >= 0,
//   and not (eta == 0 and lambda == 0).
class NetworkParams {
 public:
  NetworkParams(double lambda, double alpha, double beta, double R, double rho,
                double eta, RateLogBase base = RateLogBase::natural);

  // Alternative parameterization: eta is recovered as rho * R^-alpha / snr.
  // snr may be +infinity (noise-free, eta = 0).
  static NetworkParams from_snr(double lambda, double alpha, double beta,
                                double R, double rho, double snr,
                                RateLogBase base = RateLogBase::natural);

  double lambda() const { return lambda_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double R() const { return r_; }
  double rho() const { return rho_; }
  double eta() const { return eta_; }
  RateLogBase log_base() const { return log_base_; }

  // log(1+beta) in the configured base.
  double rate() const { return rate_term(beta_, log_base_); }

 private:
  double lambda_;
  double alpha_;
  double beta_;
  double r_;
  double rho_;
  double eta_;
  RateLogBase log_base_;
};

// Constants every capacity expression is written in terms of.
struct DerivedConstants {
  double k_alpha;  // 2*pi^2 / (alpha * sin(2*pi/alpha))
  double snr;      // rho * R^-alpha / eta; +inf when eta == 0
  double k1;       // beta / snr = beta * eta * R^alpha / rho; 0 when eta == 0
  double k2;       // lambda * beta^(2/alpha) * K_alpha * R^2
};

DerivedConstants derive(const NetworkParams& p);

}  // namespace ratc
