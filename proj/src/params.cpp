#include "ratc/params.hpp"

#include <limits>

namespace ratc {

std::string to_string(RateLogBase base) {
  return base == RateLogBase::natural ? "natural" : "base2";
}

RateLogBase rate_log_base_from_string(const std::string& s) {
  if (s == "natural") return RateLogBase::natural;
  if (s == "base2") return RateLogBase::base2;
  throw std::invalid_argument("rate_log_base must be \"natural\" or \"base2\", got \"" + s + "\"");
}

double rate_term(double beta, RateLogBase base) {
  const double nats = std::log1p(beta);
  return base == RateLogBase::natural ? nats : nats / std::log(2.0);
}

double kappa_alpha(double alpha) {
  if (!(alpha > 2.0))
    throw std::invalid_argument("path loss exponent alpha must exceed 2 (K_alpha diverges at alpha = 2)");
  const double pi = std::acos(-1.0);
  return 2.0 * pi * pi / (alpha * std::sin(2.0 * pi / alpha));
}

NetworkParams::NetworkParams(double lambda, double alpha, double beta, double R,
                             double rho, double eta, RateLogBase base)
    : lambda_(lambda), alpha_(alpha), beta_(beta), r_(R), rho_(rho), eta_(eta),
      log_base_(base) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("interferer density lambda must be finite and >= 0");
  if (!(alpha > 2.0) || !std::isfinite(alpha))
    throw std::invalid_argument("path loss exponent alpha must exceed 2");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("SINR threshold beta must be finite and > 0");
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("source-destination distance R must be finite and > 0");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("transmit power rho must be finite and > 0");
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("noise power eta must be finite and >= 0");
  if (eta == 0.0 && lambda == 0.0)
    throw std::invalid_argument("eta = 0 and lambda = 0 together are degenerate (every transmission succeeds; no optimal hop count exists)");
}

NetworkParams NetworkParams::from_snr(double lambda, double alpha, double beta,
                                      double R, double rho, double snr,
                                      RateLogBase base) {
  if (!(snr > 0.0))
    throw std::invalid_argument("snr must be > 0 (may be +infinity)");
  const double eta = std::isinf(snr) ? 0.0 : rho * std::pow(R, -alpha) / snr;
  return NetworkParams(lambda, alpha, beta, R, rho, eta, base);
}

DerivedConstants derive(const NetworkParams& p) {
  DerivedConstants d;
  d.k_alpha = kappa_alpha(p.alpha());
  d.snr = p.eta() == 0.0 ? std::numeric_limits<double>::infinity()
                         : p.rho() * std::pow(p.R(), -p.alpha()) / p.eta();
  d.k1 = p.beta() * p.eta() * std::pow(p.R(), p.alpha()) / p.rho();
  d.k2 = p.lambda() * std::pow(p.beta(), 2.0 / p.alpha()) * d.k_alpha * p.R() * p.R();
  return d;
}

}  // namespace ratc
