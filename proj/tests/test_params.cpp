#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "ratc/params.hpp"
#include "ratc/params_json.hpp"

using namespace ratc;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("kappa_alpha known values") {
  // alpha = 4: exactly pi^2/2
  CHECK(std::abs(kappa_alpha(4.0) - kPi * kPi / 2.0) <= 1e-14 * kPi * kPi);
  // alpha = 3: 4*sqrt(3)*pi^2/9 = 7.59762501035208
  CHECK(kappa_alpha(3.0) == doctest::Approx(7.59762501035208).epsilon(1e-13));
  CHECK(std::abs(kappa_alpha(3.0) - 7.598) < 0.05);
  // divergence toward alpha = 2
  CHECK(kappa_alpha(2.0001) > 1e4);
  CHECK_THROWS_AS(kappa_alpha(2.0), std::invalid_argument);
  CHECK_THROWS_AS(kappa_alpha(1.5), std::invalid_argument);
}

TEST_CASE("kappa_alpha is monotone decreasing on (2, 8]") {
  double previous = kappa_alpha(2.01);
  for (double alpha = 2.05; alpha <= 8.0 + 1e-9; alpha += 0.05) {
    const double value = kappa_alpha(alpha);
    CHECK(value < previous);
    CHECK(value > 0.0);
    previous = value;
  }
  CHECK(kappa_alpha(3.0) > kappa_alpha(4.0));
}

TEST_CASE("construction validates every invariant") {
  CHECK_NOTHROW(NetworkParams(0.1, 3.0, 3.0, 1.0, 1.0, 0.1));
  CHECK_THROWS_AS(NetworkParams(-0.1, 3, 3, 1, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams(0.1, 2.0, 3, 1, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams(0.1, 1.5, 3, 1, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams(0.1, 3, 0.0, 1, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams(0.1, 3, 3, 0.0, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams(0.1, 3, 3, 1, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams(0.1, 3, 3, 1, 1, -0.1), std::invalid_argument);
  // noise-free and interference-free at once has no optimum
  CHECK_THROWS_AS(NetworkParams(0.0, 3, 3, 1, 1, 0.0), std::invalid_argument);
  // each alone is fine
  CHECK_NOTHROW(NetworkParams(0.0, 3, 3, 1, 1, 0.1));
  CHECK_NOTHROW(NetworkParams(0.1, 3, 3, 1, 1, 0.0));
}

TEST_CASE("derive: direct substitution examples") {
  // rho=1, eta=0.01, R=1, alpha=4 -> snr = 100
  const auto d1 = derive(NetworkParams(0.1, 4, 3, 1, 1.0, 0.01));
  CHECK(d1.snr == doctest::Approx(100.0).epsilon(1e-14));

  // lambda=0.1, alpha=4, beta=3, R=1, SNR=10:
  //   k1 = 0.3, k2 = 0.1 * sqrt(3) * pi^2/2 = 0.854732813664608
  const auto p = NetworkParams::from_snr(0.1, 4, 3, 1, 1.0, 10.0);
  const auto d2 = derive(p);
  CHECK(d2.k1 == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(d2.k2 == doctest::Approx(0.854732813664608).epsilon(1e-13));

  // zero density kills the interference constant
  const auto d3 = derive(NetworkParams::from_snr(0.0, 4, 3, 1, 1.0, 10.0));
  CHECK(d3.k2 == 0.0);
}

TEST_CASE("derive: eta = 0 is the infinite-SNR point with k1 = 0") {
  const auto d = derive(NetworkParams(0.1, 4, 3, 1, 1.0, 0.0));
  CHECK(std::isinf(d.snr));
  CHECK(d.snr > 0);
  CHECK(d.k1 == 0.0);
  const auto d2 = derive(NetworkParams::from_snr(
      0.1, 4, 3, 1, 1.0, std::numeric_limits<double>::infinity()));
  CHECK(d2.k1 == 0.0);
  CHECK(std::isinf(d2.snr));
}

TEST_CASE("derive round-trips against the stored fields") {
  for (double lambda : {0.0, 0.01, 0.5, 10.0})
    for (double alpha : {2.5, 3.0, 4.0, 5.5})
      for (double R : {0.5, 1.0, 3.0})
        for (double eta : {0.0, 0.001, 0.2}) {
          if (lambda == 0.0 && eta == 0.0) continue;
          const NetworkParams p(lambda, alpha, 3.0, R, 2.0, eta);
          const auto d = derive(p);
          const double k1 = p.beta() * p.eta() * std::pow(p.R(), p.alpha()) / p.rho();
          const double k2 = p.lambda() * std::pow(p.beta(), 2.0 / p.alpha()) *
                            kappa_alpha(p.alpha()) * p.R() * p.R();
          CHECK(d.k1 == doctest::Approx(k1).epsilon(1e-14));
          if (k2 > 0.0)
            CHECK(d.k2 == doctest::Approx(k2).epsilon(1e-14));
          else
            CHECK(d.k2 == 0.0);
          CHECK(d.k_alpha == doctest::Approx(kappa_alpha(alpha)).epsilon(1e-14));
        }
}

TEST_CASE("from_snr stores eta = rho * R^-alpha / snr") {
  const auto p = NetworkParams::from_snr(0.1, 3, 3, 2.0, 5.0, 10.0);
  CHECK(p.eta() == doctest::Approx(5.0 * std::pow(2.0, -3.0) / 10.0).epsilon(1e-14));
  CHECK(derive(p).snr == doctest::Approx(10.0).epsilon(1e-14));
  CHECK_THROWS_AS(NetworkParams::from_snr(0.1, 3, 3, 1, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams::from_snr(0.1, 3, 3, 1, 1, -5.0), std::invalid_argument);
}

TEST_CASE("rate term honors the configured log base") {
  CHECK(rate_term(3.0, RateLogBase::natural) == doctest::Approx(std::log(4.0)));
  CHECK(rate_term(3.0, RateLogBase::base2) == doctest::Approx(2.0));
  CHECK(rate_log_base_from_string("natural") == RateLogBase::natural);
  CHECK(rate_log_base_from_string("base2") == RateLogBase::base2);
  CHECK_THROWS_AS(rate_log_base_from_string("ln"), std::invalid_argument);
}

TEST_CASE("json round trip uses the exact field names") {
  const NetworkParams p(0.25, 3.5, 2.0, 1.5, 0.8, 0.05, RateLogBase::base2);
  const nlohmann::json j = to_json(p);
  CHECK(j.at("lambda") == 0.25);
  CHECK(j.at("alpha") == 3.5);
  CHECK(j.at("beta") == 2.0);
  CHECK(j.at("R") == 1.5);
  CHECK(j.at("rho") == 0.8);
  CHECK(j.at("eta") == 0.05);
  CHECK(j.at("rate_log_base") == "base2");

  const NetworkParams back = params_from_json(j);
  CHECK(back.lambda() == p.lambda());
  CHECK(back.alpha() == p.alpha());
  CHECK(back.beta() == p.beta());
  CHECK(back.R() == p.R());
  CHECK(back.rho() == p.rho());
  CHECK(back.eta() == p.eta());
  CHECK(back.log_base() == p.log_base());

  // invalid payloads are rejected by the same construction checks
  nlohmann::json bad = j;
  bad["alpha"] = 2.0;
  CHECK_THROWS_AS(params_from_json(bad), std::invalid_argument);
}
