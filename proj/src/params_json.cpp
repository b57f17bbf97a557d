#include "ratc/params_json.hpp"

namespace ratc {

nlohmann::json to_json(const NetworkParams& p) {
  return nlohmann::json{
      {"lambda", p.lambda()}, {"alpha", p.alpha()}, {"beta", p.beta()},
      {"R", p.R()},           {"rho", p.rho()},     {"eta", p.eta()},
      {"rate_log_base", to_string(p.log_base())},
  };
}

NetworkParams params_from_json(const nlohmann::json& j) {
  const RateLogBase base =
      j.contains("rate_log_base")
          ? rate_log_base_from_string(j.at("rate_log_base").get<std::string>())
          : RateLogBase::natural;
  return NetworkParams(j.at("lambda").get<double>(), j.at("alpha").get<double>(),
                       j.at("beta").get<double>(), j.at("R").get<double>(),
                       j.at("rho").get<double>(), j.at("eta").get<double>(), base);
}

}  // namespace ratc
