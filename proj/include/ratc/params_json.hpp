#pragma once

#include "json.hpp"
#include "ratc/params.hpp"

namespace ratc {

// JSON form used by config files and report metadata. Field names:
// lambda, alpha, beta, R, rho, eta, rate_log_base ("natural" | "base2").
nlohmann::json to_json(const NetworkParams& p);
NetworkParams params_from_json(const nlohmann::json& j);

}  // namespace ratc
