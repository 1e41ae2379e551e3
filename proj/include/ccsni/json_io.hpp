#pragma once

#include <string>

#include "ccsni/equiv.hpp"
#include "ccsni/security.hpp"
#include "ccsni/types.hpp"

#include "json.hpp"

namespace ccsni {

nlohmann::json to_json(const Lts& lts);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const SimpleOutcome& o);
nlohmann::json to_json(const AsymOutcome& o);
nlohmann::json to_json(const SecurityVerdict& v, const std::string& property);

std::string status_name(SecStatus s);

}  // namespace ccsni
