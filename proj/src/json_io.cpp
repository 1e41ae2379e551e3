#include "ccsni/json_io.hpp"

#include "ccsni/parser.hpp"

namespace ccsni {

using nlohmann::json;

json to_json(const Lts& lts) {
  json states = json::array();
  for (const auto& s : lts.states) states.push_back(pretty_print(s));
  json transitions = json::array();
  for (std::size_t s = 0; s < lts.num_states(); ++s)
    for (const auto& [a, t] : lts.transitions[s])
      transitions.push_back({s, a.str(), t});
  return {{"states", states},
          {"transitions", transitions},
          {"initial", lts.initial}};
}

json to_json(const Verdict& v) {
  json cex = json::array();
  for (const auto& mv : v.counterexample) {
    json pair = {{"from", {mv.from_a, mv.from_b}}};
    if (mv.to_a >= 0 || mv.to_b >= 0) pair["to"] = {mv.to_a, mv.to_b};
    cex.push_back(
        {{"side", mv.side}, {"action", mv.action.str()}, {"pair", pair}});
  }
  return {{"equivalent", v.equivalent}, {"counterexample", cex}};
}

namespace {

json failure_json(const TypeFailure& f) {
  return {{"rule", f.rule}, {"condition", f.condition}, {"location", f.location}};
}

}  // namespace

json to_json(const SimpleOutcome& o) {
  json out = {{"system", "simple"}, {"typeable", o.typeable}};
  if (o.principal) {
    out["principal"] = {{"level", o.principal->level},
                        {"env", o.principal->env}};
  }
  if (o.failure) out["failure"] = failure_json(*o.failure);
  return out;
}

json to_json(const AsymOutcome& o) {
  json out = {{"system", "asym"}, {"typeable", o.typeable}};
  if (o.principal) {
    out["principal"] = {{"flag", o.principal->flag ? "T" : "F"},
                        {"read", o.principal->read},
                        {"write", o.principal->write}};
  }
  if (o.failure) out["failure"] = failure_json(*o.failure);
  return out;
}

std::string status_name(SecStatus s) {
  switch (s) {
    case SecStatus::Secure:
      return "Secure";
    case SecStatus::Insecure:
      return "Insecure";
    case SecStatus::NoCounterexampleUpToBound:
      return "NoCounterexampleUpToBound";
  }
  return "";
}

json to_json(const SecurityVerdict& v, const std::string& property) {
  json out = {{"property", property}, {"status", status_name(v.status)}};
  if (v.witness_attacker)
    out["witness"] = pretty_print(v.witness_attacker);
  else if (v.witness)
    out["witness"] = to_json(*v.witness);
  if (v.k > 0) out["bounds"] = {{"k", v.k}, {"w", v.w}};
  return out;
}

}  // namespace ccsni
