#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccsni/ast.hpp"

namespace ccsni {

struct StateSpaceExceeded : std::runtime_error {
  explicit StateSpaceExceeded(std::size_t cap)
      : std::runtime_error("state space exceeds cap of " + std::to_string(cap)),
        cap(cap) {}
  std::size_t cap;
};

inline constexpr std::size_t kDefaultStateCap = 10000;

/// Explicit finite LTS over canonical process states.
struct Lts {
  std::vector<ProcPtr> states;    // canonical terms
  std::vector<std::string> keys;  // canonical keys, parallel to states
  std::vector<std::vector<std::pair<Action, int>>> transitions;
  int initial = 0;
  std::size_t num_states() const { return states.size(); }
};

/// One derivation step of the SOS rules for a closed process.
std::vector<std::pair<Action, ProcPtr>> step(const Program& prog,
                                             const ProcPtr& p);

Lts build_lts(const Program& prog, std::size_t cap = kDefaultStateCap);

/// High channels collected syntactically from main and all transitively
/// referenced agent bodies (sound over-approximation; restriction of an
/// unused name is a no-op).
std::set<ChannelName> high_names(const Program& prog);

/// Wraps main in Restrict binders for every high channel of the program.
Program restrict_high(const Program& prog);

/// Single-state LTS with a self-loop input a?v for every a in names and
/// every v in values; the finite quotient of the recursive high-input
/// environment process.
Lts make_phi(const std::set<ChannelName>& names,
             const std::vector<std::string>& values);

/// Weak (tau-saturated) transition relations of an LTS.
struct WeakRelation {
  // tau_closure[s]: states reachable by zero or more taus (includes s)
  std::vector<std::vector<int>> tau_closure;
  // weak[s][action]: states reachable by tau* a tau*; for "tau" this is the
  // at-least-one-tau relation
  std::vector<std::map<std::string, std::vector<int>>> weak;
  std::map<std::string, Action> actions;  // action string -> action
};

WeakRelation saturate(const Lts& lts);

std::string to_dot(const Lts& lts);

}  // namespace ccsni
