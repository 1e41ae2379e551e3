#pragma once

// Deterministic random instance generators shared by the unit and acceptance
// suites. All generators take an explicit engine so every test fixes its own
// seed.

#include <random>
#include <string>
#include <vector>

#include "ccsni/ast.hpp"
#include "ccsni/lts.hpp"
#include "ccsni/types.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// ---- random LTS (states are placeholders; only the graph matters) ----

inline ccsni::Lts random_lts(Rng& rng, int max_states) {
  using namespace ccsni;
  Lts lts;
  int n = pick(rng, 1, max_states);
  std::vector<Action> alphabet = {
      Action::tau(),
      Action::in({"a", "l"}, "v"),
      Action::out({"a", "l"}, "v"),
      Action::in({"b", "l"}, "v"),
      Action::out({"b", "l"}, "v"),
      Action::in({"h", "h"}, "v"),
      Action::out({"h", "h"}, "v"),
  };
  for (int s = 0; s < n; ++s) {
    lts.states.push_back(Process::nil());
    lts.keys.push_back("s" + std::to_string(s));
    lts.transitions.emplace_back();
    int degree = pick(rng, 0, 3);
    for (int d = 0; d < degree; ++d)
      lts.transitions[s].emplace_back(
          alphabet[pick(rng, 0, static_cast<int>(alphabet.size()) - 1)],
          pick(rng, 0, n - 1));
  }
  lts.initial = 0;
  return lts;
}

// ---- random closed processes ----

struct ProcOpts {
  std::vector<ccsni::ChannelName> channels = {
      {"a", "l"}, {"b", "l"}, {"c", "h"}, {"d", "h"}};
  std::vector<std::string> values = {"u", "v"};
  int max_prefixes = 8;
};

// Closed process over the option alphabet; binders may be reused as output
// payloads.
inline ccsni::ProcPtr random_process(Rng& rng, const ProcOpts& opt, int budget,
                                     std::vector<std::string> bound = {}) {
  using namespace ccsni;
  if (budget <= 0 || coin(rng, 0.2)) return Process::nil();
  int shape = pick(rng, 0, 9);
  auto chan = [&] {
    return opt.channels[pick(rng, 0, static_cast<int>(opt.channels.size()) - 1)];
  };
  auto payload = [&]() -> Payload {
    if (!bound.empty() && coin(rng, 0.3))
      return Payload::var(bound[pick(rng, 0, static_cast<int>(bound.size()) - 1)]);
    return Payload::value(
        opt.values[pick(rng, 0, static_cast<int>(opt.values.size()) - 1)]);
  };
  auto branch = [&]() -> Branch {
    if (coin(rng)) {
      std::string x = "x" + std::to_string(pick(rng, 0, 2));
      auto inner = bound;
      inner.push_back(x);
      return {Prefix::input(chan(), x),
              random_process(rng, opt, budget - 1, inner)};
    }
    return {Prefix::output(chan(), payload()),
            random_process(rng, opt, budget - 1, bound)};
  };
  if (shape < 5) return ccsni::Process::sum({branch()});
  if (shape < 7) return ccsni::Process::sum({branch(), branch()});
  if (shape < 9)
    return ccsni::Process::par(random_process(rng, opt, budget / 2, bound),
                               random_process(rng, opt, budget / 2, bound));
  return ccsni::Process::restrict(chan(),
                                  random_process(rng, opt, budget - 1, bound));
}

inline ccsni::Program random_program(Rng& rng, const ProcOpts& opt) {
  ccsni::Program prog;
  prog.values = opt.values;
  prog.main = random_process(rng, opt, opt.max_prefixes);
  return prog;
}

// ---- simple-typeable construction ----
//
// Every sum uses a single prefix level and continuations typeable at or
// above it, which is exactly the simple system's shape.

inline ccsni::ProcPtr random_simple_typeable(Rng& rng, const ProcOpts& opt,
                                             int budget,
                                             const ccsni::Level& min_level,
                                             std::vector<std::string> bound = {}) {
  using namespace ccsni;
  if (budget <= 0 || coin(rng, 0.25)) return Process::nil();
  // on the two-point lattice: anything >= h stays h
  Level lvl = (min_level == "h" || coin(rng)) ? "h" : "l";
  std::vector<ChannelName> at_level;
  for (const auto& ch : opt.channels)
    if (ch.level == lvl) at_level.push_back(ch);
  auto chan = [&] {
    return at_level[pick(rng, 0, static_cast<int>(at_level.size()) - 1)];
  };
  auto payload = [&]() -> Payload {
    if (!bound.empty() && coin(rng, 0.3))
      return Payload::var(bound[pick(rng, 0, static_cast<int>(bound.size()) - 1)]);
    return Payload::value(
        opt.values[pick(rng, 0, static_cast<int>(opt.values.size()) - 1)]);
  };
  auto branch = [&]() -> Branch {
    if (coin(rng)) {
      std::string x = "x" + std::to_string(pick(rng, 0, 2));
      auto inner = bound;
      inner.push_back(x);
      return {Prefix::input(chan(), x),
              random_simple_typeable(rng, opt, budget - 1, lvl, inner)};
    }
    return {Prefix::output(chan(), payload()),
            random_simple_typeable(rng, opt, budget - 1, lvl, bound)};
  };
  int shape = pick(rng, 0, 9);
  if (shape < 6) return ccsni::Process::sum({branch()});
  if (shape < 8) return ccsni::Process::sum({branch(), branch()});
  return ccsni::Process::par(
      random_simple_typeable(rng, opt, budget / 2, min_level, bound),
      random_simple_typeable(rng, opt, budget / 2, min_level, bound));
}

inline ccsni::Program random_simple_typeable_program(Rng& rng,
                                                     const ProcOpts& opt) {
  ccsni::Program prog;
  prog.values = opt.values;
  prog.main = random_simple_typeable(rng, opt, opt.max_prefixes, "l");
  return prog;
}

// ---- random programs for the round-trip test ----
//
// Shapes restricted to what the parser itself produces, so structural
// equality is the right oracle.

inline ccsni::ProcPtr roundtrip_process(Rng& rng, const ProcOpts& opt,
                                        int budget,
                                        std::vector<std::string> bound = {}) {
  using namespace ccsni;
  if (budget <= 0 || coin(rng, 0.25)) return Process::nil();
  auto chan = [&] {
    return opt.channels[pick(rng, 0, static_cast<int>(opt.channels.size()) - 1)];
  };
  auto payload = [&]() -> Payload {
    if (!bound.empty() && coin(rng, 0.3))
      return Payload::var(bound[pick(rng, 0, static_cast<int>(bound.size()) - 1)]);
    return Payload::value(
        opt.values[pick(rng, 0, static_cast<int>(opt.values.size()) - 1)]);
  };
  auto branch = [&]() -> Branch {
    int kind = pick(rng, 0, 3);
    if (kind == 0) {
      std::string x = "x" + std::to_string(pick(rng, 0, 2));
      auto inner = bound;
      inner.push_back(x);
      return {Prefix::input(chan(), x),
              roundtrip_process(rng, opt, budget - 1, inner)};
    }
    if (kind == 1) {
      Prefix pre;
      pre.polarity = Prefix::Polarity::Input;
      pre.channel = chan();
      pre.payload = Payload::var("");
      pre.nullary = true;
      return {pre, roundtrip_process(rng, opt, budget - 1, bound)};
    }
    if (kind == 2) {
      Prefix pre;
      pre.polarity = Prefix::Polarity::Output;
      pre.channel = chan();
      pre.payload = Payload::value("u");
      pre.nullary = true;
      return {pre, roundtrip_process(rng, opt, budget - 1, bound)};
    }
    return {Prefix::output(chan(), payload()),
            roundtrip_process(rng, opt, budget - 1, bound)};
  };
  int shape = pick(rng, 0, 9);
  if (shape < 5) return ccsni::Process::sum({branch()});
  if (shape < 7) return ccsni::Process::sum({branch(), branch()});
  if (shape < 9)
    return ccsni::Process::par(roundtrip_process(rng, opt, budget / 2, bound),
                               roundtrip_process(rng, opt, budget / 2, bound));
  return ccsni::Process::restrict(
      chan(), roundtrip_process(rng, opt, budget - 1, bound));
}

inline ccsni::Program roundtrip_program(Rng& rng) {
  ProcOpts opt;
  opt.values = {"u", "v"};
  ccsni::Program prog;
  prog.values = opt.values;
  if (coin(rng, 0.25)) {
    // a guarded recursive agent exercising calls and parameters
    ccsni::AgentDef def;
    def.name = "A";
    def.params = {"p"};
    def.body = ccsni::Process::prefixed(
        ccsni::Prefix::input({"a", "l"}, "y"),
        ccsni::Process::call("A", {ccsni::Payload::var("y")}));
    prog.agents.push_back(def);
    if (coin(rng)) {
      prog.main = ccsni::Process::par(
          roundtrip_process(rng, opt, 4),
          ccsni::Process::call("A", {ccsni::Payload::value("u")}));
      return prog;
    }
  }
  prog.main = roundtrip_process(rng, opt, 6);
  return prog;
}

}  // namespace gen
