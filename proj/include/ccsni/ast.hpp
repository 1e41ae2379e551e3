#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "ccsni/lattice.hpp"

namespace ccsni {

/// A channel occurrence together with its declared security level.
/// The input/output distinction lives in Prefix, not here.
struct ChannelName {
  std::string base;
  Level level;
  auto operator<=>(const ChannelName&) const = default;
  std::string str() const { return base + "_" + level; }
};

/// Payload of an output prefix or agent-call argument: either a declared
/// value constant or a variable bound by an enclosing input or agent param.
struct Payload {
  enum class Kind { Value, Var };
  Kind kind = Kind::Value;
  std::string id;
  bool operator==(const Payload&) const = default;
  static Payload value(std::string v) { return {Kind::Value, std::move(v)}; }
  static Payload var(std::string v) { return {Kind::Var, std::move(v)}; }
};

struct Prefix {
  enum class Polarity { Input, Output };
  Polarity polarity = Polarity::Input;
  ChannelName channel;
  // Input: always a Var (the binder; empty id when nullary).
  // Output: value constant or bound variable.
  Payload payload = Payload::var("");
  bool nullary = false;  // written without payload; output uses value "u"
  bool operator==(const Prefix&) const = default;

  static Prefix input(ChannelName ch, std::string var) {
    return {Polarity::Input, std::move(ch), Payload::var(std::move(var)), false};
  }
  static Prefix output(ChannelName ch, Payload p) {
    return {Polarity::Output, std::move(ch), std::move(p), false};
  }
};

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

struct Branch {
  Prefix prefix;
  ProcPtr cont;
};

/// Immutable process term. Sums are non-empty and prefix-guarded; Par is
/// n-ary (the parser produces >= 2 parts, canonicalization may flatten).
struct Process {
  enum class Kind { Nil, Sum, Par, Restrict, Call };
  Kind kind = Kind::Nil;
  std::vector<Branch> branches;  // Sum
  std::vector<ProcPtr> parts;    // Par
  ChannelName bound;             // Restrict
  ProcPtr body;                  // Restrict
  std::string agent;             // Call
  std::vector<Payload> args;     // Call

  static ProcPtr nil();
  static ProcPtr sum(std::vector<Branch> branches);
  static ProcPtr prefixed(Prefix pre, ProcPtr cont);  // singleton sum
  static ProcPtr par(std::vector<ProcPtr> parts);
  static ProcPtr par(ProcPtr a, ProcPtr b);
  static ProcPtr restrict(ChannelName ch, ProcPtr body);
  static ProcPtr call(std::string agent, std::vector<Payload> args);
};

bool equal(const Process& a, const Process& b);
bool equal(const ProcPtr& a, const ProcPtr& b);

struct Action {
  enum class Kind { In, Out, Tau };
  Kind kind = Kind::Tau;
  ChannelName channel;  // In/Out only
  std::string value;    // In/Out only
  auto operator<=>(const Action&) const = default;

  static Action tau() { return {}; }
  static Action in(ChannelName ch, std::string v) {
    return {Kind::In, std::move(ch), std::move(v)};
  }
  static Action out(ChannelName ch, std::string v) {
    return {Kind::Out, std::move(ch), std::move(v)};
  }
  bool is_tau() const { return kind == Kind::Tau; }
  bool is_high() const { return kind != Kind::Tau && channel.level == "h"; }
  std::string str() const;  // "a?v", "a!v", "tau"
};

struct AgentDef {
  std::string name;
  std::vector<std::string> params;  // value variables
  ProcPtr body;
};

struct Program {
  SecurityLattice lattice = SecurityLattice::two_point();
  std::vector<std::string> values{"u"};
  std::vector<AgentDef> agents;
  ProcPtr main = Process::nil();

  const AgentDef* find_agent(const std::string& name) const;
};

bool equal(const Program& a, const Program& b);

}  // namespace ccsni
