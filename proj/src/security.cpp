#include "ccsni/security.hpp"

#include <algorithm>
#include <map>

#include "ccsni/core.hpp"

namespace ccsni {

namespace {

using Kind = Process::Kind;

ProcPtr wrap_restrict(const std::set<ChannelName>& names, ProcPtr p) {
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    p = Process::restrict(*it, p);
  return p;
}

void assert_high(const Program& prog, const ProcPtr& p,
                 std::set<std::string>& checked_agents) {
  switch (p->kind) {
    case Kind::Nil:
      return;
    case Kind::Sum:
      for (const auto& br : p->branches) {
        if (br.prefix.channel.level != "h")
          throw AttackerNotHigh(br.prefix.channel.str());
        assert_high(prog, br.cont, checked_agents);
      }
      return;
    case Kind::Par:
      for (const auto& q : p->parts) assert_high(prog, q, checked_agents);
      return;
    case Kind::Restrict:
      assert_high(prog, p->body, checked_agents);
      return;
    case Kind::Call:
      if (checked_agents.insert(p->agent).second)
        if (const AgentDef* def = prog.find_agent(p->agent))
          assert_high(prog, def->body, checked_agents);
      return;
  }
}

std::string fresh_agent_name(const Program& prog, const std::string& base) {
  std::string name = base;
  while (prog.find_agent(name)) name += "_";
  return name;
}

}  // namespace

SecurityVerdict check_pbndc(const Program& prog, std::size_t cap) {
  Lts left = build_lts(restrict_high(prog), cap);
  Lts right = build_lts(prog, cap);
  Verdict v = check(EquivKind::UpToHigh, left, right);
  SecurityVerdict out;
  out.status = v.equivalent ? SecStatus::Secure : SecStatus::Insecure;
  if (!v.equivalent) out.witness = std::move(v);
  return out;
}

SecurityVerdict check_wbndc(const Program& prog, std::size_t cap) {
  std::set<ChannelName> high = high_names(prog);
  std::set<ChannelName> free_high;
  for (const auto& ch : free_names(prog))
    if (ch.level == "h") free_high.insert(ch);

  Program composed = prog;
  ProcPtr phi;
  if (free_high.empty()) {
    phi = Process::nil();
  } else {
    std::string name = fresh_agent_name(prog, "Phi");
    std::vector<Branch> branches;
    for (const auto& ch : free_high)
      branches.push_back(
          {Prefix::input(ch, "z"), Process::call(name, {})});
    composed.agents.push_back({name, {}, Process::sum(std::move(branches))});
    phi = Process::call(name, {});
  }
  composed.main =
      wrap_restrict(high, Process::par(prog.main, phi));

  Lts left = build_lts(composed, cap);
  Lts right = build_lts(prog, cap);
  Verdict v = check(EquivKind::RefinedUpToHigh, left, right);
  SecurityVerdict out;
  out.status = v.equivalent ? SecStatus::Secure : SecStatus::Insecure;
  if (!v.equivalent) out.witness = std::move(v);
  return out;
}

std::vector<ProcPtr> enumerate_attackers(const Program& prog, int k, int w) {
  std::set<ChannelName> high = high_names(prog);

  // guarded building blocks: a_h(z).P and 'a_h<v>.P for every value
  auto guards = [&](const ProcPtr& cont) {
    std::vector<ProcPtr> out;
    for (const auto& ch : high) {
      out.push_back(Process::prefixed(Prefix::input(ch, "z"), cont));
      for (const auto& v : prog.values)
        out.push_back(
            Process::prefixed(Prefix::output(ch, Payload::value(v)), cont));
    }
    return out;
  };

  std::vector<ProcPtr> ordered{Process::nil()};
  std::set<std::string> seen{canonical_key(canonicalize(Process::nil()))};
  auto admit = [&](const ProcPtr& p) {
    if (seen.insert(canonical_key(canonicalize(p))).second)
      ordered.push_back(p);
  };

  std::vector<ProcPtr> prev{Process::nil()};  // depth <= d-1, enumeration order
  for (int d = 1; d <= k; ++d) {
    std::vector<ProcPtr> layer;
    auto emit = [&](const ProcPtr& p) {
      layer.push_back(p);
      admit(p);
    };
    // single guarded prefixes
    std::vector<ProcPtr> guarded;
    for (const auto& cont : prev)
      for (const auto& g : guards(cont)) {
        guarded.push_back(g);
        emit(g);
      }
    // sums of 2..w guarded branches (multisets over guarded of this layer's
    // continuations); width w keeps this finite and small
    std::vector<std::vector<Branch>> sums;
    for (const auto& g : guarded)
      sums.push_back({g->branches.front()});
    for (int arity = 2; arity <= w; ++arity) {
      std::vector<std::vector<Branch>> next;
      for (std::size_t i = 0; i < sums.size(); ++i)
        if (sums[i].size() == static_cast<std::size_t>(arity - 1))
          for (std::size_t j = 0; j < guarded.size(); ++j)
            next.push_back([&] {
              auto b = sums[i];
              b.push_back(guarded[j]->branches.front());
              return b;
            }());
      for (auto& b : next)
        if (b.size() >= 2) emit(Process::sum(b));
      sums.insert(sums.end(), next.begin(), next.end());
    }
    // parallel compositions of 2..w previous-depth processes (excluding Nil)
    std::vector<std::vector<ProcPtr>> pars;
    for (const auto& q : prev)
      if (q->kind != Kind::Nil) pars.push_back({q});
    std::size_t unary = pars.size();
    for (int arity = 2; arity <= w; ++arity) {
      std::vector<std::vector<ProcPtr>> next;
      for (const auto& ps : pars)
        if (ps.size() == static_cast<std::size_t>(arity - 1))
          for (std::size_t j = 0; j < unary; ++j) {
            auto q = ps;
            q.push_back(pars[j].front());
            next.push_back(std::move(q));
          }
      for (auto& q : next) emit(Process::par(q));
      pars.insert(pars.end(), next.begin(), next.end());
    }
    prev.insert(prev.end(), layer.begin(), layer.end());
  }
  return ordered;
}

SecurityVerdict check_bndc_with(const Program& prog, const ProcPtr& attacker,
                                std::size_t cap) {
  std::set<std::string> checked;
  assert_high(prog, attacker, checked);

  std::set<ChannelName> high = high_names(prog);
  std::set<ChannelName> atk_high;  // attacker may mention further high names
  {
    Program tmp = prog;
    tmp.main = attacker;
    for (const auto& ch : high_names(tmp)) atk_high.insert(ch);
  }
  high.insert(atk_high.begin(), atk_high.end());

  Program left = prog;
  left.main = wrap_restrict(high, Process::par(prog.main, attacker));
  Program right = prog;
  right.main = wrap_restrict(high, prog.main);

  Verdict v = check(EquivKind::Weak, build_lts(left, cap),
                    build_lts(right, cap));
  SecurityVerdict out;
  if (v.equivalent) {
    out.status = SecStatus::NoCounterexampleUpToBound;
  } else {
    out.status = SecStatus::Insecure;
    out.witness_attacker = attacker;
    out.witness = std::move(v);
  }
  return out;
}

SecurityVerdict check_bndc(const Program& prog, int k, int w,
                           std::size_t cap) {
  SecurityVerdict out;
  out.k = k;
  out.w = w;
  for (const ProcPtr& pi : enumerate_attackers(prog, k, w)) {
    SecurityVerdict r = check_bndc_with(prog, pi, cap);
    if (r.status == SecStatus::Insecure) {
      r.k = k;
      r.w = w;
      return r;
    }
  }
  out.status = SecStatus::NoCounterexampleUpToBound;
  return out;
}

}  // namespace ccsni
