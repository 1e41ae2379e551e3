#include "ccsni/lts.hpp"

#include <algorithm>
#include <deque>

#include "ccsni/core.hpp"
#include "ccsni/parser.hpp"

namespace ccsni {

namespace {

using Kind = Process::Kind;

ProcPtr replace_part(const std::vector<ProcPtr>& parts, std::size_t i,
                     const ProcPtr& t) {
  std::vector<ProcPtr> out = parts;
  out[i] = t;
  auto p = std::make_shared<Process>();
  p->kind = Kind::Par;
  p->parts = std::move(out);
  return p;
}

ProcPtr replace_parts(const std::vector<ProcPtr>& parts, std::size_t i,
                      const ProcPtr& ti, std::size_t j, const ProcPtr& tj) {
  std::vector<ProcPtr> out = parts;
  out[i] = ti;
  out[j] = tj;
  auto p = std::make_shared<Process>();
  p->kind = Kind::Par;
  p->parts = std::move(out);
  return p;
}

bool complementary(const Action& a, const Action& b) {
  if (a.kind == Action::Kind::In && b.kind == Action::Kind::Out)
    return a.channel.base == b.channel.base && a.value == b.value;
  if (a.kind == Action::Kind::Out && b.kind == Action::Kind::In)
    return a.channel.base == b.channel.base && a.value == b.value;
  return false;
}

}  // namespace

std::vector<std::pair<Action, ProcPtr>> step(const Program& prog,
                                             const ProcPtr& p) {
  std::vector<std::pair<Action, ProcPtr>> out;
  switch (p->kind) {
    case Kind::Nil:
      break;
    case Kind::Sum:
      for (const auto& br : p->branches) {
        if (br.prefix.polarity == Prefix::Polarity::Input) {
          for (const auto& v : prog.values) {
            ProcPtr target = br.prefix.nullary
                                 ? br.cont
                                 : substitute(br.cont, br.prefix.payload.id, v);
            out.emplace_back(Action::in(br.prefix.channel, v), target);
          }
        } else {
          if (br.prefix.payload.kind != Payload::Kind::Value)
            throw OpenVariable(br.prefix.payload.id);
          out.emplace_back(Action::out(br.prefix.channel, br.prefix.payload.id),
                           br.cont);
        }
      }
      break;
    case Kind::Par: {
      std::vector<std::vector<std::pair<Action, ProcPtr>>> sub;
      sub.reserve(p->parts.size());
      for (const auto& q : p->parts) sub.push_back(step(prog, q));
      for (std::size_t i = 0; i < p->parts.size(); ++i)
        for (const auto& [a, t] : sub[i])
          out.emplace_back(a, replace_part(p->parts, i, t));
      for (std::size_t i = 0; i < p->parts.size(); ++i)
        for (std::size_t j = i + 1; j < p->parts.size(); ++j)
          for (const auto& [ai, ti] : sub[i])
            for (const auto& [aj, tj] : sub[j])
              if (complementary(ai, aj))
                out.emplace_back(Action::tau(),
                                 replace_parts(p->parts, i, ti, j, tj));
      break;
    }
    case Kind::Restrict:
      for (const auto& [a, t] : step(prog, p->body)) {
        if (!a.is_tau() && a.channel.base == p->bound.base) continue;
        out.emplace_back(a, Process::restrict(p->bound, t));
      }
      break;
    case Kind::Call: {
      const AgentDef* def = prog.find_agent(p->agent);
      if (!def || def->params.size() != p->args.size())
        throw std::runtime_error("undeclared agent or arity mismatch: " +
                                 p->agent);
      ProcPtr body = def->body;
      for (std::size_t i = 0; i < def->params.size(); ++i) {
        if (p->args[i].kind != Payload::Kind::Value)
          throw OpenVariable(p->args[i].id);
        body = substitute(body, def->params[i], p->args[i].id);
      }
      out = step(prog, body);
      break;
    }
  }
  return out;
}

Lts build_lts(const Program& prog, std::size_t cap) {
  Lts lts;
  std::map<std::string, int> index;
  std::deque<int> queue;

  auto admit = [&](const ProcPtr& raw) {
    ProcPtr canon = canonicalize(raw);
    std::string key = canonical_key(canon);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (lts.states.size() >= cap) throw StateSpaceExceeded(cap);
    int id = static_cast<int>(lts.states.size());
    index.emplace(std::move(key), id);
    lts.keys.push_back(canonical_key(canon));
    lts.states.push_back(std::move(canon));
    lts.transitions.emplace_back();
    queue.push_back(id);
    return id;
  };

  lts.initial = admit(prog.main);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    std::set<std::pair<Action, int>> seen;
    for (const auto& [a, t] : step(prog, lts.states[s])) {
      int u = admit(t);
      if (seen.emplace(a, u).second) lts.transitions[s].emplace_back(a, u);
    }
  }
  return lts;
}

namespace {

void collect_high(const ProcPtr& p, std::set<ChannelName>& out) {
  switch (p->kind) {
    case Kind::Nil:
      return;
    case Kind::Sum:
      for (const auto& br : p->branches) {
        if (br.prefix.channel.level == "h") out.insert(br.prefix.channel);
        collect_high(br.cont, out);
      }
      return;
    case Kind::Par:
      for (const auto& q : p->parts) collect_high(q, out);
      return;
    case Kind::Restrict:
      collect_high(p->body, out);
      return;
    case Kind::Call:
      return;
  }
}

void collect_calls(const ProcPtr& p, std::set<std::string>& out) {
  switch (p->kind) {
    case Kind::Nil:
      return;
    case Kind::Sum:
      for (const auto& br : p->branches) collect_calls(br.cont, out);
      return;
    case Kind::Par:
      for (const auto& q : p->parts) collect_calls(q, out);
      return;
    case Kind::Restrict:
      collect_calls(p->body, out);
      return;
    case Kind::Call:
      out.insert(p->agent);
      return;
  }
}

}  // namespace

std::set<ChannelName> high_names(const Program& prog) {
  std::set<ChannelName> out;
  collect_high(prog.main, out);
  // transitively referenced agents
  std::set<std::string> reachable, frontier;
  collect_calls(prog.main, frontier);
  while (!frontier.empty()) {
    std::set<std::string> next;
    for (const auto& name : frontier) {
      if (!reachable.insert(name).second) continue;
      if (const AgentDef* def = prog.find_agent(name)) {
        collect_high(def->body, out);
        collect_calls(def->body, next);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Program restrict_high(const Program& prog) {
  Program out = prog;
  ProcPtr main = prog.main;
  auto names = high_names(prog);
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    main = Process::restrict(*it, main);
  out.main = main;
  return out;
}

Lts make_phi(const std::set<ChannelName>& names,
             const std::vector<std::string>& values) {
  Lts lts;
  lts.states.push_back(Process::call("Phi", {}));
  lts.keys.push_back("phi");
  lts.transitions.emplace_back();
  lts.initial = 0;
  for (const auto& ch : names)
    for (const auto& v : values)
      lts.transitions[0].emplace_back(Action::in(ch, v), 0);
  return lts;
}

WeakRelation saturate(const Lts& lts) {
  const int n = static_cast<int>(lts.num_states());
  WeakRelation rel;
  rel.tau_closure.resize(n);
  rel.weak.resize(n);

  for (int s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::deque<int> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      rel.tau_closure[s].push_back(t);
      for (const auto& [a, u] : lts.transitions[t])
        if (a.is_tau() && !seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
    }
    std::sort(rel.tau_closure[s].begin(), rel.tau_closure[s].end());
  }

  for (int s = 0; s < n; ++s) {
    std::map<std::string, std::vector<bool>> reach;
    for (int t : rel.tau_closure[s])
      for (const auto& [a, u] : lts.transitions[t]) {
        rel.actions.emplace(a.str(), a);
        auto& bits = reach[a.str()];
        if (bits.empty()) bits.assign(n, false);
        for (int w : rel.tau_closure[u]) bits[w] = true;
      }
    for (auto& [astr, bits] : reach) {
      std::vector<int> out;
      for (int t = 0; t < n; ++t)
        if (bits[t]) out.push_back(t);
      rel.weak[s].emplace(astr, std::move(out));
    }
  }
  return rel;
}

std::string to_dot(const Lts& lts) {
  std::string out = "digraph lts {\n  rankdir=LR;\n";
  out += "  init [shape=point];\n";
  for (std::size_t s = 0; s < lts.num_states(); ++s) {
    std::string label = pretty_print(lts.states[s]);
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out += "  s" + std::to_string(s) + " [label=\"" + escaped + "\"];\n";
  }
  out += "  init -> s" + std::to_string(lts.initial) + ";\n";
  for (std::size_t s = 0; s < lts.num_states(); ++s)
    for (const auto& [a, t] : lts.transitions[s]) {
      out += "  s" + std::to_string(s) + " -> s" + std::to_string(t) +
             " [label=\"" + a.str() + "\"";
      if (a.is_tau()) out += ", style=dashed";
      if (a.is_high()) out += ", color=red";
      out += "];\n";
    }
  out += "}\n";
  return out;
}

}  // namespace ccsni
