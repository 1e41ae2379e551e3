#include "ccsni/ast.hpp"

#include <stdexcept>

namespace ccsni {

ProcPtr Process::nil() {
  static const ProcPtr n = std::make_shared<Process>();
  return n;
}

ProcPtr Process::sum(std::vector<Branch> branches) {
  if (branches.empty()) throw std::invalid_argument("empty sum");
  auto p = std::make_shared<Process>();
  p->kind = Kind::Sum;
  p->branches = std::move(branches);
  return p;
}

ProcPtr Process::prefixed(Prefix pre, ProcPtr cont) {
  return sum({Branch{std::move(pre), std::move(cont)}});
}

ProcPtr Process::par(std::vector<ProcPtr> parts) {
  if (parts.empty()) return nil();
  if (parts.size() == 1) return parts.front();
  auto p = std::make_shared<Process>();
  p->kind = Kind::Par;
  p->parts = std::move(parts);
  return p;
}

ProcPtr Process::par(ProcPtr a, ProcPtr b) {
  return par(std::vector<ProcPtr>{std::move(a), std::move(b)});
}

ProcPtr Process::restrict(ChannelName ch, ProcPtr body) {
  auto p = std::make_shared<Process>();
  p->kind = Kind::Restrict;
  p->bound = std::move(ch);
  p->body = std::move(body);
  return p;
}

ProcPtr Process::call(std::string agent, std::vector<Payload> args) {
  auto p = std::make_shared<Process>();
  p->kind = Kind::Call;
  p->agent = std::move(agent);
  p->args = std::move(args);
  return p;
}

bool equal(const Process& a, const Process& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Process::Kind::Nil:
      return true;
    case Process::Kind::Sum: {
      if (a.branches.size() != b.branches.size()) return false;
      for (std::size_t i = 0; i < a.branches.size(); ++i) {
        if (!(a.branches[i].prefix == b.branches[i].prefix)) return false;
        if (!equal(a.branches[i].cont, b.branches[i].cont)) return false;
      }
      return true;
    }
    case Process::Kind::Par: {
      if (a.parts.size() != b.parts.size()) return false;
      for (std::size_t i = 0; i < a.parts.size(); ++i)
        if (!equal(a.parts[i], b.parts[i])) return false;
      return true;
    }
    case Process::Kind::Restrict:
      return a.bound == b.bound && equal(a.body, b.body);
    case Process::Kind::Call:
      return a.agent == b.agent && a.args == b.args;
  }
  return false;
}

bool equal(const ProcPtr& a, const ProcPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

std::string Action::str() const {
  switch (kind) {
    case Kind::Tau:
      return "tau";
    case Kind::In:
      return channel.base + "?" + value;
    case Kind::Out:
      return channel.base + "!" + value;
  }
  return "tau";
}

const AgentDef* Program::find_agent(const std::string& name) const {
  for (const auto& a : agents)
    if (a.name == name) return &a;
  return nullptr;
}

bool equal(const Program& a, const Program& b) {
  if (!(a.lattice == b.lattice)) return false;
  if (a.values != b.values) return false;
  if (a.agents.size() != b.agents.size()) return false;
  for (std::size_t i = 0; i < a.agents.size(); ++i) {
    if (a.agents[i].name != b.agents[i].name) return false;
    if (a.agents[i].params != b.agents[i].params) return false;
    if (!equal(a.agents[i].body, b.agents[i].body)) return false;
  }
  return equal(a.main, b.main);
}

}  // namespace ccsni
