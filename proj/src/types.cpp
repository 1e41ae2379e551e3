#include "ccsni/types.hpp"

#include <deque>

#include "ccsni/core.hpp"
#include "ccsni/parser.hpp"

namespace ccsni {

namespace {

using Kind = Process::Kind;

void collect_env(const ProcPtr& p, std::map<std::string, Level>& env) {
  switch (p->kind) {
    case Kind::Nil:
    case Kind::Call:
      return;
    case Kind::Sum:
      for (const auto& br : p->branches) {
        env.emplace(br.prefix.channel.base, br.prefix.channel.level);
        collect_env(br.cont, env);
      }
      return;
    case Kind::Par:
      for (const auto& q : p->parts) collect_env(q, env);
      return;
    case Kind::Restrict:
      collect_env(p->body, env);
      return;
  }
}

std::map<std::string, Level> program_env(const Program& prog,
                                         const ProcPtr& p) {
  std::map<std::string, Level> env;
  collect_env(p, env);
  for (const auto& def : prog.agents) collect_env(def.body, env);
  return env;
}

template <class J>
struct Res {
  bool ok = false;
  J j{};
  TypeFailure fail;
  static Res good(J j) { return {true, std::move(j), {}}; }
  static Res bad(TypeFailure f) { return {false, {}, std::move(f)}; }
};

// ---- simple level system ----

struct SimpleCtx {
  const Program* prog;
  std::map<std::string, Res<Level>> agents;  // fixpoint assumptions
};

Res<Level> slevel(const SimpleCtx& cx, const ProcPtr& p) {
  const auto& lat = cx.prog->lattice;
  switch (p->kind) {
    case Kind::Nil:
      return Res<Level>::good(lat.top());
    case Kind::Sum: {
      Level l = p->branches.front().prefix.channel.level;
      for (const auto& br : p->branches)
        if (br.prefix.channel.level != l)
          return Res<Level>::bad({"Sum",
                                  br.prefix.channel.level + " = " + l,
                                  pretty_print(p)});
      for (const auto& br : p->branches) {
        Res<Level> rc = slevel(cx, br.cont);
        if (!rc.ok) return rc;
        if (!lat.leq(l, rc.j))
          return Res<Level>::bad(
              {"Prefix", l + " <= " + rc.j, br.prefix.channel.str()});
      }
      return Res<Level>::good(l);
    }
    case Kind::Par: {
      Level l = lat.top();
      for (const auto& q : p->parts) {
        Res<Level> r = slevel(cx, q);
        if (!r.ok) return r;
        l = lat.meet(l, r.j);
      }
      return Res<Level>::good(l);
    }
    case Kind::Restrict:
      return slevel(cx, p->body);
    case Kind::Call: {
      auto it = cx.agents.find(p->agent);
      if (it == cx.agents.end())
        return Res<Level>::bad({"Rec", "agent declared", p->agent});
      return it->second;
    }
  }
  return Res<Level>::bad({"Rec", "unreachable", ""});
}

SimpleCtx simple_ctx(const Program& prog) {
  SimpleCtx cx{&prog, {}};
  for (const auto& def : prog.agents)
    cx.agents[def.name] = Res<Level>::good(prog.lattice.top());
  std::size_t budget =
      prog.agents.size() * prog.lattice.elements().size() + 4;
  for (std::size_t i = 0; i < budget; ++i) {
    bool changed = false;
    for (const auto& def : prog.agents) {
      Res<Level> cur = cx.agents[def.name];
      Res<Level> next = slevel(cx, def.body);
      if (next.ok != cur.ok || (next.ok && next.j != cur.j)) {
        cx.agents[def.name] = next;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return cx;
}

// ---- asymmetric (B, sigma, tau) system ----

struct AsymCtx {
  const Program* prog;
  std::map<std::string, Res<AsymJudgment>> agents;
};

Res<AsymJudgment> atype(const AsymCtx& cx, const ProcPtr& p) {
  const auto& lat = cx.prog->lattice;
  switch (p->kind) {
    case Kind::Nil:
      return Res<AsymJudgment>::good({false, lat.bottom(), lat.top()});
    case Kind::Sum: {
      bool flag = true;
      Level read = lat.bottom(), write = lat.top();
      for (const auto& br : p->branches) {
        Res<AsymJudgment> rc = atype(cx, br.cont);
        if (!rc.ok) return rc;
        const Level& rho = br.prefix.channel.level;
        AsymJudgment bj;
        if (br.prefix.polarity == Prefix::Polarity::Input) {
          if (!lat.leq(rho, rc.j.write))
            return Res<AsymJudgment>::bad(
                {"Input", rho + " <= " + rc.j.write, br.prefix.channel.str()});
          bj = {rc.j.flag, lat.join(rho, rc.j.read), rc.j.write};
        } else {
          if (!lat.leq(rc.j.read, rho))
            return Res<AsymJudgment>::bad(
                {"Output", rc.j.read + " <= " + rho, br.prefix.channel.str()});
          bj = {true, rc.j.read, lat.meet(rho, rc.j.write)};
        }
        flag = flag && bj.flag;
        read = lat.join(read, bj.read);
        write = lat.meet(write, bj.write);
      }
      if (!lat.leq(read, write))
        return Res<AsymJudgment>::bad(
            {"Sum", read + " <= " + write, pretty_print(p)});
      return Res<AsymJudgment>::good({flag, read, write});
    }
    case Kind::Par: {
      AsymJudgment acc{false, lat.bottom(), lat.top()};
      bool first = true;
      for (const auto& q : p->parts) {
        Res<AsymJudgment> r = atype(cx, q);
        if (!r.ok) return r;
        if (first) {
          acc = r.j;
          first = false;
          continue;
        }
        if (!lat.leq(acc.read, r.j.write))
          return Res<AsymJudgment>::bad(
              {"Par", acc.read + " <= " + r.j.write, pretty_print(p)});
        if (!lat.leq(r.j.read, acc.write))
          return Res<AsymJudgment>::bad(
              {"Par", r.j.read + " <= " + acc.write, pretty_print(p)});
        acc = {acc.flag && r.j.flag, lat.join(acc.read, r.j.read),
               lat.meet(acc.write, r.j.write)};
      }
      return Res<AsymJudgment>::good(acc);
    }
    case Kind::Restrict:
      return atype(cx, p->body);
    case Kind::Call: {
      auto it = cx.agents.find(p->agent);
      if (it == cx.agents.end())
        return Res<AsymJudgment>::bad({"Rec", "agent declared", p->agent});
      return it->second;
    }
  }
  return Res<AsymJudgment>::bad({"Rec", "unreachable", ""});
}

AsymCtx asym_ctx(const Program& prog) {
  AsymCtx cx{&prog, {}};
  const auto& lat = prog.lattice;
  for (const auto& def : prog.agents)
    cx.agents[def.name] =
        Res<AsymJudgment>::good({false, lat.bottom(), lat.top()});
  std::size_t budget =
      prog.agents.size() * (2 * prog.lattice.elements().size() + 2) + 4;
  for (std::size_t i = 0; i < budget; ++i) {
    bool changed = false;
    for (const auto& def : prog.agents) {
      Res<AsymJudgment> cur = cx.agents[def.name];
      Res<AsymJudgment> next = atype(cx, def.body);
      if (next.ok != cur.ok || (next.ok && !(next.j == cur.j))) {
        cx.agents[def.name] = next;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return cx;
}

}  // namespace

SimpleOutcome infer_simple(const Program& prog, const ProcPtr& p) {
  SimpleCtx cx = simple_ctx(prog);
  Res<Level> r = slevel(cx, p);
  SimpleOutcome out;
  out.typeable = r.ok;
  if (r.ok)
    out.principal = SimpleJudgment{program_env(prog, p), r.j};
  else
    out.failure = r.fail;
  return out;
}

SimpleOutcome infer_simple(const Program& prog) {
  return infer_simple(prog, prog.main);
}

AsymOutcome infer_asym(const Program& prog, const ProcPtr& p) {
  AsymCtx cx = asym_ctx(prog);
  Res<AsymJudgment> r = atype(cx, p);
  AsymOutcome out;
  out.typeable = r.ok;
  if (r.ok)
    out.principal = r.j;
  else
    out.failure = r.fail;
  return out;
}

AsymOutcome infer_asym(const Program& prog) {
  return infer_asym(prog, prog.main);
}

bool check_judgment(const Program& prog, const Level& claimed) {
  if (!prog.lattice.contains(claimed)) return false;
  SimpleOutcome o = infer_simple(prog);
  return o.typeable && prog.lattice.leq(claimed, o.principal->level);
}

bool check_judgment(const Program& prog, const AsymJudgment& claimed) {
  const auto& lat = prog.lattice;
  if (!lat.contains(claimed.read) || !lat.contains(claimed.write)) return false;
  if (!lat.leq(claimed.read, claimed.write)) return false;
  AsymOutcome o = infer_asym(prog);
  if (!o.typeable) return false;
  return claimed.flag == o.principal->flag &&
         lat.leq(o.principal->read, claimed.read) &&
         lat.leq(claimed.write, o.principal->write);
}

SrReport subject_reduction_harness(TypeSystem system, const Program& prog,
                                   int steps, std::size_t cap) {
  SrReport report;
  const auto& lat = prog.lattice;

  Level l0;
  AsymJudgment a0;
  if (system == TypeSystem::Simple) {
    SimpleOutcome o = infer_simple(prog);
    if (!o.typeable) {
      report.ok = false;
      report.violations.push_back({{}, pretty_print(prog.main),
                                   "initial term not typeable"});
      return report;
    }
    l0 = o.principal->level;
  } else {
    AsymOutcome o = infer_asym(prog);
    if (!o.typeable) {
      report.ok = false;
      report.violations.push_back({{}, pretty_print(prog.main),
                                   "initial term not typeable"});
      return report;
    }
    a0 = *o.principal;
  }

  struct Node {
    ProcPtr term;
    std::vector<Action> path;
  };
  std::deque<Node> queue{{prog.main, {}}};
  std::set<std::string> seen{canonical_key(canonicalize(prog.main))};

  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    ++report.visited;

    if (!node.path.empty()) {
      std::string detail;
      if (system == TypeSystem::Simple) {
        SimpleOutcome o = infer_simple(prog, node.term);
        if (!o.typeable)
          detail = "became untypeable: " + o.failure->rule;
        else if (!lat.leq(l0, o.principal->level))
          detail = "level " + l0 + " no longer derivable (principal " +
                   o.principal->level + ")";
      } else {
        AsymOutcome o = infer_asym(prog, node.term);
        if (!o.typeable)
          detail = "became untypeable: " + o.failure->rule;
        else {
          // The flag is tracked but not asserted: firing an output discharges
          // T, and resolving a sum can surface a branch's T, so only the
          // read/write interval is stable under transitions.
          if (!(o.principal->flag == a0.flag)) ++report.flag_changes;
          if (!lat.leq(o.principal->read, a0.read) ||
              !lat.leq(a0.write, o.principal->write))
            detail = "interval (" + a0.read + ", " + a0.write +
                     ") no longer derivable (principal (" + o.principal->read +
                     ", " + o.principal->write + "))";
        }
      }
      if (!detail.empty()) {
        report.ok = false;
        report.violations.push_back(
            {node.path, pretty_print(node.term), detail});
      }
    }

    if (static_cast<int>(node.path.size()) >= steps) continue;
    for (const auto& [a, t] : step(prog, node.term)) {
      if (seen.size() >= cap) throw StateSpaceExceeded(cap);
      if (!seen.insert(canonical_key(canonicalize(t))).second) continue;
      std::vector<Action> path = node.path;
      path.push_back(a);
      queue.push_back({t, std::move(path)});
    }
  }
  return report;
}

}  // namespace ccsni
