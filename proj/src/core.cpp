#include "ccsni/core.hpp"

#include <algorithm>
#include <map>

namespace ccsni {

namespace {

using Kind = Process::Kind;

}  // namespace

ProcPtr substitute(const ProcPtr& p, const std::string& var,
                   const std::string& value) {
  switch (p->kind) {
    case Kind::Nil:
      return p;
    case Kind::Sum: {
      std::vector<Branch> out;
      out.reserve(p->branches.size());
      bool changed = false;
      for (const auto& br : p->branches) {
        Branch nb = br;
        if (br.prefix.polarity == Prefix::Polarity::Output &&
            br.prefix.payload.kind == Payload::Kind::Var &&
            br.prefix.payload.id == var) {
          nb.prefix.payload = Payload::value(value);
          changed = true;
        }
        // an input binder of the same name shadows var in the continuation
        bool shadows = br.prefix.polarity == Prefix::Polarity::Input &&
                       !br.prefix.nullary && br.prefix.payload.id == var;
        if (!shadows) {
          nb.cont = substitute(br.cont, var, value);
          if (nb.cont != br.cont) changed = true;
        }
        out.push_back(std::move(nb));
      }
      return changed ? Process::sum(std::move(out)) : p;
    }
    case Kind::Par: {
      std::vector<ProcPtr> out;
      bool changed = false;
      for (const auto& q : p->parts) {
        auto r = substitute(q, var, value);
        changed = changed || r != q;
        out.push_back(std::move(r));
      }
      return changed ? Process::par(std::move(out)) : p;
    }
    case Kind::Restrict: {
      auto b = substitute(p->body, var, value);
      return b == p->body ? p : Process::restrict(p->bound, b);
    }
    case Kind::Call: {
      std::vector<Payload> out = p->args;
      bool changed = false;
      for (auto& a : out)
        if (a.kind == Payload::Kind::Var && a.id == var) {
          a = Payload::value(value);
          changed = true;
        }
      return changed ? Process::call(p->agent, std::move(out)) : p;
    }
  }
  return p;
}

namespace {

void free_names_rec(const ProcPtr& p, std::set<std::string>& bound,
                    std::set<ChannelName>& out,
                    const std::map<std::string, std::set<ChannelName>>* agent_fn) {
  switch (p->kind) {
    case Kind::Nil:
      return;
    case Kind::Sum:
      for (const auto& br : p->branches) {
        if (!bound.count(br.prefix.channel.base)) out.insert(br.prefix.channel);
        free_names_rec(br.cont, bound, out, agent_fn);
      }
      return;
    case Kind::Par:
      for (const auto& q : p->parts) free_names_rec(q, bound, out, agent_fn);
      return;
    case Kind::Restrict: {
      bool inserted = bound.insert(p->bound.base).second;
      free_names_rec(p->body, bound, out, agent_fn);
      if (inserted) bound.erase(p->bound.base);
      return;
    }
    case Kind::Call:
      if (agent_fn) {
        auto it = agent_fn->find(p->agent);
        if (it != agent_fn->end())
          for (const auto& ch : it->second)
            if (!bound.count(ch.base)) out.insert(ch);
      }
      return;
  }
}

std::map<std::string, std::set<ChannelName>> agent_free_names(
    const Program& prog) {
  std::map<std::string, std::set<ChannelName>> fn;
  for (const auto& a : prog.agents) fn[a.name] = {};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : prog.agents) {
      std::set<std::string> bound;
      std::set<ChannelName> out;
      free_names_rec(a.body, bound, out, &fn);
      if (out != fn[a.name]) {
        fn[a.name] = std::move(out);
        changed = true;
      }
    }
  }
  return fn;
}

}  // namespace

std::set<ChannelName> free_names(const ProcPtr& p) {
  std::set<std::string> bound;
  std::set<ChannelName> out;
  free_names_rec(p, bound, out, nullptr);
  return out;
}

std::set<ChannelName> free_names(const Program& prog, const ProcPtr& p) {
  auto fn = agent_free_names(prog);
  std::set<std::string> bound;
  std::set<ChannelName> out;
  free_names_rec(p, bound, out, &fn);
  return out;
}

std::set<ChannelName> free_names(const Program& prog) {
  return free_names(prog, prog.main);
}

// ---------------------------------------------------------------------------
// Canonicalization.
//
// The sort key is alpha-invariant: restricted channel bases and input-bound
// variables are printed as binder indices. Renaming to fresh concrete names
// ("#k" for channels, "%k" for variables) happens in a second pass over the
// sorted tree, so alpha-equivalent inputs produce identical outputs.

namespace {

struct Scope {
  std::map<std::string, int> chans;
  std::map<std::string, int> vars;
  int next = 0;
};

std::string key_of(const ProcPtr& p, Scope sc);

// Agent bodies are opaque at the call site, so a Restrict binder whose scope
// contains a Call cannot be alpha-renamed or index-keyed: the definition may
// mention the bound base by name.
bool contains_call(const ProcPtr& p) {
  switch (p->kind) {
    case Kind::Nil:
      return false;
    case Kind::Sum:
      for (const auto& br : p->branches)
        if (contains_call(br.cont)) return true;
      return false;
    case Kind::Par:
      for (const auto& q : p->parts)
        if (contains_call(q)) return true;
      return false;
    case Kind::Restrict:
      return contains_call(p->body);
    case Kind::Call:
      return true;
  }
  return false;
}

std::string chan_key(const ChannelName& ch, const Scope& sc) {
  auto it = sc.chans.find(ch.base);
  if (it != sc.chans.end())
    return "#" + std::to_string(it->second) + "_" + ch.level;
  return ch.base + "_" + ch.level;
}

std::string payload_key(const Payload& pl, const Scope& sc) {
  if (pl.kind == Payload::Kind::Value) return "=" + pl.id;
  auto it = sc.vars.find(pl.id);
  if (it == sc.vars.end()) throw OpenVariable(pl.id);
  return "$" + std::to_string(it->second);
}

std::string branch_key(const Branch& br, const Scope& sc) {
  const Prefix& pre = br.prefix;
  if (pre.polarity == Prefix::Polarity::Input) {
    Scope inner = sc;
    if (!pre.nullary) inner.vars[pre.payload.id] = inner.next++;
    return std::string("i") + (pre.nullary ? "*" : "") +
           chan_key(pre.channel, sc) + ".(" + key_of(br.cont, inner) + ")";
  }
  return std::string("o") + (pre.nullary ? "*" : "") + chan_key(pre.channel, sc) +
         "<" + payload_key(pre.payload, sc) + ">.(" + key_of(br.cont, sc) + ")";
}

std::string key_of(const ProcPtr& p, Scope sc) {
  switch (p->kind) {
    case Kind::Nil:
      return "0";
    case Kind::Sum: {
      std::vector<std::string> ks;
      for (const auto& br : p->branches) ks.push_back(branch_key(br, sc));
      std::sort(ks.begin(), ks.end());
      std::string out = "+[";
      for (const auto& k : ks) out += k + ",";
      return out + "]";
    }
    case Kind::Par: {
      std::vector<std::string> ks;
      for (const auto& q : p->parts) ks.push_back(key_of(q, sc));
      std::sort(ks.begin(), ks.end());
      std::string out = "|[";
      for (const auto& k : ks) out += k + ",";
      return out + "]";
    }
    case Kind::Restrict: {
      Scope inner = sc;
      if (contains_call(p->body)) {
        inner.chans.erase(p->bound.base);
        return "v!" + p->bound.str() + ".(" + key_of(p->body, inner) + ")";
      }
      inner.chans[p->bound.base] = inner.next++;
      return "v" + p->bound.level + ".(" + key_of(p->body, inner) + ")";
    }
    case Kind::Call: {
      std::string out = "A:" + p->agent + "(";
      for (const auto& a : p->args) out += payload_key(a, sc) + ",";
      return out + ")";
    }
  }
  return "0";
}

bool mentions_base_or_call(const ProcPtr& p, const std::string& base) {
  switch (p->kind) {
    case Kind::Nil:
      return false;
    case Kind::Sum:
      for (const auto& br : p->branches)
        if (br.prefix.channel.base == base ||
            mentions_base_or_call(br.cont, base))
          return true;
      return false;
    case Kind::Par:
      for (const auto& q : p->parts)
        if (mentions_base_or_call(q, base)) return true;
      return false;
    case Kind::Restrict:
      if (p->bound.base == base) return false;  // shadowed
      return mentions_base_or_call(p->body, base);
    case Kind::Call:
      return true;  // agent bodies are opaque here; keep the binder
  }
  return false;
}

void flatten_par(const ProcPtr& p, std::vector<ProcPtr>& out) {
  if (p->kind == Kind::Par)
    for (const auto& q : p->parts) flatten_par(q, out);
  else
    out.push_back(p);
}

ProcPtr canon_struct(const ProcPtr& p, const Scope& sc) {
  switch (p->kind) {
    case Kind::Nil:
      return Process::nil();
    case Kind::Sum: {
      std::vector<Branch> out;
      for (const auto& br : p->branches) {
        Scope inner = sc;
        if (br.prefix.polarity == Prefix::Polarity::Input && !br.prefix.nullary)
          inner.vars[br.prefix.payload.id] = inner.next++;
        out.push_back(Branch{br.prefix, canon_struct(br.cont, inner)});
      }
      std::stable_sort(out.begin(), out.end(),
                       [&sc](const Branch& a, const Branch& b) {
                         return branch_key(a, sc) < branch_key(b, sc);
                       });
      return Process::sum(std::move(out));
    }
    case Kind::Par: {
      std::vector<ProcPtr> leaves;
      flatten_par(p, leaves);
      std::vector<ProcPtr> out;
      for (const auto& leaf : leaves) {
        auto c = canon_struct(leaf, sc);
        if (c->kind == Kind::Nil) continue;
        if (c->kind == Kind::Par)  // a dropped binder may expose a Par
          for (const auto& q : c->parts) out.push_back(q);
        else
          out.push_back(c);
      }
      if (out.empty()) return Process::nil();
      if (out.size() == 1) return out.front();
      std::stable_sort(out.begin(), out.end(),
                       [&sc](const ProcPtr& a, const ProcPtr& b) {
                         return key_of(a, sc) < key_of(b, sc);
                       });
      return Process::par(std::move(out));
    }
    case Kind::Restrict: {
      Scope inner = sc;
      if (contains_call(p->body))
        inner.chans.erase(p->bound.base);
      else
        inner.chans[p->bound.base] = inner.next++;
      auto body = canon_struct(p->body, inner);
      if (!mentions_base_or_call(body, p->bound.base)) return body;
      return Process::restrict(p->bound, body);
    }
    case Kind::Call:
      return std::make_shared<Process>(*p);
  }
  return Process::nil();
}

struct RenameMaps {
  std::map<std::string, std::string> chans;
  std::map<std::string, std::string> vars;
};

ChannelName rename_chan(const ChannelName& ch, const RenameMaps& m) {
  auto it = m.chans.find(ch.base);
  return it == m.chans.end() ? ch : ChannelName{it->second, ch.level};
}

Payload rename_payload(const Payload& pl, const RenameMaps& m) {
  if (pl.kind == Payload::Kind::Var) {
    auto it = m.vars.find(pl.id);
    if (it != m.vars.end()) return Payload::var(it->second);
  }
  return pl;
}

ProcPtr rename_binders(const ProcPtr& p, const RenameMaps& m, int& counter) {
  switch (p->kind) {
    case Kind::Nil:
      return p;
    case Kind::Sum: {
      std::vector<Branch> out;
      for (const auto& br : p->branches) {
        Branch nb = br;
        nb.prefix.channel = rename_chan(br.prefix.channel, m);
        if (br.prefix.polarity == Prefix::Polarity::Output)
          nb.prefix.payload = rename_payload(br.prefix.payload, m);
        RenameMaps inner = m;
        if (br.prefix.polarity == Prefix::Polarity::Input && !br.prefix.nullary) {
          std::string fresh = "%" + std::to_string(counter++);
          inner.vars[br.prefix.payload.id] = fresh;
          nb.prefix.payload = Payload::var(fresh);
        }
        nb.cont = rename_binders(br.cont, inner, counter);
        out.push_back(std::move(nb));
      }
      return Process::sum(std::move(out));
    }
    case Kind::Par: {
      std::vector<ProcPtr> out;
      for (const auto& q : p->parts) out.push_back(rename_binders(q, m, counter));
      return Process::par(std::move(out));
    }
    case Kind::Restrict: {
      RenameMaps inner = m;
      if (contains_call(p->body)) {
        inner.chans.erase(p->bound.base);
        return Process::restrict(p->bound,
                                 rename_binders(p->body, inner, counter));
      }
      std::string fresh = "#" + std::to_string(counter++);
      inner.chans[p->bound.base] = fresh;
      return Process::restrict(ChannelName{fresh, p->bound.level},
                               rename_binders(p->body, inner, counter));
    }
    case Kind::Call: {
      std::vector<Payload> args;
      for (const auto& a : p->args) args.push_back(rename_payload(a, m));
      return Process::call(p->agent, std::move(args));
    }
  }
  return p;
}

}  // namespace

ProcPtr canonicalize(const ProcPtr& p) {
  Scope sc;
  auto c = canon_struct(p, sc);
  key_of(c, sc);  // validates closedness (throws OpenVariable)
  RenameMaps m;
  int counter = 0;
  return rename_binders(c, m, counter);
}

std::string canonical_key(const ProcPtr& p) {
  Scope sc;
  return key_of(canon_struct(p, sc), sc);
}

// ---------------------------------------------------------------------------
// Well-formedness.

namespace {

struct WfCtx {
  const Program& prog;
  std::vector<Diagnostic>& diags;
  std::map<std::string, Level> levels;  // base -> first seen level
  std::set<std::string> clash_reported;

  void channel(const ChannelName& ch) {
    if (!prog.lattice.contains(ch.level))
      diags.push_back({"UnknownLevel", ch.str(),
                       "level " + ch.level + " is not in the lattice"});
    auto [it, inserted] = levels.emplace(ch.base, ch.level);
    if (!inserted && it->second != ch.level &&
        clash_reported.insert(ch.base).second)
      diags.push_back({"LevelClash", ch.base,
                       "channel " + ch.base + " used at levels " + it->second +
                           " and " + ch.level});
  }

  void payload(const Payload& pl, const std::set<std::string>& bound) {
    if (pl.kind == Payload::Kind::Value) {
      if (std::find(prog.values.begin(), prog.values.end(), pl.id) ==
          prog.values.end())
        diags.push_back(
            {"UnknownValue", pl.id, "value " + pl.id + " is not declared"});
    } else if (!bound.count(pl.id)) {
      diags.push_back({"UnboundVariable", pl.id,
                       "variable " + pl.id + " is not bound"});
    }
  }

  void walk(const ProcPtr& p, std::set<std::string> bound, int prefix_depth,
            const std::string& owner) {
    switch (p->kind) {
      case Kind::Nil:
        return;
      case Kind::Sum:
        for (const auto& br : p->branches) {
          channel(br.prefix.channel);
          std::set<std::string> inner = bound;
          if (br.prefix.polarity == Prefix::Polarity::Input) {
            if (!br.prefix.nullary) inner.insert(br.prefix.payload.id);
          } else {
            payload(br.prefix.payload, bound);
          }
          walk(br.cont, std::move(inner), prefix_depth + 1, owner);
        }
        return;
      case Kind::Par:
        for (const auto& q : p->parts) walk(q, bound, prefix_depth, owner);
        return;
      case Kind::Restrict:
        channel(p->bound);
        walk(p->body, bound, prefix_depth, owner);
        return;
      case Kind::Call: {
        const AgentDef* def = prog.find_agent(p->agent);
        if (!def) {
          diags.push_back({"UnknownAgent", p->agent,
                           "agent " + p->agent + " is not declared"});
        } else if (def->params.size() != p->args.size()) {
          diags.push_back({"ArityMismatch", p->agent,
                           "agent " + p->agent + " expects " +
                               std::to_string(def->params.size()) +
                               " argument(s), got " +
                               std::to_string(p->args.size())});
        }
        for (const auto& a : p->args) payload(a, bound);
        if (!owner.empty() && prefix_depth == 0)
          diags.push_back({"UnguardedRecursion", owner,
                           "call to " + p->agent + " in the body of " + owner +
                               " is not guarded by a prefix"});
        return;
      }
    }
  }
};

}  // namespace

std::vector<Diagnostic> check_wellformed(const Program& prog) {
  std::vector<Diagnostic> diags;
  if (prog.values.empty())
    diags.push_back({"NoValues", "", "the value set must be non-empty"});
  WfCtx ctx{prog, diags};
  for (const auto& a : prog.agents) {
    std::set<std::string> bound(a.params.begin(), a.params.end());
    ctx.walk(a.body, std::move(bound), 0, a.name);
  }
  ctx.walk(prog.main, {}, 0, "");
  for (const auto& v : prog.values)
    if (ctx.levels.count(v))
      diags.push_back({"ValueNameOverlap", v,
                       v + " is both a value and a channel name"});
  return diags;
}

}  // namespace ccsni
