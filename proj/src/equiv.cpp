#include "ccsni/equiv.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ccsni {

namespace {

// Combined state space: P's states keep their indices, Q's are offset by |P|.
// Every candidate pair holds one state of each component, so pairs are stored
// as (p-state, q-state) with p-state < |P| <= q-state.
struct Arena {
  const Lts* lts[2];
  WeakRelation wr[2];
  int n1 = 0;
  EquivKind kind = EquivKind::Weak;
  std::vector<std::string> high_out[2];  // weakly performable high outputs
  std::map<std::pair<int, std::string>, std::vector<int>> resp_cache;

  Arena(EquivKind k, const Lts& p, const Lts& q) : kind(k) {
    lts[0] = &p;
    lts[1] = &q;
    wr[0] = saturate(p);
    wr[1] = saturate(q);
    n1 = static_cast<int>(p.num_states());
    for (int c = 0; c < 2; ++c)
      for (const auto& [astr, a] : wr[c].actions)
        if (a.kind == Action::Kind::Out && a.is_high())
          high_out[c].push_back(astr);
  }

  int comp(int s) const { return s < n1 ? 0 : 1; }
  int local(int s) const { return s < n1 ? s : s - n1; }
  int global(int c, int ls) const { return c == 0 ? ls : ls + n1; }

  std::vector<std::pair<Action, int>> strong(int s) const {
    int c = comp(s);
    std::vector<std::pair<Action, int>> out;
    for (const auto& [a, t] : lts[c]->transitions[local(s)])
      out.emplace_back(a, global(c, t));
    return out;
  }

  void add_globalized(int c, const std::vector<int>& locals,
                      std::set<int>& into) const {
    for (int t : locals) into.insert(global(c, t));
  }

  // States the responder may move to when answering `a`, per the kind's
  // transfer condition.
  const std::vector<int>& responses(int s, const Action& a) {
    auto key = std::make_pair(s, a.str());
    auto it = resp_cache.find(key);
    if (it != resp_cache.end()) return it->second;

    int c = comp(s);
    int ls = local(s);
    std::set<int> out;
    auto weak_of = [&](const std::string& astr) -> const std::vector<int>* {
      auto wit = wr[c].weak[ls].find(astr);
      return wit == wr[c].weak[ls].end() ? nullptr : &wit->second;
    };

    if (kind == EquivKind::RefinedUpToHigh) {
      if (a.is_tau()) {
        // tau* (possibly empty) or a weak high output
        add_globalized(c, wr[c].tau_closure[ls], out);
        for (const auto& b : high_out[c])
          if (const auto* w = weak_of(b)) add_globalized(c, *w, out);
      } else if (a.kind == Action::Kind::Out) {
        if (const auto* w = weak_of(a.str())) add_globalized(c, *w, out);
        if (a.is_high()) add_globalized(c, wr[c].tau_closure[ls], out);
      } else {
        // inputs must be answered by the same name and value, no idling
        if (const auto* w = weak_of(a.str())) add_globalized(c, *w, out);
      }
    } else {
      if (a.is_tau()) {
        add_globalized(c, wr[c].tau_closure[ls], out);  // hat: idling allowed
      } else {
        if (const auto* w = weak_of(a.str())) add_globalized(c, *w, out);
        if (kind == EquivKind::UpToHigh && a.is_high())
          add_globalized(c, wr[c].tau_closure[ls], out);
      }
    }
    std::vector<int> v(out.begin(), out.end());
    return resp_cache.emplace(key, std::move(v)).first->second;
  }
};

struct DelInfo {
  long seq = 0;
  int challenger = -1;
  Action action;
  int target = -1;
};

using Pair = std::pair<int, int>;  // (p-side state, q-side state)

struct GfpResult {
  bool equivalent = false;
  std::map<Pair, DelInfo> deleted;
};

// Greatest-fixed-point pair deletion over a given pair universe. The
// challenge/response successors of every universe pair must again lie in the
// universe (guaranteed both by the reachable closure and by the full set).
GfpResult run_gfp(Arena& ar, const std::vector<Pair>& universe, Pair init) {
  std::set<Pair> alive(universe.begin(), universe.end());
  GfpResult res;
  long seq = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Pair& pr : universe) {
      if (!alive.count(pr)) continue;
      DelInfo info;
      bool violated = false;
      for (int side = 0; side < 2 && !violated; ++side) {
        int chal = side == 0 ? pr.first : pr.second;
        int resp = side == 0 ? pr.second : pr.first;
        for (const auto& [a, t] : ar.strong(chal)) {
          bool ok = false;
          for (int r : ar.responses(resp, a)) {
            Pair next = side == 0 ? Pair{t, r} : Pair{r, t};
            if (alive.count(next)) {
              ok = true;
              break;
            }
          }
          if (!ok) {
            violated = true;
            info = {seq++, chal, a, t};
            break;
          }
        }
      }
      if (violated) {
        alive.erase(pr);
        res.deleted.emplace(pr, info);
        changed = true;
      }
    }
  }
  res.equivalent = alive.count(init) > 0;
  return res;
}

std::vector<Pair> reachable_closure(Arena& ar, Pair init) {
  std::vector<Pair> out;
  std::set<Pair> seen;
  std::deque<Pair> queue{init};
  seen.insert(init);
  while (!queue.empty()) {
    Pair pr = queue.front();
    queue.pop_front();
    out.push_back(pr);
    for (int side = 0; side < 2; ++side) {
      int chal = side == 0 ? pr.first : pr.second;
      int resp = side == 0 ? pr.second : pr.first;
      for (const auto& [a, t] : ar.strong(chal))
        for (int r : ar.responses(resp, a)) {
          Pair next = side == 0 ? Pair{t, r} : Pair{r, t};
          if (seen.insert(next).second) queue.push_back(next);
        }
    }
  }
  return out;
}

// Walks the deletion records from the initial pair: at each deleted pair the
// recorded challenge is unanswerable among surviving pairs, so following the
// earliest-deleted response pair strictly decreases the deletion rank and
// ends at a pair whose challenge has no response at all.
std::vector<Move> extract_cex(Arena& ar, const GfpResult& res, Pair init) {
  std::vector<Move> moves;
  Pair cur = init;
  for (;;) {
    const DelInfo& info = res.deleted.at(cur);
    bool a_side = info.challenger == cur.first;
    Move mv;
    mv.side = a_side ? 0 : 1;
    mv.action = info.action;
    mv.from_a = cur.first;
    mv.from_b = cur.second;
    int resp_state = a_side ? cur.second : cur.first;
    const auto& rs = ar.responses(resp_state, info.action);
    if (rs.empty()) {
      mv.to_a = a_side ? info.target : -1;
      mv.to_b = a_side ? -1 : info.target;
      moves.push_back(mv);
      return moves;
    }
    Pair best{};
    long best_seq = -1;
    for (int r : rs) {
      Pair next = a_side ? Pair{info.target, r} : Pair{r, info.target};
      long s = res.deleted.at(next).seq;
      if (best_seq < 0 || s < best_seq) {
        best_seq = s;
        best = next;
      }
    }
    mv.to_a = best.first;
    mv.to_b = best.second;
    moves.push_back(mv);
    cur = best;
  }
}

// Signature-based partition refinement on the saturated system; two states
// are weakly bisimilar iff they end in the same block.
std::vector<int> weak_partition(const Arena& ar) {
  int n = static_cast<int>(ar.lts[0]->num_states() + ar.lts[1]->num_states());
  std::vector<int> block(n, 0);
  int nblocks = 1;
  for (;;) {
    std::map<std::vector<std::pair<std::string, int>>, int> sig_ids;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      int c = ar.comp(s);
      int ls = ar.local(s);
      std::set<std::pair<std::string, int>> sig;
      for (int t : ar.wr[c].tau_closure[ls])
        sig.emplace("tau", block[ar.global(c, t)]);
      for (const auto& [astr, ts] : ar.wr[c].weak[ls]) {
        if (astr == "tau") continue;  // covered by the hat closure above
        for (int t : ts) sig.emplace(astr, block[ar.global(c, t)]);
      }
      std::vector<std::pair<std::string, int>> key(sig.begin(), sig.end());
      auto [it, fresh] = sig_ids.emplace(std::move(key), sig_ids.size());
      next[s] = it->second;
      (void)fresh;
    }
    if (static_cast<int>(sig_ids.size()) == nblocks) return next;
    nblocks = static_cast<int>(sig_ids.size());
    block = std::move(next);
  }
}

}  // namespace

Verdict check(EquivKind kind, const Lts& p, const Lts& q) {
  Arena ar(kind, p, q);
  Pair init{p.initial, ar.global(1, q.initial)};

  if (kind == EquivKind::Weak) {
    std::vector<int> block = weak_partition(ar);
    if (block[init.first] == block[init.second]) return {true, {}};
  }

  std::vector<Pair> universe = reachable_closure(ar, init);
  GfpResult res = run_gfp(ar, universe, init);
  if (res.equivalent) return {true, {}};
  return {false, extract_cex(ar, res, init)};
}

namespace {

// The oracle below deliberately recomputes weak transitions from scratch so
// that it shares no transfer-condition code with check().
struct NaiveTables {
  const Lts* lts[2];
  int n1 = 0;
  // per component: tau closure and tau* a tau* sets, local indices
  std::vector<std::vector<int>> clos[2];
  std::vector<std::map<std::string, std::set<int>>> weak[2];
  std::map<std::string, Action> actions[2];

  NaiveTables(const Lts& p, const Lts& q) {
    lts[0] = &p;
    lts[1] = &q;
    n1 = static_cast<int>(p.num_states());
    for (int c = 0; c < 2; ++c) {
      int n = static_cast<int>(lts[c]->num_states());
      clos[c].resize(n);
      weak[c].resize(n);
      for (int s = 0; s < n; ++s) {
        std::set<int> seen{s};
        std::deque<int> queue{s};
        while (!queue.empty()) {
          int t = queue.front();
          queue.pop_front();
          for (const auto& [a, u] : lts[c]->transitions[t])
            if (a.is_tau() && seen.insert(u).second) queue.push_back(u);
        }
        clos[c][s].assign(seen.begin(), seen.end());
      }
      for (int s = 0; s < n; ++s)
        for (int t : clos[c][s])
          for (const auto& [a, u] : lts[c]->transitions[t]) {
            actions[c].emplace(a.str(), a);
            for (int w : clos[c][u]) weak[c][s][a.str()].insert(w);
          }
    }
  }

  int comp(int s) const { return s < n1 ? 0 : 1; }
  int local(int s) const { return s < n1 ? s : s - n1; }
  int global(int c, int ls) const { return c == 0 ? ls : ls + n1; }

  std::vector<int> responses(EquivKind kind, int s, const Action& a) const {
    int c = comp(s);
    int ls = local(s);
    std::set<int> out;
    auto add_clos = [&] {
      for (int t : clos[c][ls]) out.insert(global(c, t));
    };
    auto add_weak = [&](const std::string& astr) {
      auto it = weak[c][ls].find(astr);
      if (it == weak[c][ls].end()) return;
      for (int t : it->second) out.insert(global(c, t));
    };
    switch (kind) {
      case EquivKind::Weak:
        if (a.is_tau())
          add_clos();
        else
          add_weak(a.str());
        break;
      case EquivKind::UpToHigh:
        if (a.is_tau())
          add_clos();
        else {
          add_weak(a.str());
          if (a.is_high()) add_clos();
        }
        break;
      case EquivKind::RefinedUpToHigh:
        if (a.is_tau()) {
          add_clos();
          for (const auto& [bstr, b] : actions[c])
            if (b.kind == Action::Kind::Out && b.is_high()) add_weak(bstr);
        } else if (a.kind == Action::Kind::Out) {
          add_weak(a.str());
          if (a.is_high()) add_clos();
        } else {
          add_weak(a.str());
        }
        break;
    }
    return {out.begin(), out.end()};
  }
};

struct NaiveResult {
  NaiveTables tables;
  std::vector<std::vector<bool>> alive;  // [p-state][q-state]
  std::map<Pair, DelInfo> deleted;

  NaiveResult(EquivKind kind, const Lts& p, const Lts& q) : tables(p, q) {
    std::size_t n1 = p.num_states(), n2 = q.num_states();
    if (n1 * n2 > 1000000) throw PairSpaceExceeded();
    alive.assign(n1, std::vector<bool>(n2, true));
    long seq = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
          if (!alive[i][j]) continue;
          int gi = static_cast<int>(i);
          int gj = tables.global(1, static_cast<int>(j));
          DelInfo info;
          bool violated = false;
          for (int side = 0; side < 2 && !violated; ++side) {
            int chal = side == 0 ? gi : gj;
            int resp = side == 0 ? gj : gi;
            int cc = tables.comp(chal);
            for (const auto& [a, lt] :
                 tables.lts[cc]->transitions[tables.local(chal)]) {
              int t = tables.global(cc, lt);
              bool ok = false;
              for (int r : tables.responses(kind, resp, a)) {
                int pi = side == 0 ? t : r;
                int qj = side == 0 ? r : t;
                if (alive[pi][tables.local(qj)]) {
                  ok = true;
                  break;
                }
              }
              if (!ok) {
                violated = true;
                info = {seq++, chal, a, t};
                break;
              }
            }
          }
          if (violated) {
            alive[i][j] = false;
            deleted.emplace(Pair{gi, gj}, info);
            changed = true;
          }
        }
    }
  }
};

}  // namespace

Verdict check_naive(EquivKind kind, const Lts& p, const Lts& q) {
  NaiveResult res(kind, p, q);
  Pair init{p.initial, res.tables.global(1, q.initial)};
  if (res.alive[init.first][res.tables.local(init.second)]) return {true, {}};

  std::vector<Move> moves;
  Pair cur = init;
  for (;;) {
    const DelInfo& info = res.deleted.at(cur);
    bool a_side = info.challenger == cur.first;
    Move mv;
    mv.side = a_side ? 0 : 1;
    mv.action = info.action;
    mv.from_a = cur.first;
    mv.from_b = cur.second;
    int resp_state = a_side ? cur.second : cur.first;
    auto rs = res.tables.responses(kind, resp_state, info.action);
    if (rs.empty()) {
      mv.to_a = a_side ? info.target : -1;
      mv.to_b = a_side ? -1 : info.target;
      moves.push_back(mv);
      return {false, std::move(moves)};
    }
    Pair best{};
    long best_seq = -1;
    for (int r : rs) {
      Pair next = a_side ? Pair{info.target, r} : Pair{r, info.target};
      long s = res.deleted.at(next).seq;
      if (best_seq < 0 || s < best_seq) {
        best_seq = s;
        best = next;
      }
    }
    mv.to_a = best.first;
    mv.to_b = best.second;
    moves.push_back(mv);
    cur = best;
  }
}

std::vector<std::pair<int, int>> naive_relation(EquivKind kind, const Lts& p,
                                                const Lts& q) {
  NaiveResult res(kind, p, q);
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < p.num_states(); ++i)
    for (std::size_t j = 0; j < q.num_states(); ++j)
      if (res.alive[i][j])
        out.emplace_back(static_cast<int>(i),
                         static_cast<int>(j + p.num_states()));
  return out;
}

bool replay_counterexample(EquivKind kind, const Lts& p, const Lts& q,
                           const Verdict& v) {
  if (v.equivalent || v.counterexample.empty()) return false;
  Arena ar(kind, p, q);
  int cur_a = p.initial;
  int cur_b = ar.global(1, q.initial);
  for (std::size_t i = 0; i < v.counterexample.size(); ++i) {
    const Move& mv = v.counterexample[i];
    if (mv.from_a != cur_a || mv.from_b != cur_b) return false;
    int chal = mv.side == 0 ? cur_a : cur_b;
    int resp = mv.side == 0 ? cur_b : cur_a;
    int chal_to = mv.side == 0 ? mv.to_a : mv.to_b;
    int resp_to = mv.side == 0 ? mv.to_b : mv.to_a;
    bool legal = false;
    for (const auto& [a, t] : ar.strong(chal))
      if (a == mv.action && t == chal_to) legal = true;
    if (!legal) return false;
    const auto& rs = ar.responses(resp, mv.action);
    bool last = i + 1 == v.counterexample.size();
    if (last) {
      if (!rs.empty() || resp_to != -1) return false;
    } else {
      if (std::find(rs.begin(), rs.end(), resp_to) == rs.end()) return false;
      cur_a = mv.to_a;
      cur_b = mv.to_b;
    }
  }
  return true;
}

}  // namespace ccsni
