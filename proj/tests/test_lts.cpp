#include "doctest.h"

#include <algorithm>

#include "ccsni/core.hpp"
#include "ccsni/equiv.hpp"
#include "ccsni/lts.hpp"
#include "ccsni/parser.hpp"
#include "generators.hpp"

using namespace ccsni;

namespace {
std::multiset<std::string> labels(const Lts& lts) {
  std::multiset<std::string> out;
  for (const auto& edges : lts.transitions)
    for (const auto& [act, tgt] : edges) out.insert(act.str());
  return out;
}
}  // namespace

TEST_CASE("input instantiates over the declared value set") {
  auto prog = parse("values {v, w}\nmain = a_l(x).0");
  auto lts = build_lts(prog);
  REQUIRE(lts.num_states() == 2);
  CHECK(labels(lts) == std::multiset<std::string>{"a?v", "a?w"});
  for (const auto& [act, tgt] : lts.transitions[lts.initial])
    CHECK(lts.states[tgt]->kind == Process::Kind::Nil);
}

TEST_CASE("complementary prefixes communicate") {
  auto prog = parse("values {v}\nmain = 'a_l<v>.0 | a_l(x).0");
  auto lts = build_lts(prog);
  auto ls = labels(lts);
  CHECK(ls.count("tau") == 1);  // Par Comm on value v
  CHECK(ls.count("a!v") == 2);  // from main and from the post-input state
  CHECK(ls.count("a?v") == 2);

  // restriction leaves only the synchronization
  auto rprog = parse("values {v}\nmain = new a_l.('a_l<v>.0 | a_l(x).0)");
  auto rlts = build_lts(rprog);
  CHECK(labels(rlts) == std::multiset<std::string>{"tau"});
  CHECK(rlts.num_states() == 2);  // canonical form collapses (vA)(0|0) to 0
}

TEST_CASE("state cap raises StateSpaceExceeded") {
  auto prog = parse("values {v}\nmain = a_l(x).a_l(y).a_l(z).0");
  CHECK_THROWS_AS(build_lts(prog, 2), StateSpaceExceeded);
}

TEST_CASE("saturate on a hand-built chain") {
  // s0 -tau-> s1 -a!v-> s2 -tau-> s3
  Lts lts;
  for (int i = 0; i < 4; ++i) {
    lts.states.push_back(Process::nil());
    lts.keys.push_back("s" + std::to_string(i));
    lts.transitions.emplace_back();
  }
  lts.transitions[0].emplace_back(Action::tau(), 1);
  lts.transitions[1].emplace_back(Action::out({"a", "l"}, "v"), 2);
  lts.transitions[2].emplace_back(Action::tau(), 3);

  auto wr = saturate(lts);
  const auto& weak_a = wr.weak[0].at("a!v");
  CHECK(std::count(weak_a.begin(), weak_a.end(), 3) == 1);
  CHECK(std::count(weak_a.begin(), weak_a.end(), 2) == 1);
  // tau closure is reflexive everywhere
  for (int s = 0; s < 4; ++s)
    CHECK(std::count(wr.tau_closure[s].begin(), wr.tau_closure[s].end(), s) ==
          1);
  // no tau edges from s1: weak a!v there is just the strong step and its
  // tau-successors
  auto weak1 = wr.weak[1].at("a!v");
  std::sort(weak1.begin(), weak1.end());
  CHECK(weak1 == std::vector<int>{2, 3});
  // weak "tau" requires at least one tau
  CHECK(wr.weak[3].find("tau") == wr.weak[3].end());
}

TEST_CASE("restrict_high wraps exactly the high names") {
  auto prog = parse("values {e}\nmain = a_h(x).'b_l<e>");
  auto r = restrict_high(prog);
  REQUIRE(r.main->kind == Process::Kind::Restrict);
  CHECK(r.main->bound == ChannelName{"a", "h"});
  CHECK(equal(r.main->body, prog.main));
  CHECK(build_lts(r).num_states() == 1);  // fully blocked
  for (const auto& edges : build_lts(r).transitions) CHECK(edges.empty());

  auto low = parse("values {e}\nmain = 'b_l<e>");
  CHECK(equal(restrict_high(low).main, low.main));
}

TEST_CASE("restrict_high sees transitively referenced agent bodies") {
  auto prog = parse(
      "agent A(x) = 'c_h<x>.A(x)\n"
      "main = a_l(y).A(y)");
  auto names = high_names(prog);
  CHECK(names == std::set<ChannelName>{{"c", "h"}});
  CHECK(restrict_high(prog).main->kind == Process::Kind::Restrict);
}

TEST_CASE("no high names: restriction is a no-op up to isomorphism") {
  gen::Rng rng(21);
  gen::ProcOpts opt;
  opt.channels = {{"a", "l"}, {"b", "l"}};
  for (int i = 0; i < 100; ++i) {
    auto prog = gen::random_program(rng, opt);
    auto lts = build_lts(prog);
    auto rlts = build_lts(restrict_high(prog));
    CHECK(lts.num_states() == rlts.num_states());
    CHECK(labels(lts) == labels(rlts));
  }
}

TEST_CASE("make_phi") {
  auto phi = make_phi({{"a", "h"}}, {"v"});
  REQUIRE(phi.num_states() == 1);
  REQUIRE(phi.transitions[0].size() == 1);
  CHECK(phi.transitions[0][0].first.str() == "a?v");
  CHECK(phi.transitions[0][0].second == 0);

  auto empty = make_phi({}, {"v", "w"});
  CHECK(empty.num_states() == 1);
  CHECK(empty.transitions[0].empty());

  auto two = make_phi({{"a", "h"}, {"b", "h"}}, {"v", "w"});
  CHECK(two.transitions[0].size() == 4);
}

TEST_CASE("phi offers inputs only: a guarded high input stays blocked") {
  // (vH)(G | Phi_{a}): Phi's input offers cannot synchronize with G's
  // inputs, so the left summand never fires
  auto prog = parse(
      "values {v, r}\n"
      "agent Phi() = a_h(z).Phi()\n"
      "main = new a_h.((a_h(v).a_h(v).'b_l<r> + 'b_l<r>) | Phi())");
  auto lts = build_lts(prog);
  auto ls = labels(lts);
  CHECK(ls.count("tau") == 0);
  CHECK(ls.count("b!r") == 1);  // only the right summand is reachable

  // whereas the output variant does synchronize with Phi
  auto out = parse(
      "values {v, r}\n"
      "agent Phi() = a_h(z).Phi()\n"
      "main = new a_h.(('a_h<v>.'a_h<v>.'b_l<r> + 'b_l<r>) | Phi())");
  auto ols = labels(build_lts(out));
  CHECK(ols.count("tau") == 2);
  CHECK(ols.count("b!r") == 2);
}

TEST_CASE("to_dot emits every state and edge") {
  auto prog = parse("values {v}\nmain = 'a_l<v>.0 | a_l(x).0");
  auto lts = build_lts(prog);
  auto dot = to_dot(lts);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("tau") != std::string::npos);
  CHECK(dot.find("a!v") != std::string::npos);
}
