#pragma once

#include <stdexcept>
#include <vector>

#include "ccsni/lts.hpp"

namespace ccsni {

enum class EquivKind { Weak, UpToHigh, RefinedUpToHigh };

struct PairSpaceExceeded : std::runtime_error {
  PairSpaceExceeded()
      : std::runtime_error("pair space exceeds the naive checker's bound") {}
};

/// One challenge/response step of a distinguishing play. States are combined
/// indices: [0, |P|) are P's states, [|P|, |P|+|Q|) are Q's (offset by |P|).
/// In the final move the responder has no legal response at all and the
/// responder-side `to` entry is -1.
struct Move {
  int side = 0;  // 0: the `a` element of the pair challenges, 1: the `b` one
  Action action;
  int from_a = -1, from_b = -1;
  int to_a = -1, to_b = -1;
};

struct Verdict {
  bool equivalent = true;
  std::vector<Move> counterexample;  // empty when equivalent
};

/// Decides the given equivalence between the initial states of the two LTSs.
/// Weak bisimilarity runs partition refinement on the saturated system; the
/// up-to-high kinds run a greatest-fixed-point pair deletion over the pairs
/// reachable from the initial pair. Counterexamples are extracted from the
/// deletion order.
Verdict check(EquivKind kind, const Lts& p, const Lts& q);

/// Reference oracle: textbook greatest-fixed-point iteration over the full
/// pair set of the disjoint union, with its own weak-transition search
/// (independent of saturate() and of check()).
Verdict check_naive(EquivKind kind, const Lts& p, const Lts& q);

/// Surviving pairs (combined indices, a <= b) of the naive fixed point.
std::vector<std::pair<int, int>> naive_relation(EquivKind kind, const Lts& p,
                                                const Lts& q);

/// Replays a counterexample: every intermediate move must be a legal
/// challenge plus response, and the final challenge must have an empty
/// response set under the kind's transfer condition.
bool replay_counterexample(EquivKind kind, const Lts& p, const Lts& q,
                           const Verdict& v);

}  // namespace ccsni
