#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccsni/lts.hpp"

namespace ccsni {

enum class TypeSystem { Simple, Asym };

struct SimpleJudgment {
  std::map<std::string, Level> env;  // channel base -> level, from annotations
  Level level;
};

/// (B, sigma, tau): flag records whether an output has been derived; read is
/// an upper bound on input levels, write a lower bound on output levels.
/// Inference maintains read <= write.
struct AsymJudgment {
  bool flag = false;  // T = true
  Level read;
  Level write;
  bool operator==(const AsymJudgment&) const = default;
};

struct TypeFailure {
  std::string rule;       // "Input", "Output", "Sum", "Par", "Rec"
  std::string condition;  // the side condition that fails, e.g. "h <= l"
  std::string location;   // pretty-printed offending subterm
};

struct SimpleOutcome {
  bool typeable = false;
  std::optional<SimpleJudgment> principal;
  std::optional<TypeFailure> failure;
};

struct AsymOutcome {
  bool typeable = false;
  std::optional<AsymJudgment> principal;
  std::optional<TypeFailure> failure;
};

/// Principal judgment of prog.main (greatest derivable level). Subsumption
/// is applied only at checking time; recursion is resolved by a downward
/// fixpoint starting from the top level.
SimpleOutcome infer_simple(const Program& prog);
SimpleOutcome infer_simple(const Program& prog, const ProcPtr& p);

/// Principal judgment of prog.main (least read, greatest write, exact flag);
/// recursion starts from (F, bottom, top).
AsymOutcome infer_asym(const Program& prog);
AsymOutcome infer_asym(const Program& prog, const ProcPtr& p);

/// Derivability of a claimed judgment: reachable from the principal one by
/// the system's subsumption rule. The asym flag must match exactly.
bool check_judgment(const Program& prog, const Level& claimed);
bool check_judgment(const Program& prog, const AsymJudgment& claimed);

struct SrViolation {
  std::vector<Action> path;  // transitions from main to the violating state
  std::string state;         // pretty-printed term
  std::string detail;
};

struct SrReport {
  bool ok = true;
  std::size_t visited = 0;
  std::size_t flag_changes = 0;  // asym flag flips observed (tracked only)
  std::vector<SrViolation> violations;
};

/// Explores all transitions of main up to the given depth and asserts the
/// initial principal judgment still checks in every reached state. For the
/// asym system the read/write interval must still cover the initial one;
/// flag flips are counted but not treated as violations (outputs discharge
/// T, resolving a sum can surface a branch's T).
/// Precondition: prog typeable in the chosen system.
SrReport subject_reduction_harness(TypeSystem system, const Program& prog,
                                   int steps,
                                   std::size_t cap = kDefaultStateCap);

}  // namespace ccsni
