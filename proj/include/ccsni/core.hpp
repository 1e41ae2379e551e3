#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccsni/ast.hpp"

namespace ccsni {

struct OpenVariable : std::runtime_error {
  explicit OpenVariable(const std::string& var)
      : std::runtime_error("open variable: " + var), variable(var) {}
  std::string variable;
};

struct Diagnostic {
  std::string code;     // "LevelClash", "UnguardedRecursion", ...
  std::string subject;  // offending name
  std::string message;
};

/// Replaces every free occurrence of `var` in payload position by the value
/// constant `value`. Binding occurrences (input prefixes, agent params of the
/// same name) shadow as usual.
ProcPtr substitute(const ProcPtr& p, const std::string& var,
                   const std::string& value);

/// Channels occurring in p outside a matching Restrict binder. Agent calls
/// contribute nothing here; use the Program overloads to look through them.
std::set<ChannelName> free_names(const ProcPtr& p);
std::set<ChannelName> free_names(const Program& prog, const ProcPtr& p);
std::set<ChannelName> free_names(const Program& prog);  // of main

/// Alpha-invariant normal form: Par and Sum children are flattened into
/// sorted multisets, inert Nil components and unused Restrict binders are
/// dropped, and restricted names / input variables are renumbered in
/// traversal order. Throws OpenVariable on a free variable.
ProcPtr canonicalize(const ProcPtr& p);
/// The sort key used by canonicalize; equal keys iff equal canonical forms.
std::string canonical_key(const ProcPtr& p);

std::vector<Diagnostic> check_wellformed(const Program& prog);

}  // namespace ccsni
