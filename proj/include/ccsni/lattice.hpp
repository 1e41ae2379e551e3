#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccsni {

using Level = std::string;

/// Finite lattice of security levels. The order is kept reflexively and
/// transitively closed; existence and uniqueness of meets, joins, bottom and
/// top are validated when the lattice is built.
class SecurityLattice {
public:
  SecurityLattice();  // default two-point {l, h}, l <= h

  static SecurityLattice two_point();
  static SecurityLattice chain(const std::vector<Level>& elems);
  // Builds from an explicit set of <= pairs (closure is taken). Returns
  // nullopt and sets *error if the result is not a lattice.
  static std::optional<SecurityLattice> from_order(
      const std::vector<Level>& elems,
      const std::vector<std::pair<Level, Level>>& leq_pairs,
      std::string* error);

  bool contains(const Level& a) const;
  bool leq(const Level& a, const Level& b) const;
  Level meet(const Level& a, const Level& b) const;
  Level join(const Level& a, const Level& b) const;
  const Level& bottom() const;
  const Level& top() const;
  const std::vector<Level>& elements() const { return elements_; }

  bool is_two_point() const;
  // True iff the order is a total chain; used by the pretty printer.
  bool is_chain() const;
  std::vector<Level> chain_order() const;

  bool operator==(const SecurityLattice& other) const;

private:
  struct raw_t {};
  explicit SecurityLattice(raw_t) {}  // uninitialized; used by from_order

  int index(const Level& a) const;
  bool finalize(std::string* error);

  std::vector<Level> elements_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> meet_, join_;
  int bottom_ = -1, top_ = -1;
};

}  // namespace ccsni
