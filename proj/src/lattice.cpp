#include "ccsni/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccsni {

SecurityLattice::SecurityLattice() { *this = two_point(); }

SecurityLattice SecurityLattice::two_point() { return chain({"l", "h"}); }

SecurityLattice SecurityLattice::chain(const std::vector<Level>& elems) {
  std::vector<std::pair<Level, Level>> pairs;
  for (std::size_t i = 0; i + 1 < elems.size(); ++i)
    pairs.emplace_back(elems[i], elems[i + 1]);
  std::string err;
  auto lat = from_order(elems, pairs, &err);
  if (!lat) throw std::invalid_argument("invalid chain lattice: " + err);
  return *lat;
}

std::optional<SecurityLattice> SecurityLattice::from_order(
    const std::vector<Level>& elems,
    const std::vector<std::pair<Level, Level>>& leq_pairs, std::string* error) {
  SecurityLattice lat{raw_t{}};
  lat.elements_ = elems;
  const int n = static_cast<int>(elems.size());
  if (n == 0) {
    if (error) *error = "lattice has no elements";
    return std::nullopt;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (elems[i] == elems[j]) {
        if (error) *error = "duplicate element " + elems[i];
        return std::nullopt;
      }
  lat.leq_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) lat.leq_[i][i] = true;
  for (const auto& [lo, hi] : leq_pairs) {
    int i = lat.index(lo), j = lat.index(hi);
    if (i < 0 || j < 0) {
      if (error) *error = "order pair mentions unknown element";
      return std::nullopt;
    }
    lat.leq_[i][j] = true;
  }
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (lat.leq_[i][k])
        for (int j = 0; j < n; ++j)
          if (lat.leq_[k][j]) lat.leq_[i][j] = true;
  std::string err;
  if (!lat.finalize(&err)) {
    if (error) *error = err;
    return std::nullopt;
  }
  return lat;
}

bool SecurityLattice::finalize(std::string* error) {
  const int n = static_cast<int>(elements_.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq_[i][j] && leq_[j][i]) {
        *error = "order is not antisymmetric: " + elements_[i] + " and " +
                 elements_[j];
        return false;
      }
  meet_.assign(n, std::vector<int>(n, -1));
  join_.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // greatest lower bound
      int glb = -1;
      for (int k = 0; k < n; ++k)
        if (leq_[k][i] && leq_[k][j] && (glb < 0 || leq_[glb][k])) glb = k;
      if (glb < 0) {
        *error = "no lower bound for " + elements_[i] + ", " + elements_[j];
        return false;
      }
      for (int k = 0; k < n; ++k)
        if (leq_[k][i] && leq_[k][j] && !leq_[k][glb]) {
          *error = "meet of " + elements_[i] + ", " + elements_[j] +
                   " is not unique";
          return false;
        }
      meet_[i][j] = glb;
      int lub = -1;
      for (int k = 0; k < n; ++k)
        if (leq_[i][k] && leq_[j][k] && (lub < 0 || leq_[k][lub])) lub = k;
      if (lub < 0) {
        *error = "no upper bound for " + elements_[i] + ", " + elements_[j];
        return false;
      }
      for (int k = 0; k < n; ++k)
        if (leq_[i][k] && leq_[j][k] && !leq_[lub][k]) {
          *error = "join of " + elements_[i] + ", " + elements_[j] +
                   " is not unique";
          return false;
        }
      join_[i][j] = lub;
    }
  bottom_ = 0;
  top_ = 0;
  for (int i = 0; i < n; ++i) {
    bottom_ = meet_[bottom_][i];
    top_ = join_[top_][i];
  }
  return true;
}

int SecurityLattice::index(const Level& a) const {
  auto it = std::find(elements_.begin(), elements_.end(), a);
  return it == elements_.end() ? -1
                               : static_cast<int>(it - elements_.begin());
}

bool SecurityLattice::contains(const Level& a) const { return index(a) >= 0; }

bool SecurityLattice::leq(const Level& a, const Level& b) const {
  int i = index(a), j = index(b);
  if (i < 0 || j < 0) throw std::invalid_argument("level not in lattice");
  return leq_[i][j];
}

Level SecurityLattice::meet(const Level& a, const Level& b) const {
  int i = index(a), j = index(b);
  if (i < 0 || j < 0) throw std::invalid_argument("level not in lattice");
  return elements_[meet_[i][j]];
}

Level SecurityLattice::join(const Level& a, const Level& b) const {
  int i = index(a), j = index(b);
  if (i < 0 || j < 0) throw std::invalid_argument("level not in lattice");
  return elements_[join_[i][j]];
}

const Level& SecurityLattice::bottom() const { return elements_[bottom_]; }
const Level& SecurityLattice::top() const { return elements_[top_]; }

bool SecurityLattice::is_two_point() const {
  return elements_.size() == 2 && contains("l") && contains("h") &&
         leq("l", "h");
}

bool SecurityLattice::is_chain() const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = 0; j < elements_.size(); ++j)
      if (!leq_[i][j] && !leq_[j][i]) return false;
  return true;
}

std::vector<Level> SecurityLattice::chain_order() const {
  std::vector<Level> out = elements_;
  std::sort(out.begin(), out.end(),
            [this](const Level& a, const Level& b) { return leq(a, b) && a != b; });
  return out;
}

bool SecurityLattice::operator==(const SecurityLattice& other) const {
  if (elements_.size() != other.elements_.size()) return false;
  for (const auto& a : elements_) {
    if (!other.contains(a)) return false;
    for (const auto& b : elements_)
      if (leq(a, b) != other.leq(a, b)) return false;
  }
  return true;
}

}  // namespace ccsni
