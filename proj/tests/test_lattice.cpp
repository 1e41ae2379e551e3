#include "doctest.h"

#include "ccsni/lattice.hpp"

using namespace ccsni;

TEST_CASE("two-point lattice") {
  auto lat = SecurityLattice::two_point();
  CHECK(lat.bottom() == "l");
  CHECK(lat.top() == "h");
  CHECK(lat.leq("l", "h"));
  CHECK_FALSE(lat.leq("h", "l"));
  CHECK(lat.is_two_point());
  CHECK(lat.is_chain());
  CHECK(lat.meet("l", "h") == "l");
  CHECK(lat.join("l", "h") == "h");
}

TEST_CASE("lattice laws hold on chains and the diamond") {
  auto diamond = SecurityLattice::from_order(
      {"bot", "a", "b", "top"},
      {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}}, nullptr);
  REQUIRE(diamond.has_value());
  std::vector<SecurityLattice> lats = {
      SecurityLattice::two_point(),
      SecurityLattice::chain({"low", "mid", "high"}),
      *diamond,
  };
  for (const auto& lat : lats) {
    const auto& es = lat.elements();
    for (const auto& a : es) {
      CHECK(lat.meet(a, a) == a);  // idempotent
      CHECK(lat.join(a, a) == a);
      CHECK(lat.leq(lat.bottom(), a));
      CHECK(lat.leq(a, lat.top()));
      for (const auto& b : es) {
        CHECK(lat.meet(a, b) == lat.meet(b, a));  // commutative
        CHECK(lat.join(a, b) == lat.join(b, a));
        CHECK(lat.leq(lat.meet(a, b), a));  // a ⊓ b ≤ a ≤ a ⊔ b
        CHECK(lat.leq(a, lat.join(a, b)));
        for (const auto& c : es) {  // associative
          CHECK(lat.meet(lat.meet(a, b), c) == lat.meet(a, lat.meet(b, c)));
          CHECK(lat.join(lat.join(a, b), c) == lat.join(a, lat.join(b, c)));
        }
      }
    }
  }
  CHECK_FALSE(diamond->is_two_point());
  CHECK_FALSE(diamond->is_chain());
}

TEST_CASE("from_order rejects non-lattices") {
  std::string err;
  // two maximal elements with no join
  CHECK_FALSE(SecurityLattice::from_order({"bot", "a", "b"},
                                          {{"bot", "a"}, {"bot", "b"}}, &err)
                  .has_value());
  CHECK_FALSE(err.empty());
  // cycle breaks antisymmetry
  CHECK_FALSE(
      SecurityLattice::from_order({"a", "b"}, {{"a", "b"}, {"b", "a"}}, &err)
          .has_value());
  // duplicate element
  CHECK_FALSE(SecurityLattice::from_order({"a", "a"}, {}, &err).has_value());
  // unknown element in a pair
  CHECK_FALSE(
      SecurityLattice::from_order({"a"}, {{"a", "zzz"}}, &err).has_value());
  CHECK_FALSE(SecurityLattice::from_order({}, {}, &err).has_value());
}

TEST_CASE("chain order and equality") {
  auto lat = SecurityLattice::chain({"low", "mid", "high"});
  CHECK(lat.chain_order() == std::vector<Level>{"low", "mid", "high"});
  CHECK(lat == SecurityLattice::chain({"low", "mid", "high"}));
  CHECK_FALSE(lat == SecurityLattice::two_point());
}
