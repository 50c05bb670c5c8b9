#include <random>

#include "doctest.h"
#include "qrs/invsets.hpp"
#include "qrs/oracle.hpp"
#include "qrs/quotient.hpp"

using namespace qrs;

namespace {

RootSet set_of(const RootSystem& r, std::initializer_list<const char*> roots) {
  RootSet s = r.empty_set();
  for (const char* t : roots) s.insert(r.parse_root(t).index);
  return s;
}

} // namespace

TEST_CASE("closure predicates on A2") {
  RootSystem r = build_root_system("A2");
  CHECK_FALSE(is_closed(r, set_of(r, {"10", "01"})));
  CHECK(is_closed(r, set_of(r, {"10", "11"})));
  CHECK_FALSE(is_coclosed(r, set_of(r, {"11"})));
  CHECK(is_coclosed(r, set_of(r, {"01", "11"})));
  CHECK(is_inversion_set(r, r.empty_set()));
  CHECK(is_inversion_set(r, r.all_roots()));
  CHECK(enumerate_inversion_sets(r).size() == 6);
}

TEST_CASE("enumeration agrees with the subset oracle") {
  for (const char* t : {"A2", "B2", "C2", "G2", "A3", "B3", "C3", "A1xA1", "A1xA2", "A4", "D4"}) {
    RootSystem r = build_root_system(t);
    CHECK_MESSAGE(enumerate_inversion_sets(r) == oracle::inversion_sets_by_subsets(r), t);
  }
  CHECK(enumerate_inversion_sets(build_root_system("B2")).size() == 8);
  CHECK(enumerate_inversion_sets(build_root_system("A3")).size() == 24);
  CHECK(enumerate_inversion_sets(build_root_system("G2")).size() == 12);
  CHECK(enumerate_inversion_sets(build_root_system("B4")).size() == 384);
  CHECK(enumerate_inversion_sets(build_root_system("F4")).size() == 1152);
}

TEST_CASE("enumeration on quotients agrees with the subset oracle") {
  for (const char* t : {"B4", "F4", "E6", "D5"}) {
    RootSystem r = build_root_system(t);
    for (std::uint32_t bits = 1; bits + 1 < (1u << r.rank()); ++bits) {
      Quotient q = quotient(r, SimpleSubset(bits));
      if (q.system.size() > 16) continue;
      CHECK(enumerate_inversion_sets(q.system) == oracle::inversion_sets_by_subsets(q.system));
    }
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(enumerate_inversion_sets(build_root_system("E6")), GuardExceeded);
  CHECK_THROWS_AS(enumerate_inversion_sets(build_root_system("E6"), 100), GuardExceeded);
  CHECK_THROWS_AS(is_closed(build_root_system("A2"), RootSet(6)), InvalidArgument);
}

TEST_CASE("diagonal convention only matters with multiples") {
  RootSystem b2 = build_root_system("B2");
  Quotient q = quotient(b2, SimpleSubset::of({0})); // roots 1 and 2
  RootSet one = q.system.empty_set();
  one.insert(*q.system.find({1}));
  CHECK_FALSE(is_inversion_set(q.system, one));
  CHECK(is_inversion_set(q.system, one, ClosureConvention::DistinctPairs));
  CHECK(enumerate_inversion_sets(q.system).size() == 2);
  CHECK(enumerate_inversion_sets(q.system, std::nullopt, ClosureConvention::DistinctPairs).size() == 4);
  RootSystem a3 = build_root_system("A3");
  CHECK(enumerate_inversion_sets(a3) == enumerate_inversion_sets(a3, std::nullopt, ClosureConvention::DistinctPairs));
}

TEST_CASE("complements, intersections, unions") {
  std::mt19937_64 rng(7);
  for (const char* t : {"B3", "G2", "A4", "D4", "C3"}) {
    RootSystem r = build_root_system(t);
    auto all = enumerate_inversion_sets(r);
    for (const RootSet& s : all) CHECK(is_inversion_set(r, s.complement()));
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int trial = 0; trial < 300; ++trial) {
      RootSet a = r.empty_set(), b = r.empty_set();
      std::uint64_t x = bits(rng), y = bits(rng);
      for (int i = 0; i < r.size(); ++i) {
        if ((x >> i) & 1u) a.insert(i);
        if ((y >> i) & 1u) b.insert(i);
      }
      // Closures by brute force: smallest closed superset.
      auto close = [&](RootSet s) {
        for (bool grew = true; grew;) {
          grew = false;
          for (int k = 0; k < r.size(); ++k)
            for (auto [p, q] : r.sum_decompositions(k))
              if (s.contains(p) && s.contains(q) && !s.contains(k)) {
                s.insert(k);
                grew = true;
              }
        }
        return s;
      };
      RootSet ca = close(a), cb = close(b);
      CHECK(is_closed(r, ca & cb));
      CHECK(is_coclosed(r, ca.complement() | cb.complement()));
    }
  }
}

TEST_CASE("hyperplane description") {
  for (const char* t : {"A2", "B2", "G2", "A3", "B3", "C3", "A1xA2"}) {
    RootSystem r = build_root_system(t);
    for (const RootSet& s : enumerate_inversion_sets(r)) {
      auto f = find_separating_functional(r, s);
      REQUIRE(f.has_value());
      for (int i = 0; i < r.size(); ++i) {
        Rational v = 0;
        for (int p = 0; p < r.rank(); ++p) v += (*f)[static_cast<std::size_t>(p)] * r.root(i)[static_cast<std::size_t>(p)];
        CHECK((v.sign() > 0) == s.contains(i));
      }
    }
    // Non-inversion sets are not separable.
    for (std::uint32_t mask = 0; mask < (1u << r.size()); ++mask) {
      RootSet s = r.empty_set();
      for (int i = 0; i < r.size(); ++i)
        if ((mask >> i) & 1u) s.insert(i);
      if (!is_inversion_set(r, s)) CHECK_FALSE(find_separating_functional(r, s).has_value());
    }
  }
  std::mt19937_64 rng(11);
  for (const char* t : {"E6", "E7", "E8", "F4", "B6"}) {
    RootSystem r = build_root_system(t);
    for (int trial = 0; trial < 50; ++trial) CHECK(is_inversion_set(r, oracle::random_halfspace_set(r, rng)));
  }
}

TEST_CASE("two-part splits and prefix unions") {
  RootSystem r = build_root_system("A2");
  CHECK(prefix_union_check(r, {set_of(r, {"10", "11"}), set_of(r, {"01"})}));
  CHECK(prefix_union_check(r, {r.all_roots()}));
  CHECK_FALSE(prefix_union_check(r, {set_of(r, {"11"}), set_of(r, {"10", "01"})}));
  auto split = find_two_part_split(r, r.all_roots());
  REQUIRE(split.has_value());
  CHECK(is_inversion_set(r, split->first));
  CHECK(is_inversion_set(r, split->second));
  CHECK((split->first | split->second) == r.all_roots());
  RootSystem b2 = build_root_system("B2");
  CHECK_FALSE(find_two_part_split(b2, set_of(b2, {"10", "11"})).has_value());
  CHECK_FALSE(find_two_part_split(b2, set_of(b2, {"10"})).has_value());
}
