#include <bit>
#include <random>

#include "doctest.h"
#include "qrs/invsets.hpp"
#include "qrs/paths.hpp"

using namespace qrs;

namespace {

std::vector<SignedRoot> steps_of(const RootSystem& r, std::initializer_list<const char*> names) {
  std::vector<SignedRoot> out;
  for (const char* n : names) out.push_back(r.parse_root(n));
  return out;
}

std::vector<std::string> names_of(const RootSystem& r, const std::vector<SignedRoot>& steps) {
  std::vector<std::string> out;
  for (SignedRoot s : steps) out.push_back(r.format(s));
  return out;
}

} // namespace

TEST_CASE("D5 worked path") {
  RootSystem d5 = build_root_system("D5");
  Path p{d5.parse_root("01000"), steps_of(d5, {"10000", "00111", "-00001", "00101"}), d5.parse_root("11211")};
  CHECK(is_valid_path(d5, p));
  CHECK_FALSE(is_reduced(d5, p));
  Path found = find_path(d5, p.start, steps_of(d5, {"-00001", "00101", "00111", "10000"}));
  CHECK(is_valid_path(d5, found));
  CHECK(d5.format(found.end) == "11211");

  Path red = reduce_path(d5, p);
  CHECK(is_valid_path(d5, red));
  CHECK(is_reduced(d5, red));
  CHECK(names_of(d5, red.steps) == std::vector<std::string>{"10000", "00110", "00101"});
  CHECK(all_permutations_valid(d5, red));
}

TEST_CASE("trivial paths") {
  RootSystem a2 = build_root_system("A2");
  Path empty = find_path(a2, a2.parse_root("10"), {});
  CHECK(empty.steps.empty());
  CHECK(empty.end == empty.start);
  Path one = find_path(a2, a2.parse_root("10"), steps_of(a2, {"01"}));
  CHECK(a2.format(one.end) == "11");
  CHECK(reduce_path(a2, one) == one);
  CHECK(all_permutations_valid(a2, one));
  CHECK_THROWS_AS(find_path(a2, a2.parse_root("10"), steps_of(a2, {"10"})), InvalidArgument);
  CHECK_THROWS_AS(find_path(a2, a2.parse_root("10"), steps_of(a2, {"01", "-01"})), InvalidArgument);
}

TEST_CASE("opposite steps defeat the rearrangement statement") {
  // [10; 01, -01; 10] is reduced (01 + -01 = 0 is not a root) and 10 is not
  // the negative of a step, yet starting with -01 leaves the root system.
  RootSystem a2 = build_root_system("A2");
  Path p{a2.parse_root("10"), steps_of(a2, {"01", "-01"}), a2.parse_root("10")};
  CHECK(is_valid_path(a2, p));
  CHECK(is_reduced(a2, p));
  CHECK_FALSE(all_permutations_valid(a2, p));
  CHECK(has_zero_subsum(a2, p.steps));
}

TEST_CASE("a degenerate path has no reduction") {
  RootSystem b4 = build_root_system("B4");
  Path p{b4.parse_root("-0112"), steps_of(b4, {"0012", "0112", "-1122", "1222"}), b4.parse_root("0112")};
  CHECK(is_valid_path(b4, p));
  CHECK_FALSE(has_zero_subsum(b4, p.steps));
  CHECK(is_degenerate(b4, p.start, p.steps));
  CHECK_THROWS_AS(reduce_path(b4, p), InvalidArgument);
  // Two equal steps from their negative: no first step is available.
  CHECK_THROWS_AS(find_path(b4, b4.parse_root("-0112"), steps_of(b4, {"0112", "0112"})), InvalidArgument);
}

TEST_CASE("random reduced paths permute freely") {
  std::mt19937_64 rng(5);
  for (const char* t : {"B4", "C4", "F4", "D5", "G2"}) {
    RootSystem r = build_root_system(t);
    std::uniform_int_distribution<int> pick(0, r.size() - 1), sign(0, 1), len(1, 6);
    int done = 0;
    for (int trial = 0; done < 200 && trial < 20000; ++trial) {
      SignedRoot start{pick(rng), sign(rng) ? 1 : -1};
      Coeffs at = r.coeffs(start);
      std::vector<SignedRoot> steps;
      int n = len(rng);
      for (int k = 0; k < 50 && static_cast<int>(steps.size()) < n; ++k) {
        SignedRoot s{pick(rng), sign(rng) ? 1 : -1};
        Coeffs next = at;
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += r.coeffs(s)[i];
        if (!r.find_signed(next)) continue;
        steps.push_back(s);
        at = next;
      }
      if (is_degenerate(r, start, steps)) continue;
      Path p{start, steps, *r.find_signed(at)};
      REQUIRE(is_valid_path(r, p));
      Path red = reduce_path(r, p);
      CHECK(is_valid_path(r, red));
      CHECK(is_reduced(r, red));
      CHECK(red.steps.size() <= p.steps.size());
      bool start_ok = true;
      for (SignedRoot s : red.steps)
        if (s.index == start.index && s.sign == -start.sign) start_ok = false;
      if (start_ok) CHECK(all_permutations_valid(r, red));
      // No nonempty subcollection of at least two reduced steps sums to a root.
      const std::size_t m = red.steps.size();
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (std::popcount(mask) < 2) continue;
        Coeffs sum(static_cast<std::size_t>(r.rank()), 0);
        for (std::size_t i = 0; i < m; ++i)
          if ((mask >> i) & 1u)
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += r.coeffs(red.steps[i])[k];
        CHECK_FALSE(r.find_signed(sum).has_value());
      }
      ++done;
    }
    CHECK(done == 200);
  }
}

TEST_CASE("co-closed sets span their support") {
  for (const char* t : {"A3", "B3", "C3", "G2", "A4", "B4", "D4", "A1xA2"}) {
    RootSystem r = build_root_system(t);
    for (std::uint32_t mask = 0; mask < (1u << r.size()); ++mask) {
      RootSet s = r.empty_set();
      for (int i = 0; i < r.size(); ++i)
        if ((mask >> i) & 1u) s.insert(i);
      if (is_coclosed(r, s)) CHECK(spans_support_lattice(r, s));
    }
  }
  // A closed set need not: {11} in A2 spans a proper sublattice of its support.
  RootSystem a2 = build_root_system("A2");
  CHECK_FALSE(spans_support_lattice(a2, RootSet::of(3, {a2.parse_root("11").index})));
}
