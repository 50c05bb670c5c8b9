#include <doctest.h>

#include <set>

#include "qrs/decomp.hpp"
#include "qrs/invsets.hpp"
#include "qrs/oracle.hpp"

using namespace qrs;

namespace {

RootSet roots(const RootSystem& r, std::initializer_list<const char*> names) {
  RootSet s = r.empty_set();
  for (const char* n : names) s.insert(r.parse_root(n).index);
  return s;
}

std::uint64_t count_of(const char* type) { return fine_count(build_root_system(type)); }

} // namespace

TEST_CASE("pi on rank-two systems") {
  CHECK(pi_count(build_root_system("A2")) == 0);
  CHECK(pi_count(build_root_system("B2")) == 1);
  CHECK(pi_count(build_root_system("C2")) == 1);
  CHECK(pi_count(build_root_system("G2")) == 3);
  CHECK(pi_count(build_root_system("A1xA1")) == 0);
}

TEST_CASE("fine counts of classical types") {
  const std::uint64_t a[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 1; n <= 8; ++n) CHECK(count_of(("A" + std::to_string(n)).c_str()) == a[n - 1]);
  const std::uint64_t b[] = {1, 3, 9, 29, 97, 333, 1165};
  for (int n = 1; n <= 7; ++n) CHECK(count_of(("B" + std::to_string(n)).c_str()) == b[n - 1]);
  for (int n = 1; n <= 6; ++n) CHECK(count_of(("C" + std::to_string(n)).c_str()) == b[n - 1]);
  const std::uint64_t d[] = {1, 1, 5, 19, 69, 249};
  for (int n = 1; n <= 6; ++n) CHECK(count_of(("D" + std::to_string(n)).c_str()) == d[n - 1]);
}

TEST_CASE("fine counts of exceptional types") {
  CHECK(count_of("G2") == 5);
  CHECK(count_of("F4") == 46);
  CHECK(count_of("E6") == 320);
  CHECK(count_of("E7") == 1534);
  CHECK(count_of("E8") == 8392);
}

TEST_CASE("direct labeling count agrees with the recursion") {
  for (const char* type : {"A1", "A5", "B4", "C4", "D5", "G2", "F4", "E6", "E7", "E8", "A2xB2"}) {
    RootSystem r = build_root_system(type);
    INFO(type);
    CHECK(fine_count_by_labeling(r) == fine_count(r));
  }
}

TEST_CASE("fine counts multiply over factors") {
  CHECK(count_of("A0") == 1);
  CHECK(count_of("A1xB2") == 3);
  CHECK(count_of("A2xG2") == 10);
  CHECK(count_of("A3xD4xA1") == 5 * 19);
}

TEST_CASE("closed recurrences agree with the general count") {
  for (const SequenceCheck& c : sequence_crosscheck()) {
    INFO(c.name);
    CHECK(c.ok());
  }
  auto d = d_sequence(6);
  CHECK(d[3] == 5);
  auto a = catalan_by_recurrence(10);
  for (int n = 0; n <= 10; ++n) CHECK(a[static_cast<std::size_t>(n)] == oracle::catalan(n));
}

TEST_CASE("quotients with non-primitive roots are noted and give the same pi") {
  PiCache cache;
  RootSystem c3 = build_root_system("C3");
  // Projecting C3 onto its first two simple roots yields 01 and 02.
  CHECK(cache.get(c3, SimpleSubset::all(3), 0, 1) == pi_count(build_root_system("B2")));
  CHECK_FALSE(cache.notes().empty());
  RootSystem a3 = build_root_system("A3");
  PiCache plain;
  plain.get(a3, SimpleSubset::all(3), 0, 2);
  CHECK(plain.notes().empty());
}

TEST_CASE("decomposition oracle on small cases") {
  RootSystem a2 = build_root_system("A2");
  auto ds = enumerate_decompositions_oracle(a2, a2.all_roots(), 2);
  REQUIRE(ds.size() == 2);
  std::set<Decomposition> got(ds.begin(), ds.end());
  Decomposition x{{roots(a2, {"10", "11"}), roots(a2, {"01"})}};
  Decomposition y{{roots(a2, {"10"}), roots(a2, {"01", "11"})}};
  x.normalize();
  y.normalize();
  CHECK(got.count(x) == 1);
  CHECK(got.count(y) == 1);

  RootSystem g2 = build_root_system("G2");
  CHECK(enumerate_decompositions_oracle(g2, g2.all_roots(), 2).size() == 5);

  for (const RootSet& phi : enumerate_inversion_sets(g2)) {
    if (phi.empty()) continue;
    auto one = enumerate_decompositions_oracle(g2, phi, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].parts == std::vector<RootSet>{phi});
  }
  CHECK_THROWS_AS(enumerate_decompositions_oracle(build_root_system("A5"), build_root_system("A5").all_roots(), 2), GuardExceeded);
}

TEST_CASE("decomposition oracle agrees with the plain recursion") {
  for (const char* type : {"A3", "B3", "G2", "A1xA2"}) {
    RootSystem r = build_root_system(type);
    auto all = enumerate_inversion_sets(r);
    for (int k = 1; k <= r.rank() + 1; ++k) {
      auto mine = enumerate_decompositions_oracle(r, r.all_roots(), k);
      auto plain = oracle::partitions_into_inversion_sets(all, r.all_roots(), k);
      CHECK(mine.size() == plain.size());
      for (const Decomposition& d : mine) CHECK(is_decomposition(r, d, r.all_roots()));
    }
  }
}

TEST_CASE("fine enumeration matches the count and the oracle") {
  for (const char* type : {"A2", "B2", "A3", "B3", "C3", "D4", "G2", "A1xA1"}) {
    RootSystem r = build_root_system(type);
    auto fine = fine_enumerate(r);
    INFO(type);
    CHECK(fine.size() == fine_count(r));
    std::set<Decomposition> unique(fine.begin(), fine.end());
    CHECK(unique.size() == fine.size());
    for (const Decomposition& d : fine) {
      CHECK(d.parts.size() == static_cast<std::size_t>(r.rank()));
      CHECK(is_decomposition(r, d, r.all_roots()));
      for (const RootSet& p : d.parts) CHECK((p & r.simple_roots()).size() == 1);
    }
    if (r.rank() <= kOracleRankLimit) {
      std::set<Decomposition> oracle_fine;
      for (Decomposition d : enumerate_decompositions_oracle(r, r.all_roots(), r.rank())) {
        bool one_simple = true;
        for (const RootSet& p : d.parts) one_simple = one_simple && (p & r.simple_roots()).size() == 1;
        if (one_simple) oracle_fine.insert(d);
      }
      CHECK(oracle_fine == unique);
    }
  }
  CHECK(fine_enumerate(build_root_system("B2")).size() == 3);
  CHECK_THROWS_AS(fine_enumerate(build_root_system("A6"), 100), GuardExceeded);
}

TEST_CASE("every decomposition of small systems has the predicted shape") {
  for (const char* type : {"A1", "A3", "B3", "C3", "G2", "B2"}) {
    RootSystem r = build_root_system(type);
    for (int k = 1; k <= r.size(); ++k) {
      auto ds = enumerate_decompositions_oracle(r, r.all_roots(), k);
      if (ds.empty()) break;
      for (const Decomposition& d : ds) {
        MainTheoremWitness w;
        REQUIRE_NOTHROW(w = validate_main_theorem(r, d));
        CHECK(d.parts[static_cast<std::size_t>(w.first)].contains(r.highest_root()));
        if (k == 2 && w.form.kind == PsiKind::Primitive) CHECK(w.second >= 0);
      }
    }
  }
  CHECK_THROWS_AS(validate_main_theorem(build_root_system("A1xA1"), Decomposition{}), InvalidArgument);
}

TEST_CASE("overflow guards") {
  CHECK(checked_mul(1ULL << 31, 1ULL << 31) == 1ULL << 62);
  CHECK_THROWS_AS(checked_mul(1ULL << 32, 1ULL << 32), GuardExceeded);
  CHECK_THROWS_AS(checked_add(~0ULL, 1), GuardExceeded);
}
