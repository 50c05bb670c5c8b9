#include <doctest.h>

#include <random>

#include "qrs/inflation.hpp"
#include "qrs/invsets.hpp"
#include "qrs/kernels.hpp"
#include "qrs/oracle.hpp"

using namespace qrs;

TEST_CASE("serial and parallel fine-count tables agree") {
  for (const char* type : {"A1", "A5", "B4", "C5", "D6", "G2", "F4", "E6", "E7", "E8", "A2xB3"}) {
    RootSystem r = build_root_system(type);
    FineCountTable s = serial::fine_count_table(r);
    FineCountTable p = parallel::fine_count_table(r);
    INFO(type);
    CHECK(s.values == p.values);
    CHECK(s.notes == p.notes);
    CHECK(s.values[0] == 1);
  }
}

TEST_CASE("brute-force inversion sets agree across versions and with enumeration") {
  for (const char* type : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4", "D4", "B4"}) {
    RootSystem r = build_root_system(type);
    auto s = serial::brute_force_inversion_sets(r);
    auto p = parallel::brute_force_inversion_sets(r);
    INFO(type);
    CHECK(s == p);
    CHECK(s == enumerate_inversion_sets(r));
    if (r.size() <= 20) CHECK(s == oracle::inversion_sets_by_subsets(r));
  }
  CHECK_THROWS_AS(serial::brute_force_inversion_sets(build_root_system("B5")), GuardExceeded);
}

TEST_CASE("gen families agree across versions") {
  std::mt19937_64 rng(7);
  for (const char* type : {"B4", "D5", "E6", "E8"}) {
    RootSystem r = build_root_system(type);
    for (int t = 0; t < 5; ++t) {
      RootSet phi = oracle::random_halfspace_set(r, rng);
      auto s = serial::gen_family(r, phi);
      CHECK(s == parallel::gen_family(r, phi));
      CHECK(s == gen_family(r, phi));
    }
  }
}
