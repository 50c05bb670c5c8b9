#include <set>

#include "doctest.h"
#include "qrs/oracle.hpp"
#include "qrs/quotient.hpp"

using namespace qrs;

namespace {

std::set<Coeffs> root_set(const RootSystem& r) { return {r.roots().begin(), r.roots().end()}; }

std::set<std::string> names(const RootSystem& r, const RootSet& s) {
  std::set<std::string> out;
  s.for_each([&](int i) { out.insert(r.format(i)); });
  return out;
}

} // namespace

TEST_CASE("A3 modulo the middle root") {
  RootSystem a3 = build_root_system("A3");
  Quotient q = quotient(a3, SimpleSubset::of({1}));
  CHECK(q.system.size() == 3);
  CHECK(root_set(q.system) == std::set<Coeffs>{{1, 0}, {0, 1}, {1, 1}});
  int ten = *q.system.find({1, 0});
  CHECK(names(a3, q.fibers[static_cast<std::size_t>(ten)]) == std::set<std::string>{"100", "110"});
  CHECK(q.image[static_cast<std::size_t>(a3.parse_root("010").index)] == -1);
  CHECK(q.system.all_primitive());
  CHECK(q.system.base_ids() == std::vector<int>{0, 2});
}

TEST_CASE("rank-one quotients of the rank-two doubly laced systems") {
  // C2 has roots 10, 01, 11, 21; killing the first simple root leaves one root.
  RootSystem c2 = build_root_system("C2");
  Quotient q = quotient(c2, SimpleSubset::of({0}));
  REQUIRE(q.system.size() == 1);
  CHECK(names(c2, q.fibers[0]) == std::set<std::string>{"01", "11", "21"});
  // B2 (roots 10, 01, 11, 12) modulo its second root gives 1 and 2.
  RootSystem b2 = build_root_system("B2");
  Quotient p = quotient(b2, SimpleSubset::of({1}));
  CHECK(root_set(p.system) == std::set<Coeffs>{{1}});
  Quotient p2 = quotient(b2, SimpleSubset::of({0}));
  CHECK(root_set(p2.system) == std::set<Coeffs>{{1}, {2}});
  CHECK_FALSE(p2.system.is_primitive(*p2.system.find({2})));
}

TEST_CASE("quotient roots are the nonzero restrictions") {
  for (const char* t : {"A4", "B4", "C4", "D5", "F4", "G2", "E6"}) {
    RootSystem r = build_root_system(t);
    for (std::uint32_t bits = 0; bits + 1 < (1u << r.rank()); ++bits) {
      Quotient q = quotient(r, SimpleSubset(bits));
      std::vector<Coeffs> expect = oracle::quotient_roots_by_restriction(r, SimpleSubset(bits));
      CHECK(root_set(q.system) == std::set<Coeffs>(expect.begin(), expect.end()));
      CHECK(q.system.gram().is_positive_definite());
    }
  }
  CHECK_THROWS_AS(quotient(build_root_system("A2"), SimpleSubset::all(2)), InvalidArgument);
}

TEST_CASE("Schur complement matches an explicit projection") {
  for (const char* t : {"A4", "B4", "C4", "D5", "E6", "E7", "E8"}) {
    SystemSpec spec = SystemSpec::parse(t);
    RootSystem r = build_root_system(spec);
    auto base = oracle::explicit_base(spec);
    // The explicit model reproduces the Gram matrix itself.
    CHECK(oracle::projected_gram(base, SimpleSubset()) == r.gram());
    for (std::uint32_t bits = 1; bits + 1 < (1u << r.rank()); bits += (r.rank() > 6 ? 7 : 1)) {
      Quotient q = quotient(r, SimpleSubset(bits));
      CHECK(q.system.gram() == oracle::projected_gram(base, SimpleSubset(bits)));
    }
  }
}

TEST_CASE("E6 rank-two quotients from the worked examples") {
  RootSystem e6 = build_root_system("E6");
  Quotient a = quotient(e6, SimpleSubset::of({1, 3, 4, 5}));
  RootSet prim = a.system.empty_set();
  for (int i = 0; i < a.system.size(); ++i)
    if (a.system.is_primitive(i)) prim.insert(i);
  CHECK(names(a.system, prim) == std::set<std::string>{"10", "01", "11", "12"});
  Quotient b = quotient(e6, SimpleSubset::of({0, 2, 3, 4}));
  CHECK(names(b.system, b.system.all_roots()) == std::set<std::string>{"10", "01", "11", "21"});
}

TEST_CASE("subsystems") {
  RootSystem b5 = build_root_system("B5");
  Subsystem s = subsystem(b5, SimpleSubset::of({3, 4}));
  CHECK(s.system.size() == 4);
  CHECK(names(b5, to_parent(s, s.system.all_roots(), b5.size())) ==
        std::set<std::string>{"00010", "00001", "00011", "00012"});
  Subsystem t = subsystem(build_root_system("A3"), SimpleSubset::of({0, 2}));
  CHECK(t.system.size() == 2);
  CHECK_FALSE(t.system.sum(0, 1).has_value());
  CHECK(t.system.inner_product(0, 1) == Rational(0));
  RootSystem e7 = build_root_system("E7");
  Subsystem whole = subsystem(e7, SimpleSubset::all(7));
  CHECK(whole.system.roots() == e7.roots());
  CHECK(subsystem(e7, SimpleSubset()).system.size() == 0);
}

TEST_CASE("products") {
  RootSystem p = product(build_root_system("A1"), build_root_system("A1"));
  CHECK(p.size() == 2);
  CHECK_FALSE(p.sum(0, 1).has_value());
  RootSystem q = product(build_root_system("B2"), build_root_system("G2"));
  CHECK(q.size() == 10);
  CHECK(q.gram()(0, 3) == Rational(0));
}

TEST_CASE("quotients compose") {
  for (const char* t : {"D5", "B4", "F4", "E6"}) {
    RootSystem r = build_root_system(t);
    const std::uint32_t full = (1u << r.rank()) - 1;
    for (std::uint32_t j = 0; j < full; ++j)
      for (std::uint32_t i = j;; i = (i - 1) & j) {
        Quotient ri = quotient(r, SimpleSubset(i));
        // J/I in the base of R/I.
        SimpleSubset rel;
        for (std::size_t k = 0; k < ri.kept.size(); ++k)
          if ((j >> ri.kept[k]) & 1u) rel = rel.with(static_cast<int>(k));
        Quotient twice = quotient(ri.system, rel);
        Quotient once = quotient(r, SimpleSubset(j));
        CHECK(twice.system.roots() == once.system.roots());
        CHECK(twice.system.base_ids() == once.system.base_ids());
        CHECK(twice.system.gram() == once.system.gram());
        CHECK(transfer(twice.system.all_roots(), twice.system, once.system) == once.system.all_roots());
        if (i == 0) break;
      }
  }
}

TEST_CASE("sums in a quotient lift") {
  RootSystem a3 = build_root_system("A3");
  Quotient q = quotient(a3, SimpleSubset::of({1}));
  SignedRoot ten{*q.system.find({1, 0}), 1}, one{*q.system.find({0, 1}), 1}, both{*q.system.find({1, 1}), 1};
  LiftReport rep = lift_sum_check(a3, q, ten, one, both);
  CHECK(rep.holds);
  CHECK_FALSE(rep.witnesses.empty());
  CHECK_THROWS_AS(lift_sum_check(a3, q, ten, ten, both), InvalidArgument);

  for (const char* t : {"A4", "B4", "D4", "F4", "E6", "G2", "C3"}) {
    RootSystem r = build_root_system(t);
    for (std::uint32_t bits = 0; bits + 1 < (1u << r.rank()); ++bits) {
      Quotient qq = quotient(r, SimpleSubset(bits));
      const RootSystem& s = qq.system;
      for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
          for (int sa : {1, -1})
            for (int sb : {1, -1}) {
              Coeffs c = s.coeffs({a, sa}), d = s.coeffs({b, sb});
              for (std::size_t p = 0; p < c.size(); ++p) c[p] += d[p];
              auto g = s.find_signed(c);
              if (!g) continue;
              LiftReport rr = lift_sum_check(r, qq, {a, sa}, {b, sb}, *g);
              CHECK_MESSAGE(rr.holds, rr.counterexample);
            }
    }
  }
}
