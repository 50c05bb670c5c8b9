#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "qrs/compgraph.hpp"
#include "qrs/fixtures.hpp"
#include "qrs/inflation.hpp"
#include "qrs/invsets.hpp"

using namespace qrs;

namespace {

struct Golden {
  Fixture f;
  RootSystem r;
  RootSet phi;
};

Golden load_golden(const std::string& file) {
  Fixture f = Fixture::load(fixture_path(file));
  RootSystem r = build_root_system(f.value("system"));
  RootSet phi = parse_root_set(r, f.tokens("phi"));
  return {std::move(f), std::move(r), phi};
}

std::string expected_table(const Fixture& f) {
  std::string out;
  for (const auto& row : f.lines("row")) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + row[i];
    out += '\n';
  }
  return out;
}

std::set<std::pair<int, int>> expected_hasse(const Fixture& f) {
  std::set<std::pair<int, int>> out;
  for (const auto& l : f.lines("hasse")) out.emplace(std::stoi(l.at(0)), std::stoi(l.at(1)));
  return out;
}

std::set<std::pair<int, int>> computed_hasse(const ComponentPartition& p, const std::vector<int>& numbering) {
  std::set<std::pair<int, int>> out;
  for (auto [a, b] : p.hasse_edges()) out.emplace(numbering[static_cast<std::size_t>(a)] + 1, numbering[static_cast<std::size_t>(b)] + 1);
  return out;
}

// Maps 1-based labels of the fixture to component ids.
int id_of(const std::vector<int>& numbering, int label) {
  auto it = std::find(numbering.begin(), numbering.end(), label - 1);
  REQUIRE(it != numbering.end());
  return static_cast<int>(it - numbering.begin());
}

void check_golden_memberships_and_table(const Golden& g, std::vector<int>& numbering) {
  QuotientCache cache(g.r);
  SimpleSubset killed = parse_positions(g.f.tokens("killed"), g.r.rank());
  const Quotient& q = cache.quotient(killed);
  RootSet psi = parse_root_set(q.system, g.f.tokens("psi"));
  RootSet x = parse_root_set(g.r, g.f.tokens("x"));
  RootSet x_sub = from_parent(cache.subsystem(killed), x);
  CHECK(inflate(cache, killed, psi, x_sub) == g.phi);
  REQUIRE(is_inversion_set(g.r, g.phi));

  ComponentPartition p(g.r, g.phi);
  std::vector<RootSet> expected;
  for (const auto& l : g.f.lines("component")) expected.push_back(parse_root_set(g.r, l));
  auto m = match_numbering(p, expected);
  REQUIRE(m.has_value());
  numbering = *m;
  CHECK(render_table_plain(p, numbering) == expected_table(g.f));
}

} // namespace

TEST_CASE("components split phi and ids follow the lowest root") {
  RootSystem r = build_root_system("B3");
  for (const RootSet& phi : enumerate_inversion_sets(r)) {
    ComponentPartition p(r, phi);
    RootSet all = r.empty_set();
    int last_min = -1;
    for (int c = 0; c < p.count(); ++c) {
      CHECK_FALSE(p.component(c).empty());
      CHECK_FALSE(p.component(c).intersects(all));
      all |= p.component(c);
      CHECK(p.component(c).min_index() > last_min);
      last_min = p.component(c).min_index();
      p.component(c).for_each([&](int i) { CHECK(p.component_of(i) == c); });
    }
    CHECK(all == phi);
  }
}

TEST_CASE("first E6 set: memberships, table and order") {
  Golden g = load_golden("e6_first.txt");
  std::vector<int> numbering;
  check_golden_memberships_and_table(g, numbering);
  ComponentPartition p(g.r, g.phi);
  auto c = [&](int label) { return id_of(numbering, label); };
  CHECK(p.add(c(1), c(2)) == AdditionOutcome::defined(c(3)));
  CHECK(p.add(c(2), c(3)) == AdditionOutcome::defined(c(4)));
  CHECK(p.add(c(5), c(2)) == AdditionOutcome::defined(c(2)));
  CHECK_FALSE(p.add(c(1), c(1)).has_value());
  CHECK_FALSE(p.standard_sum({c(1), c(2), c(3)}).has_value());
  CHECK(p.standard_sum({c(5), c(2), c(3)}) == c(4));
  CHECK(p.standard_sum({c(4)}) == c(4));

  // The drawn diagram has an edge from C5 up to C1, but no root of C5 lies
  // below 100000 and C5 + C1 is undefined, so C5 and C1 are incomparable.
  auto drawn = expected_hasse(g.f);
  CHECK_FALSE(p.leq(c(5), c(1)));
  CHECK_FALSE(p.leq_by_roots(c(5), c(1)));
  drawn.erase({5, 1});
  CHECK(computed_hasse(p, numbering) == drawn);
}

TEST_CASE("second E6 set: memberships, table and order") {
  Golden g = load_golden("e6_second.txt");
  std::vector<int> numbering;
  check_golden_memberships_and_table(g, numbering);
  ComponentPartition p(g.r, g.phi);
  auto c = [&](int label) { return id_of(numbering, label); };
  CHECK(p.add(c(1), c(2)) == AdditionOutcome::defined(c(3)));
  CHECK(p.add(c(1), c(3)) == AdditionOutcome::defined(c(4)));
  CHECK(p.add(c(5), c(6)) == AdditionOutcome::defined(c(7)));
  for (int k = 0; k < p.count(); ++k) CHECK_FALSE(p.add(c(4), k).has_value());
  CHECK(p.component(c(4)).size() == 1);
  CHECK(computed_hasse(p, numbering) == expected_hasse(g.f));
}

TEST_CASE("B5 set: memberships, table and order") {
  Golden g = load_golden("b5_primitive.txt");
  std::vector<int> numbering;
  check_golden_memberships_and_table(g, numbering);
  ComponentPartition p(g.r, g.phi);
  auto c = [&](int label) { return id_of(numbering, label); };
  CHECK(p.component(c(1)).size() == 12);
  CHECK(p.add(c(1), c(1)) == AdditionOutcome::defined(c(2)));
  CHECK(p.multiple(c(1), 2) == c(2));
  CHECK(p.add(c(3), c(4)) == AdditionOutcome::defined(c(5)));
  CHECK(p.add(c(4), c(5)) == AdditionOutcome::defined(c(6)));
  CHECK(p.add(c(6), c(1)) == AdditionOutcome::defined(c(1)));
  CHECK(computed_hasse(p, numbering) == expected_hasse(g.f));
  for (int a = 0; a < p.count(); ++a) CHECK(p.leq(a, a));
}

TEST_CASE("D7 primitive inflation has two components outside x") {
  Fixture f = Fixture::load(fixture_path("d7_inflation.txt"));
  RootSystem r = build_root_system(f.value("system"));
  RootSet phi = parse_root_set(r, f.tokens("phi"));
  REQUIRE(phi.size() == 24);
  REQUIRE(is_inversion_set(r, phi));
  SimpleSubset killed = parse_positions(f.tokens("killed"), r.rank());
  QuotientCache cache(r);
  InflationForm form = deflate(cache, phi, killed);
  CHECK(form.psi == parse_root_set(cache.quotient(killed).system, f.tokens("psi")));
  CHECK(form.kind == PsiKind::Primitive);
  CHECK(canonical_form(cache, phi).killed == killed);

  ComponentPartition p(r, phi);
  RootSet x = phi & r.roots_supported_in(killed);
  int outside = 0;
  for (const RootSet& comp : p.components()) {
    CHECK((comp.is_subset_of(x) || !comp.intersects(x)));
    if (!comp.intersects(x)) ++outside;
  }
  CHECK(outside == std::stoi(f.value("components_outside_x")));
}

TEST_CASE("simple components are those holding a simple root") {
  for (const char* file : {"e6_first.txt", "e6_second.txt", "b5_primitive.txt", "d7_inflation.txt"}) {
    Golden g = load_golden(file);
    ComponentPartition p(g.r, g.phi);
    std::vector<int> simple = p.simple_components();
    for (int c = 0; c < p.count(); ++c) {
      bool has_simple = p.component(c).intersects(g.r.simple_roots());
      CHECK(has_simple == std::binary_search(simple.begin(), simple.end(), c));
    }
    auto certs = simple_sum_certificates(p);
    for (int c = 0; c < p.count(); ++c) {
      REQUIRE(certs[static_cast<std::size_t>(c)].has_value());
      CHECK(p.standard_sum(*certs[static_cast<std::size_t>(c)]) == c);
    }
  }
}

TEST_CASE("irreducibility on small cases") {
  // {01, 11} is closed in C2 (roots 10, 01, 11, 21).
  RootSystem b2 = build_root_system("C2");
  RootSet prim = RootSet::of(b2.size(), {b2.parse_root("01").index, b2.parse_root("11").index});
  REQUIRE(is_inversion_set(b2, prim));
  IrreducibilityReport rep = irreducibility_report(b2, prim);
  CHECK(rep.split_checked);
  CHECK(rep.no_split);
  CHECK(rep.irreducible());

  RootSystem a2 = build_root_system("A2");
  CHECK_FALSE(is_irreducible(a2, a2.all_roots()));
  ComponentPartition p(a2, a2.all_roots());
  CHECK(p.simple_components().size() == 2);
  CHECK_THROWS_AS(is_irreducible(a2, a2.empty_set()), InvalidArgument);
}

TEST_CASE("irreducibility conditions agree on every inversion set of rank three") {
  for (const char* type : {"A3", "B3", "C3", "A1xA2", "A1xB2", "G2", "A1xA1xA1"}) {
    RootSystem r = build_root_system(type);
    for (const RootSet& phi : enumerate_inversion_sets(r)) {
      if (phi.empty()) continue;
      IrreducibilityReport rep;
      CHECK_NOTHROW(rep = irreducibility_report(r, phi));
      CHECK(rep.split_checked);
    }
  }
}

TEST_CASE("addition requires an inversion set") {
  RootSystem a2 = build_root_system("A2");
  RootSet s = RootSet::of(a2.size(), {0, 1});
  ComponentPartition p(a2, s);
  CHECK_FALSE(p.phi_is_inversion_set());
  CHECK_THROWS_AS(p.add(0, 0), InvalidArgument);
}

TEST_CASE("table rendering without renumbering") {
  RootSystem a2 = build_root_system("A2");
  ComponentPartition p(a2, a2.all_roots());
  // The complement is empty, so every root is its own component.
  CHECK(p.count() == 3);
  CHECK(render_table_plain(p) == "- 3 -\n3 - -\n- - -\n");
  CHECK(recorded_anomalies().empty());
}
