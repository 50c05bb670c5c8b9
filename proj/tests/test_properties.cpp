#include <doctest.h>

#include <random>

#include "qrs/invsets.hpp"
#include "qrs/oracle.hpp"
#include "qrs/properties.hpp"

using namespace qrs;

namespace {

std::string failures(const props::Report& rep) {
  std::string s;
  for (const auto& [key, t] : rep.tallies())
    for (const std::string& sample : t.samples) s += key + ": " + sample + "\n";
  return s;
}

} // namespace

TEST_CASE("every property holds on all inversion sets of small systems") {
  for (const char* type : {"A2", "B2", "G2", "A3", "C3", "A1xB2"}) {
    RootSystem r = build_root_system(type);
    QuotientCache cache(r);
    props::Report rep;
    auto sets = enumerate_inversion_sets(r);
    props::SetCheckOptions opt;
    opt.all_sets = &sets;
    for (const RootSet& phi : sets) props::check_inversion_set(cache, phi, opt, rep);
    props::check_sign_rule(r, rep);
    props::check_two_of_three(r, rep);
    props::check_span_exhaustive(r, rep);
    std::mt19937_64 rng(3);
    props::check_random_paths(r, rng, 20, 5, rep);
    props::check_composition(cache, rng, 1, rep);
    for (const Decomposition& d : fine_enumerate(r)) props::check_fine_decomposition(cache, d, rep);
    INFO(type);
    INFO(failures(rep));
    CHECK(rep.ok());
    CHECK(rep.tallies().at(props::name::kWellDefined).checked > 0);
  }
}

TEST_CASE("properties hold on random sets of a larger system") {
  RootSystem r = build_root_system("D5");
  QuotientCache cache(r);
  std::mt19937_64 rng(11);
  props::Report rep;
  for (int n = 0; n < 10; ++n) props::check_inversion_set(cache, oracle::random_halfspace_set(r, rng), {}, rep);
  props::check_two_of_three(r, rep, &rng, 500);
  INFO(failures(rep));
  CHECK(rep.ok());
}

TEST_CASE("failures are counted and sampled") {
  RootSystem a2 = build_root_system("A2");
  QuotientCache cache(a2);
  props::Report rep;
  props::check_fine_decomposition(cache, Decomposition{{a2.all_roots()}}, rep);
  CHECK_FALSE(rep.ok());
  CHECK(rep.tallies().at(props::name::kFineSimple).failed == 1);
  CHECK(rep.tallies().at(props::name::kFineSimple).samples.size() == 1);

  props::Report other;
  other.check("x", false, [] { return std::string("first"); });
  other.check("x", true, [] { return std::string("unused"); });
  rep.merge(other);
  CHECK(rep.tallies().at("x").checked == 2);
  CHECK(rep.tallies().at("x").failed == 1);
  CHECK_THROWS_AS(props::check_inversion_set(cache, RootSet::of(3, {0, 1}), {}, rep), InvalidArgument);
}
