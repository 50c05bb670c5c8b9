#include "qrs/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "qrs/compgraph.hpp"
#include "qrs/decomp.hpp"
#include "qrs/errors.hpp"
#include "qrs/fixtures.hpp"
#include "qrs/inflation.hpp"
#include "qrs/invsets.hpp"
#include "qrs/oracle.hpp"
#include "qrs/paths.hpp"
#include "qrs/properties.hpp"

namespace qrs {

namespace {

using Details = std::vector<std::string>;

void say(const AcceptanceOptions& opt, const std::string& msg) {
  if (opt.log != nullptr) *opt.log << msg << std::endl;
}

// Criterion 1: fine counts against the published table.
bool fine_counts(Details& d) {
  struct Row {
    std::string type;
    std::uint64_t expected;
  };
  std::vector<Row> rows;
  const std::uint64_t a[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 1; n <= 8; ++n) rows.push_back({"A" + std::to_string(n), a[n - 1]});
  const std::uint64_t b[] = {1, 3, 9, 29, 97, 333, 1165};
  for (int n = 1; n <= 7; ++n) rows.push_back({"B" + std::to_string(n), b[n - 1]});
  const std::uint64_t dn[] = {1, 1, 5, 19, 69, 249};
  for (int n = 1; n <= 6; ++n) rows.push_back({"D" + std::to_string(n), dn[n - 1]});
  rows.push_back({"G2", 5});
  rows.push_back({"F4", 46});
  rows.push_back({"E6", 320});
  rows.push_back({"E7", 1534});
  rows.push_back({"E8", 8932});
  bool ok = true;
  for (const Row& row : rows) {
    RootSystem r = build_root_system(row.type);
    std::uint64_t got = fine_count(r);
    if (got == row.expected) continue;
    ok = false;
    d.push_back(row.type + ": computed " + std::to_string(got) + ", expected " + std::to_string(row.expected) +
                "; direct labeling count gives " + std::to_string(fine_count_by_labeling(r)));
  }
  d.push_back(std::to_string(rows.size()) + " systems compared");
  return ok;
}

// Criterion 2.
bool pi_values(Details& d) {
  const std::uint64_t a2 = pi_count(build_root_system("A2"));
  const std::uint64_t b2 = pi_count(build_root_system("B2"));
  const std::uint64_t g2 = pi_count(build_root_system("G2"));
  const std::uint64_t fg2 = fine_count(build_root_system("G2"));
  d.push_back("pi(A2)=" + std::to_string(a2) + " pi(B2)=" + std::to_string(b2) + " pi(G2)=" + std::to_string(g2) +
              " F(G2)=" + std::to_string(fg2));
  return a2 == 0 && b2 == 1 && g2 == 3 && fg2 == 2 + g2;
}

// Criterion 3.
bool oracle_equivalence(Details& d) {
  bool ok = true;
  for (const char* type : {"A2", "A3", "B2", "B3", "C3", "G2", "A1xA1"}) {
    RootSystem r = build_root_system(type);
    auto oracle = enumerate_decompositions_oracle(r, r.all_roots(), r.rank());
    auto fine = fine_enumerate(r);
    std::set<Decomposition> a(oracle.begin(), oracle.end()), b(fine.begin(), fine.end());
    const std::uint64_t count = fine_count(r);
    bool same = a == b && b.size() == fine.size() && a.size() == count;
    if (!same) ok = false;
    d.push_back(std::string(type) + ": oracle " + std::to_string(a.size()) + ", enumerated " + std::to_string(fine.size()) +
                ", counted " + std::to_string(count) + (same ? "" : "  MISMATCH"));
  }
  return ok;
}

// Criterion 4.
bool golden_examples(Details& d) {
  bool ok = true;
  for (const char* file : {"e6_first.txt", "e6_second.txt", "b5_primitive.txt"}) {
    Fixture f = Fixture::load(fixture_path(file));
    RootSystem r = build_root_system(f.value("system"));
    RootSet phi = parse_root_set(r, f.tokens("phi"));
    std::string name = file;
    if (!is_inversion_set(r, phi)) {
      ok = false;
      d.push_back(name + ": phi is not an inversion set");
      continue;
    }
    QuotientCache cache(r);
    SimpleSubset killed = parse_positions(f.tokens("killed"), r.rank());
    RootSet psi = parse_root_set(cache.quotient(killed).system, f.tokens("psi"));
    RootSet x = from_parent(cache.subsystem(killed), parse_root_set(r, f.tokens("x")));
    if (inflate(cache, killed, psi, x) != phi) {
      ok = false;
      d.push_back(name + ": the stated inflation does not reproduce phi");
    }

    ComponentPartition p(r, phi);
    std::vector<RootSet> expected;
    for (const auto& l : f.lines("component")) expected.push_back(parse_root_set(r, l));
    auto numbering = match_numbering(p, expected);
    if (!numbering) {
      ok = false;
      d.push_back(name + ": components differ from the listed memberships");
      continue;
    }
    std::string table;
    for (const auto& row : f.lines("row")) {
      for (std::size_t i = 0; i < row.size(); ++i) table += (i ? " " : "") + row[i];
      table += '\n';
    }
    if (render_table_plain(p, *numbering) != table) {
      ok = false;
      d.push_back(name + ": addition table differs:\n" + render_table_plain(p, *numbering));
    }

    std::set<std::pair<int, int>> drawn, computed;
    for (const auto& l : f.lines("hasse")) drawn.emplace(std::stoi(l.at(0)), std::stoi(l.at(1)));
    const auto& num = *numbering;
    for (auto [lo, hi] : p.hasse_edges())
      computed.emplace(num[static_cast<std::size_t>(lo)] + 1, num[static_cast<std::size_t>(hi)] + 1);
    if (drawn != computed) {
      ok = false;
      for (auto [lo, hi] : drawn)
        if (!computed.count({lo, hi}))
          d.push_back(name + ": drawn covering C" + std::to_string(lo) + " < C" + std::to_string(hi) +
                      " is not in the computed order");
      for (auto [lo, hi] : computed)
        if (!drawn.count({lo, hi}))
          d.push_back(name + ": computed covering C" + std::to_string(lo) + " < C" + std::to_string(hi) + " is not drawn");
    }
    d.push_back(name + ": " + std::to_string(p.count()) + " components checked");
  }

  Fixture f = Fixture::load(fixture_path("d7_inflation.txt"));
  RootSystem r = build_root_system(f.value("system"));
  RootSet phi = parse_root_set(r, f.tokens("phi"));
  SimpleSubset killed = parse_positions(f.tokens("killed"), r.rank());
  ComponentPartition p(r, phi);
  RootSet x = phi & r.roots_supported_in(killed);
  int outside = 0;
  for (const RootSet& c : p.components())
    if (!c.intersects(x)) ++outside;
  const int want = std::stoi(f.value("components_outside_x"));
  if (outside != want) ok = false;
  d.push_back("d7_inflation.txt: " + std::to_string(outside) + " components outside X, expected " + std::to_string(want));
  return ok;
}

// Criterion 5.
bool path_suite(Details& d) {
  Fixture f = Fixture::load(fixture_path("d5_path.txt"));
  RootSystem r = build_root_system(f.value("system"));
  auto roots_of = [&](const std::vector<std::string>& t) {
    std::vector<SignedRoot> out;
    for (const std::string& s : t) out.push_back(r.parse_root(s));
    return out;
  };
  Path p{r.parse_root(f.value("start")), roots_of(f.tokens("steps")), r.parse_root(f.value("end"))};
  bool ok = true;
  if (!is_valid_path(r, p)) {
    ok = false;
    d.push_back("the worked path is not valid");
  }
  Path red = reduce_path(r, p);
  auto sorted = [](std::vector<SignedRoot> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (!is_valid_path(r, red) || !is_reduced(r, red) || sorted(red.steps) != sorted(roots_of(f.tokens("reduced")))) {
    ok = false;
    std::string got;
    for (SignedRoot s : red.steps) got += " " + r.format(s);
    d.push_back("reduction gave" + got);
  }
  int valid = 0;
  for (const auto& line : f.lines("permutation")) {
    Path q{p.start, roots_of(line), p.end};
    if (is_valid_path(r, q)) ++valid;
  }
  if (valid != 6 || !all_permutations_valid(r, red)) ok = false;
  d.push_back(std::to_string(valid) + " of 6 listed orderings of the reduced steps are paths");
  return ok;
}

// Criterion 6.
struct CorpusSystem {
  std::unique_ptr<RootSystem> system;
  bool exhaustive = false;
};

std::unique_ptr<RootSystem> make(const std::string& type) { return std::make_unique<RootSystem>(build_root_system(type)); }

std::unique_ptr<RootSystem> make_quotient(const std::string& type, std::initializer_list<int> killed) {
  return std::make_unique<RootSystem>(quotient(build_root_system(type), SimpleSubset::of(killed)).system);
}

void check_system(const CorpusSystem& cs, int instances, std::uint64_t seed, props::Report& rep, std::uint64_t& sets_checked) {
  const RootSystem& r = *cs.system;
  QuotientCache cache(r);
  std::mt19937_64 rng(seed);
  props::check_sign_rule(r, rep);
  props::check_random_paths(r, rng, cs.exhaustive ? 40 : 20, 6, rep);

  if (cs.exhaustive) {
    props::check_two_of_three(r, rep);
    props::check_span_exhaustive(r, rep);
    props::check_composition(cache, rng, 3, rep);
    auto sets = enumerate_inversion_sets(r);
    props::SetCheckOptions opt;
    opt.all_sets = &sets;
    for (const RootSet& phi : sets) {
      props::check_inversion_set(cache, phi, opt, rep);
      ++sets_checked;
    }
    for (int k = 1; k <= r.rank(); ++k)
      for (const Decomposition& dec : enumerate_decompositions_oracle(r, r.all_roots(), k)) props::check_decomposition(r, dec, rep);
  } else {
    props::check_two_of_three(r, rep, &rng, 3000);
    props::check_composition(cache, rng, 1, rep);
    props::SetCheckOptions opt;
    opt.bracket_depth = 3;
    for (int n = 0; n < instances; ++n) {
      RootSet phi = oracle::random_halfspace_set(r, rng);
      props::check_inversion_set(cache, phi, opt, rep);
      if (!phi.empty() && phi != r.all_roots()) props::check_decomposition(r, Decomposition{{phi, phi.complement()}}, rep);
      ++sets_checked;
    }
    if (r.rank() <= kOracleRankLimit)
      for (int k = 2; k <= r.rank(); ++k)
        for (const Decomposition& dec : enumerate_decompositions_oracle(r, r.all_roots(), k)) props::check_decomposition(r, dec, rep);
  }
  for (const Decomposition& dec : fine_enumerate(r)) props::check_fine_decomposition(cache, dec, rep);
}

bool property_suites(const AcceptanceOptions& opt, Details& d) {
  std::vector<CorpusSystem> corpus;
  for (const char* t : {"A1", "A2", "B2", "C2", "G2", "A1xA1", "A3", "B3", "C3", "A1xA2", "A1xB2", "A1xG2", "A1xA1xA1"})
    corpus.push_back({make(t), true});
  // Rank-three quotients, some with non-primitive roots.
  corpus.push_back({make_quotient("B4", {0}), true});
  corpus.push_back({make_quotient("C4", {3}), true});
  corpus.push_back({make_quotient("D4", {1}), true});
  corpus.push_back({make_quotient("F4", {1}), true});
  corpus.push_back({make_quotient("F4", {2}), true});
  corpus.push_back({make_quotient("A4", {1}), true});
  const std::size_t first_random = corpus.size();
  for (const char* t : {"A4", "B4", "C4", "D4", "F4", "A5", "B5", "C5", "D5", "A6", "B6", "C6", "D6", "E6", "A2xB2", "A1xA4",
                        "G2xB3"})
    corpus.push_back({make(t), false});
  corpus.push_back({make_quotient("E7", {6}), false});
  corpus.push_back({make_quotient("E8", {0, 7}), false});
  corpus.push_back({make_quotient("E8", {0, 1}), false});

  const int random_systems = static_cast<int>(corpus.size() - first_random);
  const int per_system = (opt.random_instances + random_systems - 1) / random_systems;

  std::vector<props::Report> reports(corpus.size());
  std::vector<std::uint64_t> counts(corpus.size(), 0);
  std::vector<std::string> errors(corpus.size());
  const long n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      check_system(corpus[u], per_system, opt.seed + u, reports[u], counts[u]);
    } catch (const std::exception& e) {
      errors[u] = corpus[u].system->label() + ": " + e.what();
    }
  }

  props::Report all;
  std::uint64_t exhaustive_sets = 0, random_sets = 0;
  bool ok = true;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    all.merge(reports[i]);
    (i < first_random ? exhaustive_sets : random_sets) += counts[i];
    if (!errors[i].empty()) {
      ok = false;
      d.push_back("error: " + errors[i]);
    }
  }
  for (const auto& [key, t] : all.tallies()) {
    if (t.failed == 0) continue;
    ok = false;
    d.push_back(key + ": " + std::to_string(t.failed) + " of " + std::to_string(t.checked) + " failed");
    for (const std::string& s : t.samples) d.push_back("  " + s);
  }
  if (static_cast<int>(random_sets) < opt.random_instances) {
    ok = false;
    d.push_back("only " + std::to_string(random_sets) + " random instances were drawn");
  }
  d.push_back(std::to_string(exhaustive_sets) + " inversion sets exhaustively at rank <= 3, " + std::to_string(random_sets) +
              " random sets at rank 4 to 6");
  for (const auto& [key, t] : all.tallies())
    d.push_back(key + ": " + std::to_string(t.checked - t.failed) + "/" + std::to_string(t.checked));
  say(opt, "property suites finished");
  return ok;
}

// Criterion 7.
bool anomaly_watch(Details& d) {
  auto seen = recorded_anomalies();
  for (const AnomalyRecord& a : seen) {
    std::string met;
    for (int c : a.met) met += " " + std::to_string(c + 1);
    d.push_back("anomalous sum in " + a.system + " phi=" + a.phi + ": C" + std::to_string(a.a + 1) + " + C" +
                std::to_string(a.b + 1) + " meets" + met);
  }
  d.push_back(std::to_string(seen.size()) + " anomalous sums observed");
  return seen.empty();
}

// Criterion 8.
bool sequences(Details& d) {
  bool ok = true;
  int n = 0;
  for (const SequenceCheck& c : sequence_crosscheck()) {
    ++n;
    if (c.ok()) continue;
    ok = false;
    d.push_back(c.name + ": recurrence " + std::to_string(c.recurrence) + ", computed " + std::to_string(c.computed));
  }
  d.push_back(std::to_string(n) + " terms compared");
  return ok;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  struct Item {
    int number;
    std::string title;
    std::function<bool(Details&)> run;
  };
  // The anomaly watch runs last so that it covers everything before it.
  std::vector<Item> items = {
      {1, "fine counts match the published table", fine_counts},
      {2, "pi of A2, B2 and G2", pi_values},
      {3, "brute-force fine decompositions equal the enumeration and the count", oracle_equivalence},
      {4, "worked component graphs: memberships, tables, Hasse diagrams, D7", golden_examples},
      {5, "D5 path, its reduction and all orderings", path_suite},
      {6, "property suites", [&](Details& d) { return property_suites(opt, d); }},
      {8, "closed recurrences agree with the counts", sequences},
      {7, "no anomalous component sums", anomaly_watch},
  };
  clear_recorded_anomalies();
  std::vector<CriterionResult> out;
  for (const Item& item : items) {
    say(opt, "running " + std::to_string(item.number) + ", " + item.title);
    CriterionResult res;
    res.number = item.number;
    res.title = item.title;
    auto start = std::chrono::steady_clock::now();
    try {
      res.passed = item.run(res.details);
    } catch (const std::exception& e) {
      res.passed = false;
      res.details.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(res));
  }
  std::sort(out.begin(), out.end(), [](const CriterionResult& a, const CriterionResult& b) { return a.number < b.number; });
  return out;
}

void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results, bool verbose) {
  for (const CriterionResult& r : results) {
    out << "criterion " << r.number << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << '\n';
    if (!verbose) continue;
    for (const std::string& line : r.details) {
      std::istringstream in(line);
      std::string part;
      while (std::getline(in, part)) out << "    " << part << '\n';
    }
  }
  out.flush();
}

} // namespace qrs
