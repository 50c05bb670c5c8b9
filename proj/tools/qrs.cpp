#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrs/acceptance.hpp"
#include "qrs/compgraph.hpp"
#include "qrs/decomp.hpp"
#include "qrs/errors.hpp"
#include "qrs/inflation.hpp"
#include "qrs/invsets.hpp"
#include "qrs/kernels.hpp"
#include "qrs/quotient.hpp"

using namespace qrs;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kGuard = 3, kInvariant = 4 };

struct Args {
  std::string type;
  std::string set_file;
  std::vector<int> kill;
  bool enumerate = false;
  bool table = false;
  bool poset = false;
  std::size_t cap = 100000;
  int parts = 2;
  bool quick = false;
};

// One root per line; blank lines and '#' comments are ignored. "-" is stdin.
RootSet read_set(const RootSystem& r, const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw InvalidArgument("cannot open set file " + path);
    in = &file;
  }
  RootSet s = r.empty_set();
  std::string line;
  while (std::getline(*in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      SignedRoot root = r.parse_root(token);
      if (root.sign < 0) throw InvalidArgument("negative root " + token + " in a set of positive roots");
      s.insert(root.index);
    }
  }
  return s;
}

Json roots_json(const RootSystem& r, const RootSet& s) {
  Json out = Json::array();
  s.for_each([&](int i) { out.push_back(r.format(i)); });
  return out;
}

std::string roots_plain(const RootSystem& r, const RootSet& s) {
  std::string out;
  s.for_each([&](int i) {
    if (!out.empty()) out += ' ';
    out += r.format(i);
  });
  return out;
}

// Base positions are 1-based on the command line and in output.
Json positions_json(SimpleSubset s) {
  Json out = Json::array();
  for (int p : s.positions()) out.push_back(p + 1);
  return out;
}

std::string positions_plain(SimpleSubset s) {
  std::string out;
  for (int p : s.positions()) out += (out.empty() ? "" : " ") + std::to_string(p + 1);
  return out;
}

SimpleSubset kill_subset(const RootSystem& r, const std::vector<int>& kill) {
  SimpleSubset s;
  for (int p : kill) {
    if (p < 1 || p > r.rank()) throw InvalidArgument("base position " + std::to_string(p) + " out of range 1.." + std::to_string(r.rank()));
    s = s.with(p - 1);
  }
  return s;
}

Json decomposition_json(const RootSystem& r, const Decomposition& d) {
  Json parts = Json::array();
  for (const RootSet& p : d.parts) parts.push_back(roots_json(r, p));
  return parts;
}

std::string decomposition_plain(const RootSystem& r, const Decomposition& d) {
  std::string out;
  for (const RootSet& p : d.parts) out += (out.empty() ? "" : " | ") + roots_plain(r, p);
  return out;
}

Json gram_json(const RootSystem& r) {
  Json rows = Json::array();
  for (int i = 0; i < r.gram().rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < r.gram().cols(); ++j) row.push_back(r.gram()(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

struct Output {
  Json payload = Json::object();
  std::string plain;
};

Output cmd_roots(const Args& a) {
  RootSystem r = build_root_system(a.type);
  Output o;
  o.payload["rank"] = r.rank();
  o.payload["count"] = r.size();
  o.payload["roots"] = roots_json(r, r.all_roots());
  o.payload["gram"] = gram_json(r);
  if (r.is_connected()) o.payload["highest_root"] = r.format(r.highest_root());
  else o.payload["highest_root"] = nullptr;
  std::ostringstream plain;
  for (int i = 0; i < r.size(); ++i) plain << r.format(i) << '\n';
  if (r.is_connected()) plain << "highest " << r.format(r.highest_root()) << '\n';
  o.plain = plain.str();
  return o;
}

Output cmd_quotient(const Args& a) {
  RootSystem r = build_root_system(a.type);
  Quotient q = quotient(r, kill_subset(r, a.kill));
  const RootSystem& s = q.system;
  Output o;
  o.payload["killed"] = positions_json(q.killed);
  Json kept = Json::array();
  for (int p : q.kept) kept.push_back(p + 1);
  o.payload["kept"] = kept;
  o.payload["gram"] = gram_json(s);
  Json roots = Json::array();
  std::ostringstream plain;
  for (int i = 0; i < s.size(); ++i) {
    roots.push_back(Json{{"root", s.format(i)}, {"primitive", s.is_primitive(i)}, {"fiber", roots_json(r, q.fibers[static_cast<std::size_t>(i)])}});
    plain << s.format(i) << (s.is_primitive(i) ? "  " : " *") << "  " << roots_plain(r, q.fibers[static_cast<std::size_t>(i)]) << '\n';
  }
  o.payload["roots"] = roots;
  o.payload["all_primitive"] = s.all_primitive();
  o.plain = plain.str();
  return o;
}

Output cmd_inversions(const Args& a) {
  RootSystem r = build_root_system(a.type);
  Output o;
  if (a.enumerate) {
    std::vector<RootSet> sets = enumerate_inversion_sets(r, a.cap);
    Json list = Json::array();
    std::ostringstream plain;
    for (const RootSet& s : sets) {
      list.push_back(roots_json(r, s));
      plain << (s.empty() ? "-" : roots_plain(r, s)) << '\n';
    }
    o.payload["count"] = sets.size();
    o.payload["sets"] = list;
    o.plain = plain.str();
    return o;
  }
  RootSet phi = read_set(r, a.set_file.empty() ? "-" : a.set_file);
  bool closed = is_closed(r, phi);
  bool coclosed = is_coclosed(r, phi);
  o.payload["set"] = roots_json(r, phi);
  o.payload["closed"] = closed;
  o.payload["coclosed"] = coclosed;
  o.payload["inversion_set"] = closed && coclosed;
  o.plain = std::string("closed ") + (closed ? "yes" : "no") + "\ncoclosed " + (coclosed ? "yes" : "no") + "\ninversion_set " +
            (closed && coclosed ? "yes" : "no") + "\n";
  return o;
}

RootSet read_inversion_set(const RootSystem& r, const Args& a) {
  RootSet phi = read_set(r, a.set_file);
  if (!is_inversion_set(r, phi)) throw InvalidArgument(r.format(phi) + " is not an inversion set");
  return phi;
}

Output cmd_canonical(const Args& a) {
  RootSystem r = build_root_system(a.type);
  RootSet phi = read_inversion_set(r, a);
  QuotientCache cache(r);
  InflationForm f = canonical_form(cache, phi);
  const RootSystem& q = cache.quotient(f.killed).system;
  // X is listed in the coordinates of R, as a subset of R+.
  RootSet x = to_parent(cache.subsystem(f.killed), f.x, r.size());
  Output o;
  o.payload["killed"] = positions_json(f.killed);
  o.payload["kind"] = to_string(f.kind);
  o.payload["psi"] = roots_json(q, f.psi);
  o.payload["x"] = roots_json(r, x);
  Json gen = Json::array();
  for (SimpleSubset g : gen_family(r, phi)) gen.push_back(positions_json(g));
  o.payload["gen"] = gen;
  o.plain = "killed " + positions_plain(f.killed) + "\npsi " + roots_plain(q, f.psi) + "\npsi_kind " + to_string(f.kind) + "\nx " +
            roots_plain(r, x) + "\n";
  return o;
}

Output cmd_components(const Args& a) {
  RootSystem r = build_root_system(a.type);
  RootSet phi = read_inversion_set(r, a);
  ComponentPartition p(r, phi);
  Output o;
  std::ostringstream plain;
  Json comps = Json::array();
  for (int id = 0; id < p.count(); ++id) {
    comps.push_back(Json{{"id", id + 1}, {"roots", roots_json(r, p.component(id))}, {"support", positions_json(p.support(id))}});
    plain << "component " << roots_plain(r, p.component(id)) << '\n';
  }
  o.payload["components"] = comps;
  Json simple = Json::array();
  for (int id : p.simple_components()) simple.push_back(id + 1);
  o.payload["simple_components"] = simple;
  if (a.table) {
    Json rows = Json::array();
    for (int i = 0; i < p.count(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < p.count(); ++j) {
        AdditionOutcome s = p.add(i, j);
        if (!s.has_value()) row.push_back(nullptr);
        else row.push_back(s.result + 1);
      }
      rows.push_back(row);
    }
    o.payload["table"] = rows;
    plain << render_table_plain(p);
  }
  if (a.poset) {
    Json edges = Json::array();
    for (auto [lo, hi] : p.hasse_edges()) {
      edges.push_back(Json::array({lo + 1, hi + 1}));
      plain << "hasse " << lo + 1 << ' ' << hi + 1 << '\n';
    }
    o.payload["hasse"] = edges;
  }
  if (!recorded_anomalies().empty())
    throw InvariantViolation("anomalous component sum observed in " + r.format(phi));
  o.plain = plain.str();
  return o;
}

Output cmd_fine_count(const Args& a) {
  RootSystem r = build_root_system(a.type);
  FineCountTable t = parallel::fine_count_table(r);
  Output o;
  o.payload["count"] = t.total();
  o.payload["notes"] = t.notes;
  o.plain = std::to_string(t.total()) + "\n";
  return o;
}

Output cmd_fine_enumerate(const Args& a) {
  RootSystem r = build_root_system(a.type);
  std::vector<Decomposition> ds = fine_enumerate(r, a.cap);
  Output o;
  Json list = Json::array();
  std::ostringstream plain;
  for (const Decomposition& d : ds) {
    list.push_back(decomposition_json(r, d));
    plain << decomposition_plain(r, d) << '\n';
  }
  o.payload["count"] = ds.size();
  o.payload["decompositions"] = list;
  o.plain = plain.str();
  return o;
}

Output cmd_oracle(const Args& a) {
  RootSystem r = build_root_system(a.type);
  RootSet phi = a.set_file.empty() ? r.all_roots() : read_inversion_set(r, a);
  std::vector<Decomposition> ds = enumerate_decompositions_oracle(r, phi, a.parts);
  Output o;
  o.payload["parts"] = a.parts;
  o.payload["set"] = roots_json(r, phi);
  o.payload["count"] = ds.size();
  Json list = Json::array();
  std::ostringstream plain;
  for (const Decomposition& d : ds) {
    list.push_back(decomposition_json(r, d));
    plain << decomposition_plain(r, d) << '\n';
  }
  o.payload["decompositions"] = list;
  o.plain = plain.str();
  return o;
}

Json arguments_json(const CLI::App& sub) {
  Json out = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    std::vector<std::string> values = opt->results();
    std::string key = opt->get_name();
    key.erase(0, key.find_first_not_of('-'));
    if (values.empty()) out[key] = true;
    else if (values.size() == 1) out[key] = values.front();
    else out[key] = values;
  }
  return out;
}

void report_error(const char* kind, const std::exception& e) { std::cerr << "error (" << kind << "): " << e.what() << '\n'; }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quotient root systems, inversion sets and their decompositions"};
  app.require_subcommand(1);
  bool plain = false;
  app.add_flag("--plain", plain, "Print tables instead of a JSON document");
  Args a;

  auto type_option = [&](CLI::App* sub) { sub->add_option("--type", a.type, "Cartan type, e.g. E8 or A1xB2")->required(); };
  auto set_option = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--set", a.set_file, "File with one root per line, or - for stdin");
    if (required) opt->required();
  };

  CLI::App* roots = app.add_subcommand("roots", "Positive roots, Gram matrix and highest root");
  type_option(roots);
  CLI::App* quot = app.add_subcommand("quotient", "Quotient by the span of some simple roots");
  type_option(quot);
  quot->add_option("--kill", a.kill, "Base positions to kill, 1-based, comma separated")->required()->delimiter(',');
  CLI::App* inv = app.add_subcommand("inversions", "Test a set, or enumerate all inversion sets");
  type_option(inv);
  set_option(inv, false);
  inv->add_flag("--enumerate", a.enumerate, "List every inversion set");
  inv->add_option("--cap", a.cap, "Stop with a guard error past this many sets");
  CLI::App* canon = app.add_subcommand("canonical", "Canonical inflation form of an inversion set");
  type_option(canon);
  set_option(canon, true);
  CLI::App* comps = app.add_subcommand("components", "Components of an inversion set and their addition");
  type_option(comps);
  set_option(comps, true);
  comps->add_flag("--table", a.table, "Include the addition table");
  comps->add_flag("--poset", a.poset, "Include the covering relations of the order");
  CLI::App* fcount = app.add_subcommand("fine-count", "Number of fine decompositions");
  type_option(fcount);
  CLI::App* fenum = app.add_subcommand("fine-enumerate", "Every fine decomposition");
  type_option(fenum);
  fenum->add_option("--cap", a.cap, "Stop with a guard error past this many decompositions");
  CLI::App* orc = app.add_subcommand("oracle", "Brute-force decompositions into k inversion sets");
  type_option(orc);
  orc->add_option("--parts", a.parts, "Number of parts")->required();
  set_option(orc, false);
  CLI::App* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_flag("--quick", a.quick, "Fewer random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == inv && a.enumerate && !a.set_file.empty())
      throw InvalidArgument("--enumerate and --set are exclusive");
    if (chosen == self) {
      AcceptanceOptions opt;
      if (a.quick) opt.random_instances = 200;
      std::vector<CriterionResult> results = run_acceptance(opt);
      bool all = true;
      for (const CriterionResult& c : results) all = all && c.passed;
      if (plain) {
        print_acceptance(std::cout, results, true);
      } else {
        Json criteria = Json::array();
        for (const CriterionResult& c : results)
          criteria.push_back(Json{{"number", c.number}, {"title", c.title}, {"passed", c.passed}, {"details", c.details}});
        Json doc{{"format_version", kFormatVersion}, {"command", "selftest"}, {"arguments", arguments_json(*self)},
                 {"system", nullptr}, {"payload", Json{{"passed", all}, {"criteria", criteria}}}};
        std::cout << doc.dump(2) << '\n';
      }
      return all ? kOk : kFailed;
    }

    Output out;
    if (chosen == roots) out = cmd_roots(a);
    else if (chosen == quot) out = cmd_quotient(a);
    else if (chosen == inv) out = cmd_inversions(a);
    else if (chosen == canon) out = cmd_canonical(a);
    else if (chosen == comps) out = cmd_components(a);
    else if (chosen == fcount) out = cmd_fine_count(a);
    else if (chosen == fenum) out = cmd_fine_enumerate(a);
    else out = cmd_oracle(a);

    if (plain) {
      std::cout << out.plain;
    } else {
      Json doc{{"format_version", kFormatVersion},
               {"command", chosen->get_name()},
               {"arguments", arguments_json(*chosen)},
               {"system", SystemSpec::parse(a.type).to_string()},
               {"payload", out.payload}};
      std::cout << doc.dump(2) << '\n';
    }
    return kOk;
  } catch (const InvalidArgument& e) {
    report_error("usage", e);
    return kUsage;
  } catch (const GuardExceeded& e) {
    report_error("guard", e);
    return kGuard;
  } catch (const InvariantViolation& e) {
    report_error("invariant violation", e);
    Json doc{{"format_version", kFormatVersion}, {"command", chosen->get_name()}, {"arguments", arguments_json(*chosen)},
             {"error", Json{{"kind", "invariant_violation"}, {"message", e.what()}}}};
    std::cout << doc.dump(2) << '\n';
    return kInvariant;
  }
}
