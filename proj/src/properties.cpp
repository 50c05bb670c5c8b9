#include "qrs/properties.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "qrs/compgraph.hpp"
#include "qrs/errors.hpp"
#include "qrs/inflation.hpp"
#include "qrs/invsets.hpp"
#include "qrs/paths.hpp"

namespace qrs::props {

void Report::check(const std::string& property, bool ok, const std::function<std::string()>& detail) {
  Tally& t = tallies_[property];
  ++t.checked;
  if (ok) return;
  ++t.failed;
  if (t.samples.size() < kSampleLimit) t.samples.push_back(detail());
}

void Report::merge(const Report& other) {
  for (const auto& [key, t] : other.tallies_) {
    Tally& mine = tallies_[key];
    mine.checked += t.checked;
    mine.failed += t.failed;
    for (const std::string& s : t.samples)
      if (mine.samples.size() < kSampleLimit) mine.samples.push_back(s);
  }
}

std::uint64_t Report::failures() const {
  std::uint64_t n = 0;
  for (const auto& [key, t] : tallies_) n += t.failed;
  return n;
}

namespace {

Coeffs add(Coeffs a, const Coeffs& b, int sign = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

bool is_zero(const Coeffs& c) {
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

std::vector<SignedRoot> signed_roots(const RootSystem& r) {
  std::vector<SignedRoot> out;
  for (int i = 0; i < r.size(); ++i) {
    out.push_back({i, 1});
    out.push_back({i, -1});
  }
  return out;
}

std::string where(const RootSystem& r, const RootSet& phi) { return r.label() + " phi=" + r.format(phi); }

RootSet random_subset(const RootSystem& r, std::mt19937_64& rng) {
  RootSet s = r.empty_set();
  for (int i = 0; i < r.size(); ++i)
    if (rng() & 1u) s.insert(i);
  return s;
}

// The rule as proved needs every pairwise sum nonzero: with beta = -alpha,
// for instance, alpha + beta = 0 is never a root.
void two_of_three_at(const RootSystem& r, SignedRoot a, SignedRoot b, SignedRoot c, Report& out) {
  const Coeffs ca = r.coeffs(a), cb = r.coeffs(b), cc = r.coeffs(c);
  const Coeffs ab = add(ca, cb), ac = add(ca, cc), bc = add(cb, cc);
  if (is_zero(ab) || is_zero(ac) || is_zero(bc)) return;
  if (!r.find_signed(add(ab, cc)) || r.find_signed(bc)) return;
  out.check(name::kTwoOfThree, r.find_signed(ab).has_value() && r.find_signed(ac).has_value(),
            [&] { return r.label() + ": " + r.format(a) + ", " + r.format(b) + ", " + r.format(c); });
}

std::string path_text(const RootSystem& r, const Path& p) {
  std::string s = r.label() + " [" + r.format(p.start) + ";";
  for (SignedRoot k : p.steps) s += " " + r.format(k);
  return s + "; " + r.format(p.end) + "]";
}

} // namespace

void check_sign_rule(const RootSystem& r, Report& out) {
  const auto all = signed_roots(r);
  for (int i = 0; i < r.size(); ++i) {
    const Coeffs ca = r.root(i);
    for (SignedRoot b : all) {
      if (b.index == i) continue;
      const Coeffs cb = r.coeffs(b);
      const Rational ip = r.inner_product(ca, cb);
      auto detail = [&] { return r.label() + ": " + r.format(i) + ", " + r.format(b); };
      if (ip < Rational(0)) out.check(name::kSignRule, r.find_signed(add(ca, cb)).has_value(), detail);
      if (ip > Rational(0)) out.check(name::kSignRule, r.find_signed(add(ca, cb, -1)).has_value(), detail);
    }
  }
}

void check_two_of_three(const RootSystem& r, Report& out, std::mt19937_64* rng, int samples) {
  const auto all = signed_roots(r);
  if (samples <= 0 || rng == nullptr) {
    // Negating all three roots preserves the hypotheses, so alpha > 0 suffices.
    for (int i = 0; i < r.size(); ++i)
      for (SignedRoot b : all)
        for (SignedRoot c : all) two_of_three_at(r, {i, 1}, b, c, out);
    return;
  }
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int n = 0; n < samples; ++n) {
    // Draw alpha and beta, then gamma among roots completing a root sum.
    SignedRoot a = all[pick(*rng)], b = all[pick(*rng)];
    const Coeffs ab = add(r.coeffs(a), r.coeffs(b));
    std::vector<SignedRoot> gammas;
    for (SignedRoot c : all)
      if (r.find_signed(add(ab, r.coeffs(c)))) gammas.push_back(c);
    if (gammas.empty()) continue;
    SignedRoot c = gammas[std::uniform_int_distribution<std::size_t>(0, gammas.size() - 1)(*rng)];
    two_of_three_at(r, a, b, c, out);
  }
}

void check_random_paths(const RootSystem& r, std::mt19937_64& rng, int count, int max_len, Report& out) {
  if (r.size() == 0) return;
  std::uniform_int_distribution<int> pick(0, r.size() - 1), sign(0, 1), len(1, max_len);
  int done = 0;
  for (int trial = 0; done < count && trial < 100 * count; ++trial) {
    SignedRoot start{pick(rng), sign(rng) ? 1 : -1};
    Coeffs at = r.coeffs(start);
    std::vector<SignedRoot> steps;
    const int n = len(rng);
    for (int k = 0; k < 50 && static_cast<int>(steps.size()) < n; ++k) {
      SignedRoot s{pick(rng), sign(rng) ? 1 : -1};
      Coeffs next = add(at, r.coeffs(s));
      if (!r.find_signed(next)) continue;
      steps.push_back(s);
      at = next;
    }
    if (is_degenerate(r, start, steps)) continue;
    ++done;
    Path p{start, steps, *r.find_signed(at)};
    Path red;
    try {
      red = reduce_path(r, p);
    } catch (const Error& e) {
      out.check(name::kReduction, false, [&] { return path_text(r, p) + ": " + e.what(); });
      continue;
    }
    out.check(name::kReduction,
              is_valid_path(r, red) && is_reduced(r, red) && red.steps.size() <= p.steps.size() && red.end == p.end,
              [&] { return path_text(r, p) + " -> " + path_text(r, red); });

    const std::size_t m = red.steps.size();
    bool no_root = true;
    for (std::uint32_t mask = 1; mask < (1u << m) && no_root; ++mask) {
      if (std::popcount(mask) < 2) continue;
      Coeffs sum(static_cast<std::size_t>(r.rank()), 0);
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u) sum = add(sum, r.coeffs(red.steps[i]));
      if (r.find_signed(sum)) no_root = false;
    }
    out.check(name::kReducedSteps, no_root, [&] { return path_text(r, red); });

    bool start_ok = std::none_of(red.steps.begin(), red.steps.end(),
                                 [&](SignedRoot s) { return s.index == start.index && s.sign == -start.sign; });
    if (start_ok && m <= 7) out.check(name::kPermutations, all_permutations_valid(r, red), [&] { return path_text(r, red); });
  }
}

void check_span_exhaustive(const RootSystem& r, Report& out) {
  if (r.size() > 20) throw GuardExceeded("span scan is limited to 20 roots");
  for (std::uint32_t mask = 0; mask < (1u << r.size()); ++mask) {
    RootSet s = r.empty_set();
    for (int i = 0; i < r.size(); ++i)
      if ((mask >> i) & 1u) s.insert(i);
    if (is_coclosed(r, s)) out.check(name::kSpan, spans_support_lattice(r, s), [&] { return where(r, s); });
  }
}

void check_composition(QuotientCache& cache, std::mt19937_64& rng, int per_chain, Report& out) {
  const RootSystem& r = cache.system();
  const std::uint32_t full = (1u << r.rank()) - 1;
  for (std::uint32_t j = 0; j <= full; ++j)
    for (std::uint32_t i = j;; i = (i - 1) & j) {
      SimpleSubset si(i), sj(j);
      const RootSystem& rj = cache.quotient(sj).system;
      Quotient qi = quotient_allowing_whole_base(r, si);
      Subsystem t_sys = subsystem(qi.system, relative_subset(qi, sj));
      const RootSystem& xs = cache.subsystem(si).system;
      for (int n = 0; n < per_chain; ++n) {
        RootSet psi = random_subset(rj, rng), t = random_subset(t_sys.system, rng), x = random_subset(xs, rng);
        auto [lhs, rhs] = inflation_compose(cache, si, sj, psi, t, x);
        out.check(name::kComposition, lhs == rhs, [&] {
          return r.label() + " I=" + r.format_subset(si) + " J=" + r.format_subset(sj) + ": " + r.format(lhs) + " vs " +
                 r.format(rhs);
        });
      }
      if (i == 0) break;
    }
}

namespace {

void check_gen_and_inflation(const RootSystem& r, const RootSet& phi, const std::vector<SimpleSubset>& gen, Report& out) {
  const SimpleSubset all = SimpleSubset::all(r.rank());
  std::set<std::uint32_t> members;
  for (SimpleSubset k : gen) members.insert(k.bits());
  bool lattice = members.count(0) && members.count(all.bits());
  for (std::uint32_t a : members)
    for (std::uint32_t b : members)
      if (!members.count(a | b) || !members.count(a & b)) lattice = false;
  std::vector<SimpleSubset> co = gen_family(r, phi.complement());
  out.check(name::kGenLattice, lattice && co == gen, [&] { return where(r, phi); });

  for (std::uint32_t bits = 0; bits <= all.bits(); ++bits) {
    auto c = inflation_conditions(r, phi, SimpleSubset(bits));
    bool same = std::all_of(c.begin(), c.end(), [&](bool v) { return v == c[0]; });
    out.check(name::kInflationConditions, same && c[0] == (members.count(bits) > 0),
              [&] { return where(r, phi) + " I=" + r.format_subset(SimpleSubset(bits)); });
  }
}

// The canonical form with all its checks, or nullopt if it could not be formed.
std::optional<InflationForm> check_canonical(QuotientCache& cache, const RootSet& phi, const std::vector<SimpleSubset>& gen,
                                             Report& out) {
  const RootSystem& r = cache.system();
  const SimpleSubset all = SimpleSubset::all(r.rank());
  InflationForm f;
  try {
    f = canonical_form(cache, phi);
  } catch (const Error& e) {
    out.check(name::kCanonicalExists, false, [&] { return where(r, phi) + ": " + e.what(); });
    return std::nullopt;
  }
  const RootSystem& q = cache.quotient(f.killed).system;
  const RootSystem& xs = cache.subsystem(f.killed).system;
  out.check(name::kCanonicalExists,
            inflate(cache, f.killed, f.psi, f.x) == phi && f.kind != PsiKind::General &&
                satisfies_canonical_alternatives(cache, phi, f) && is_inversion_set(q, f.psi) && is_inversion_set(xs, f.x),
            [&] { return where(r, phi) + " I=" + r.format_subset(f.killed) + " kind=" + to_string(f.kind); });

  int matches = 0;
  bool same = true;
  for (SimpleSubset k : gen) {
    if (k == all) continue;
    InflationForm g = deflate(cache, phi, k);
    if (satisfies_canonical_alternatives(cache, phi, g)) {
      ++matches;
      same = same && g == f;
    }
  }
  out.check(name::kCanonicalUnique, matches == 1 && same,
            [&] { return where(r, phi) + ": " + std::to_string(matches) + " forms satisfy the alternatives"; });

  const bool full_support = r.support(phi) == all && r.support(phi.complement()) == all;
  bool facts = (f.kind == PsiKind::Primitive) == full_support;
  if (f.kind == PsiKind::Empty) facts = facts && r.support(phi) != all;
  if (f.kind == PsiKind::Full) facts = facts && r.support(phi.complement()) != all;
  facts = facts && canonical_form(cache, phi.complement()).killed == f.killed;
  facts = facts && is_primitive_set(r, phi) == is_primitive_set(r, phi.complement());
  if (f.kind == PsiKind::Primitive) {
    std::set<std::uint32_t> lhs, rhs{all.bits()};
    for (SimpleSubset k : gen) lhs.insert(k.bits());
    const std::vector<int> pos = f.killed.positions();
    for (SimpleSubset k : gen_family(xs, f.x)) {
      std::uint32_t b = 0;
      for (int p : k.positions()) b |= 1u << pos[static_cast<std::size_t>(p)];
      rhs.insert(b);
    }
    facts = facts && lhs == rhs;
  }
  out.check(name::kCanonicalFacts, facts, [&] { return where(r, phi) + " kind=" + to_string(f.kind); });
  return f;
}

struct BracketScan {
  const ComponentPartition& p;
  std::map<std::vector<int>, std::set<int>> bracketed, standard;

  const std::set<int>& standard_of(const std::vector<int>& m) {
    if (auto it = standard.find(m); it != standard.end()) return it->second;
    std::set<int> out;
    if (m.size() == 1) {
      out.insert(m[0]);
    } else {
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (k > 0 && m[k] == m[k - 1]) continue;
        std::vector<int> rest = m;
        rest.erase(rest.begin() + static_cast<long>(k));
        for (int x : standard_of(rest))
          if (auto o = p.add(x, m[k]); o.kind == AdditionOutcome::Kind::Defined) out.insert(o.result);
      }
    }
    return standard.emplace(m, std::move(out)).first->second;
  }

  const std::set<int>& bracketed_of(const std::vector<int>& m) {
    if (auto it = bracketed.find(m); it != bracketed.end()) return it->second;
    std::set<int> out;
    if (m.size() == 1) {
      out.insert(m[0]);
    } else {
      // Every split into a nonempty left and right sub-multiset.
      const std::uint32_t n = static_cast<std::uint32_t>(m.size());
      std::set<std::vector<int>> seen;
      for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> left, right;
        for (std::uint32_t i = 0; i < n; ++i) ((mask >> i) & 1u ? left : right).push_back(m[i]);
        if (!seen.insert(left).second) continue;
        const std::set<int> ls = bracketed_of(left);
        const std::set<int> rs = bracketed_of(right);
        for (int x : ls)
          for (int y : rs)
            if (auto o = p.add(x, y); o.kind == AdditionOutcome::Kind::Defined) out.insert(o.result);
      }
    }
    return bracketed.emplace(m, std::move(out)).first->second;
  }
};

void check_bracketed(const ComponentPartition& p, int depth, const RootSet& phi, Report& out) {
  BracketScan scan{p, {}, {}};
  const int c = p.count();
  std::vector<int> m;
  std::function<void(int)> walk = [&](int from) {
    if (m.size() >= 3) {
      const std::set<int> b = scan.bracketed_of(m);
      const std::set<int>& s = scan.standard_of(m);
      bool ok = std::includes(s.begin(), s.end(), b.begin(), b.end());
      out.check(name::kBracketed, ok, [&] {
        std::string ids;
        for (int x : m) ids += " " + std::to_string(x + 1);
        return where(p.system(), phi) + " components" + ids;
      });
    }
    if (static_cast<int>(m.size()) == depth) return;
    for (int k = from; k < c; ++k) {
      m.push_back(k);
      walk(k);
      m.pop_back();
    }
  };
  walk(0);
}

void check_components(QuotientCache& cache, const RootSet& phi, const std::optional<InflationForm>& canon,
                      const SetCheckOptions& opt, Report& out) {
  const RootSystem& r = cache.system();
  const SimpleSubset all = SimpleSubset::all(r.rank());
  ComponentPartition p(r, phi);
  const int c = p.count();
  auto at = [&](int a, int b) { return where(r, phi) + " A=" + std::to_string(a + 1) + " B=" + std::to_string(b + 1); };

  // Addition from every witness pair.
  std::vector<AdditionOutcome> table(static_cast<std::size_t>(c * c));
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b) {
      AdditionOutcome o = p.add(a, b);
      table[static_cast<std::size_t>(a * c + b)] = o;
      out.check(name::kNoAnomaly, o.kind != AdditionOutcome::Kind::Anomalous, [&] { return at(a, b); });
      std::set<int> met;
      p.component(a).for_each([&](int x) {
        p.component(b).for_each([&](int y) {
          if (auto s = r.sum(x, y)) met.insert(p.component_of(*s));
        });
      });
      bool ok = true;
      if (o.kind == AdditionOutcome::Kind::Undefined) ok = met.empty();
      if (o.kind == AdditionOutcome::Kind::Defined) {
        ok = met == std::set<int>{o.result};
        const RootSet& cc = p.component(o.result);
        if (ok && a != o.result) {
          p.component(a).for_each([&](int x) {
            bool any = false;
            p.component(b).for_each([&](int y) {
              if (auto s = r.sum(x, y); s && cc.contains(*s)) any = true;
            });
            ok = ok && any;
          });
        }
        if (ok && a != o.result && b != o.result) {
          cc.for_each([&](int g) {
            bool any = false;
            for (auto [x, y] : r.sum_decompositions(g))
              if ((p.component_of(x) == a && p.component_of(y) == b) || (p.component_of(x) == b && p.component_of(y) == a))
                any = true;
            ok = ok && any;
          });
        }
      }
      out.check(name::kWellDefined, ok, [&] { return at(a, b); });
    }
  auto sum = [&](int a, int b) -> std::optional<int> {
    const AdditionOutcome& o = table[static_cast<std::size_t>(a * c + b)];
    return o.kind == AdditionOutcome::Kind::Defined ? std::optional<int>(o.result) : std::nullopt;
  };

  // Order.
  std::vector<char> le(static_cast<std::size_t>(c * c), 0);
  bool order_ok = true;
  std::string order_issue;
  try {
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b) le[static_cast<std::size_t>(a * c + b)] = p.leq(a, b) ? 1 : 0;
  } catch (const InvariantViolation& e) {
    order_ok = false;
    order_issue = e.what();
  }
  auto leq = [&](int a, int b) { return le[static_cast<std::size_t>(a * c + b)] != 0; };
  if (order_ok) {
    for (int a = 0; a < c; ++a) {
      if (!leq(a, a)) order_ok = false;
      for (int b = 0; b < c; ++b) {
        if (a != b && leq(a, b) && leq(b, a)) order_ok = false;
        for (int d = 0; d < c && order_ok; ++d)
          if (leq(a, b) && leq(b, d) && !leq(a, d)) order_ok = false;
      }
    }
  }
  out.check(name::kPartialOrder, order_ok, [&] { return where(r, phi) + " " + order_issue; });

  // Supports.
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b) {
      bool ok = true;
      if (auto s = sum(a, b)) ok = p.support(*s) == (p.support(a) | p.support(b));
      if (leq(a, b)) ok = ok && p.support(a).is_subset_of(p.support(b));
      out.check(name::kSupports, ok, [&] { return at(a, b); });
    }

  // Cancellation.
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b) {
      const auto ab = sum(a, b);
      for (int d = 0; d < c; ++d) {
        const auto ad = sum(a, d), bd = sum(b, d);
        bool ok = true;
        if (ab && ad && *ab == *ad && *ab != a) ok = ok && b == d;
        if (ab) {
          auto abd = sum(*ab, d);
          if (abd && *abd == *ab) ok = ok && ((ad && *ad == a) || (bd && *bd == b));
          if (abd && bd && *abd == *bd) ok = ok && (*ab == b || *bd == d);
        }
        out.check(name::kCancellation, ok, [&] { return at(a, b) + " C=" + std::to_string(d + 1); });
      }
    }

  int depth = c <= 12 ? opt.bracket_depth : std::min(opt.bracket_depth, 3);
  if (c <= opt.bracket_component_limit) check_bracketed(p, depth, phi, out);

  // Simple components.
  std::vector<int> simple = p.simple_components();
  std::vector<int> with_simple_root;
  const RootSet simple_roots = r.simple_roots();
  for (int a = 0; a < c; ++a)
    if (p.component(a).intersects(simple_roots)) with_simple_root.push_back(a);
  out.check(name::kSimpleRoot, simple == with_simple_root, [&] { return where(r, phi); });
  int full_simple = 0;
  for (int a : simple)
    if (p.support(a) == r.support(phi)) ++full_simple;
  out.check(name::kFullSupportSimple, full_simple <= 1, [&] { return where(r, phi); });
  auto certs = simple_sum_certificates(p);
  for (int a = 0; a < c; ++a) {
    const auto& cert = certs[static_cast<std::size_t>(a)];
    bool ok = cert.has_value() && !cert->empty() && p.standard_sum(*cert) == a;
    if (ok)
      for (int s : *cert) ok = ok && std::binary_search(simple.begin(), simple.end(), s);
    out.check(name::kSimpleSums, ok, [&] { return at(a, a); });
  }

  for (int a = 0; a < c; ++a)
    out.check(name::kSupportInGen, is_inflated_from(r, phi, p.support(a)), [&] { return at(a, a); });

  if (canon) {
    const RootSet x_region = r.roots_supported_in(canon->killed);
    for (int a = 0; a < c; ++a) {
      const RootSet& comp = p.component(a);
      bool ok = is_inflated_from(r, comp, canon->killed) && (comp.is_subset_of(x_region) || !comp.intersects(x_region));
      out.check(name::kComponentsInflated, ok, [&] { return at(a, a) + " I=" + r.format_subset(canon->killed); });
    }
    if (canon->kind == PsiKind::Primitive) {
      int full = 0;
      bool others_in_x = true;
      for (int a : simple) {
        if (p.support(a) == all)
          ++full;
        else if (!p.component(a).is_subset_of(x_region))
          others_in_x = false;
      }
      out.check(name::kPrimitiveSimple, full == 1 && others_in_x, [&] { return where(r, phi); });
    }
  }

  if (!phi.empty()) {
    bool ok = true;
    std::string why;
    try {
      irreducibility_report(r, phi);
    } catch (const InvariantViolation& e) {
      ok = false;
      why = e.what();
    }
    out.check(name::kIrreducibility, ok, [&] { return why; });
  }

  // Two-part splits.
  std::vector<std::pair<RootSet, RootSet>> splits;
  if (opt.all_sets != nullptr) {
    for (const RootSet& s : *opt.all_sets) {
      if (s.empty() || s == phi || !s.is_subset_of(phi) || !s.contains(phi.min_index())) continue;
      RootSet rest = phi - s;
      if (is_inversion_set(r, rest)) splits.emplace_back(s, rest);
    }
  } else if (phi.size() <= kSplitSearchRootLimit) {
    if (auto s = find_two_part_split(r, phi)) splits.push_back(*s);
  }
  for (const auto& [s1, s2] : splits) {
    bool ok = true;
    for (const RootSet& comp : p.components()) ok = ok && (comp.is_subset_of(s1) || comp.is_subset_of(s2));
    out.check(name::kNonSplitting, ok, [&] { return where(r, phi) + " part=" + r.format(s1); });
    if (canon)
      out.check(name::kSplitInflation, is_inflated_from(r, s1, canon->killed) && is_inflated_from(r, s2, canon->killed),
                [&] { return where(r, phi) + " part=" + r.format(s1); });
  }
}

} // namespace

void check_inversion_set(QuotientCache& cache, const RootSet& phi, const SetCheckOptions& opt, Report& out) {
  const RootSystem& r = cache.system();
  if (!is_inversion_set(r, phi)) throw InvalidArgument(where(r, phi) + " is not an inversion set");
  const std::vector<SimpleSubset> gen = gen_family(r, phi);
  check_gen_and_inflation(r, phi, gen, out);
  out.check(name::kSpan, spans_support_lattice(r, phi) && spans_support_lattice(r, phi.complement()),
            [&] { return where(r, phi); });
  std::optional<InflationForm> canon;
  if (r.rank() > 0 && r.is_connected()) canon = check_canonical(cache, phi, gen, out);
  check_components(cache, phi, canon, opt, out);
}

void check_decomposition(const RootSystem& r, const Decomposition& d, Report& out) {
  auto text = [&] {
    std::string s = r.label() + ":";
    for (const RootSet& p : d.parts) s += " " + r.format(p);
    return s;
  };
  std::vector<RootSet> reversed(d.parts.rbegin(), d.parts.rend());
  out.check(name::kPrefixUnion, prefix_union_check(r, d.parts) && prefix_union_check(r, reversed), text);
  if (!r.is_connected()) return;
  std::string why;
  try {
    validate_main_theorem(r, d);
  } catch (const InvariantViolation& e) {
    why = e.what();
  }
  out.check(name::kStructure, why.empty(), [&] { return why; });
}

void check_fine_decomposition(QuotientCache& cache, const Decomposition& d, Report& out) {
  const RootSystem& r = cache.system();
  auto text = [&] {
    std::string s = r.label() + ":";
    for (const RootSet& p : d.parts) s += " " + r.format(p);
    return s;
  };
  const RootSet simple = r.simple_roots();
  bool one_each = static_cast<int>(d.parts.size()) == r.rank();
  for (const RootSet& p : d.parts) one_each = one_each && (p & simple).size() == 1;
  out.check(name::kFineSimple, one_each, text);

  bool found = r.rank() == 0;
  const std::uint32_t n = 1u << r.rank();
  for (std::uint32_t bits = 0; bits < n && !found; ++bits) {
    SimpleSubset k(bits);
    const int corank = r.rank() - k.size();
    if (corank < 1 || corank > 2) continue;
    const RootSet inside = r.roots_supported_in(k);
    bool ok = true;
    for (const RootSet& p : d.parts)
      ok = ok && is_inflated_from(r, p, k) && (p.is_subset_of(inside) || !p.intersects(inside));
    found = ok;
  }
  out.check(name::kFineInflation, found, text);
  check_decomposition(r, d, out);
}

} // namespace qrs::props
