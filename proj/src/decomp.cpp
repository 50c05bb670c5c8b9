#include "qrs/decomp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "qrs/errors.hpp"
#include "qrs/invsets.hpp"
#include "qrs/kernels.hpp"
#include "qrs/quotient.hpp"

namespace qrs {

void Decomposition::normalize() {
  std::sort(parts.begin(), parts.end(), [](const RootSet& a, const RootSet& b) { return a.min_index() < b.min_index(); });
}

bool is_decomposition(const RootSystem& r, const Decomposition& d, const RootSet& target) {
  RootSet acc = r.empty_set();
  for (const RootSet& p : d.parts) {
    if (p.universe() != r.size() || p.empty() || p.intersects(acc) || !is_inversion_set(r, p)) return false;
    acc |= p;
  }
  return acc == target;
}

std::vector<Decomposition> enumerate_decompositions_oracle(const RootSystem& r, const RootSet& phi, int k) {
  if (r.rank() > kOracleRankLimit)
    throw GuardExceeded("decomposition oracle is limited to rank " + std::to_string(kOracleRankLimit));
  if (k < 1) throw InvalidArgument("a decomposition needs at least one part");
  if (!is_inversion_set(r, phi)) throw InvalidArgument(r.format(phi) + " is not an inversion set");

  std::vector<RootSet> candidates;
  for (const RootSet& s : enumerate_inversion_sets(r))
    if (!s.empty() && s.is_subset_of(phi)) candidates.push_back(s);

  std::vector<Decomposition> out;
  Decomposition current;
  // The next part is always the one holding the lowest uncovered root, so
  // each unordered partition is produced once, parts ordered by minimum.
  std::function<void(const RootSet&)> search = [&](const RootSet& remaining) {
    if (static_cast<int>(current.parts.size()) == k) {
      if (remaining.empty()) out.push_back(current);
      return;
    }
    int low = remaining.min_index();
    if (low < 0) return;
    for (const RootSet& c : candidates) {
      if (!c.contains(low) || !c.is_subset_of(remaining)) continue;
      current.parts.push_back(c);
      search(remaining - c);
      current.parts.pop_back();
    }
  };
  search(phi);
  return out;
}

MainTheoremWitness validate_main_theorem(const RootSystem& r, const Decomposition& d) {
  if (!r.is_connected()) throw InvalidArgument(r.label() + " is not connected");
  if (!is_decomposition(r, d, r.all_roots())) throw InvalidArgument("not a decomposition of all positive roots");
  const int top = r.highest_root();
  MainTheoremWitness w;
  for (std::size_t i = 0; i < d.parts.size(); ++i)
    if (d.parts[i].contains(top)) w.first = static_cast<int>(i);

  QuotientCache cache(r);
  w.form = canonical_form(cache, d.parts[static_cast<std::size_t>(w.first)]);
  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "decomposition of " << r.label() << " breaks the structure theorem: " << why << "; parts:";
    for (const RootSet& p : d.parts) msg << ' ' << r.format(p);
    throw InvariantViolation(msg.str());
  };
  if (w.form.kind != PsiKind::Full && w.form.kind != PsiKind::Primitive)
    fail("first part has canonical kind " + to_string(w.form.kind));

  const RootSet psi_c = w.form.psi.complement();
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    if (static_cast<int>(i) == w.first) continue;
    const RootSet& part = d.parts[i];
    if (!is_inflated_from(r, part, w.form.killed)) fail("a part is not inflated from the canonical I");
    InflationForm f = deflate(cache, part, w.form.killed);
    if (f.psi.empty()) continue;
    if (w.form.kind == PsiKind::Primitive && f.psi == psi_c && w.second < 0) {
      w.second = static_cast<int>(i);
      continue;
    }
    fail("a part deflates to a psi other than the complement");
  }
  if (w.form.kind == PsiKind::Primitive && w.second < 0) fail("no part carries the complement of psi");
  return w;
}

std::uint64_t pi_count(const RootSystem& q) {
  std::uint64_t primitive = 0;
  for (const RootSet& s : enumerate_inversion_sets(q))
    if (is_primitive_set(q, s)) ++primitive;
  if (primitive % 2 != 0)
    throw InvariantViolation(q.label() + " has an odd number (" + std::to_string(primitive) + ") of primitive inversion sets");
  return primitive / 2;
}

std::uint64_t PiCache::get(const RootSystem& r, SimpleSubset j, int a, int b) {
  std::vector<std::uint64_t> key;
  for (int x = 0; x < r.size(); ++x) {
    if (!r.support(x).is_subset_of(j)) continue;
    int ca = r.root(x)[static_cast<std::size_t>(a)];
    int cb = r.root(x)[static_cast<std::size_t>(b)];
    if (ca != 0 || cb != 0) key.push_back(pack_coeffs({ca, cb}));
  }
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  {
    std::lock_guard lock(mu_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }

  Subsystem sub = subsystem(r, j);
  SimpleSubset killed = SimpleSubset::all(sub.system.rank());
  std::vector<int> pos = j.positions();
  for (int p = 0; p < static_cast<int>(pos.size()); ++p)
    if (pos[static_cast<std::size_t>(p)] == a || pos[static_cast<std::size_t>(p)] == b) killed = killed.without(p);
  Quotient q = quotient(sub.system, killed);
  std::vector<std::uint64_t> got;
  for (int x = 0; x < q.system.size(); ++x) got.push_back(q.system.packed(x));
  std::sort(got.begin(), got.end());
  if (got != key) throw InvariantViolation("rank-two quotient of " + sub.system.label() + " disagrees with the projected roots");

  std::uint64_t v = pi_count(q.system);
  std::string note;
  if (!q.system.all_primitive()) {
    std::vector<Coeffs> prim;
    for (int x = 0; x < q.system.size(); ++x)
      if (q.system.is_primitive(x)) prim.push_back(q.system.root(x));
    RootSystem reduced(q.system.label() + "_prim", q.system.base_ids(), q.system.gram(), prim);
    std::uint64_t w = pi_count(reduced);
    if (w != v)
      throw InvariantViolation("pi of " + q.system.label() + " changes from " + std::to_string(v) + " to " + std::to_string(w) +
                               " on its primitive roots");
    std::ostringstream msg;
    msg << "rank-two quotient with roots";
    for (int x = 0; x < q.system.size(); ++x) msg << ' ' << q.system.format(x);
    msg << " has non-primitive roots; pi = " << v << " on both it and its primitive roots";
    note = msg.str();
  }
  std::lock_guard lock(mu_);
  values_.emplace(key, v);
  if (!note.empty() && std::find(notes_.begin(), notes_.end(), note) == notes_.end()) notes_.push_back(note);
  return v;
}

std::vector<std::string> PiCache::notes() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out = notes_;
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t fine_count(const RootSystem& r) { return parallel::fine_count_table(r).total(); }

std::uint64_t fine_count_by_labeling(const RootSystem& r) {
  if (r.rank() > 32) throw InvalidArgument("rank too large for label masks");
  // A fine decomposition has exactly one simple root per part, so parts can
  // be named by their simple root.
  const std::uint32_t any = r.rank() == 32 ? ~0u : (1u << r.rank()) - 1u;
  std::vector<std::uint32_t> allowed(static_cast<std::size_t>(r.size()), any);
  for (int p = 0; p < r.rank(); ++p) allowed[static_cast<std::size_t>(r.simple_root(p))] = 1u << p;
  std::uint64_t n = 0;
  for_each_inversion_labeling(r, allowed, [&](const std::vector<int>&) {
    n = checked_add(n, 1);
    return true;
  });
  return n;
}

namespace {

using DecompList = std::vector<Decomposition>;

class FineEnumerator {
public:
  FineEnumerator(const RootSystem& r, std::size_t cap) : r_(r), cap_(cap) {}

  const DecompList& of(SimpleSubset j) {
    if (auto it = memo_.find(j.bits()); it != memo_.end()) return it->second;
    DecompList out = build(j);
    if (out.size() > cap_) throw GuardExceeded("more than " + std::to_string(cap_) + " fine decompositions");
    return memo_.emplace(j.bits(), std::move(out)).first->second;
  }

private:
  // Roots of R_J whose coefficients at the listed positions are not all zero.
  RootSet outside(SimpleSubset j, SimpleSubset i) const {
    RootSet s = r_.empty_set();
    for (int x = 0; x < r_.size(); ++x)
      if (r_.support(x).is_subset_of(j) && !r_.support(x).is_subset_of(i)) s.insert(x);
    return s;
  }

  void extend(const std::vector<RootSet>& head, SimpleSubset rest, DecompList& out) {
    for (const Decomposition& tail : of(rest)) {
      Decomposition d{head};
      d.parts.insert(d.parts.end(), tail.parts.begin(), tail.parts.end());
      d.normalize();
      out.push_back(std::move(d));
      if (out.size() > cap_) throw GuardExceeded("more than " + std::to_string(cap_) + " fine decompositions");
    }
  }

  DecompList build(SimpleSubset j) {
    if (j.empty()) return {Decomposition{}};
    auto comps = r_.diagram_components(j);
    if (comps.size() > 1) {
      DecompList acc{Decomposition{}};
      for (SimpleSubset c : comps) {
        DecompList next;
        for (const Decomposition& left : acc)
          for (const Decomposition& right : of(c)) {
            Decomposition d = left;
            d.parts.insert(d.parts.end(), right.parts.begin(), right.parts.end());
            d.normalize();
            next.push_back(std::move(d));
            if (next.size() > cap_) throw GuardExceeded("more than " + std::to_string(cap_) + " fine decompositions");
          }
        acc = std::move(next);
      }
      return acc;
    }

    DecompList out;
    const std::vector<int> pos = j.positions();
    for (int p : pos) {
      SimpleSubset rest = j.without(p);
      extend({outside(j, rest)}, rest, out);
    }
    for (std::size_t u = 0; u < pos.size(); ++u)
      for (std::size_t v = u + 1; v < pos.size(); ++v) {
        const int a = pos[u], b = pos[v];
        SimpleSubset rest = j.without(a).without(b);
        for (auto [phi1, phi2] : primitive_pairs(j, a, b)) extend({phi1, phi2}, rest, out);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Lifts of each primitive psi of R_J / (J - {a, b}) holding the image of
  // theta_a, paired with the lift of its complement.
  std::vector<std::pair<RootSet, RootSet>> primitive_pairs(SimpleSubset j, int a, int b) {
    Subsystem sub = subsystem(r_, j);
    SimpleSubset killed = SimpleSubset::all(sub.system.rank());
    const std::vector<int> pos = j.positions();
    for (int p = 0; p < static_cast<int>(pos.size()); ++p)
      if (pos[static_cast<std::size_t>(p)] == a || pos[static_cast<std::size_t>(p)] == b) killed = killed.without(p);
    Quotient q = quotient(sub.system, killed);
    const int first = q.system.simple_root(0);
    std::vector<std::pair<RootSet, RootSet>> out;
    for (const RootSet& psi : enumerate_inversion_sets(q.system)) {
      if (!psi.contains(first) || !is_primitive_set(q.system, psi)) continue;
      RootSet one = to_parent(sub, preimage(q, psi), r_.size());
      RootSet two = to_parent(sub, preimage(q, psi.complement()), r_.size());
      out.emplace_back(one, two);
    }
    return out;
  }

  const RootSystem& r_;
  std::size_t cap_;
  std::map<std::uint32_t, DecompList> memo_;
};

} // namespace

std::vector<Decomposition> fine_enumerate(const RootSystem& r, std::size_t cap) {
  FineEnumerator e(r, cap);
  return e.of(SimpleSubset::all(r.rank()));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw GuardExceeded("count overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw GuardExceeded("count overflows 64 bits");
  return out;
}

std::vector<std::uint64_t> catalan_by_recurrence(int n) {
  std::vector<std::uint64_t> a(static_cast<std::size_t>(n) + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int i = 1; i <= m; ++i)
      a[static_cast<std::size_t>(m)] =
          checked_add(a[static_cast<std::size_t>(m)], checked_mul(a[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(m - i)]));
  return a;
}

std::vector<std::uint64_t> b_sequence(int n) {
  auto a = catalan_by_recurrence(n);
  std::vector<std::uint64_t> b(static_cast<std::size_t>(n) + 1, 0);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t s = 0;
    for (int i = 2; i <= m; ++i) s = checked_add(s, checked_mul(a[static_cast<std::size_t>(i - 1)], b[static_cast<std::size_t>(m - i)]));
    b[static_cast<std::size_t>(m)] = checked_add(b[static_cast<std::size_t>(m - 1)], checked_mul(2, s));
  }
  return b;
}

std::vector<std::uint64_t> d_sequence(int n) {
  auto a = catalan_by_recurrence(n);
  std::vector<std::uint64_t> d(static_cast<std::size_t>(n) + 1, 0);
  for (int m = 0; m <= n; ++m) {
    if (m <= 2) {
      d[static_cast<std::size_t>(m)] = 1;
      continue;
    }
    std::uint64_t s = 0;
    for (int i = 0; i <= m - 2; ++i)
      s = checked_add(s, checked_mul(a[static_cast<std::size_t>(i + 1)], d[static_cast<std::size_t>(m - i - 2)]));
    std::uint64_t plus = checked_add(checked_add(d[static_cast<std::size_t>(m - 1)], checked_mul(2, s)),
                                     checked_mul(2, a[static_cast<std::size_t>(m - 1)]));
    std::uint64_t minus = checked_mul(6, a[static_cast<std::size_t>(m - 2)]);
    if (minus > plus) throw InvariantViolation("D recurrence went negative");
    d[static_cast<std::size_t>(m)] = plus - minus;
  }
  return d;
}

namespace {

std::uint64_t binomial_catalan(int n) {
  // C(2n, n) / (n + 1), accumulated exactly.
  std::uint64_t c = 1;
  for (int i = 1; i <= n; ++i) c = checked_mul(c, static_cast<std::uint64_t>(n + i)) / static_cast<std::uint64_t>(i);
  return c / static_cast<std::uint64_t>(n + 1);
}

} // namespace

std::vector<SequenceCheck> sequence_crosscheck(int max_a, int max_b, int max_d, int max_c) {
  std::vector<SequenceCheck> out;
  auto a = catalan_by_recurrence(max_a);
  for (int n = 0; n <= max_a; ++n) out.push_back({"catalan " + std::to_string(n), a[static_cast<std::size_t>(n)], binomial_catalan(n)});
  for (int n = 1; n <= std::min(max_a, 8); ++n)
    out.push_back({"A" + std::to_string(n), a[static_cast<std::size_t>(n)], fine_count(build_root_system("A" + std::to_string(n)))});
  auto b = b_sequence(std::max(max_b, max_c));
  for (int n = 1; n <= max_b; ++n)
    out.push_back({"B" + std::to_string(n), b[static_cast<std::size_t>(n)], fine_count(build_root_system("B" + std::to_string(n)))});
  for (int n = 1; n <= max_c; ++n)
    out.push_back({"C" + std::to_string(n), b[static_cast<std::size_t>(n)], fine_count(build_root_system("C" + std::to_string(n)))});
  auto d = d_sequence(max_d);
  for (int n = 1; n <= max_d; ++n)
    out.push_back({"D" + std::to_string(n), d[static_cast<std::size_t>(n)], fine_count(build_root_system("D" + std::to_string(n)))});
  return out;
}

} // namespace qrs
