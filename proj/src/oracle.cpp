#include "qrs/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "qrs/errors.hpp"

namespace qrs::oracle {

namespace {

using Cartan = std::vector<std::vector<int>>;

// c[j][i] = <theta_j, theta_i^vee>, written down from the Dynkin diagrams.
Cartan cartan_integers(Family f, int n) {
  Cartan c(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  auto at = [&](int j, int i) -> int& { return c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; };
  for (int i = 0; i < n; ++i) at(i, i) = 2;
  auto simply_laced = [&](int a, int b) { at(a, b) = at(b, a) = -1; };
  switch (f) {
  case Family::A:
    for (int i = 0; i + 1 < n; ++i) simply_laced(i, i + 1);
    break;
  case Family::B:
    for (int i = 0; i + 2 < n; ++i) simply_laced(i, i + 1);
    at(n - 2, n - 1) = -2;
    at(n - 1, n - 2) = -1;
    break;
  case Family::C:
    for (int i = 0; i + 2 < n; ++i) simply_laced(i, i + 1);
    at(n - 2, n - 1) = -1;
    at(n - 1, n - 2) = -2;
    break;
  case Family::D:
    for (int i = 0; i + 2 < n; ++i) simply_laced(i, i + 1);
    simply_laced(n - 3, n - 1);
    break;
  case Family::E:
    simply_laced(0, 2);
    simply_laced(1, 3);
    for (int i = 2; i + 1 < n; ++i) simply_laced(i, i + 1);
    break;
  case Family::F:
    simply_laced(0, 1);
    simply_laced(2, 3);
    at(1, 2) = -2;
    at(2, 1) = -1;
    break;
  case Family::G:
    at(0, 1) = -1;
    at(1, 0) = -3;
    break;
  case Family::Product:
    throw InvalidArgument("product has no single Cartan block");
  }
  return c;
}

Cartan cartan_for(const SystemSpec& spec) {
  if (spec.family != Family::Product) return cartan_integers(spec.family, spec.rank);
  int n = spec.total_rank(), off = 0;
  Cartan c(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (const auto& f : spec.factors) {
    Cartan b = cartan_for(f);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[off + i][off + j] = b[i][j];
    off += static_cast<int>(b.size());
  }
  return c;
}

bool is_root_vector(const std::set<Coeffs>& roots, const Coeffs& v) { return roots.count(v) != 0; }

} // namespace

std::vector<Coeffs> positive_roots_by_strings(const SystemSpec& spec) {
  Cartan c = cartan_for(spec);
  const int n = static_cast<int>(c.size());
  std::set<Coeffs> all;
  std::vector<Coeffs> layer;
  for (int i = 0; i < n; ++i) {
    Coeffs e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    layer.push_back(e);
    all.insert(e);
  }
  while (!layer.empty()) {
    std::set<Coeffs> next;
    for (const Coeffs& beta : layer)
      for (int i = 0; i < n; ++i) {
        int q = 0;
        Coeffs down = beta;
        for (;;) {
          down[static_cast<std::size_t>(i)] -= 1;
          if (!is_root_vector(all, down)) break;
          ++q;
        }
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += beta[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (q - pairing > 0) {
          Coeffs up = beta;
          up[static_cast<std::size_t>(i)] += 1;
          next.insert(up);
        }
      }
    layer.assign(next.begin(), next.end());
    all.insert(next.begin(), next.end());
  }
  return {all.begin(), all.end()};
}

std::vector<RootSet> inversion_sets_by_subsets(const RootSystem& r) {
  const int m = r.size();
  if (m > 20) throw GuardExceeded("subset oracle limited to 20 roots");
  std::map<Coeffs, int> index;
  for (int i = 0; i < m; ++i) index[r.root(i)] = i;
  // Triples (a, b, c) with d(a) + d(b) = d(c), a <= b.
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Coeffs s = r.root(a);
      for (std::size_t p = 0; p < s.size(); ++p) s[p] += r.root(b)[p];
      auto it = index.find(s);
      if (it != index.end()) triples.push_back({a, b, it->second});
    }
  std::vector<RootSet> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    auto in = [&](int i) { return ((mask >> i) & 1u) != 0; };
    bool ok = true;
    for (const auto& t : triples) {
      if (in(t[0]) && in(t[1]) && !in(t[2])) ok = false;
      if (!in(t[0]) && !in(t[1]) && in(t[2])) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    RootSet s(m);
    for (int i = 0; i < m; ++i)
      if (in(i)) s.insert(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootSet random_halfspace_set(const RootSystem& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-40, 40);
  for (;;) {
    std::vector<int> f(static_cast<std::size_t>(r.rank()));
    for (int& x : f) x = dist(rng);
    RootSet s(r.size());
    bool degenerate = false;
    for (int i = 0; i < r.size() && !degenerate; ++i) {
      long v = 0;
      for (int p = 0; p < r.rank(); ++p) v += static_cast<long>(f[static_cast<std::size_t>(p)]) * r.root(i)[static_cast<std::size_t>(p)];
      if (v == 0) degenerate = true;
      else if (v > 0) s.insert(i);
    }
    if (!degenerate) return s;
  }
}

std::vector<Coeffs> quotient_roots_by_restriction(const RootSystem& r, SimpleSubset killed) {
  std::set<Coeffs> out;
  for (const Coeffs& c : r.roots()) {
    Coeffs keep;
    for (int p = 0; p < r.rank(); ++p)
      if (!killed.contains(p)) keep.push_back(c[static_cast<std::size_t>(p)]);
    if (std::any_of(keep.begin(), keep.end(), [](int x) { return x != 0; })) out.insert(keep);
  }
  return {out.begin(), out.end()};
}

std::uint64_t catalan(int n) {
  // C(2n, n) / (n + 1), built incrementally to stay exact.
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * static_cast<std::uint64_t>(k) + 1) / (static_cast<std::uint64_t>(k) + 2);
  return c;
}

namespace {

void partition_rec(const std::vector<RootSet>& candidates, RootSet left, int k, std::vector<RootSet>& current,
                   std::vector<std::vector<RootSet>>& out) {
  if (left.empty()) {
    if (k == 0) out.push_back(current);
    return;
  }
  if (k == 0) return;
  int low = left.min_index();
  for (const RootSet& s : candidates) {
    if (s.empty() || !s.contains(low) || !s.is_subset_of(left)) continue;
    current.push_back(s);
    partition_rec(candidates, left - s, k - 1, current, out);
    current.pop_back();
  }
}

} // namespace

std::vector<std::vector<RootSet>> partitions_into_inversion_sets(const std::vector<RootSet>& all_sets, const RootSet& target, int k) {
  std::vector<std::vector<RootSet>> out;
  std::vector<RootSet> current;
  partition_rec(all_sets, target, k, current, out);
  return out;
}

} // namespace qrs::oracle

namespace qrs::oracle {

namespace {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec unit_difference(int dim, int i, int j, Rational si = 1, Rational sj = -1) {
  Vec v(static_cast<std::size_t>(dim), Rational(0));
  v[static_cast<std::size_t>(i)] = si;
  v[static_cast<std::size_t>(j)] = sj;
  return v;
}

} // namespace

std::vector<std::vector<Rational>> explicit_base(const SystemSpec& spec) {
  const int n = spec.rank;
  std::vector<Vec> out;
  switch (spec.family) {
  case Family::A:
    for (int i = 0; i < n; ++i) out.push_back(unit_difference(n + 1, i, i + 1));
    break;
  case Family::B:
  case Family::C:
  case Family::D:
    for (int i = 0; i + 1 < n; ++i) out.push_back(unit_difference(n, i, i + 1));
    if (spec.family == Family::D) {
      out.push_back(unit_difference(n, n - 2, n - 1, 1, 1));
    } else {
      Vec last(static_cast<std::size_t>(n), Rational(0));
      last[static_cast<std::size_t>(n - 1)] = spec.family == Family::B ? 1 : 2;
      out.push_back(last);
    }
    break;
  case Family::E: {
    Vec t1(8, Rational(-1, 2));
    t1[0] = Rational(1, 2);
    t1[7] = Rational(1, 2);
    out.push_back(t1);
    out.push_back(unit_difference(8, 0, 1, 1, 1));
    out.push_back(unit_difference(8, 1, 0));
    for (int i = 2; i < n - 1; ++i) out.push_back(unit_difference(8, i, i - 1));
    break;
  }
  default:
    throw InvalidArgument("no explicit model for this type");
  }
  return out;
}

RationalMatrix projected_gram(const std::vector<std::vector<Rational>>& base, SimpleSubset killed) {
  std::vector<Vec> ortho;
  for (std::size_t p = 0; p < base.size(); ++p) {
    if (!killed.contains(static_cast<int>(p))) continue;
    Vec v = base[p];
    for (const Vec& u : ortho) {
      Rational f = dot(v, u) / dot(u, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * u[i];
    }
    ortho.push_back(v);
  }
  std::vector<Vec> kept;
  for (std::size_t p = 0; p < base.size(); ++p) {
    if (killed.contains(static_cast<int>(p))) continue;
    Vec v = base[p];
    for (const Vec& u : ortho) {
      Rational f = dot(v, u) / dot(u, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * u[i];
    }
    kept.push_back(v);
  }
  const int k = static_cast<int>(kept.size());
  RationalMatrix g(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) g(a, b) = dot(kept[static_cast<std::size_t>(a)], kept[static_cast<std::size_t>(b)]);
  return g;
}

} // namespace qrs::oracle
