#include "qrs/inflation.hpp"

#include <algorithm>

#include "qrs/errors.hpp"

namespace qrs {

std::string to_string(PsiKind k) {
  switch (k) {
  case PsiKind::Empty: return "empty";
  case PsiKind::Full: return "full";
  case PsiKind::Primitive: return "primitive";
  case PsiKind::General: return "general";
  }
  return "?";
}

RootSet inflate(const Quotient& q, const Subsystem& sub, const RootSet& psi, const RootSet& x) {
  if (sub.base != q.killed) throw InvalidArgument("quotient and subsystem use different simple subsets");
  return preimage(q, psi) | to_parent(sub, x, static_cast<int>(q.image.size()));
}

RootSet inflate(QuotientCache& cache, SimpleSubset killed, const RootSet& psi, const RootSet& x) {
  return inflate(cache.quotient(killed), cache.subsystem(killed), psi, x);
}

RootSet inflate(const RootSystem& r, SimpleSubset killed, const RootSet& psi, const RootSet& x) {
  return inflate(quotient_allowing_whole_base(r, killed), subsystem(r, killed), psi, x);
}

namespace {

std::uint64_t keep_mask(const RootSystem& r, SimpleSubset killed) {
  std::uint64_t m = 0;
  for (int p = 0; p < r.rank(); ++p)
    if (!killed.contains(p)) m |= std::uint64_t{0xF} << (4 * p);
  return m;
}

} // namespace

bool is_inflated_from(const RootSystem& r, const RootSet& phi, SimpleSubset killed) {
  if (phi.universe() != r.size()) throw InvalidArgument("set is not over " + r.label());
  const std::uint64_t mask = keep_mask(r, killed);
  std::uint64_t inside[RootSet::kMaxRoots];
  int n = 0;
  phi.for_each([&](int i) {
    if (std::uint64_t c = r.packed(i) & mask) inside[n++] = c;
  });
  std::sort(inside, inside + n);
  bool ok = true;
  phi.complement().for_each([&](int i) {
    std::uint64_t c = r.packed(i) & mask;
    if (ok && c != 0 && std::binary_search(inside, inside + n, c)) ok = false;
  });
  return ok;
}

std::array<bool, 5> inflation_conditions(const RootSystem& r, const RootSet& phi, SimpleSubset killed) {
  Quotient q = quotient_allowing_whole_base(r, killed);
  Subsystem sub = subsystem(r, killed);
  const int m = r.size();
  auto same_side = [&](int a, int b) { return phi.contains(a) == phi.contains(b); };
  std::array<bool, 5> out{};

  // (i) the candidate psi (fibers inside phi) and x = phi within R_I rebuild phi.
  RootSet psi(q.system.size());
  for (int j = 0; j < q.system.size(); ++j)
    if (q.fibers[static_cast<std::size_t>(j)].is_subset_of(phi)) psi.insert(j);
  RootSet x(sub.system.size());
  for (int k = 0; k < sub.system.size(); ++k)
    if (phi.contains(sub.to_parent[static_cast<std::size_t>(k)])) x.insert(k);
  out[0] = inflate(q, sub, psi, x) == phi;

  // (ii) pairs with equal nonzero projection.
  out[1] = true;
  for (int a = 0; a < m && out[1]; ++a)
    for (int b = a + 1; b < m; ++b) {
      int ia = q.image[static_cast<std::size_t>(a)];
      if (ia >= 0 && ia == q.image[static_cast<std::size_t>(b)] && !same_side(a, b)) {
        out[1] = false;
        break;
      }
    }

  // (iii) steps by +-theta, theta in I.
  out[2] = true;
  for (int a = 0; a < m && out[2]; ++a) {
    if (q.image[static_cast<std::size_t>(a)] < 0) continue;
    for (int p : killed.positions()) {
      for (int sgn : {1, -1}) {
        Coeffs c = r.root(a);
        c[static_cast<std::size_t>(p)] += sgn;
        auto b = r.find(c);
        if (b && !same_side(a, *b)) out[2] = false;
      }
    }
  }

  // (iv) fibers on one side.
  out[3] = true;
  for (const RootSet& f : q.fibers)
    if (!f.is_subset_of(phi) && f.intersects(phi)) out[3] = false;

  // (v) projection collision test.
  out[4] = is_inflated_from(r, phi, killed);
  return out;
}

namespace {

PsiKind classify(const RootSystem& quotient_system, const RootSet& psi) {
  if (psi.empty()) return PsiKind::Empty;
  if (psi.size() == quotient_system.size()) return PsiKind::Full;
  if (is_primitive_set(quotient_system, psi)) return PsiKind::Primitive;
  return PsiKind::General;
}

} // namespace

InflationForm deflate(QuotientCache& cache, const RootSet& phi, SimpleSubset killed) {
  const RootSystem& r = cache.system();
  if (!is_inflated_from(r, phi, killed)) throw InvalidArgument("set is not inflated from " + r.format_subset(killed));
  const Quotient& q = cache.quotient(killed);
  const Subsystem& sub = cache.subsystem(killed);
  InflationForm f;
  f.killed = killed;
  f.psi = image_of(q, phi);
  f.x = RootSet(sub.system.size());
  for (int k = 0; k < sub.system.size(); ++k)
    if (phi.contains(sub.to_parent[static_cast<std::size_t>(k)])) f.x.insert(k);
  f.kind = classify(q.system, f.psi);
  return f;
}

InflationForm deflate(const RootSystem& r, const RootSet& phi, SimpleSubset killed) {
  QuotientCache cache(r);
  return deflate(cache, phi, killed);
}

std::vector<SimpleSubset> gen_family(const RootSystem& r, const RootSet& phi) {
  std::vector<SimpleSubset> out;
  for (std::uint32_t bits = 0; bits < (1u << r.rank()); ++bits)
    if (is_inflated_from(r, phi, SimpleSubset(bits))) out.emplace_back(bits);
  return out;
}

bool is_primitive_set(const RootSystem& r, const RootSet& phi) {
  if (phi.empty() || phi.size() == r.size()) return false;
  const std::uint32_t full = (1u << r.rank()) - 1;
  for (std::uint32_t bits = 1; bits < full; ++bits)
    if (is_inflated_from(r, phi, SimpleSubset(bits))) return false;
  return true;
}

InflationForm canonical_form(QuotientCache& cache, const RootSet& phi) {
  const RootSystem& r = cache.system();
  if (r.rank() == 0) throw InvalidArgument("canonical form needs rank at least one");
  if (!r.is_connected()) throw InvalidArgument("canonical form needs a connected system, got " + r.label());
  const SimpleSubset all = SimpleSubset::all(r.rank());
  SimpleSubset on = r.support(phi), off = r.support(phi.complement());
  if (on != all) return deflate(cache, phi, on);
  if (off != all) return deflate(cache, phi, off);
  SimpleSubset top;
  for (SimpleSubset k : gen_family(r, phi))
    if (k != all) top = top | k;
  InflationForm f = deflate(cache, phi, top);
  if (f.kind != PsiKind::Primitive)
    throw InvariantViolation("largest proper inflating set " + r.format_subset(top) + " does not give a primitive quotient set");
  return f;
}

InflationForm canonical_form(const RootSystem& r, const RootSet& phi) {
  QuotientCache cache(r);
  return canonical_form(cache, phi);
}

bool satisfies_canonical_alternatives(QuotientCache& cache, const RootSet& phi, const InflationForm& form) {
  const RootSystem& r = cache.system();
  const SimpleSubset all = SimpleSubset::all(r.rank());
  if (form.killed == all) return false;
  if (inflate(cache, form.killed, form.psi, form.x) != phi) return false;
  const RootSystem& qs = cache.quotient(form.killed).system;
  if (is_primitive_set(qs, form.psi)) return true;
  bool empty = form.psi.empty(), full = form.psi.size() == qs.size();
  if (!empty && !full) return false;
  // I must be smallest among the sets inflating phi with the same kind of psi.
  if (form.killed.empty()) return true;
  for (std::uint32_t k = (form.killed.bits() - 1) & form.killed.bits();; k = (k - 1) & form.killed.bits()) {
    SimpleSubset sk(k);
    if (is_inflated_from(r, phi, sk)) {
      RootSet other = image_of(cache.quotient(sk), phi);
      int total = cache.quotient(sk).system.size();
      if ((empty && other.empty()) || (full && other.size() == total)) return false;
    }
    if (k == 0) break;
  }
  return true;
}

SimpleSubset relative_subset(const Quotient& q, SimpleSubset j) {
  SimpleSubset rel;
  for (std::size_t k = 0; k < q.kept.size(); ++k)
    if (j.contains(q.kept[k])) rel = rel.with(static_cast<int>(k));
  return rel;
}

std::pair<RootSet, RootSet> inflation_compose(QuotientCache& cache, SimpleSubset i, SimpleSubset j, const RootSet& psi,
                                              const RootSet& t, const RootSet& x) {
  if (!i.is_subset_of(j)) throw InvalidArgument("inflation_compose needs I inside J");
  const Quotient& qi = cache.quotient(i);
  const Quotient& qj = cache.quotient(j);
  SimpleSubset rel = relative_subset(qi, j);
  Quotient qq = quotient_allowing_whole_base(qi.system, rel);
  Subsystem qsub = subsystem(qi.system, rel);

  // Left: inf_I(inf_{J/I}(psi, t), x).
  RootSet inner = inflate(qq, qsub, transfer(psi, qj.system, qq.system), t);
  RootSet lhs = inflate(cache, i, inner, x);

  // Right: inf_J(psi, inf_I^J(t, x)).
  const Subsystem& rj = cache.subsystem(j);
  SimpleSubset i_in_j;
  std::vector<int> jpos = j.positions();
  for (std::size_t k = 0; k < jpos.size(); ++k)
    if (i.contains(jpos[k])) i_in_j = i_in_j.with(static_cast<int>(k));
  Quotient rjq = quotient_allowing_whole_base(rj.system, i_in_j);
  Subsystem rji = subsystem(rj.system, i_in_j);
  RootSet y = inflate(rjq, rji, transfer(t, qsub.system, rjq.system), transfer(x, cache.subsystem(i).system, rji.system));
  RootSet rhs = inflate(cache, j, psi, y);
  return {lhs, rhs};
}

RootSet inflation_split(QuotientCache& cache, const RootSet& phi, SimpleSubset i, SimpleSubset j) {
  if (!i.is_subset_of(j)) throw InvalidArgument("inflation_split needs I inside J");
  InflationForm fi = deflate(cache, phi, i);
  InflationForm fj = deflate(cache, phi, j);
  const Quotient& qi = cache.quotient(i);
  SimpleSubset rel = relative_subset(qi, j);
  Quotient qq = quotient_allowing_whole_base(qi.system, rel);
  Subsystem qsub = subsystem(qi.system, rel);
  RootSet z(qsub.system.size());
  for (int k = 0; k < qsub.system.size(); ++k)
    if (fi.psi.contains(qsub.to_parent[static_cast<std::size_t>(k)])) z.insert(k);
  RootSet rebuilt = inflate(qq, qsub, transfer(fj.psi, cache.quotient(j).system, qq.system), z);
  if (rebuilt != fi.psi) throw InvariantViolation("psi from I is not inflated from J/I");
  return z;
}

} // namespace qrs
