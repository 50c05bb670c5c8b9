#include "qrs/quotient.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qrs/errors.hpp"

namespace qrs {

Quotient quotient(const RootSystem& r, SimpleSubset killed) {
  const int n = r.rank();
  if (!killed.is_subset_of(SimpleSubset::all(n))) throw InvalidArgument("killed set is not a subset of the base");
  if (n > 0 && killed == SimpleSubset::all(n)) throw InvalidArgument("cannot quotient by the whole base");
  std::vector<int> kept, dropped, ids;
  for (int p = 0; p < n; ++p) {
    if (killed.contains(p)) {
      dropped.push_back(p);
    } else {
      kept.push_back(p);
      ids.push_back(r.base_ids()[static_cast<std::size_t>(p)]);
    }
  }
  std::set<Coeffs> distinct;
  std::vector<Coeffs> restricted(static_cast<std::size_t>(r.size()));
  for (int i = 0; i < r.size(); ++i) {
    Coeffs c;
    for (int p : kept) c.push_back(r.root(i)[static_cast<std::size_t>(p)]);
    if (std::any_of(c.begin(), c.end(), [](int x) { return x != 0; })) distinct.insert(c);
    restricted[static_cast<std::size_t>(i)] = std::move(c);
  }
  std::string label = r.label() + "/" + r.format_subset(killed);
  RootSystem sys(label, ids, schur_complement(r.gram(), kept, dropped), {distinct.begin(), distinct.end()});

  Quotient q{std::move(sys), killed, kept, std::vector<int>(static_cast<std::size_t>(r.size()), -1), {}};
  q.fibers.assign(static_cast<std::size_t>(q.system.size()), RootSet(r.size()));
  for (int i = 0; i < r.size(); ++i) {
    if (auto j = q.system.find(restricted[static_cast<std::size_t>(i)])) {
      q.image[static_cast<std::size_t>(i)] = *j;
      q.fibers[static_cast<std::size_t>(*j)].insert(i);
    }
  }
  return q;
}

Quotient quotient_allowing_whole_base(const RootSystem& r, SimpleSubset killed) {
  if (killed != SimpleSubset::all(r.rank()) || r.rank() == 0) return quotient(r, killed);
  RootSystem sys(r.label() + "/" + r.format_subset(killed), {}, RationalMatrix(0, 0), {});
  return Quotient{std::move(sys), killed, {}, std::vector<int>(static_cast<std::size_t>(r.size()), -1), {}};
}

Subsystem subsystem(const RootSystem& r, SimpleSubset within) {
  if (!within.is_subset_of(SimpleSubset::all(r.rank()))) throw InvalidArgument("subset is not within the base");
  std::vector<int> pos = within.positions(), ids;
  for (int p : pos) ids.push_back(r.base_ids()[static_cast<std::size_t>(p)]);
  std::vector<Coeffs> roots;
  std::vector<int> members;
  for (int i = 0; i < r.size(); ++i) {
    if (!r.support(i).is_subset_of(within)) continue;
    Coeffs c;
    for (int p : pos) c.push_back(r.root(i)[static_cast<std::size_t>(p)]);
    roots.push_back(std::move(c));
    members.push_back(i);
  }
  std::string label = r.label() + "_" + r.format_subset(within);
  RootSystem sys(label, ids, r.gram().submatrix(pos, pos), roots);
  Subsystem sub{std::move(sys), within, {}, std::vector<int>(static_cast<std::size_t>(r.size()), -1)};
  sub.to_parent.assign(static_cast<std::size_t>(sub.system.size()), -1);
  for (std::size_t k = 0; k < members.size(); ++k) {
    int j = *sub.system.find(roots[k]);
    sub.to_parent[static_cast<std::size_t>(j)] = members[k];
    sub.from_parent[static_cast<std::size_t>(members[k])] = j;
  }
  return sub;
}

RootSet preimage(const Quotient& q, const RootSet& s) {
  if (s.universe() != q.system.size()) throw InvalidArgument("set is not over the quotient");
  RootSet out(static_cast<int>(q.image.size()));
  s.for_each([&](int j) { out |= q.fibers[static_cast<std::size_t>(j)]; });
  return out;
}

RootSet image_of(const Quotient& q, const RootSet& s) {
  if (s.universe() != static_cast<int>(q.image.size())) throw InvalidArgument("set is not over the parent");
  RootSet out(q.system.size());
  s.for_each([&](int i) {
    if (int j = q.image[static_cast<std::size_t>(i)]; j >= 0) out.insert(j);
  });
  return out;
}

RootSet to_parent(const Subsystem& sub, const RootSet& s, int parent_size) {
  if (s.universe() != sub.system.size()) throw InvalidArgument("set is not over the subsystem");
  RootSet out(parent_size);
  s.for_each([&](int j) { out.insert(sub.to_parent[static_cast<std::size_t>(j)]); });
  return out;
}

RootSet from_parent(const Subsystem& sub, const RootSet& s) {
  if (s.universe() != static_cast<int>(sub.from_parent.size())) throw InvalidArgument("set is not over the parent");
  RootSet out(sub.system.size());
  s.for_each([&](int i) {
    int j = sub.from_parent[static_cast<std::size_t>(i)];
    if (j < 0) throw InvalidArgument("root lies outside the subsystem");
    out.insert(j);
  });
  return out;
}

RootSet transfer(const RootSet& s, const RootSystem& from, const RootSystem& to) {
  if (s.universe() != from.size()) throw InvalidArgument("set is not over the source system");
  if (from.base_ids() != to.base_ids()) throw InvalidArgument("systems have different bases");
  RootSet out(to.size());
  s.for_each([&](int i) {
    auto j = to.find(from.root(i));
    if (!j) throw InvalidArgument("root " + from.format(i) + " has no counterpart in " + to.label());
    out.insert(*j);
  });
  return out;
}

namespace {

// Lifts of a signed quotient root, as signed parent roots.
std::vector<SignedRoot> lifts(const Quotient& q, SignedRoot r) {
  std::vector<SignedRoot> out;
  q.fibers[static_cast<std::size_t>(r.index)].for_each([&](int i) { out.push_back({i, r.sign}); });
  return out;
}

std::optional<SignedRoot> signed_sum(const RootSystem& r, SignedRoot a, SignedRoot b) {
  Coeffs c = r.coeffs(a), d = r.coeffs(b);
  for (std::size_t p = 0; p < c.size(); ++p) c[p] += d[p];
  return r.find_signed(c);
}

} // namespace

LiftReport lift_sum_check(const RootSystem& parent, const Quotient& q, SignedRoot a, SignedRoot b, SignedRoot c) {
  auto sum = signed_sum(q.system, a, b);
  if (!sum || *sum != c) throw InvalidArgument("c is not a + b in the quotient");
  LiftReport report;
  auto la = lifts(q, a), lb = lifts(q, b), lc = lifts(q, c);
  for (SignedRoot g : lc) {
    bool found = false;
    for (SignedRoot x : la) {
      Coeffs want = parent.coeffs(g), have = parent.coeffs(x);
      for (std::size_t p = 0; p < want.size(); ++p) want[p] -= have[p];
      auto y = parent.find_signed(want);
      if (y && std::find(lb.begin(), lb.end(), *y) != lb.end()) {
        report.witnesses.push_back({x, *y, g});
        found = true;
        break;
      }
    }
    if (!found) {
      report.holds = false;
      report.counterexample = "lift " + parent.format(g) + " of " + q.system.format(c) + " is not a sum of lifts";
      return report;
    }
  }
  for (SignedRoot x : la) {
    bool found = false;
    for (SignedRoot y : lb) {
      auto g = signed_sum(parent, x, y);
      if (g && std::find(lc.begin(), lc.end(), *g) != lc.end()) {
        report.witnesses.push_back({x, y, *g});
        found = true;
        break;
      }
    }
    if (!found) {
      report.holds = false;
      report.counterexample = "lift " + parent.format(x) + " of " + q.system.format(a) + " extends to no lifted sum";
      return report;
    }
  }
  return report;
}

} // namespace qrs

namespace qrs {

const Quotient& QuotientCache::quotient(SimpleSubset killed) {
  std::lock_guard lock(mu_);
  auto& slot = quotients_[killed.bits()];
  if (!slot) slot = std::make_unique<Quotient>(quotient_allowing_whole_base(*r_, killed));
  return *slot;
}

const Subsystem& QuotientCache::subsystem(SimpleSubset within) {
  std::lock_guard lock(mu_);
  auto& slot = subsystems_[within.bits()];
  if (!slot) slot = std::make_unique<Subsystem>(qrs::subsystem(*r_, within));
  return *slot;
}

} // namespace qrs
