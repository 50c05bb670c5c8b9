#include "qrs/compgraph.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qrs/errors.hpp"
#include "qrs/invsets.hpp"

namespace qrs {

namespace {

std::mutex g_anomaly_mutex;
std::vector<AnomalyRecord> g_anomalies;

void record_anomaly(const ComponentPartition& p, int a, int b, std::vector<int> met) {
  std::lock_guard lock(g_anomaly_mutex);
  g_anomalies.push_back({p.system().label(), p.system().format(p.phi()), a, b, std::move(met)});
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

} // namespace

std::vector<AnomalyRecord> recorded_anomalies() {
  std::lock_guard lock(g_anomaly_mutex);
  return g_anomalies;
}

void clear_recorded_anomalies() {
  std::lock_guard lock(g_anomaly_mutex);
  g_anomalies.clear();
}

ComponentPartition::ComponentPartition(const RootSystem& r, const RootSet& phi)
    : r_(&r), phi_(phi), component_of_(static_cast<std::size_t>(r.size()), -1) {
  if (phi.universe() != r.size()) throw InvalidArgument("set does not belong to " + r.label());
  inversion_set_ = is_inversion_set(r, phi);

  const std::vector<int> members = phi.indices();
  std::vector<int> parent(static_cast<std::size_t>(r.size()));
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      auto d = r.difference(members[i], members[j]);
      if (!d || phi.contains(d->index)) continue;
      int x = find_root(parent, members[i]);
      int y = find_root(parent, members[j]);
      if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    }
  // Members are ascending, so ids follow the minimum root of each component.
  std::vector<int> id_of_rep(static_cast<std::size_t>(r.size()), -1);
  for (int m : members) {
    int rep = find_root(parent, m);
    int& id = id_of_rep[static_cast<std::size_t>(rep)];
    if (id < 0) {
      id = count();
      components_.emplace_back(r.size());
    }
    component_of_[static_cast<std::size_t>(m)] = id;
    components_[static_cast<std::size_t>(id)].insert(m);
  }

  if (!inversion_set_) return;
  const int n = count();
  if (n <= kEagerTableLimit) {
    table_.resize(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        AdditionOutcome o = compute(a, b);
        if (o.kind == AdditionOutcome::Kind::Anomalous) record_anomaly(*this, a, b, sum_components(a, b));
        table_[static_cast<std::size_t>(a * n + b)] = o;
        table_[static_cast<std::size_t>(b * n + a)] = o;
      }
  }
  reach_.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int a = 0; a < n; ++a) {
    auto& seen = reach_[static_cast<std::size_t>(a)];
    std::deque<int> queue{a};
    seen[static_cast<std::size_t>(a)] = true;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int c = 0; c < n; ++c) {
        AdditionOutcome o = add(x, c);
        if (o.has_value() && !seen[static_cast<std::size_t>(o.result)]) {
          seen[static_cast<std::size_t>(o.result)] = true;
          queue.push_back(o.result);
        }
      }
    }
  }
}

std::vector<int> ComponentPartition::sum_components(int a, int b) const {
  std::vector<bool> met(components_.size(), false);
  const RootSet& ca = component(a);
  const RootSet& cb = component(b);
  ca.for_each([&](int x) {
    cb.for_each([&](int y) {
      auto s = r_->sum(x, y);
      if (!s) return;
      int c = component_of(*s);
      if (c < 0) throw InvalidArgument(r_->format(phi_) + " is not closed");
      met[static_cast<std::size_t>(c)] = true;
    });
  });
  std::vector<int> out;
  for (int c = 0; c < count(); ++c)
    if (met[static_cast<std::size_t>(c)]) out.push_back(c);
  return out;
}

AdditionOutcome ComponentPartition::compute(int a, int b) const {
  std::vector<int> met = sum_components(a, b);
  if (met.empty()) return AdditionOutcome::undefined();
  if (met.size() == 1) return AdditionOutcome::defined(met[0]);
  if (a == b && met.size() == 2 && (met[0] == a || met[1] == a))
    return AdditionOutcome::anomalous(met[0] == a ? met[1] : met[0], a);
  std::ostringstream msg;
  msg << "sums of components " << a + 1 << " and " << b + 1 << " of " << r_->format(phi_) << " meet " << met.size()
      << " components";
  throw InvariantViolation(msg.str());
}

AdditionOutcome ComponentPartition::add(int a, int b) const {
  if (!inversion_set_) throw InvalidArgument("component addition needs an inversion set");
  if (a < 0 || b < 0 || a >= count() || b >= count()) throw InvalidArgument("component id out of range");
  if (!table_.empty()) return table_[static_cast<std::size_t>(a * count() + b)];
  AdditionOutcome o = compute(a, b);
  if (o.kind == AdditionOutcome::Kind::Anomalous) record_anomaly(*this, a, b, sum_components(a, b));
  return o;
}

std::optional<int> ComponentPartition::standard_sum(const std::vector<int>& ids) const {
  if (ids.empty()) throw InvalidArgument("standard sum of no components");
  int acc = ids.front();
  if (acc < 0 || acc >= count()) throw InvalidArgument("component id out of range");
  for (std::size_t i = 1; i < ids.size(); ++i) {
    AdditionOutcome o = add(acc, ids[i]);
    if (!o.has_value()) return std::nullopt;
    acc = o.result;
  }
  return acc;
}

std::optional<int> ComponentPartition::multiple(int a, int k) const {
  if (k < 1) throw InvalidArgument("multiple needs k >= 1");
  return standard_sum(std::vector<int>(static_cast<std::size_t>(k), a));
}

bool ComponentPartition::leq_by_roots(int a, int b) const {
  bool found = false;
  component(a).for_each([&](int x) {
    if (found) return;
    component(b).for_each([&](int y) {
      if (!found && r_->leq(x, y)) found = true;
    });
  });
  return found;
}

bool ComponentPartition::leq(int a, int b) const {
  if (!inversion_set_) throw InvalidArgument("component order needs an inversion set");
  bool by_sums = reach_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  if (by_sums != leq_by_roots(a, b))
    throw InvariantViolation("order of components " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " in " +
                             r_->format(phi_) + " differs between sums and roots");
  return by_sums;
}

std::vector<std::pair<int, int>> ComponentPartition::hasse_edges() const {
  const int n = count();
  std::vector<std::vector<bool>> lt(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) lt[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a != b && leq(a, b);
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!lt[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
      bool covered = true;
      for (int c = 0; c < n && covered; ++c)
        if (lt[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] && lt[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)])
          covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

std::vector<int> ComponentPartition::simple_components() const {
  const int n = count();
  std::vector<bool> simple(static_cast<std::size_t>(n), true);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      AdditionOutcome o = add(a, b);
      if (o.has_value() && o.result != a && o.result != b) simple[static_cast<std::size_t>(o.result)] = false;
    }
  std::vector<int> out;
  for (int c = 0; c < n; ++c)
    if (simple[static_cast<std::size_t>(c)]) out.push_back(c);
  return out;
}

std::string render_table_plain(const ComponentPartition& p, const std::vector<int>& numbering) {
  const int n = p.count();
  std::vector<int> name(static_cast<std::size_t>(n));
  std::iota(name.begin(), name.end(), 0);
  if (!numbering.empty()) {
    if (static_cast<int>(numbering.size()) != n) throw InvalidArgument("numbering has the wrong length");
    name = numbering;
  }
  std::vector<int> at(static_cast<std::size_t>(n), -1);
  for (int id = 0; id < n; ++id) {
    int k = name[static_cast<std::size_t>(id)];
    if (k < 0 || k >= n || at[static_cast<std::size_t>(k)] >= 0) throw InvalidArgument("numbering is not a permutation");
    at[static_cast<std::size_t>(k)] = id;
  }
  std::ostringstream out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) out << ' ';
      AdditionOutcome o = p.add(at[static_cast<std::size_t>(i)], at[static_cast<std::size_t>(j)]);
      if (!o.has_value()) {
        out << '-';
        continue;
      }
      out << name[static_cast<std::size_t>(o.result)] + 1;
      if (o.kind == AdditionOutcome::Kind::Anomalous) out << '*';
    }
    out << '\n';
  }
  return out.str();
}

std::optional<std::vector<int>> match_numbering(const ComponentPartition& p, const std::vector<RootSet>& expected) {
  if (static_cast<int>(expected.size()) != p.count()) return std::nullopt;
  std::vector<int> numbering(static_cast<std::size_t>(p.count()), -1);
  std::vector<bool> used(expected.size(), false);
  for (int id = 0; id < p.count(); ++id) {
    for (std::size_t k = 0; k < expected.size(); ++k)
      if (!used[k] && expected[k] == p.component(id)) {
        numbering[static_cast<std::size_t>(id)] = static_cast<int>(k);
        used[k] = true;
        break;
      }
    if (numbering[static_cast<std::size_t>(id)] < 0) return std::nullopt;
  }
  return numbering;
}

std::vector<std::optional<std::vector<int>>> simple_sum_certificates(const ComponentPartition& p) {
  const int n = p.count();
  std::vector<int> simple = p.simple_components();
  // Breadth-first over partial standard sums; the state is the running total.
  std::vector<int> prev(static_cast<std::size_t>(n), -1), step(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue;
  for (int s : simple) {
    seen[static_cast<std::size_t>(s)] = true;
    step[static_cast<std::size_t>(s)] = s;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s : simple) {
      AdditionOutcome o = p.add(x, s);
      if (!o.has_value() || seen[static_cast<std::size_t>(o.result)]) continue;
      seen[static_cast<std::size_t>(o.result)] = true;
      prev[static_cast<std::size_t>(o.result)] = x;
      step[static_cast<std::size_t>(o.result)] = s;
      queue.push_back(o.result);
    }
  }
  std::vector<std::optional<std::vector<int>>> out(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) continue;
    std::vector<int> seq;
    for (int x = c; x >= 0; x = prev[static_cast<std::size_t>(x)]) seq.push_back(step[static_cast<std::size_t>(x)]);
    std::reverse(seq.begin(), seq.end());
    out[static_cast<std::size_t>(c)] = std::move(seq);
  }
  return out;
}

IrreducibilityReport irreducibility_report(const RootSystem& r, const RootSet& phi) {
  if (phi.empty()) throw InvalidArgument("irreducibility is defined for nonempty inversion sets");
  ComponentPartition p(r, phi);
  if (!p.phi_is_inversion_set()) throw InvalidArgument(r.format(phi) + " is not an inversion set");

  IrreducibilityReport rep;
  if (r.size() <= kSplitSearchRootLimit) {
    rep.split_checked = true;
    rep.no_split = !find_two_part_split(r, phi).has_value();
  }
  const SimpleSubset full = r.support(phi);
  rep.full_supports = true;
  for (int c = 0; c < p.count(); ++c)
    if (p.support(c) != full) rep.full_supports = false;
  rep.unique_simple = p.simple_components().size() == 1;
  for (int a = 0; a < p.count() && !rep.multiples; ++a) {
    std::vector<bool> hit(static_cast<std::size_t>(p.count()), false);
    int covered = 0;
    std::optional<int> cur = a;
    while (cur && !hit[static_cast<std::size_t>(*cur)]) {
      hit[static_cast<std::size_t>(*cur)] = true;
      ++covered;
      AdditionOutcome o = p.add(*cur, a);
      cur = o.has_value() ? std::optional<int>(o.result) : std::nullopt;
    }
    rep.multiples = covered == p.count();
  }

  bool agree = rep.full_supports == rep.unique_simple && rep.unique_simple == rep.multiples &&
               (!rep.split_checked || rep.no_split == rep.unique_simple);
  if (!agree) {
    std::ostringstream msg;
    msg << "irreducibility conditions disagree on " << r.format(phi) << " in " << r.label() << ": split="
        << (rep.split_checked ? (rep.no_split ? "none" : "found") : "unchecked") << " supports=" << rep.full_supports
        << " simple=" << rep.unique_simple << " multiples=" << rep.multiples;
    throw InvariantViolation(msg.str());
  }
  return rep;
}

bool is_irreducible(const RootSystem& r, const RootSet& phi) { return irreducibility_report(r, phi).irreducible(); }

} // namespace qrs
