#include "qrs/invsets.hpp"

#include <algorithm>
#include <bit>

#include "qrs/errors.hpp"
#include "qrs/linalg.hpp"

namespace qrs {

namespace {

bool check_system(const RootSystem& r, const RootSet& phi) {
  if (phi.universe() != r.size()) throw InvalidArgument("set is not over " + r.label());
  return true;
}

// True if some decomposition k = a + b has both summands inside `side`.
bool has_sum_inside(const RootSystem& r, const RootSet& side, int k, ClosureConvention c) {
  for (auto [a, b] : r.sum_decompositions(k)) {
    if (a == b && c == ClosureConvention::DistinctPairs) continue;
    if (side.contains(a) && side.contains(b)) return true;
  }
  return false;
}

} // namespace

bool is_closed(const RootSystem& r, const RootSet& phi, ClosureConvention c) {
  check_system(r, phi);
  for (int k = 0; k < r.size(); ++k)
    if (!phi.contains(k) && has_sum_inside(r, phi, k, c)) return false;
  return true;
}

bool is_coclosed(const RootSystem& r, const RootSet& phi, ClosureConvention c) { return is_closed(r, phi.complement(), c); }

bool is_inversion_set(const RootSystem& r, const RootSet& phi, ClosureConvention c) {
  return is_closed(r, phi, c) && is_coclosed(r, phi, c);
}

void for_each_inversion_labeling(const RootSystem& r, const std::vector<std::uint32_t>& allowed, const LabelVisitor& visit,
                                 ClosureConvention c) {
  const int m = r.size();
  if (static_cast<int>(allowed.size()) != m) throw InvalidArgument("one label mask per root is required");
  std::vector<int> labels(static_cast<std::size_t>(m), -1);
  bool stop = false;
  // Iterative DFS; pending[k] holds the labels still to try at depth k.
  std::vector<std::uint32_t> pending(static_cast<std::size_t>(m) + 1, 0);
  auto options = [&](int k) {
    std::uint32_t mask = allowed[static_cast<std::size_t>(k)];
    for (auto [a, b] : r.sum_decompositions(k)) {
      if (a == b && c == ClosureConvention::DistinctPairs) continue;
      mask &= (1u << labels[static_cast<std::size_t>(a)]) | (1u << labels[static_cast<std::size_t>(b)]);
      if (mask == 0) break;
    }
    return mask;
  };
  if (m == 0) {
    visit(labels);
    return;
  }
  int k = 0;
  pending[0] = options(0);
  while (k >= 0 && !stop) {
    std::uint32_t& p = pending[static_cast<std::size_t>(k)];
    if (p == 0) {
      labels[static_cast<std::size_t>(k)] = -1;
      --k;
      continue;
    }
    int label = std::countr_zero(p);
    p &= p - 1;
    labels[static_cast<std::size_t>(k)] = label;
    if (k + 1 == m) {
      if (!visit(labels)) stop = true;
      continue;
    }
    ++k;
    pending[static_cast<std::size_t>(k)] = options(k);
  }
}

std::vector<RootSet> enumerate_inversion_sets(const RootSystem& r, std::optional<std::size_t> cap, ClosureConvention c) {
  if (!cap && r.size() > kEnumerationRootLimit)
    throw GuardExceeded(r.label() + " has " + std::to_string(r.size()) + " positive roots; enumeration needs a cap");
  std::vector<RootSet> out;
  std::vector<std::uint32_t> allowed(static_cast<std::size_t>(r.size()), 0b11u);
  for_each_inversion_labeling(
      r, allowed,
      [&](const std::vector<int>& labels) {
        RootSet s(r.size());
        for (int i = 0; i < r.size(); ++i)
          if (labels[static_cast<std::size_t>(i)] == 1) s.insert(i);
        out.push_back(s);
        if (cap && out.size() > *cap) throw GuardExceeded("more than " + std::to_string(*cap) + " inversion sets");
        return true;
      },
      c);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<RootSet, RootSet>> find_two_part_split(const RootSystem& r, const RootSet& phi) {
  check_system(r, phi);
  if (phi.size() < 2) return std::nullopt;
  // Label 0: complement, 1: part holding the lowest root of phi, 2: the rest.
  std::vector<std::uint32_t> allowed(static_cast<std::size_t>(r.size()), 0b001u);
  phi.for_each([&](int i) { allowed[static_cast<std::size_t>(i)] = 0b110u; });
  allowed[static_cast<std::size_t>(phi.min_index())] = 0b010u;
  std::optional<std::pair<RootSet, RootSet>> found;
  for_each_inversion_labeling(r, allowed, [&](const std::vector<int>& labels) {
    RootSet a(r.size()), b(r.size());
    for (int i = 0; i < r.size(); ++i) {
      if (labels[static_cast<std::size_t>(i)] == 1) a.insert(i);
      if (labels[static_cast<std::size_t>(i)] == 2) b.insert(i);
    }
    if (b.empty()) return true;
    found.emplace(a, b);
    return false;
  });
  return found;
}

bool prefix_union_check(const RootSystem& r, const std::vector<RootSet>& parts) {
  RootSet acc = r.empty_set();
  for (const RootSet& p : parts) {
    check_system(r, p);
    acc |= p;
    if (!is_inversion_set(r, acc)) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> find_separating_functional(const RootSystem& r, const RootSet& phi) {
  check_system(r, phi);
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < r.size(); ++i) {
    std::vector<Rational> row;
    int s = phi.contains(i) ? 1 : -1;
    for (int x : r.root(i)) row.emplace_back(s * x);
    rows.push_back(std::move(row));
  }
  return solve_strict_homogeneous(rows, r.rank());
}

} // namespace qrs
