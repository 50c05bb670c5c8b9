#include "qrs/paths.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qrs/errors.hpp"
#include "qrs/linalg.hpp"

namespace qrs {

namespace {

Coeffs add(Coeffs a, const Coeffs& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

} // namespace

bool is_valid_path(const RootSystem& r, const Path& p) {
  Coeffs at = r.coeffs(p.start);
  for (SignedRoot s : p.steps) {
    at = add(at, r.coeffs(s));
    if (!r.find_signed(at)) return false;
  }
  return at == r.coeffs(p.end);
}

bool is_reduced(const RootSystem& r, const Path& p) {
  for (std::size_t i = 0; i < p.steps.size(); ++i)
    for (std::size_t j = i + 1; j < p.steps.size(); ++j)
      if (r.find_signed(add(r.coeffs(p.steps[i]), r.coeffs(p.steps[j])))) return false;
  return true;
}

bool subsum_equals(const RootSystem& r, const std::vector<SignedRoot>& steps, const Coeffs& target) {
  const std::size_t n = steps.size();
  if (n > 24) throw GuardExceeded("zero-subsum check limited to 24 steps");
  std::vector<Coeffs> c;
  for (SignedRoot s : steps) c.push_back(r.coeffs(s));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Coeffs sum(static_cast<std::size_t>(r.rank()), 0);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) sum = add(sum, c[i]);
    if (sum == target) return true;
  }
  return false;
}

bool has_zero_subsum(const RootSystem& r, const std::vector<SignedRoot>& steps) {
  return subsum_equals(r, steps, Coeffs(static_cast<std::size_t>(r.rank()), 0));
}

bool is_degenerate(const RootSystem& r, SignedRoot start, const std::vector<SignedRoot>& steps) {
  return has_zero_subsum(r, steps) || subsum_equals(r, steps, r.coeffs({start.index, -start.sign}));
}

Path find_path(const RootSystem& r, SignedRoot start, const std::vector<SignedRoot>& steps) {
  Coeffs total = r.coeffs(start);
  for (SignedRoot s : steps) total = add(total, r.coeffs(s));
  auto end = r.find_signed(total);
  if (!end) throw InvalidArgument("start plus the steps is not a root");
  if (is_degenerate(r, start, steps)) throw InvalidArgument("some subcollection of the steps sums to zero or to -start");
  Path p{start, {}, *end};
  std::vector<SignedRoot> left = steps;
  Coeffs at = r.coeffs(start);
  while (!left.empty()) {
    auto it = std::find_if(left.begin(), left.end(), [&](SignedRoot s) { return r.find_signed(add(at, r.coeffs(s))).has_value(); });
    if (it == left.end()) throw InvariantViolation("no step keeps the partial sum a root from " + r.format(*r.find_signed(at)));
    at = add(at, r.coeffs(*it));
    p.steps.push_back(*it);
    left.erase(it);
  }
  return p;
}

Path reduce_path(const RootSystem& r, const Path& p) {
  if (!is_valid_path(r, p)) throw InvalidArgument("not a path");
  if (is_degenerate(r, p.start, p.steps)) throw InvalidArgument("some subcollection of the steps sums to zero or to -start");
  std::vector<SignedRoot> steps = p.steps;
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < steps.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < steps.size() && !merged; ++j)
        if (auto s = r.find_signed(add(r.coeffs(steps[i]), r.coeffs(steps[j])))) {
          steps[i] = *s;
          steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }
  // Merged steps are sums of disjoint subcollections, so they inherit the
  // nondegeneracy checked above.
  return find_path(r, p.start, steps);
}

bool all_permutations_valid(const RootSystem& r, const Path& p) {
  std::vector<std::size_t> order(p.steps.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    Path q{p.start, {}, p.end};
    for (std::size_t i : order) q.steps.push_back(p.steps[i]);
    if (!is_valid_path(r, q)) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

bool spans_support_lattice(const RootSystem& r, const RootSet& phi) {
  std::vector<std::vector<int>> rows;
  phi.for_each([&](int i) { rows.push_back(r.root(i)); });
  std::vector<int> coords = r.support(phi).positions();
  return integer_span_is_coordinate_lattice(rows, coords, r.rank());
}

} // namespace qrs
