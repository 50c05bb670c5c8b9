#pragma once

#include <vector>

#include "qrs/root_system.hpp"

namespace qrs {

/// [start; steps...; end]: every partial sum start + k1 + ... + ki is a root.
struct Path {
  SignedRoot start;
  std::vector<SignedRoot> steps;
  SignedRoot end;
  friend bool operator==(const Path&, const Path&) = default;
};

/// Partial sums are roots and the last one is `end`.
bool is_valid_path(const RootSystem& r, const Path& p);

/// No two steps sum to a root.
bool is_reduced(const RootSystem& r, const Path& p);

/// True if some nonempty subcollection of the steps sums to `target`.
bool subsum_equals(const RootSystem& r, const std::vector<SignedRoot>& steps, const Coeffs& target);
bool has_zero_subsum(const RootSystem& r, const std::vector<SignedRoot>& steps);

/// Some nonempty subcollection of the steps sums to 0 or to -start. Without
/// this excluded, a path need not be re-orderable or reducible: in B4,
/// [-0112; 0012, 0112, -1122, 1222; 0112] only reduces to the steps
/// {0112, 0112}, which cannot leave -0112.
bool is_degenerate(const RootSystem& r, SignedRoot start, const std::vector<SignedRoot>& steps);

/// Orders `steps` into a path from `start`. Requires start + sum(steps) to be
/// a root and the steps not to be degenerate; under those hypotheses picking,
/// at each stage, the first step that keeps the partial sum a root never
/// gets stuck.
Path find_path(const RootSystem& r, SignedRoot start, const std::vector<SignedRoot>& steps);

/// Repeatedly merges the first pair of steps (by position) whose sum is a
/// root, then re-orders the merged steps into a path. Requires a
/// nondegenerate path.
Path reduce_path(const RootSystem& r, const Path& p);

/// Every ordering of the steps is a path from start to end.
bool all_permutations_valid(const RootSystem& r, const Path& p);

/// span_Z(phi) equals span_Z(supp phi), the lattice of the supporting simple roots.
bool spans_support_lattice(const RootSystem& r, const RootSet& phi);

} // namespace qrs
