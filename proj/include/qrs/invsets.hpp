#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qrs/rational.hpp"
#include "qrs/root_system.hpp"

namespace qrs {

/// Whether the closure conditions also quantify over alpha = beta.
/// IncludeDiagonal forces 2a into a set containing a; it agrees with the
/// half-space description and is the default everywhere.
enum class ClosureConvention { IncludeDiagonal, DistinctPairs };

bool is_closed(const RootSystem& r, const RootSet& phi, ClosureConvention c = ClosureConvention::IncludeDiagonal);
bool is_coclosed(const RootSystem& r, const RootSet& phi, ClosureConvention c = ClosureConvention::IncludeDiagonal);
bool is_inversion_set(const RootSystem& r, const RootSet& phi, ClosureConvention c = ClosureConvention::IncludeDiagonal);

/// Size limit for enumerate_inversion_sets when no cap is given.
inline constexpr int kEnumerationRootLimit = 32;

/// All inversion sets, in RootSet order. Without a cap the system may have at
/// most kEnumerationRootLimit positive roots; with a cap, GuardExceeded is
/// raised once more than `cap` sets are found.
std::vector<RootSet> enumerate_inversion_sets(const RootSystem& r, std::optional<std::size_t> cap = std::nullopt,
                                              ClosureConvention c = ClosureConvention::IncludeDiagonal);

/// Labelings of R+ in which every label class is an inversion set.
/// `allowed[i]` is a bitmask of labels root i may take. Roots are decided in
/// height order; each class stays closed and co-closed because root k may only
/// take a label shared by both summands of every decomposition k = a + b.
/// The visitor returns false to stop early.
using LabelVisitor = std::function<bool(const std::vector<int>& labels)>;
void for_each_inversion_labeling(const RootSystem& r, const std::vector<std::uint32_t>& allowed, const LabelVisitor& visit,
                                 ClosureConvention c = ClosureConvention::IncludeDiagonal);

/// Some split of the inversion set phi into two nonempty inversion sets.
std::optional<std::pair<RootSet, RootSet>> find_two_part_split(const RootSystem& r, const RootSet& phi);

/// Every prefix union of the parts is an inversion set.
bool prefix_union_check(const RootSystem& r, const std::vector<RootSet>& parts);

/// An integer functional f on coefficient vectors, f(a) > 0 exactly on phi,
/// or nullopt if phi is not cut out by a hyperplane.
std::optional<std::vector<Rational>> find_separating_functional(const RootSystem& r, const RootSet& phi);

} // namespace qrs
