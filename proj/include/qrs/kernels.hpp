#pragma once

// Hot loops in two versions: a plain serial reference and an OpenMP version.
// Both must return identical results.

#include <vector>

#include "qrs/decomp.hpp"
#include "qrs/root_system.hpp"

namespace qrs {

/// Subset scans are limited to this many positive roots.
inline constexpr int kBruteForceRootLimit = 24;

namespace serial {

/// Fine counts by top-down memoized recursion.
FineCountTable fine_count_table(const RootSystem& r);
/// Every subset of R+ tested for being an inversion set, sorted.
std::vector<RootSet> brute_force_inversion_sets(const RootSystem& r);
/// Gen(phi) by scanning all subsets of the base.
std::vector<SimpleSubset> gen_family(const RootSystem& r, const RootSet& phi);

} // namespace serial

namespace parallel {

/// Fine counts bottom-up, one subset size at a time.
FineCountTable fine_count_table(const RootSystem& r);
std::vector<RootSet> brute_force_inversion_sets(const RootSystem& r);
std::vector<SimpleSubset> gen_family(const RootSystem& r, const RootSet& phi);

} // namespace parallel

} // namespace qrs
