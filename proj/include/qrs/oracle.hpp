#pragma once

// Deliberately naive reference implementations. They share no algorithmic
// code with the library proper and exist only to check it.

#include <cstdint>
#include <random>
#include <vector>

#include "qrs/linalg.hpp"
#include "qrs/root_system.hpp"

namespace qrs::oracle {

/// Positive roots from integer Cartan data by the root-string rule:
/// beta + theta_i is a root iff q - <beta, theta_i^vee> > 0, where q is the
/// length of the theta_i-string below beta.
std::vector<Coeffs> positive_roots_by_strings(const SystemSpec& spec);

/// Every subset of R+ tested against the definition with explicit coefficient
/// arithmetic. Limited to 20 roots.
std::vector<RootSet> inversion_sets_by_subsets(const RootSystem& r);

/// Roots on the positive side of a random integer functional that vanishes on
/// no root; always an inversion set.
RootSet random_halfspace_set(const RootSystem& r, std::mt19937_64& rng);

/// Restricted coefficient vectors of a quotient, straight from the definition.
std::vector<Coeffs> quotient_roots_by_restriction(const RootSystem& r, SimpleSubset killed);

/// Catalan numbers by the binomial formula.
std::uint64_t catalan(int n);

/// Number of set partitions of `target` into `k` inversion sets, given the
/// list of all inversion sets of the system. Plain recursion, no memo.
std::vector<std::vector<RootSet>> partitions_into_inversion_sets(const std::vector<RootSet>& all_sets, const RootSet& target, int k);

} // namespace qrs::oracle

namespace qrs::oracle {

/// Explicit rational Euclidean vectors for the base of A_n, B_n, C_n, D_n and
/// E6/E7/E8 (the latter inside the usual 8-dimensional model).
std::vector<std::vector<Rational>> explicit_base(const SystemSpec& spec);

/// Gram matrix of the projections of the kept base vectors onto the
/// orthogonal complement of the killed ones, by Gram-Schmidt.
RationalMatrix projected_gram(const std::vector<std::vector<Rational>>& base, SimpleSubset killed);

} // namespace qrs::oracle
