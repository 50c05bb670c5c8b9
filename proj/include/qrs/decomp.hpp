#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qrs/inflation.hpp"
#include "qrs/root_system.hpp"

namespace qrs {

/// Parts of a decomposition of an inversion set, ordered by minimum root.
struct Decomposition {
  std::vector<RootSet> parts;

  /// Sorts parts by minimum root index.
  void normalize();
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
  friend auto operator<=>(const Decomposition& a, const Decomposition& b) { return a.parts <=> b.parts; }
};

/// Nonempty, pairwise disjoint inversion sets whose union is target.
bool is_decomposition(const RootSystem& r, const Decomposition& d, const RootSet& target);

inline constexpr int kOracleRankLimit = 4;

/// Every unordered partition of phi into k nonempty inversion sets, by exact
/// cover over the list of all inversion sets. Rank is limited to
/// kOracleRankLimit.
std::vector<Decomposition> enumerate_decompositions_oracle(const RootSystem& r, const RootSet& phi, int k);

/// Where the canonical form of the part holding the highest root places the
/// other parts.
struct MainTheoremWitness {
  int first = -1;  // part holding the highest root
  int second = -1; // part deflating to the complement of psi, or -1
  InflationForm form;
};

/// Checks that, for a decomposition of R+ of a connected system, one other
/// part is inf_I(psi^c, X2) and the rest are inf_I(empty, Xi), where
/// inf_I(psi, X1) is the canonical form of the first part. Throws
/// InvariantViolation on any other shape.
MainTheoremWitness validate_main_theorem(const RootSystem& r, const Decomposition& d);

/// Half the number of primitive inversion sets. Throws InvariantViolation
/// when the number is odd.
std::uint64_t pi_count(const RootSystem& q);

/// Thread-safe memo of pi over rank-2 quotients R_J / (J - {a, b}), keyed by
/// the set of projected coefficient pairs.
class PiCache {
public:
  /// pi of the quotient of R_J by J minus {a, b}; a and b are base positions in J.
  std::uint64_t get(const RootSystem& r, SimpleSubset j, int a, int b);
  /// Messages about quotients holding non-primitive roots, sorted.
  std::vector<std::string> notes() const;

private:
  mutable std::mutex mu_;
  std::map<std::vector<std::uint64_t>, std::uint64_t> values_;
  std::vector<std::string> notes_;
};

/// F(R_J) for every subset J of the base, indexed by bitmask.
struct FineCountTable {
  std::vector<std::uint64_t> values;
  std::vector<std::string> notes;
  std::uint64_t total() const { return values.back(); }
};

/// Number of fine decompositions.
std::uint64_t fine_count(const RootSystem& r);

/// Number of fine decompositions counted directly: labelings of R+ in which
/// simple root i carries label i and every label class is an inversion set.
/// Shares nothing with the recursion behind fine_count.
std::uint64_t fine_count_by_labeling(const RootSystem& r);

/// Every fine decomposition, built from a corank-one quotient or a primitive
/// set of a corank-two quotient and a fine decomposition of the remaining
/// subsystem. Throws GuardExceeded past `cap` decompositions.
std::vector<Decomposition> fine_enumerate(const RootSystem& r, std::size_t cap = 100000);

/// One comparison of a closed recurrence against the general count.
struct SequenceCheck {
  std::string name; // e.g. "B5"
  std::uint64_t recurrence = 0;
  std::uint64_t computed = 0;
  bool ok() const { return recurrence == computed; }
};

/// a_n from its convolution recurrence against the binomial formula, and the
/// B and D recurrences against fine_count, plus F(C_n) = F(B_n).
std::vector<SequenceCheck> sequence_crosscheck(int max_a = 10, int max_b = 7, int max_d = 6, int max_c = 6);

/// Terms 0..n of the closed recurrences for A, B and D.
std::vector<std::uint64_t> catalan_by_recurrence(int n);
std::vector<std::uint64_t> b_sequence(int n);
std::vector<std::uint64_t> d_sequence(int n);

/// Multiplication and addition that throw GuardExceeded on overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

} // namespace qrs
