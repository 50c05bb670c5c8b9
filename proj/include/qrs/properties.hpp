#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qrs/decomp.hpp"
#include "qrs/quotient.hpp"

// Structural facts about root systems, inversion sets and their component
// graphs, checked instance by instance. Every check records one pass or one
// failure with a readable reproducer under a fixed property name.
namespace qrs::props {

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::vector<std::string> samples; // first few failure reports
};

class Report {
public:
  static constexpr std::size_t kSampleLimit = 5;

  void check(const std::string& property, bool ok, const std::function<std::string()>& detail);
  void merge(const Report& other);
  const std::map<std::string, Tally>& tallies() const { return tallies_; }
  std::uint64_t failures() const;
  bool ok() const { return failures() == 0; }

private:
  std::map<std::string, Tally> tallies_;
};

/// Property names, shared by the checks and their callers.
namespace name {
inline constexpr const char* kSignRule = "inner product sign predicts sum or difference";
inline constexpr const char* kTwoOfThree = "two-of-three rule for sums of three roots";
inline constexpr const char* kReducedSteps = "no sum of reduced steps is a root";
inline constexpr const char* kReduction = "reduction yields a shorter reduced path";
inline constexpr const char* kPermutations = "reduced steps permute freely";
inline constexpr const char* kSpan = "co-closed sets span their support lattice";
inline constexpr const char* kInflationConditions = "descriptions of inflation agree";
inline constexpr const char* kComposition = "inflation of an inflation";
inline constexpr const char* kGenLattice = "Gen is a lattice containing empty and full base";
inline constexpr const char* kCanonicalExists = "canonical form exists";
inline constexpr const char* kCanonicalUnique = "canonical form is unique";
inline constexpr const char* kCanonicalFacts = "canonical form supports and complements";
inline constexpr const char* kNonSplitting = "decompositions do not split components";
inline constexpr const char* kSplitInflation = "parts of a split are inflated from the canonical I";
inline constexpr const char* kWellDefined = "component addition is well defined";
inline constexpr const char* kNoAnomaly = "no anomalous component sum";
inline constexpr const char* kPartialOrder = "component order is a partial order";
inline constexpr const char* kSupports = "supports of sums and of larger components";
inline constexpr const char* kBracketed = "bracketed sums are standard sums of a permutation";
inline constexpr const char* kCancellation = "cancellation rules";
inline constexpr const char* kSimpleRoot = "simple components hold a simple root";
inline constexpr const char* kFullSupportSimple = "at most one simple component of full support";
inline constexpr const char* kSimpleSums = "components are standard sums of simple components";
inline constexpr const char* kSupportInGen = "component supports lie in Gen";
inline constexpr const char* kPrimitiveSimple = "primitive canonical form: one full simple component, others in X";
inline constexpr const char* kComponentsInflated = "components are inflated from the canonical I";
inline constexpr const char* kIrreducibility = "irreducibility conditions agree";
inline constexpr const char* kStructure = "decompositions have the predicted shape";
inline constexpr const char* kPrefixUnion = "prefix unions of a decomposition are inversion sets";
inline constexpr const char* kFineSimple = "each fine part holds one simple root";
inline constexpr const char* kFineInflation = "fine parts share an I of corank one or two";
} // namespace name

/// Signed root pairs: <a, b> < 0 gives a + b in R, > 0 gives a - b in R.
void check_sign_rule(const RootSystem& r, Report& out);

/// Every signed triple when `samples` is 0, otherwise that many random ones.
void check_two_of_three(const RootSystem& r, Report& out, std::mt19937_64* rng = nullptr, int samples = 0);

/// Builds `count` random nondegenerate paths of up to `max_len` steps and
/// checks their reductions.
void check_random_paths(const RootSystem& r, std::mt19937_64& rng, int count, int max_len, Report& out);

/// Span equality on every co-closed subset; needs at most 20 roots.
void check_span_exhaustive(const RootSystem& r, Report& out);

/// Random psi, t, x over every chain I in J of the base, `per_chain` times.
void check_composition(QuotientCache& cache, std::mt19937_64& rng, int per_chain, Report& out);

/// Options for check_inversion_set.
struct SetCheckOptions {
  /// All inversion sets of the system, when known: splits of phi are then
  /// taken from this list. Otherwise only a split found by search is used.
  const std::vector<RootSet>* all_sets = nullptr;
  /// Largest multiset size for the bracketed-sum scan.
  int bracket_depth = 4;
  /// Skip the bracketed-sum scan beyond this many components.
  int bracket_component_limit = 40;
};

/// Every per-set property: inflation, Gen, canonical form, and the
/// component graph with its addition, order and simple components.
void check_inversion_set(QuotientCache& cache, const RootSet& phi, const SetCheckOptions& opt, Report& out);

/// Shape of a decomposition of R+ of a connected system, plus prefix unions.
void check_decomposition(const RootSystem& r, const Decomposition& d, Report& out);

/// One simple root per part and a shared I of corank one or two.
void check_fine_decomposition(QuotientCache& cache, const Decomposition& d, Report& out);

} // namespace qrs::props
