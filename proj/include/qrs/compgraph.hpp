#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrs/root_system.hpp"

namespace qrs {

/// Result of adding two components.
///
/// Anomalous is the case where the sums of A with itself meet both A and one
/// other component C; A + A is then taken to be C. No instance is known.
struct AdditionOutcome {
  enum class Kind { Undefined, Defined, Anomalous };
  Kind kind = Kind::Undefined;
  int result = -1; // Defined: the sum. Anomalous: the component other than A.
  int also = -1;   // Anomalous only: the summand A, which Z also meets.

  static AdditionOutcome undefined() { return {}; }
  static AdditionOutcome defined(int c) { return {Kind::Defined, c, -1}; }
  static AdditionOutcome anomalous(int c, int a) { return {Kind::Anomalous, c, a}; }

  bool has_value() const { return kind != Kind::Undefined; }
  friend bool operator==(const AdditionOutcome&, const AdditionOutcome&) = default;
};

/// A reproducer for an observed Anomalous addition.
struct AnomalyRecord {
  std::string system;
  std::string phi;
  int a = -1;
  int b = -1;
  std::vector<int> met;
};

/// Anomalies seen by any partition in this process, in order of discovery.
std::vector<AnomalyRecord> recorded_anomalies();
void clear_recorded_anomalies();

/// Components of the graph on phi joining roots whose difference lies in
/// plus or minus the complement of phi, with their partial addition.
///
/// Component ids follow the minimum root index of each component. The
/// referenced RootSystem must outlive the partition.
class ComponentPartition {
public:
  static constexpr int kEagerTableLimit = 64;

  ComponentPartition(const RootSystem& r, const RootSet& phi);

  const RootSystem& system() const { return *r_; }
  const RootSet& phi() const { return phi_; }
  bool phi_is_inversion_set() const { return inversion_set_; }

  int count() const { return static_cast<int>(components_.size()); }
  const RootSet& component(int id) const { return components_[static_cast<std::size_t>(id)]; }
  const std::vector<RootSet>& components() const { return components_; }
  /// Component holding root i, or -1 when i is not in phi.
  int component_of(int root) const { return component_of_[static_cast<std::size_t>(root)]; }
  SimpleSubset support(int id) const { return r_->support(component(id)); }

  /// Distinct components met by the positive sums a + b, a in A, b in B.
  std::vector<int> sum_components(int a, int b) const;

  /// A + B. Requires phi to be an inversion set.
  AdditionOutcome add(int a, int b) const;
  bool table_is_eager() const { return !table_.empty() || count() == 0; }

  /// Left fold of add; nullopt once a step is undefined. Empty input is invalid.
  std::optional<int> standard_sum(const std::vector<int>& ids) const;
  /// k copies of A summed from the left.
  std::optional<int> multiple(int a, int k) const;

  /// A <= B: B is reachable from A by repeatedly adding components.
  /// Checked against the root-order criterion; disagreement throws.
  bool leq(int a, int b) const;
  /// Some alpha in A and beta in B with alpha <= beta coefficientwise.
  bool leq_by_roots(int a, int b) const;
  /// Covering pairs (lower, upper) of the order.
  std::vector<std::pair<int, int>> hasse_edges() const;

  /// Components C such that A + B = C forces A = C or B = C.
  std::vector<int> simple_components() const;

private:
  AdditionOutcome compute(int a, int b) const;

  const RootSystem* r_;
  RootSet phi_;
  bool inversion_set_ = false;
  std::vector<int> component_of_;
  std::vector<RootSet> components_;
  std::vector<AdditionOutcome> table_;
  std::vector<std::vector<bool>> reach_;
};

/// Addition table in row/column layout with 1-based ids and "-" for
/// undefined entries. `numbering[id]` renames ids (0-based) when given; an
/// anomalous entry is marked with a trailing '*'.
std::string render_table_plain(const ComponentPartition& p, const std::vector<int>& numbering = {});

/// Renames ids so that component id maps to numbering[id] when every
/// component equals exactly one expected set; nullopt otherwise.
std::optional<std::vector<int>> match_numbering(const ComponentPartition& p, const std::vector<RootSet>& expected);

/// For each component, an ordered list of simple components whose standard
/// sum is that component, or nullopt for a component with no such list.
std::vector<std::optional<std::vector<int>>> simple_sum_certificates(const ComponentPartition& p);

/// The four equivalent irreducibility conditions, each evaluated separately.
struct IrreducibilityReport {
  bool split_checked = false; // condition (i) is only searched on small systems
  bool no_split = false;      // (i) no decomposition into two inversion sets
  bool full_supports = false; // (ii) every component has the support of phi
  bool unique_simple = false; // (iii) exactly one simple component
  bool multiples = false;     // (iv) every component is a multiple of one A
  bool irreducible() const { return unique_simple; }
};

inline constexpr int kSplitSearchRootLimit = 36;

/// Evaluates all four conditions on a nonempty inversion set and throws
/// InvariantViolation if they disagree.
IrreducibilityReport irreducibility_report(const RootSystem& r, const RootSet& phi);
bool is_irreducible(const RootSystem& r, const RootSet& phi);

} // namespace qrs
