#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qrs/linalg.hpp"
#include "qrs/rational.hpp"
#include "qrs/sets.hpp"

namespace qrs {

/// Integer coordinates of a root in the base of its system.
using Coeffs = std::vector<int>;

enum class Family { A, B, C, D, E, F, G, Product };

/// Cartan type of a system to build, e.g. "E8", "B5", "A1xA1".
struct SystemSpec {
  Family family = Family::A;
  int rank = 0;
  std::vector<SystemSpec> factors; // Product only

  /// Accepts "<letter><rank>" and products joined with 'x'. Low-rank aliases
  /// follow the usual conventions: B1 = C1 = D1 = A1, D2 = A1xA1, D3 = A3,
  /// and A0 = B0 = C0 = D0 is the rank-zero system.
  static SystemSpec parse(std::string_view text);
  std::string to_string() const;
  int total_rank() const;
};

/// A root with a sign; positive roots are stored, negatives are implied.
struct SignedRoot {
  int index = -1;
  int sign = 1;
  friend bool operator==(const SignedRoot&, const SignedRoot&) = default;
  friend auto operator<=>(const SignedRoot&, const SignedRoot&) = default;
};

/// Positive roots of a root system or of a quotient root system, stored as
/// coefficient vectors over an ordered base, together with the exact Gram
/// matrix of that base.
///
/// Roots are ordered by height, ties broken lexicographically on the
/// coefficient vector. The object is immutable after construction.
class RootSystem {
public:
  /// Assembles a system from its positive roots. `base_ids` names each base
  /// position by its index in the originating top-level system.
  RootSystem(std::string label, std::vector<int> base_ids, RationalMatrix gram, std::vector<Coeffs> positive_roots);

  const std::string& label() const { return label_; }
  int rank() const { return static_cast<int>(base_ids_.size()); }
  int size() const { return static_cast<int>(roots_.size()); }
  const std::vector<int>& base_ids() const { return base_ids_; }
  const RationalMatrix& gram() const { return gram_; }

  const Coeffs& root(int i) const { return roots_[static_cast<std::size_t>(i)]; }
  const std::vector<Coeffs>& roots() const { return roots_; }
  int height(int i) const { return heights_[static_cast<std::size_t>(i)]; }
  /// Coefficients packed four bits per base position.
  std::uint64_t packed(int i) const { return packed_[static_cast<std::size_t>(i)]; }
  bool is_primitive(int i) const { return primitive_[static_cast<std::size_t>(i)]; }
  bool all_primitive() const;

  RootSet empty_set() const { return RootSet(size()); }
  RootSet all_roots() const { return RootSet::full(size()); }

  std::optional<int> find(const Coeffs& c) const;
  std::optional<SignedRoot> find_signed(const Coeffs& c) const;
  Coeffs coeffs(SignedRoot r) const;

  /// Index of d(a) + d(b) when it is a positive root. a == b is allowed.
  std::optional<int> sum(int a, int b) const {
    int v = sum_table_[static_cast<std::size_t>(a * size() + b)];
    return v < 0 ? std::nullopt : std::optional<int>(v);
  }
  /// d(a) - d(b) as a signed root, when it is a root.
  std::optional<SignedRoot> difference(int a, int b) const {
    int v = diff_table_[static_cast<std::size_t>(a * size() + b)];
    if (v == 0) return std::nullopt;
    return v > 0 ? SignedRoot{v - 1, 1} : SignedRoot{-v - 1, -1};
  }
  /// All unordered pairs (a, b), a <= b, with a + b == target.
  const std::vector<std::pair<int, int>>& sum_decompositions(int target) const {
    return decompositions_[static_cast<std::size_t>(target)];
  }

  Rational inner_product(int a, int b) const;
  Rational inner_product(const Coeffs& a, const Coeffs& b) const;

  /// Componentwise order on coefficient vectors.
  bool leq(int a, int b) const;
  SimpleSubset support(int a) const { return support_[static_cast<std::size_t>(a)]; }
  SimpleSubset support(const RootSet& s) const;

  /// Index of the simple root at base position p.
  int simple_root(int p) const { return simple_index_[static_cast<std::size_t>(p)]; }
  RootSet simple_roots() const;

  bool adjacent(int p, int q) const;
  /// Connected components of the adjacency diagram restricted to `within`.
  std::vector<SimpleSubset> diagram_components(SimpleSubset within) const;
  bool is_connected() const;
  /// The unique maximal root; throws InvalidArgument on a disconnected system.
  int highest_root() const;

  /// Roots supported inside `within`.
  RootSet roots_supported_in(SimpleSubset within) const;

  std::string format(int i) const;
  std::string format(SignedRoot r) const;
  std::string format(const RootSet& s) const;
  /// Parses a coefficient string such as "011221" (optionally '-' prefixed).
  SignedRoot parse_root(std::string_view text) const;
  std::string format_subset(SimpleSubset s) const;

private:
  std::string label_;
  std::vector<int> base_ids_;
  RationalMatrix gram_;
  std::vector<Coeffs> roots_;
  std::vector<int> heights_;
  std::vector<std::uint64_t> packed_;
  std::vector<SimpleSubset> support_;
  std::vector<bool> primitive_;
  std::vector<int> simple_index_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<int> sum_table_;
  std::vector<int> diff_table_;
  std::vector<std::vector<std::pair<int, int>>> decompositions_;
};

/// Positive roots of the root system of the given type, generated by closing
/// the simple roots under simple reflections.
RootSystem build_root_system(const SystemSpec& spec);
RootSystem build_root_system(std::string_view spec);

/// Gram matrix of the base for a simple (non-product) type.
RationalMatrix cartan_gram(Family family, int rank);

/// Orthogonal product of two systems; base of `a` comes first.
RootSystem product(const RootSystem& a, const RootSystem& b);

/// Packs a coefficient vector four bits per entry.
std::uint64_t pack_coeffs(const Coeffs& c);

} // namespace qrs
