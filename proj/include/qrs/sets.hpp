#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "qrs/errors.hpp"

namespace qrs {

/// Subset of the simple roots of one system, as a bitmask over base positions.
class SimpleSubset {
public:
  static constexpr int kMaxRank = 16;

  constexpr SimpleSubset() = default;
  constexpr explicit SimpleSubset(std::uint32_t bits) : bits_(bits) {}

  static constexpr SimpleSubset all(int rank) {
    return SimpleSubset(rank >= 32 ? ~0u : ((1u << rank) - 1u));
  }
  static SimpleSubset of(std::initializer_list<int> positions) {
    SimpleSubset s;
    for (int p : positions) s = s.with(p);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return ((bits_ >> i) & 1u) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr SimpleSubset with(int i) const { return SimpleSubset(bits_ | (1u << i)); }
  constexpr SimpleSubset without(int i) const { return SimpleSubset(bits_ & ~(1u << i)); }
  constexpr SimpleSubset complement(int rank) const { return SimpleSubset(all(rank).bits_ & ~bits_); }
  constexpr bool is_subset_of(SimpleSubset other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr SimpleSubset operator|(SimpleSubset o) const { return SimpleSubset(bits_ | o.bits_); }
  constexpr SimpleSubset operator&(SimpleSubset o) const { return SimpleSubset(bits_ & o.bits_); }

  std::vector<int> positions() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr bool operator==(SimpleSubset, SimpleSubset) = default;
  friend constexpr auto operator<=>(SimpleSubset a, SimpleSubset b) { return a.bits_ <=> b.bits_; }

private:
  std::uint32_t bits_ = 0;
};

/// Set of positive roots of one system, indexed by the system's root order.
///
/// Carries the size of its universe so sets from different systems are not
/// mixed silently.
class RootSet {
public:
  static constexpr int kMaxRoots = 128;

  RootSet() = default;
  explicit RootSet(int universe) : universe_(static_cast<std::uint16_t>(universe)) {
    if (universe < 0 || universe > kMaxRoots) throw InvalidArgument("root set universe out of range");
  }
  static RootSet full(int universe) {
    RootSet s(universe);
    for (int i = 0; i < universe; ++i) s.insert(i);
    return s;
  }
  static RootSet of(int universe, std::initializer_list<int> indices) {
    RootSet s(universe);
    for (int i : indices) s.insert(i);
    return s;
  }

  int universe() const { return universe_; }

  bool contains(int i) const { return ((words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u) != 0; }
  void insert(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i >> 6)] |= (std::uint64_t{1} << (i & 63));
  }
  void erase(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));
  }

  int size() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }
  bool empty() const { return (words_[0] | words_[1]) == 0; }

  /// Smallest index in the set, or -1 when empty.
  int min_index() const {
    if (words_[0] != 0) return std::countr_zero(words_[0]);
    if (words_[1] != 0) return 64 + std::countr_zero(words_[1]);
    return -1;
  }

  RootSet complement() const {
    RootSet s = full(universe_);
    s.words_[0] &= ~words_[0];
    s.words_[1] &= ~words_[1];
    return s;
  }

  RootSet& operator|=(const RootSet& o) { return combine(o, [](auto a, auto b) { return a | b; }); }
  RootSet& operator&=(const RootSet& o) { return combine(o, [](auto a, auto b) { return a & b; }); }
  RootSet& operator-=(const RootSet& o) { return combine(o, [](auto a, auto b) { return a & ~b; }); }
  friend RootSet operator|(RootSet a, const RootSet& b) { return a |= b; }
  friend RootSet operator&(RootSet a, const RootSet& b) { return a &= b; }
  friend RootSet operator-(RootSet a, const RootSet& b) { return a -= b; }

  bool intersects(const RootSet& o) const {
    same_universe(o);
    return ((words_[0] & o.words_[0]) | (words_[1] & o.words_[1])) != 0;
  }
  bool is_subset_of(const RootSet& o) const {
    same_universe(o);
    return ((words_[0] & ~o.words_[0]) | (words_[1] & ~o.words_[1])) == 0;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < 2; ++w)
      for (std::uint64_t b = words_[w]; b != 0; b &= b - 1) f(static_cast<int>(w * 64) + std::countr_zero(b));
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  const std::array<std::uint64_t, 2>& words() const { return words_; }

  friend bool operator==(const RootSet&, const RootSet&) = default;
  /// Orders by universe, then by the sorted index lists (lexicographic).
  friend std::strong_ordering operator<=>(const RootSet& a, const RootSet& b);

private:
  void check_index(int i) const {
    if (i < 0 || i >= universe_) throw InvalidArgument("root index out of range");
  }
  void same_universe(const RootSet& o) const {
    if (o.universe_ != universe_) throw InvalidArgument("root sets over different systems");
  }
  template <class Op>
  RootSet& combine(const RootSet& o, Op op) {
    same_universe(o);
    words_[0] = op(words_[0], o.words_[0]);
    words_[1] = op(words_[1], o.words_[1]);
    return *this;
  }

  std::array<std::uint64_t, 2> words_{};
  std::uint16_t universe_ = 0;
};

inline std::strong_ordering operator<=>(const RootSet& a, const RootSet& b) {
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  // Lexicographic comparison of sorted index sequences: the set whose first
  // differing element is smaller comes first; a proper prefix comes first.
  for (std::size_t w = 0; w < 2; ++w) {
    std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff == 0) continue;
    std::uint64_t low = diff & (~diff + 1);
    bool a_has = (a.words_[w] & low) != 0;
    // Does the set lacking the element have anything after it?
    auto rest_after = [&](const RootSet& s) {
      std::uint64_t above = ~((low << 1) - 1);
      if ((s.words_[w] & above) != 0) return true;
      for (std::size_t v = w + 1; v < 2; ++v)
        if (s.words_[v] != 0) return true;
      return false;
    };
    if (a_has) return rest_after(b) ? std::strong_ordering::less : std::strong_ordering::greater;
    return rest_after(a) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

} // namespace qrs
