#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qrs/root_system.hpp"

namespace qrs {

/// A keyed text file: each non-comment line is a key followed by
/// whitespace-separated tokens. Keys may repeat.
class Fixture {
public:
  static Fixture load(const std::string& path);
  static Fixture parse(std::string_view text, std::string name = "<text>");

  const std::string& name() const { return name_; }
  bool has(const std::string& key) const { return lines_.count(key) != 0; }
  /// Every line with this key, in file order.
  const std::vector<std::vector<std::string>>& lines(const std::string& key) const;
  /// The tokens of all lines with this key, concatenated.
  std::vector<std::string> tokens(const std::string& key) const;
  /// The single token of a key that must occur once with one value.
  const std::string& value(const std::string& key) const;

private:
  std::string name_;
  std::map<std::string, std::vector<std::vector<std::string>>> lines_;
};

/// Path of a file in the bundled fixture directory.
std::string fixture_path(const std::string& file);

/// Roots written as coefficient strings, as a set over r.
RootSet parse_root_set(const RootSystem& r, const std::vector<std::string>& tokens);
/// 1-based simple root positions, as a subset.
SimpleSubset parse_positions(const std::vector<std::string>& tokens, int rank);

} // namespace qrs
