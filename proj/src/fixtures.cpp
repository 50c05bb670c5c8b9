#include "qrs/fixtures.hpp"

#include <fstream>
#include <sstream>

#include "qrs/errors.hpp"

namespace qrs {

Fixture Fixture::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

Fixture Fixture::parse(std::string_view text, std::string name) {
  Fixture f;
  f.name_ = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key, tok;
    if (!(words >> key)) continue;
    std::vector<std::string> toks;
    while (words >> tok) toks.push_back(tok);
    f.lines_[key].push_back(std::move(toks));
  }
  return f;
}

const std::vector<std::vector<std::string>>& Fixture::lines(const std::string& key) const {
  auto it = lines_.find(key);
  if (it == lines_.end()) throw InvalidArgument(name_ + ": missing key '" + key + "'");
  return it->second;
}

std::vector<std::string> Fixture::tokens(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& l : lines(key)) out.insert(out.end(), l.begin(), l.end());
  return out;
}

const std::string& Fixture::value(const std::string& key) const {
  const auto& ls = lines(key);
  if (ls.size() != 1 || ls[0].size() != 1) throw InvalidArgument(name_ + ": key '" + key + "' needs exactly one value");
  return ls[0][0];
}

std::string fixture_path(const std::string& file) { return std::string(QRS_FIXTURE_DIR) + "/" + file; }

RootSet parse_root_set(const RootSystem& r, const std::vector<std::string>& tokens) {
  RootSet s = r.empty_set();
  for (const auto& t : tokens) {
    SignedRoot x = r.parse_root(t);
    if (x.sign < 0) throw InvalidArgument("negative root '" + t + "' in a set of positive roots");
    s.insert(x.index);
  }
  return s;
}

SimpleSubset parse_positions(const std::vector<std::string>& tokens, int rank) {
  SimpleSubset s;
  for (const auto& t : tokens) {
    int p = 0;
    try {
      p = std::stoi(t);
    } catch (const std::exception&) {
      throw InvalidArgument("bad simple root position '" + t + "'");
    }
    if (p < 1 || p > rank) throw InvalidArgument("simple root position " + t + " out of range");
    s = s.with(p - 1);
  }
  return s;
}

} // namespace qrs
