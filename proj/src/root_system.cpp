#include "qrs/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "qrs/errors.hpp"

namespace qrs {

// ---------------------------------------------------------------------------
// SystemSpec

namespace {

SystemSpec simple_spec(Family f, int rank) {
  SystemSpec s;
  s.family = f;
  s.rank = rank;
  return s;
}

SystemSpec product_spec(std::vector<SystemSpec> factors) {
  SystemSpec s;
  s.family = Family::Product;
  s.factors = std::move(factors);
  s.rank = s.total_rank();
  return s;
}

SystemSpec parse_factor(std::string_view text) {
  if (text.size() < 2) throw InvalidArgument("bad system type '" + std::string(text) + "'");
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  std::string digits(text.substr(1));
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InvalidArgument("bad system type '" + std::string(text) + "'");
  int n = std::stoi(digits);
  auto bad_rank = [&] { return InvalidArgument("invalid rank for type '" + std::string(text) + "'"); };
  switch (letter) {
  case 'A':
    return simple_spec(Family::A, n);
  case 'B':
  case 'C':
    if (n == 0) return simple_spec(Family::A, 0);
    if (n == 1) return simple_spec(Family::A, 1);
    return simple_spec(letter == 'B' ? Family::B : Family::C, n);
  case 'D':
    if (n == 0) return simple_spec(Family::A, 0);
    if (n == 1) return simple_spec(Family::A, 1);
    if (n == 2) return product_spec({simple_spec(Family::A, 1), simple_spec(Family::A, 1)});
    if (n == 3) return simple_spec(Family::A, 3);
    return simple_spec(Family::D, n);
  case 'E':
    if (n < 6 || n > 8) throw bad_rank();
    return simple_spec(Family::E, n);
  case 'F':
    if (n != 4) throw bad_rank();
    return simple_spec(Family::F, 4);
  case 'G':
    if (n != 2) throw bad_rank();
    return simple_spec(Family::G, 2);
  default:
    throw InvalidArgument("unknown family in '" + std::string(text) + "'");
  }
}

char family_letter(Family f) {
  switch (f) {
  case Family::A: return 'A';
  case Family::B: return 'B';
  case Family::C: return 'C';
  case Family::D: return 'D';
  case Family::E: return 'E';
  case Family::F: return 'F';
  case Family::G: return 'G';
  case Family::Product: break;
  }
  return '?';
}

} // namespace

SystemSpec SystemSpec::parse(std::string_view text) {
  std::vector<SystemSpec> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of("xX*", start);
    if (end == std::string_view::npos) end = text.size();
    SystemSpec f = parse_factor(text.substr(start, end - start));
    if (f.family == Family::Product)
      for (auto& g : f.factors) factors.push_back(g);
    else
      factors.push_back(f);
    start = end + 1;
  }
  SystemSpec out = factors.size() == 1 ? factors.front() : product_spec(std::move(factors));
  if (out.total_rank() > SimpleSubset::kMaxRank) throw InvalidArgument("rank exceeds " + std::to_string(SimpleSubset::kMaxRank));
  return out;
}

std::string SystemSpec::to_string() const {
  if (family != Family::Product) return std::string(1, family_letter(family)) + std::to_string(rank);
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += "x";
    out += f.to_string();
  }
  return out;
}

int SystemSpec::total_rank() const {
  if (family != Family::Product) return rank;
  int r = 0;
  for (const auto& f : factors) r += f.total_rank();
  return r;
}

// ---------------------------------------------------------------------------
// Cartan data

RationalMatrix cartan_gram(Family family, int n) {
  RationalMatrix g(n, n);
  auto link = [&](int i, int j, Rational v) {
    g(i, j) = v;
    g(j, i) = v;
  };
  switch (family) {
  case Family::A:
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
    break;
  case Family::B: // last simple root short, length^2 1
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    g(n - 1, n - 1) = 1;
    for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
    break;
  case Family::C: // last simple root long, length^2 4
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    g(n - 1, n - 1) = 4;
    for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
    link(n - 2, n - 1, -2);
    break;
  case Family::D: // fork at position n-3
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
    link(n - 3, n - 1, -1);
    break;
  case Family::E: // Bourbaki: 1-3-4-5-...-n chain, 2 attached to 4
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    link(0, 2, -1);
    link(1, 3, -1);
    for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
    break;
  case Family::F: // 1,2 long (2); 3,4 short (1)
    g(0, 0) = 2;
    g(1, 1) = 2;
    g(2, 2) = 1;
    g(3, 3) = 1;
    link(0, 1, -1);
    link(1, 2, -1);
    link(2, 3, Rational(-1, 2));
    break;
  case Family::G: // 1 short (2), 2 long (6)
    g(0, 0) = 2;
    g(1, 1) = 6;
    link(0, 1, -3);
    break;
  case Family::Product:
    throw InvalidArgument("cartan_gram needs a simple type");
  }
  return g;
}

std::uint64_t pack_coeffs(const Coeffs& c) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] > 15) throw InvalidArgument("coefficient out of packing range");
    code |= static_cast<std::uint64_t>(c[i]) << (4 * i);
  }
  return code;
}

namespace {

Rational bilinear(const RationalMatrix& g, const Coeffs& a, const Coeffs& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) s += g(static_cast<int>(i), static_cast<int>(j)) * (a[i] * b[j]);
  }
  return s;
}

std::vector<Coeffs> close_under_reflections(const RationalMatrix& g) {
  const int n = g.rows();
  std::set<Coeffs> seen;
  std::deque<Coeffs> queue;
  for (int i = 0; i < n; ++i) {
    Coeffs c(static_cast<std::size_t>(n), 0);
    c[static_cast<std::size_t>(i)] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    Coeffs beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      Coeffs e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      Rational pairing = bilinear(g, beta, e) * 2 / g(i, i);
      if (!pairing.is_integer()) throw InvariantViolation("non-integral Cartan pairing");
      if (pairing.is_zero()) continue;
      Coeffs image = beta;
      image[static_cast<std::size_t>(i)] -= static_cast<int>(pairing.num());
      if (seen.insert(image).second) queue.push_back(image);
    }
  }
  std::vector<Coeffs> positive;
  for (const Coeffs& c : seen)
    if (std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; })) positive.push_back(c);
  return positive;
}

RootSystem build_simple(Family family, int rank) {
  SystemSpec spec = simple_spec(family, rank);
  std::vector<int> ids(static_cast<std::size_t>(rank));
  std::iota(ids.begin(), ids.end(), 0);
  if (rank == 0) return RootSystem(spec.to_string(), {}, RationalMatrix(0, 0), {});
  RationalMatrix g = cartan_gram(family, rank);
  return RootSystem(spec.to_string(), std::move(ids), g, close_under_reflections(g));
}

} // namespace

RootSystem build_root_system(const SystemSpec& spec) {
  if (spec.family != Family::Product) return build_simple(spec.family, spec.rank);
  if (spec.factors.empty()) throw InvalidArgument("empty product");
  RootSystem acc = build_root_system(spec.factors.front());
  for (std::size_t i = 1; i < spec.factors.size(); ++i) acc = product(acc, build_root_system(spec.factors[i]));
  return acc;
}

RootSystem build_root_system(std::string_view spec) { return build_root_system(SystemSpec::parse(spec)); }

RootSystem product(const RootSystem& a, const RootSystem& b) {
  const int ra = a.rank(), rb = b.rank(), n = ra + rb;
  RationalMatrix g(n, n);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j) g(i, j) = a.gram()(i, j);
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j) g(ra + i, ra + j) = b.gram()(i, j);
  std::vector<Coeffs> roots;
  for (const Coeffs& c : a.roots()) {
    Coeffs p = c;
    p.resize(static_cast<std::size_t>(n), 0);
    roots.push_back(p);
  }
  for (const Coeffs& c : b.roots()) {
    Coeffs p(static_cast<std::size_t>(ra), 0);
    p.insert(p.end(), c.begin(), c.end());
    roots.push_back(p);
  }
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  std::string label;
  if (a.rank() == 0) label = b.label();
  else if (b.rank() == 0) label = a.label();
  else label = a.label() + "x" + b.label();
  return RootSystem(label, std::move(ids), std::move(g), std::move(roots));
}

// ---------------------------------------------------------------------------
// RootSystem

RootSystem::RootSystem(std::string label, std::vector<int> base_ids, RationalMatrix gram, std::vector<Coeffs> positive_roots)
    : label_(std::move(label)), base_ids_(std::move(base_ids)), gram_(std::move(gram)), roots_(std::move(positive_roots)) {
  const int n = rank();
  if (n > SimpleSubset::kMaxRank) throw InvalidArgument("rank exceeds " + std::to_string(SimpleSubset::kMaxRank));
  if (gram_.rows() != n || gram_.cols() != n) throw InvalidArgument("Gram matrix does not match rank");
  if (static_cast<int>(roots_.size()) > RootSet::kMaxRoots)
    throw InvalidArgument("more than " + std::to_string(RootSet::kMaxRoots) + " positive roots");
  for (const Coeffs& c : roots_) {
    if (static_cast<int>(c.size()) != n) throw InvalidArgument("coefficient vector of wrong length");
    if (std::any_of(c.begin(), c.end(), [](int x) { return x < 0 || x > 7; }))
      throw InvalidArgument("positive root coefficients must lie in [0, 7]");
    if (std::all_of(c.begin(), c.end(), [](int x) { return x == 0; })) throw InvalidArgument("zero vector is not a root");
  }

  auto height_of = [](const Coeffs& c) { return std::accumulate(c.begin(), c.end(), 0); };
  std::sort(roots_.begin(), roots_.end(), [&](const Coeffs& x, const Coeffs& y) {
    int hx = height_of(x), hy = height_of(y);
    if (hx != hy) return hx < hy;
    return x > y;
  });
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());

  const int m = size();
  heights_.resize(static_cast<std::size_t>(m));
  packed_.resize(static_cast<std::size_t>(m));
  support_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Coeffs& c = roots_[static_cast<std::size_t>(i)];
    heights_[static_cast<std::size_t>(i)] = height_of(c);
    packed_[static_cast<std::size_t>(i)] = pack_coeffs(c);
    SimpleSubset s;
    for (int p = 0; p < n; ++p)
      if (c[static_cast<std::size_t>(p)] != 0) s = s.with(p);
    support_[static_cast<std::size_t>(i)] = s;
    lookup_.emplace(packed_[static_cast<std::size_t>(i)], i);
  }

  simple_index_.assign(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    Coeffs e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(p)] = 1;
    auto it = lookup_.find(pack_coeffs(e));
    if (it == lookup_.end()) throw InvalidArgument("base element missing from the positive roots");
    simple_index_[static_cast<std::size_t>(p)] = it->second;
  }

  primitive_.assign(static_cast<std::size_t>(m), true);
  for (int i = 0; i < m; ++i) {
    const Coeffs& c = roots_[static_cast<std::size_t>(i)];
    int g = 0;
    for (int x : c) g = std::gcd(g, x);
    for (int r = 2; r <= g; ++r) {
      if (g % r != 0) continue;
      Coeffs q = c;
      for (int& x : q) x /= r;
      if (lookup_.count(pack_coeffs(q)) != 0) {
        primitive_[static_cast<std::size_t>(i)] = false;
        break;
      }
    }
  }

  sum_table_.assign(static_cast<std::size_t>(m * m), -1);
  diff_table_.assign(static_cast<std::size_t>(m * m), 0);
  decompositions_.assign(static_cast<std::size_t>(m), {});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      // Nibble-wise sums cannot carry: coefficients are at most 7.
      auto it = lookup_.find(packed_[static_cast<std::size_t>(a)] + packed_[static_cast<std::size_t>(b)]);
      if (it != lookup_.end()) {
        sum_table_[static_cast<std::size_t>(a * m + b)] = it->second;
        if (a <= b) decompositions_[static_cast<std::size_t>(it->second)].emplace_back(a, b);
      }
      if (a == b) continue;
      const Coeffs& x = roots_[static_cast<std::size_t>(a)];
      const Coeffs& y = roots_[static_cast<std::size_t>(b)];
      bool ge = true, le = true;
      for (int p = 0; p < n; ++p) {
        ge = ge && x[static_cast<std::size_t>(p)] >= y[static_cast<std::size_t>(p)];
        le = le && x[static_cast<std::size_t>(p)] <= y[static_cast<std::size_t>(p)];
      }
      if (ge) {
        auto jt = lookup_.find(packed_[static_cast<std::size_t>(a)] - packed_[static_cast<std::size_t>(b)]);
        if (jt != lookup_.end()) diff_table_[static_cast<std::size_t>(a * m + b)] = jt->second + 1;
      } else if (le) {
        auto jt = lookup_.find(packed_[static_cast<std::size_t>(b)] - packed_[static_cast<std::size_t>(a)]);
        if (jt != lookup_.end()) diff_table_[static_cast<std::size_t>(a * m + b)] = -(jt->second + 1);
      }
    }
}

bool RootSystem::all_primitive() const {
  return std::all_of(primitive_.begin(), primitive_.end(), [](bool b) { return b; });
}

std::optional<int> RootSystem::find(const Coeffs& c) const {
  if (static_cast<int>(c.size()) != rank()) return std::nullopt;
  if (std::any_of(c.begin(), c.end(), [](int x) { return x < 0 || x > 15; })) return std::nullopt;
  auto it = lookup_.find(pack_coeffs(c));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<SignedRoot> RootSystem::find_signed(const Coeffs& c) const {
  if (auto i = find(c)) return SignedRoot{*i, 1};
  Coeffs neg = c;
  for (int& x : neg) x = -x;
  if (auto i = find(neg)) return SignedRoot{*i, -1};
  return std::nullopt;
}

Coeffs RootSystem::coeffs(SignedRoot r) const {
  Coeffs c = root(r.index);
  if (r.sign < 0)
    for (int& x : c) x = -x;
  return c;
}

Rational RootSystem::inner_product(int a, int b) const { return bilinear(gram_, root(a), root(b)); }

Rational RootSystem::inner_product(const Coeffs& a, const Coeffs& b) const { return bilinear(gram_, a, b); }

bool RootSystem::leq(int a, int b) const {
  const Coeffs& x = root(a);
  const Coeffs& y = root(b);
  for (std::size_t p = 0; p < x.size(); ++p)
    if (x[p] > y[p]) return false;
  return true;
}

SimpleSubset RootSystem::support(const RootSet& s) const {
  SimpleSubset out;
  s.for_each([&](int i) { out = out | support(i); });
  return out;
}

RootSet RootSystem::simple_roots() const {
  RootSet s(size());
  for (int idx : simple_index_) s.insert(idx);
  return s;
}

bool RootSystem::adjacent(int p, int q) const { return p != q && gram_(p, q).sign() < 0; }

std::vector<SimpleSubset> RootSystem::diagram_components(SimpleSubset within) const {
  std::vector<SimpleSubset> out;
  SimpleSubset left = within;
  while (!left.empty()) {
    int start = left.positions().front();
    SimpleSubset comp = SimpleSubset().with(start);
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      for (int q : left.positions())
        if (!comp.contains(q) && adjacent(p, q)) {
          comp = comp.with(q);
          stack.push_back(q);
        }
    }
    out.push_back(comp);
    left = SimpleSubset(left.bits() & ~comp.bits());
  }
  return out;
}

bool RootSystem::is_connected() const { return diagram_components(SimpleSubset::all(rank())).size() == 1; }

int RootSystem::highest_root() const {
  if (!is_connected()) throw InvalidArgument("highest root requested on disconnected system " + label_);
  int top = size() - 1;
  for (int i = 0; i < size(); ++i)
    if (!leq(i, top)) throw InvariantViolation("last root is not maximal in " + label_);
  return top;
}

RootSet RootSystem::roots_supported_in(SimpleSubset within) const {
  RootSet s(size());
  for (int i = 0; i < size(); ++i)
    if (support(i).is_subset_of(within)) s.insert(i);
  return s;
}

std::string RootSystem::format(int i) const {
  const Coeffs& c = root(i);
  bool wide = std::any_of(c.begin(), c.end(), [](int x) { return x > 9; });
  std::string out;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (wide && p > 0) out += ',';
    out += std::to_string(c[p]);
  }
  return out;
}

std::string RootSystem::format(SignedRoot r) const { return (r.sign < 0 ? "-" : "") + format(r.index); }

std::string RootSystem::format(const RootSet& s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int i) {
    if (!first) out += ", ";
    first = false;
    out += format(i);
  });
  return out + "}";
}

SignedRoot RootSystem::parse_root(std::string_view text) const {
  int sign = 1;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  Coeffs c;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      c.push_back(std::stoi(std::string(text.substr(start, end - start))));
      start = end + 1;
    }
  } else {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw InvalidArgument("bad root '" + std::string(text) + "'");
      c.push_back(ch - '0');
    }
  }
  if (static_cast<int>(c.size()) != rank())
    throw InvalidArgument("root '" + std::string(text) + "' has wrong length for " + label_);
  auto idx = find(c);
  if (!idx) throw InvalidArgument("'" + std::string(text) + "' is not a positive root of " + label_);
  return SignedRoot{*idx, sign};
}

std::string RootSystem::format_subset(SimpleSubset s) const {
  std::string out = "{";
  bool first = true;
  for (int p : s.positions()) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(base_ids_[static_cast<std::size_t>(p)] + 1);
  }
  return out + "}";
}

} // namespace qrs
