#include "qrs/kernels.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include <omp.h>

#include "qrs/errors.hpp"
#include "qrs/inflation.hpp"

namespace qrs {

namespace {

void check_rank(const RootSystem& r) {
  if (r.rank() > SimpleSubset::kMaxRank) throw InvalidArgument("rank too large for a subset table");
}

// F(R_J) from the values of strictly smaller subsets.
std::uint64_t fine_value(const RootSystem& r, SimpleSubset j, PiCache& pi, const std::function<std::uint64_t(SimpleSubset)>& f) {
  if (j.empty()) return 1;
  auto comps = r.diagram_components(j);
  if (comps.size() > 1) {
    std::uint64_t prod = 1;
    for (SimpleSubset c : comps) prod = checked_mul(prod, f(c));
    return prod;
  }
  std::uint64_t sum = 0;
  const std::vector<int> pos = j.positions();
  for (int p : pos) sum = checked_add(sum, f(j.without(p)));
  for (std::size_t u = 0; u < pos.size(); ++u)
    for (std::size_t v = u + 1; v < pos.size(); ++v) {
      std::uint64_t k = pi.get(r, j, pos[u], pos[v]);
      if (k != 0) sum = checked_add(sum, checked_mul(k, f(j.without(pos[u]).without(pos[v]))));
    }
  return sum;
}

// Closure and co-closure as (a, b, a + b) triples over root indices.
std::vector<std::array<int, 3>> sum_triples(const RootSystem& r) {
  std::vector<std::array<int, 3>> t;
  for (int k = 0; k < r.size(); ++k)
    for (auto [a, b] : r.sum_decompositions(k)) t.push_back({a, b, k});
  return t;
}

bool mask_is_inversion_set(std::uint64_t m, const std::vector<std::array<int, 3>>& triples) {
  for (const auto& [a, b, k] : triples) {
    bool ia = (m >> a) & 1u, ib = (m >> b) & 1u, ik = (m >> k) & 1u;
    if (ia && ib && !ik) return false;
    if (ik && !ia && !ib) return false;
  }
  return true;
}

RootSet from_mask(int universe, std::uint64_t m) {
  RootSet s(universe);
  for (; m != 0; m &= m - 1) s.insert(std::countr_zero(m));
  return s;
}

void check_brute_force_size(const RootSystem& r) {
  if (r.size() > kBruteForceRootLimit)
    throw GuardExceeded(r.label() + " has " + std::to_string(r.size()) + " positive roots; subset scans stop at " +
                        std::to_string(kBruteForceRootLimit));
}

} // namespace

namespace serial {

FineCountTable fine_count_table(const RootSystem& r) {
  check_rank(r);
  const std::size_t n = std::size_t{1} << r.rank();
  std::vector<std::uint64_t> values(n, 0);
  std::vector<bool> known(n, false);
  PiCache pi;
  std::function<std::uint64_t(SimpleSubset)> f = [&](SimpleSubset j) -> std::uint64_t {
    if (known[j.bits()]) return values[j.bits()];
    std::uint64_t v = fine_value(r, j, pi, f);
    values[j.bits()] = v;
    known[j.bits()] = true;
    return v;
  };
  for (std::size_t m = 0; m < n; ++m) f(SimpleSubset(static_cast<std::uint32_t>(m)));
  return {std::move(values), pi.notes()};
}

std::vector<RootSet> brute_force_inversion_sets(const RootSystem& r) {
  check_brute_force_size(r);
  auto triples = sum_triples(r);
  std::vector<RootSet> out;
  const std::uint64_t total = std::uint64_t{1} << r.size();
  for (std::uint64_t m = 0; m < total; ++m)
    if (mask_is_inversion_set(m, triples)) out.push_back(from_mask(r.size(), m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SimpleSubset> gen_family(const RootSystem& r, const RootSet& phi) {
  check_rank(r);
  std::vector<SimpleSubset> out;
  const std::uint32_t n = std::uint32_t{1} << r.rank();
  for (std::uint32_t m = 0; m < n; ++m)
    if (is_inflated_from(r, phi, SimpleSubset(m))) out.push_back(SimpleSubset(m));
  return out;
}

} // namespace serial

namespace parallel {

FineCountTable fine_count_table(const RootSystem& r) {
  check_rank(r);
  const int rank = r.rank();
  const std::size_t n = std::size_t{1} << rank;
  std::vector<std::uint64_t> values(n, 0);
  PiCache pi;
  std::function<std::uint64_t(SimpleSubset)> lookup = [&](SimpleSubset j) { return values[j.bits()]; };
  std::vector<std::vector<std::uint32_t>> levels(static_cast<std::size_t>(rank) + 1);
  for (std::uint32_t m = 0; m < n; ++m) levels[static_cast<std::size_t>(std::popcount(m))].push_back(m);
  // Subsets of one size only read values of smaller subsets.
  for (const auto& level : levels) {
    const long count = static_cast<long>(level.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        std::uint32_t m = level[static_cast<std::size_t>(i)];
        values[m] = fine_value(r, SimpleSubset(m), pi, lookup);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  return {std::move(values), pi.notes()};
}

std::vector<RootSet> brute_force_inversion_sets(const RootSystem& r) {
  check_brute_force_size(r);
  auto triples = sum_triples(r);
  const long long total = 1LL << r.size();
  std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& mine = found[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long long m = 0; m < total; ++m)
      if (mask_is_inversion_set(static_cast<std::uint64_t>(m), triples)) mine.push_back(static_cast<std::uint64_t>(m));
  }
  std::vector<RootSet> out;
  for (const auto& part : found)
    for (std::uint64_t m : part) out.push_back(from_mask(r.size(), m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SimpleSubset> gen_family(const RootSystem& r, const RootSet& phi) {
  check_rank(r);
  const long n = 1L << r.rank();
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (long m = 0; m < n; ++m) hit[static_cast<std::size_t>(m)] = is_inflated_from(r, phi, SimpleSubset(static_cast<std::uint32_t>(m))) ? 1 : 0;
  std::vector<SimpleSubset> out;
  for (long m = 0; m < n; ++m)
    if (hit[static_cast<std::size_t>(m)]) out.push_back(SimpleSubset(static_cast<std::uint32_t>(m)));
  return out;
}

} // namespace parallel

} // namespace qrs
