#include "qrs/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qrs/errors.hpp"

namespace qrs {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix shape mismatch in product");
  RationalMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix shape mismatch in difference");
  RationalMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::submatrix(std::span<const int> rows, std::span<const int> cols) const {
  RationalMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
  return out;
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("determinant of non-square matrix");
  RationalMatrix m = *this;
  Rational det = 1;
  for (int c = 0; c < cols_; ++c) {
    int pivot = -1;
    for (int r = c; r < rows_; ++r)
      if (!m(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < rows_; ++r) {
      if (m(r, c).is_zero()) continue;
      Rational f = m(r, c) / m(c, c);
      for (int j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidArgument("inverse of non-square matrix");
  const int n = rows_;
  RationalMatrix m = *this;
  RationalMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw InvalidArgument("singular matrix");
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(c, j));
        std::swap(inv(pivot, j), inv(c, j));
      }
    Rational p = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      Rational f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RationalMatrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  std::vector<int> lead;
  for (int k = 0; k < rows_; ++k) {
    lead.push_back(k);
    if (submatrix(lead, lead).determinant().sign() <= 0) return false;
  }
  return true;
}

RationalMatrix schur_complement(const RationalMatrix& gram, std::span<const int> keep, std::span<const int> drop) {
  RationalMatrix kk = gram.submatrix(keep, keep);
  if (drop.empty()) return kk;
  RationalMatrix kd = gram.submatrix(keep, drop);
  RationalMatrix dd = gram.submatrix(drop, drop);
  RationalMatrix dk = gram.submatrix(drop, keep);
  return kk - kd * dd.inverse() * dk;
}

namespace {

using Row = std::vector<Rational>;

// Scale so the first nonzero entry has absolute value one; strict homogeneous
// constraints are invariant under positive scaling.
Row normalized(Row row) {
  for (const Rational& v : row)
    if (!v.is_zero()) {
      Rational s = v.sign() > 0 ? v : -v;
      for (Rational& x : row) x /= s;
      break;
    }
  return row;
}

std::optional<std::vector<Rational>> eliminate(std::vector<Row> rows, int dims) {
  if (dims == 0) {
    // Every remaining row reads 0 > 0.
    if (rows.empty()) return std::vector<Rational>{};
    return std::nullopt;
  }
  const int k = dims - 1;
  std::vector<Row> pos, neg, rest;
  for (Row& r : rows) {
    int s = r[static_cast<std::size_t>(k)].sign();
    if (s > 0) pos.push_back(r);
    else if (s < 0) neg.push_back(r);
    else rest.push_back(r);
  }
  std::set<Row> next;
  for (const Row& r : rest) next.insert(normalized(Row(r.begin(), r.begin() + k)));
  for (const Row& p : pos)
    for (const Row& n : neg) {
      Rational a = p[static_cast<std::size_t>(k)];
      Rational b = -n[static_cast<std::size_t>(k)];
      Row combo(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) combo[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j)] / a + n[static_cast<std::size_t>(j)] / b;
      next.insert(normalized(std::move(combo)));
    }
  auto sub = eliminate(std::vector<Row>(next.begin(), next.end()), k);
  if (!sub) return std::nullopt;

  std::optional<Rational> lower, upper;
  for (const Row& p : pos) {
    Rational partial = 0;
    for (int j = 0; j < k; ++j) partial += p[static_cast<std::size_t>(j)] * (*sub)[static_cast<std::size_t>(j)];
    Rational bound = -partial / p[static_cast<std::size_t>(k)];
    if (!lower || bound > *lower) lower = bound;
  }
  for (const Row& n : neg) {
    Rational partial = 0;
    for (int j = 0; j < k; ++j) partial += n[static_cast<std::size_t>(j)] * (*sub)[static_cast<std::size_t>(j)];
    Rational bound = partial / -n[static_cast<std::size_t>(k)];
    if (!upper || bound < *upper) upper = bound;
  }
  Rational value = 0;
  if (lower && upper) value = (*lower + *upper) / 2;
  else if (lower) value = *lower + 1;
  else if (upper) value = *upper - 1;
  sub->push_back(value);
  return sub;
}

} // namespace

std::optional<std::vector<Rational>> solve_strict_homogeneous(const std::vector<std::vector<Rational>>& rows, int dims) {
  std::set<Row> unique;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != dims) throw InvalidArgument("constraint row has wrong dimension");
    unique.insert(normalized(r));
  }
  auto x = eliminate(std::vector<Row>(unique.begin(), unique.end()), dims);
  if (!x) return std::nullopt;
  for (const auto& r : rows) {
    Rational dot = 0;
    for (int j = 0; j < dims; ++j) dot += r[static_cast<std::size_t>(j)] * (*x)[static_cast<std::size_t>(j)];
    if (dot.sign() <= 0) throw InvariantViolation("Fourier-Motzkin back-substitution produced a non-solution");
  }
  return x;
}

bool integer_span_is_coordinate_lattice(const std::vector<std::vector<int>>& rows, std::span<const int> coords, int dims) {
  std::vector<bool> allowed(static_cast<std::size_t>(dims), false);
  for (int c : coords) allowed[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<std::int64_t>> m;
  for (const auto& r : rows) {
    for (int j = 0; j < dims; ++j)
      if (r[static_cast<std::size_t>(j)] != 0 && !allowed[static_cast<std::size_t>(j)]) return false;
    m.emplace_back(r.begin(), r.end());
  }
  // Integer row echelon form by repeated Euclidean reduction per column.
  std::size_t top = 0;
  std::int64_t index = 1;
  int rank = 0;
  for (int c = 0; c < dims && top < m.size(); ++c) {
    for (;;) {
      std::size_t best = m.size();
      for (std::size_t r = top; r < m.size(); ++r)
        if (m[r][static_cast<std::size_t>(c)] != 0 &&
            (best == m.size() || std::llabs(m[r][static_cast<std::size_t>(c)]) < std::llabs(m[best][static_cast<std::size_t>(c)])))
          best = r;
      if (best == m.size()) break;
      std::swap(m[top], m[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < m.size(); ++r) {
        std::int64_t q = m[r][static_cast<std::size_t>(c)] / m[top][static_cast<std::size_t>(c)];
        if (q != 0)
          for (int j = 0; j < dims; ++j) m[r][static_cast<std::size_t>(j)] -= q * m[top][static_cast<std::size_t>(j)];
        if (m[r][static_cast<std::size_t>(c)] != 0) done = false;
      }
      if (done) {
        index *= std::llabs(m[top][static_cast<std::size_t>(c)]);
        ++rank;
        ++top;
        break;
      }
    }
  }
  return rank == static_cast<int>(coords.size()) && index == 1;
}

} // namespace qrs
