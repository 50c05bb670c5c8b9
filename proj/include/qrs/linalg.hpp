#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qrs/rational.hpp"

namespace qrs {

/// Dense row-major matrix over the rationals. Sizes here never exceed 16x16.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator-(const RationalMatrix& rhs) const;
  RationalMatrix transposed() const;

  /// Rows and columns picked by index, in the given order.
  RationalMatrix submatrix(std::span<const int> rows, std::span<const int> cols) const;

  Rational determinant() const;
  /// Throws InvalidArgument when singular.
  RationalMatrix inverse() const;

  bool is_symmetric() const;
  /// Sylvester's criterion on leading principal minors.
  bool is_positive_definite() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Schur complement G[keep,keep] - G[keep,drop] G[drop,drop]^-1 G[drop,keep].
/// This is the Gram matrix of the projections of the `keep` basis vectors onto
/// the orthogonal complement of span(`drop`).
RationalMatrix schur_complement(const RationalMatrix& gram, std::span<const int> keep, std::span<const int> drop);

/// Finds x with <row, x> > 0 for every row, by exact Fourier-Motzkin
/// elimination. Returns nullopt when the strict system is infeasible.
std::optional<std::vector<Rational>> solve_strict_homogeneous(const std::vector<std::vector<Rational>>& rows, int dims);

/// True when the integer row span of `rows` equals the coordinate lattice
/// spanned by the unit vectors listed in `coords`.
bool integer_span_is_coordinate_lattice(const std::vector<std::vector<int>>& rows, std::span<const int> coords, int dims);

} // namespace qrs
