#pragma once

// Bidiagonal decomposition (BD) of a nonsingular totally positive matrix
//
//   A = F_n F_{n-1} ... F_1 D G_1 G_2 ... G_n
//
// stored compactly in one (n+1)x(n+1) grid: position (i,j) holds the
// multiplier m_{i,j} below the diagonal, the pivot p_{i,i} on it, and the
// multiplier m~_{j,i} above it. F_i carries the grid's i-th subdiagonal,
// G_i its i-th superdiagonal.

#include "tpnewton/core.hpp"

#include <string>

namespace tpn {

template <class Scalar>
class BDMatrix {
 public:
  BDMatrix() : entries_(Matrix<Scalar>::Identity(1, 1)) {}

  /// `parity` marks a decomposition of L·J (J = diag((-1)^{i-1})) built for
  /// decreasing nodes: the factors represent L·J and the source matrix L is
  /// recovered as assemble(bd)·J.
  explicit BDMatrix(Matrix<Scalar> entries, bool parity = false)
      : entries_(std::move(entries)), parity_(parity) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
      throw Error(ErrorKind::InvalidInput, "BD grid must be square of order >= 1");
    }
  }

  static BDMatrix identity(Index order) {
    if (order < 1) throw Error(ErrorKind::InvalidInput, "order must be >= 1");
    return BDMatrix(Matrix<Scalar>::Identity(order, order));
  }

  Index order() const { return entries_.rows(); }
  /// Number of bidiagonal factors on each side (order - 1).
  Index factors() const { return entries_.rows() - 1; }
  bool parity() const { return parity_; }
  const Matrix<Scalar>& entries() const { return entries_; }

  /// Zero-based access to the grid.
  const Scalar& operator()(Index i, Index j) const { return entries_(i, j); }

  Vector<Scalar> pivots() const { return entries_.diagonal(); }

  /// True when every strictly-upper entry is exactly zero (no G factors).
  bool is_lower() const {
    for (Index j = 1; j < order(); ++j)
      for (Index i = 0; i < j; ++i)
        if (entries_(i, j) != Scalar(0)) return false;
    return true;
  }

  /// All multipliers nonnegative and all pivots strictly positive.
  bool is_nonnegative() const {
    for (Index j = 0; j < order(); ++j)
      for (Index i = 0; i < order(); ++i) {
        if (i == j ? !(entries_(i, j) > Scalar(0)) : entries_(i, j) < Scalar(0)) return false;
      }
    return true;
  }

  template <class Other>
  BDMatrix<Other> cast() const {
    return BDMatrix<Other>(entries_.template cast<Other>(), parity_);
  }

  friend bool operator==(const BDMatrix& a, const BDMatrix& b) {
    return a.parity_ == b.parity_ && a.order() == b.order() && a.entries_ == b.entries_;
  }

 private:
  Matrix<Scalar> entries_;
  bool parity_ = false;
};

namespace detail {

inline void check_factor_index(Index factors, Index i) {
  if (i < 1 || i > factors) {
    throw Error(ErrorKind::IndexOutOfRange,
                "factor index " + std::to_string(i) + " outside 1.." + std::to_string(factors));
  }
}

// R <- R·F_i, F_i unit lower bidiagonal with F_i(r, r-1) = bd(r, r-i).
template <class Scalar>
void right_multiply_lower(Matrix<Scalar>& r, const BDMatrix<Scalar>& bd, Index i) {
  for (Index c = i - 1; c + 1 < bd.order(); ++c) {
    const Scalar& m = bd(c + 1, c + 1 - i);
    if (m != Scalar(0)) r.col(c) += m * r.col(c + 1);
  }
}

// R <- R·G_i, G_i unit upper bidiagonal with G_i(c-1, c) = bd(c-i, c).
template <class Scalar>
void right_multiply_upper(Matrix<Scalar>& r, const BDMatrix<Scalar>& bd, Index i) {
  for (Index c = bd.order() - 1; c >= i; --c) {
    const Scalar& m = bd(c - i, c);
    if (m != Scalar(0)) r.col(c) += m * r.col(c - 1);
  }
}

}  // namespace detail

/// Dense unit lower bidiagonal factor F_i, 1 <= i <= n.
template <class Scalar>
Matrix<Scalar> factor_lower(const BDMatrix<Scalar>& bd, Index i) {
  detail::check_factor_index(bd.factors(), i);
  Matrix<Scalar> f = Matrix<Scalar>::Identity(bd.order(), bd.order());
  for (Index r = i; r < bd.order(); ++r) f(r, r - 1) = bd(r, r - i);
  return f;
}

/// Dense unit upper bidiagonal factor G_i, 1 <= i <= n.
template <class Scalar>
Matrix<Scalar> factor_upper(const BDMatrix<Scalar>& bd, Index i) {
  detail::check_factor_index(bd.factors(), i);
  Matrix<Scalar> g = Matrix<Scalar>::Identity(bd.order(), bd.order());
  for (Index c = i; c < bd.order(); ++c) g(c - 1, c) = bd(c - i, c);
  return g;
}

/// Product F_n ... F_1 D G_1 ... G_n, accumulated strictly left to right.
/// Each step exploits the bidiagonal shape of the right factor, O(n) per
/// column. For a parity-flagged decomposition this is L·J.
template <class Scalar>
Matrix<Scalar> assemble(const BDMatrix<Scalar>& bd) {
  const Index n = bd.factors();
  Matrix<Scalar> r = Matrix<Scalar>::Identity(bd.order(), bd.order());
  for (Index i = n; i >= 1; --i) detail::right_multiply_lower(r, bd, i);
  for (Index c = 0; c < bd.order(); ++c) r.col(c) *= bd(c, c);
  for (Index i = 1; i <= n; ++i) detail::right_multiply_upper(r, bd, i);
  return r;
}

/// The collocation matrix the decomposition was built from: assemble(bd),
/// post-multiplied by J when the parity flag is set.
template <class Scalar>
Matrix<Scalar> assemble_source(const BDMatrix<Scalar>& bd) {
  Matrix<Scalar> a = assemble(bd);
  return bd.parity() ? times_j(std::move(a)) : a;
}

}  // namespace tpn
