#pragma once

// Collocation matrix of the Newton basis w_0 = 1, w_j(t) = prod_{k<=j}(t - t_k)
// and its bidiagonal decomposition L = F_n ... F_1 D.

#include "tpnewton/bd_matrix.hpp"
#include "tpnewton/nodes.hpp"

#include <cmath>

namespace tpn {

/// l_{i,j} = prod_{k=1}^{j-1} (t_i - t_k); lower triangular.
template <class Scalar>
Matrix<Scalar> colloc_matrix(const NodeSequence<Scalar>& nodes) {
  const Index size = nodes.size();
  Matrix<Scalar> l = Matrix<Scalar>::Zero(size, size);
  for (Index i = 0; i < size; ++i) {
    Scalar w(1);
    l(i, 0) = w;
    for (Index j = 1; j <= i; ++j) {
      w *= nodes[i] - nodes[j - 1];
      l(i, j) = w;
    }
  }
  return l;
}

namespace detail {

// Multipliers m_{i,j}, built by incremental products of ratios of fresh
// node differences:
//   m_{i,1} = 1,  m_{i,j} = m_{i,j-1} * (t_i - t_{i-j+1}) / (t_{i-1} - t_{i-j}).
template <class Scalar>
void fill_newton_multipliers(Matrix<Scalar>& grid, const NodeSequence<Scalar>& t) {
  for (Index i = 1; i < t.size(); ++i) {
    grid(i, 0) = Scalar(1);
    for (Index j = 1; j < i; ++j) {
      const Scalar ratio = (t[i] - t[i - j]) / (t[i - 1] - t[i - j - 1]);
      grid(i, j) = grid(i, j - 1) * ratio;
    }
  }
}

// Pivots p_i = prod_{k=1}^{i-1} (t_i - t_{i-k}). With `flipped` each factor
// is formed as t_{i-k} - t_i, which yields |p_i| for decreasing nodes
// without any sign manipulation after the fact.
template <class Scalar>
void fill_newton_pivots(Matrix<Scalar>& grid, const NodeSequence<Scalar>& t, bool flipped) {
  grid(0, 0) = Scalar(1);
  for (Index i = 1; i < t.size(); ++i) {
    Scalar p(1);
    for (Index k = 1; k <= i; ++k) p *= flipped ? Scalar(t[i - k] - t[i]) : Scalar(t[i] - t[i - k]);
    grid(i, i) = p;
  }
}

template <class Scalar>
void check_pivots_normal(const Matrix<Scalar>& grid) {
  if constexpr (!is_exact_v<Scalar>) {
    for (Index i = 0; i < grid.rows(); ++i) {
      const int cls = std::fpclassify(static_cast<double>(grid(i, i)));
      if (cls == FP_SUBNORMAL || cls == FP_ZERO) {
        throw Error(ErrorKind::SubnormalPivot,
                    "pivot " + std::to_string(i + 1) + " left the normal floating-point range");
      }
      if (cls == FP_INFINITE || cls == FP_NAN) {
        throw Error(ErrorKind::Overflow, "pivot " + std::to_string(i + 1) + " overflowed");
      }
    }
  }
}

}  // namespace detail

/// BD(L) for strictly increasing nodes. Every entry is positive and is
/// produced without subtracting computed quantities, so in floating point
/// each entry is accurate to a small multiple of the unit roundoff.
template <class Scalar>
BDMatrix<Scalar> bd_newton(const NodeSequence<Scalar>& nodes) {
  if (!nodes.increasing()) {
    throw Error(ErrorKind::NotIncreasing, "BD(L) requires strictly increasing nodes");
  }
  Matrix<Scalar> grid = Matrix<Scalar>::Zero(nodes.size(), nodes.size());
  detail::fill_newton_multipliers(grid, nodes);
  detail::fill_newton_pivots(grid, nodes, false);
  detail::check_pivots_normal(grid);
  return BDMatrix<Scalar>(std::move(grid));
}

/// BD(L·J) for strictly decreasing nodes, with J = diag((-1)^{i-1}). The
/// pivots (-1)^{i-1} prod (t_i - t_k) are positive for decreasing nodes and
/// are stored as such; the parity flag records that the factors represent
/// L·J rather than L.
template <class Scalar>
BDMatrix<Scalar> bd_newton_j(const NodeSequence<Scalar>& nodes) {
  if (!nodes.decreasing()) {
    throw Error(ErrorKind::NotDecreasing, "BD(L J) requires strictly decreasing nodes");
  }
  Matrix<Scalar> grid = Matrix<Scalar>::Zero(nodes.size(), nodes.size());
  detail::fill_newton_multipliers(grid, nodes);
  detail::fill_newton_pivots(grid, nodes, true);
  detail::check_pivots_normal(grid);
  return BDMatrix<Scalar>(std::move(grid), true);
}

/// Eigenvalues of a triangular BD: its pivots.
template <class Scalar>
Vector<Scalar> eigenvalues(const BDMatrix<Scalar>& bd) {
  if (!bd.is_lower()) throw Error(ErrorKind::NotTriangular, "BD has a nonzero upper part");
  return bd.pivots();
}

}  // namespace tpn
