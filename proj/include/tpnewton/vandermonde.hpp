#pragma once

// Vandermonde collocation matrices and the Crout identity V = L U, where L is
// the Newton collocation matrix and U the monomial-to-Newton change of basis.

#include "tpnewton/newton.hpp"

namespace tpn {

template <class Scalar>
struct CroutPair {
  Matrix<Scalar> lower;
  Matrix<Scalar> upper;
};

/// v_{i,j} = t_i^{j-1}.
template <class Scalar>
Matrix<Scalar> vandermonde_matrix(const NodeSequence<Scalar>& nodes) {
  const Index size = nodes.size();
  Matrix<Scalar> v(size, size);
  for (Index i = 0; i < size; ++i) {
    Scalar power(1);
    for (Index j = 0; j < size; ++j) {
      v(i, j) = power;
      power *= nodes[i];
    }
  }
  return v;
}

/// BD(V) for 0 < t_1 < ... < t_{n+1}: lower multipliers and pivots shared
/// with BD(L), upper entries BD_{i,j} = t_i.
template <class Scalar>
BDMatrix<Scalar> bd_vandermonde(const NodeSequence<Scalar>& nodes) {
  if (!nodes.increasing()) {
    throw Error(ErrorKind::NotIncreasing, "BD(V) requires strictly increasing nodes");
  }
  if (!(nodes[0] > Scalar(0))) {
    throw Error(ErrorKind::NonPositiveNodes, "BD(V) requires positive nodes");
  }
  Matrix<Scalar> grid = Matrix<Scalar>::Zero(nodes.size(), nodes.size());
  detail::fill_newton_multipliers(grid, nodes);
  detail::fill_newton_pivots(grid, nodes, false);
  detail::check_pivots_normal(grid);
  for (Index j = 1; j < nodes.size(); ++j)
    for (Index i = 0; i < j; ++i) grid(i, j) = nodes[i];
  return BDMatrix<Scalar>(std::move(grid));
}

/// BD(U) with U = G_1 ... G_n: unit pivots, BD_{i,j} = t_i above the diagonal.
/// Its assembly has u_{i,j} = [t_1, ..., t_i] m_{j-1}.
template <class Scalar>
BDMatrix<Scalar> bd_change_of_basis_u(const NodeSequence<Scalar>& nodes) {
  Matrix<Scalar> grid = Matrix<Scalar>::Identity(nodes.size(), nodes.size());
  for (Index j = 1; j < nodes.size(); ++j)
    for (Index i = 0; i < j; ++i) grid(i, j) = nodes[i];
  return BDMatrix<Scalar>(std::move(grid));
}

template <class Scalar>
CroutPair<Scalar> crout(const NodeSequence<Scalar>& nodes) {
  return {colloc_matrix(nodes), assemble(bd_change_of_basis_u(nodes))};
}

}  // namespace tpn
