#pragma once

// Accurate algebra on bidiagonal decompositions of totally positive matrices.
//
// Solves run through the factors of A = F_n ... F_1 D G_1 ... G_n in the
// J-conjugated form: with c = J b the substitutions for J F_i J and J G_i J
// only ever add products of nonnegative multipliers, so when b alternates
// in sign (J b of one sign) no cancellation can occur. The result is mapped
// back by x = J z. For non-alternating b the arithmetic is the same, just
// without the accuracy guarantee.

#include "tpnewton/bd_matrix.hpp"
#include "tpnewton/interp.hpp"
#include "tpnewton/newton.hpp"

#include <Eigen/SVD>

namespace tpn {

enum class SignPattern { AlternatingFromPlus, AlternatingFromMinus, Other };

template <class Scalar>
SignPattern sign_pattern(const Vector<Scalar>& v) {
  if (v.size() == 0) return SignPattern::Other;
  const int first = sign(v(0));
  if (first == 0) return SignPattern::Other;
  for (Index i = 1; i < v.size(); ++i)
    if (sign(v(i)) != -sign(v(i - 1))) return SignPattern::Other;
  return first > 0 ? SignPattern::AlternatingFromPlus : SignPattern::AlternatingFromMinus;
}

template <class Scalar>
class SignedVector {
 public:
  explicit SignedVector(Vector<Scalar> entries)
      : entries_(std::move(entries)), pattern_(sign_pattern(entries_)) {}

  const Vector<Scalar>& entries() const { return entries_; }
  SignPattern pattern() const { return pattern_; }
  bool alternating() const { return pattern_ != SignPattern::Other; }
  Index size() const { return entries_.size(); }

 private:
  Vector<Scalar> entries_;
  SignPattern pattern_;
};

template <class Scalar>
struct SolveResult {
  Vector<Scalar> x;
  bool hra = false;
};

namespace detail {

template <class Scalar>
void check_nonsingular(const BDMatrix<Scalar>& bd) {
  for (Index i = 0; i < bd.order(); ++i)
    if (bd(i, i) == Scalar(0)) throw Error(ErrorKind::SingularPivot, "zero pivot in BD");
}

// Overwrites c with z solving (J A J) z = c.
template <class Scalar>
void conjugated_substitution(const BDMatrix<Scalar>& bd, Vector<Scalar>& c) {
  const Index n = bd.factors();
  const bool has_upper = !bd.is_lower();
  for (Index i = n; i >= 1; --i) {
    for (Index r = i; r <= n; ++r) {
      const Scalar& m = bd(r, r - i);
      if (m != Scalar(0) && c(r - 1) != Scalar(0)) c(r) += m * c(r - 1);
    }
  }
  for (Index r = 0; r <= n; ++r) c(r) /= bd(r, r);
  if (!has_upper) return;
  for (Index i = 1; i <= n; ++i) {
    for (Index r = n; r >= i; --r) {
      const Scalar& m = bd(r - i, r);
      if (m != Scalar(0) && c(r) != Scalar(0)) c(r - 1) += m * c(r);
    }
  }
}

}  // namespace detail

/// Solves assemble(bd) x = rhs. `hra` reports whether rhs alternated.
template <class Scalar>
SolveResult<Scalar> tn_solve(const BDMatrix<Scalar>& bd, const SignedVector<Scalar>& rhs) {
  if (rhs.size() != bd.order()) {
    throw Error(ErrorKind::LengthMismatch, "rhs length must equal BD order");
  }
  detail::check_nonsingular(bd);
  Vector<Scalar> c = j_times(rhs.entries());
  detail::conjugated_substitution(bd, c);
  return {j_times(std::move(c)), rhs.alternating()};
}

template <class Scalar>
SolveResult<Scalar> tn_solve(const BDMatrix<Scalar>& bd, const Vector<Scalar>& rhs) {
  return tn_solve(bd, SignedVector<Scalar>(rhs));
}

/// Newton-form coefficients by solving L d = f through BD(L) (increasing
/// nodes) or L_J c = f through BD(L J) followed by d = J c (decreasing).
template <class Scalar>
NewtonInterpolant<Scalar> solve_newton_interpolation(const NodeSequence<Scalar>& nodes,
                                                     const SignedVector<Scalar>& data) {
  if (data.size() != nodes.size()) {
    throw Error(ErrorKind::LengthMismatch, "data length must equal node count");
  }
  if (nodes.increasing()) {
    SolveResult<Scalar> s = tn_solve(bd_newton(nodes), data);
    return {nodes, std::move(s.x), s.hra};
  }
  if (nodes.decreasing()) {
    SolveResult<Scalar> s = tn_solve(bd_newton_j(nodes), data);
    return {nodes, j_times(std::move(s.x)), s.hra};
  }
  throw Error(ErrorKind::InvalidInput, "nodes must be strictly monotone");
}

template <class Scalar>
NewtonInterpolant<Scalar> solve_newton_interpolation(const NodeSequence<Scalar>& nodes,
                                                     const Vector<Scalar>& data) {
  return solve_newton_interpolation(nodes, SignedVector<Scalar>(data));
}

/// Inverse of the source matrix, one conjugated solve per column. A unit
/// vector keeps every substitution a sum of same-sign terms, so each entry
/// is accurate to a few ulps and the result has the checkerboard sign
/// pattern of inverses of TP matrices. For a parity-flagged BD of L·J the
/// result is L^{-1} = J (L J)^{-1}.
template <class Scalar>
Matrix<Scalar> tn_inverse(const BDMatrix<Scalar>& bd) {
  detail::check_nonsingular(bd);
  const Index size = bd.order();
  Matrix<Scalar> inv(size, size);
  for (Index j = 0; j < size; ++j) {
    Vector<Scalar> c = Vector<Scalar>::Zero(size);
    c(j) = Scalar(parity_sign(j));
    detail::conjugated_substitution(bd, c);
    inv.col(j) = j_times(std::move(c));
  }
  if constexpr (!is_exact_v<Scalar>) {
    if (!inv.allFinite()) throw Error(ErrorKind::Overflow, "inverse entries overflow");
  }
  return bd.parity() ? j_times(std::move(inv)) : inv;
}

/// sigma_min(A) = 1 / sigma_max(A^{-1}). The inverse is entrywise accurate
/// and sigma_max is perfectly conditioned under normwise perturbations, so
/// any backward-stable SVD of the inverse gives a relative error of order u
/// regardless of the conditioning of A. J is orthogonal, so a parity-flagged
/// BD yields the singular values of L.
template <class Scalar>
Scalar smallest_singular_value(const BDMatrix<Scalar>& bd) {
  static_assert(!is_exact_v<Scalar>, "singular values need a floating-point scalar");
  const Matrix<Scalar> inv = tn_inverse(bd);
  Eigen::BDCSVD<Matrix<Scalar>> svd(inv);
  if (svd.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "SVD of inverse failed");
  return Scalar(1) / svd.singularValues()(0);
}

}  // namespace tpn
