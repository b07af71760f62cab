#pragma once

// Shared scalar, matrix and error vocabulary for the tpnewton library.
//
// Every numerical routine is templated on the scalar type. Two scalars are
// used throughout: `double` for the floating-point algorithms and `Rational`
// (GMP-backed, expression templates off) for the exact reference path.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace tpn {

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class ErrorKind {
  InvalidInput,
  Parse,
  IndexOutOfRange,
  LengthMismatch,
  DuplicateNodes,
  NotIncreasing,
  NotDecreasing,
  NonPositiveNodes,
  NotTriangular,
  SingularPivot,
  ZeroDenominator,
  OrderingBroken,
  NotTotallyPositive,
  OrderTooLarge,
  // Numerical-contract failures: the inputs were valid but a guarantee
  // could not be honoured.
  SubnormalPivot,
  Overflow,
  ModelOverflow,
  BoundBlowup,
  RationalBlowup,
  NoConvergence,
};

const char* to_string(ErrorKind kind) noexcept;

/// True for failures where the inputs validated but the computation could
/// not meet its accuracy contract (CLI exit code 3).
bool is_numerical_contract(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <class Scalar>
struct ScalarTraits {
  static constexpr bool exact = false;
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
};

template <class Scalar>
inline constexpr bool is_exact_v = ScalarTraits<Scalar>::exact;

template <class Scalar>
int sign(const Scalar& x) {
  if (x > Scalar(0)) return 1;
  if (x < Scalar(0)) return -1;
  return 0;
}

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

/// (-1)^i for a zero-based index i, i.e. the i-th diagonal entry of J.
inline int parity_sign(Index i) { return (i % 2 == 0) ? 1 : -1; }

/// Returns A·J, flipping the sign of every other column starting at the second.
template <class Scalar>
Matrix<Scalar> times_j(Matrix<Scalar> a) {
  for (Index c = 1; c < a.cols(); c += 2) a.col(c) = -a.col(c);
  return a;
}

/// Returns J·A.
template <class Scalar>
Matrix<Scalar> j_times(Matrix<Scalar> a) {
  for (Index r = 1; r < a.rows(); r += 2) a.row(r) = -a.row(r);
  return a;
}

template <class Scalar>
Vector<Scalar> j_times(Vector<Scalar> v) {
  for (Index r = 1; r < v.size(); r += 2) v(r) = -v(r);
  return v;
}

}  // namespace tpn
