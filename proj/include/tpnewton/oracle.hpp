#pragma once

// Exact and high-precision reference computations. Everything here works on
// exact rationals (or on doubles taken at their exact binary value) and is
// independent of the floating-point code paths it is used to check.

#include "tpnewton/bd_matrix.hpp"
#include "tpnewton/nodes.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace tpn {

using HighPrecision = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                                    boost::multiprecision::et_off>;

/// Default cap on numerator + denominator size of any rational the oracle
/// produces.
inline constexpr long kDefaultRationalBitCap = 1'000'000;

/// Throws RationalBlowup if numerator + denominator exceed `max_bits`.
void check_rational_size(const Rational& q, long max_bits = kDefaultRationalBitCap);

Rational exact_value(double x);
std::vector<Rational> exact_values(const std::vector<double>& xs);
Matrix<Rational> exact_matrix(const Matrix<double>& a);
Vector<Rational> exact_vector(const Vector<double>& v);

/// Correctly rounded (nearest, ties to even) double of a rational.
double nearest_double(const Rational& q);

/// BD of the Newton collocation matrix, each entry evaluated directly from
/// its closed-form product (no incremental updates). Any distinct nodes are
/// accepted; pivots carry their natural sign.
BDMatrix<Rational> exact_bd_newton(const std::vector<Rational>& nodes);

/// BD by Neville elimination (adjacent-row elimination of A for the lower
/// multipliers, of A^T for the upper ones). Throws NotTotallyPositive when a
/// negative multiplier or nonpositive pivot appears.
BDMatrix<Rational> neville_bd(const Matrix<Rational>& a);

/// Exact solution of A x = b; forward substitution when A is lower triangular.
Vector<Rational> exact_solve(const Matrix<Rational>& a, const Vector<Rational>& b);

Matrix<Rational> exact_inverse(const Matrix<Rational>& a);

Rational exact_determinant(Matrix<Rational> a);

/// Newton coefficients [t_1..t_k] f, k = 1..n+1, from the symmetric formula
/// sum_j f_j / prod_{l != j} (t_j - t_l). Independent of the recursion.
Vector<Rational> exact_divdiff(const std::vector<Rational>& nodes, const Vector<Rational>& data);

/// Full table d_{i,k} from the same symmetric formula; O(n^4), small n only.
std::vector<Vector<Rational>> exact_divdiff_table(const std::vector<Rational>& nodes,
                                                  const Vector<Rational>& data);

/// True iff every minor of order <= max_order (max_order <= 6) is >= 0.
bool minors_nonneg(const Matrix<Rational>& a, int max_order);

struct PrecisionPolicy {
  int target_digits = 20;
  int start_digits = 40;
  int max_digits = 1280;
};

struct PrecisionStep {
  int digits = 0;
  int sweeps = 0;
  std::string sigma_min;
};

struct HpSvdResult {
  /// Singular values in descending order, carried at `digits` precision.
  std::vector<HighPrecision> values;
  int digits = 0;
  /// Decimal digits on which the last two precisions agreed.
  double agreed_digits = 0;
  std::vector<PrecisionStep> log;

  const HighPrecision& smallest() const { return values.back(); }
};

/// Singular values by one-sided (Hestenes) Jacobi in MPFR arithmetic,
/// doubling the working precision until two successive runs agree to
/// `target_digits` on every singular value.
HpSvdResult hp_singular_values(const Matrix<Rational>& a, const PrecisionPolicy& policy = {});
HpSvdResult hp_singular_values(const Matrix<double>& a, const PrecisionPolicy& policy = {});

/// |(exact - approx) / exact| evaluated at the precision of `exact`.
double relative_error(const HighPrecision& exact, double approx);

/// Exact |(y - y~)/y| as a double; 0 when both vanish, +inf when only y does.
double relative_error(const Rational& exact, double approx);

double max_relative_error(const Vector<Rational>& exact, const Vector<double>& approx);
double max_relative_error(const Matrix<Rational>& exact, const Matrix<double>& approx);

/// ||y - y~||_2 / ||y||_2, the measure that stays finite when some y_i = 0.
double normwise_relative_error(const Vector<Rational>& exact, const Vector<double>& approx);

}  // namespace tpn
