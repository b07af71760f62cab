#include "tpnewton/oracle.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tpn {

void check_rational_size(const Rational& q, long max_bits) {
  const mpq_srcptr raw = q.backend().data();
  const auto bits = static_cast<long>(mpz_sizeinbase(mpq_numref(raw), 2) +
                                      mpz_sizeinbase(mpq_denref(raw), 2));
  if (bits > max_bits) {
    throw Error(ErrorKind::RationalBlowup,
                "rational of " + std::to_string(bits) + " bits exceeds cap " + std::to_string(max_bits));
  }
}

Rational exact_value(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite value has no exact rational");
  return Rational(x);
}

std::vector<Rational> exact_values(const std::vector<double>& xs) {
  std::vector<Rational> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(exact_value(x));
  return out;
}

Matrix<Rational> exact_matrix(const Matrix<double>& a) {
  Matrix<Rational> out(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) out(i, j) = exact_value(a(i, j));
  return out;
}

Vector<Rational> exact_vector(const Vector<double>& v) {
  Vector<Rational> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = exact_value(v(i));
  return out;
}

double nearest_double(const Rational& q) {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q.backend().data(), MPFR_RNDN);
  const double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

BDMatrix<Rational> exact_bd_newton(const std::vector<Rational>& nodes) {
  const auto t = classify_nodes(nodes);
  const Index size = t.size();
  Matrix<Rational> grid = Matrix<Rational>::Zero(size, size);
  for (Index i = 0; i < size; ++i) {
    Rational p(1);
    for (Index k = 0; k < i; ++k) p *= t[i] - t[k];
    grid(i, i) = p;
    for (Index j = 0; j < i; ++j) {
      Rational m(1);
      for (Index k = 1; k <= j; ++k) m *= (t[i] - t[i - k]) / (t[i - 1] - t[i - k - 1]);
      grid(i, j) = m;
    }
  }
  return BDMatrix<Rational>(std::move(grid));
}

namespace {

// Neville elimination on a copy of `a`; returns the multiplier grid (strictly
// lower part) with the final pivots on the diagonal.
Matrix<Rational> neville_lower(Matrix<Rational> a) {
  const Index size = a.rows();
  Matrix<Rational> grid = Matrix<Rational>::Zero(size, size);
  for (Index k = 0; k + 1 < size; ++k) {
    for (Index i = size - 1; i > k; --i) {
      if (a(i, k) == 0) continue;
      if (a(i - 1, k) == 0) {
        throw Error(ErrorKind::NotTotallyPositive,
                    "zero above a nonzero entry in column " + std::to_string(k + 1));
      }
      const Rational m = a(i, k) / a(i - 1, k);
      if (m < 0) throw Error(ErrorKind::NotTotallyPositive, "negative Neville multiplier");
      check_rational_size(m);
      grid(i, k) = m;
      for (Index c = k; c < size; ++c)
        if (a(i - 1, c) != 0) a(i, c) -= m * a(i - 1, c);
    }
  }
  for (Index i = 0; i < size; ++i) {
    if (!(a(i, i) > 0)) throw Error(ErrorKind::NotTotallyPositive, "nonpositive Neville pivot");
    grid(i, i) = a(i, i);
  }
  return grid;
}

bool is_lower_triangular(const Matrix<Rational>& a) {
  for (Index j = 1; j < a.cols(); ++j)
    for (Index i = 0; i < j; ++i)
      if (a(i, j) != 0) return false;
  return true;
}

void check_square(const Matrix<Rational>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::InvalidInput, "matrix must be square and nonempty");
  }
}

Vector<Rational> forward_substitution(const Matrix<Rational>& l, const Vector<Rational>& b) {
  const Index size = l.rows();
  Vector<Rational> x(size);
  for (Index i = 0; i < size; ++i) {
    if (l(i, i) == 0) throw Error(ErrorKind::SingularPivot, "singular triangular matrix");
    Rational s = b(i);
    for (Index j = 0; j < i; ++j)
      if (l(i, j) != 0 && x(j) != 0) s -= l(i, j) * x(j);
    x(i) = s / l(i, i);
    check_rational_size(x(i));
  }
  return x;
}

// Gaussian elimination with first-nonzero pivoting on [A | B].
Matrix<Rational> gauss_solve(Matrix<Rational> a, Matrix<Rational> b) {
  const Index size = a.rows();
  for (Index k = 0; k < size; ++k) {
    Index p = k;
    while (p < size && a(p, k) == 0) ++p;
    if (p == size) throw Error(ErrorKind::SingularPivot, "matrix is singular");
    if (p != k) {
      a.row(p).swap(a.row(k));
      b.row(p).swap(b.row(k));
    }
    for (Index i = k + 1; i < size; ++i) {
      if (a(i, k) == 0) continue;
      const Rational m = a(i, k) / a(k, k);
      for (Index c = k; c < size; ++c) a(i, c) -= m * a(k, c);
      for (Index c = 0; c < b.cols(); ++c) b(i, c) -= m * b(k, c);
    }
  }
  for (Index k = size - 1; k >= 0; --k) {
    for (Index c = 0; c < b.cols(); ++c) {
      Rational s = b(k, c);
      for (Index j = k + 1; j < size; ++j)
        if (a(k, j) != 0) s -= a(k, j) * b(j, c);
      b(k, c) = s / a(k, k);
      check_rational_size(b(k, c));
    }
  }
  return b;
}

}  // namespace

BDMatrix<Rational> neville_bd(const Matrix<Rational>& a) {
  check_square(a);
  Matrix<Rational> grid = neville_lower(a);
  const Matrix<Rational> upper = neville_lower(a.transpose());
  for (Index j = 1; j < a.cols(); ++j)
    for (Index i = 0; i < j; ++i) grid(i, j) = upper(j, i);
  return BDMatrix<Rational>(std::move(grid));
}

Vector<Rational> exact_solve(const Matrix<Rational>& a, const Vector<Rational>& b) {
  check_square(a);
  if (b.size() != a.rows()) throw Error(ErrorKind::LengthMismatch, "rhs length mismatch");
  if (is_lower_triangular(a)) return forward_substitution(a, b);
  return gauss_solve(a, b);
}

Matrix<Rational> exact_inverse(const Matrix<Rational>& a) {
  check_square(a);
  const Index size = a.rows();
  if (!is_lower_triangular(a)) return gauss_solve(a, Matrix<Rational>::Identity(size, size));

  // Column j of the inverse of a lower triangular matrix vanishes above row j.
  Matrix<Rational> inv = Matrix<Rational>::Zero(size, size);
  for (Index j = 0; j < size; ++j) {
    if (a(j, j) == 0) throw Error(ErrorKind::SingularPivot, "singular triangular matrix");
    inv(j, j) = Rational(1) / a(j, j);
    for (Index i = j + 1; i < size; ++i) {
      Rational s(0);
      for (Index k = j; k < i; ++k)
        if (a(i, k) != 0) s -= a(i, k) * inv(k, j);
      inv(i, j) = s / a(i, i);
      check_rational_size(inv(i, j));
    }
  }
  return inv;
}

Rational exact_determinant(Matrix<Rational> a) {
  check_square(a);
  const Index size = a.rows();
  Rational det(1);
  for (Index k = 0; k < size; ++k) {
    Index p = k;
    while (p < size && a(p, k) == 0) ++p;
    if (p == size) return Rational(0);
    if (p != k) {
      a.row(p).swap(a.row(k));
      det = -det;
    }
    det *= a(k, k);
    for (Index i = k + 1; i < size; ++i) {
      if (a(i, k) == 0) continue;
      const Rational m = a(i, k) / a(k, k);
      for (Index c = k; c < size; ++c) a(i, c) -= m * a(k, c);
    }
  }
  return det;
}

namespace {

Rational symmetric_divdiff(const std::vector<Rational>& t, const Vector<Rational>& f, std::size_t first,
                           std::size_t last) {
  Rational sum(0);
  for (std::size_t j = first; j <= last; ++j) {
    Rational den(1);
    for (std::size_t l = first; l <= last; ++l)
      if (l != j) den *= t[j] - t[l];
    sum += f(static_cast<Index>(j)) / den;
  }
  return sum;
}

}  // namespace

Vector<Rational> exact_divdiff(const std::vector<Rational>& nodes, const Vector<Rational>& data) {
  classify_nodes(nodes);
  if (static_cast<Index>(nodes.size()) != data.size()) {
    throw Error(ErrorKind::LengthMismatch, "data length must equal node count");
  }
  Vector<Rational> d(data.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) d(static_cast<Index>(k)) = symmetric_divdiff(nodes, data, 0, k);
  return d;
}

std::vector<Vector<Rational>> exact_divdiff_table(const std::vector<Rational>& nodes,
                                                  const Vector<Rational>& data) {
  classify_nodes(nodes);
  if (static_cast<Index>(nodes.size()) != data.size()) {
    throw Error(ErrorKind::LengthMismatch, "data length must equal node count");
  }
  const std::size_t size = nodes.size();
  std::vector<Vector<Rational>> levels;
  for (std::size_t k = 0; k < size; ++k) {
    Vector<Rational> level(static_cast<Index>(size - k));
    for (std::size_t i = 0; i + k < size; ++i) level(static_cast<Index>(i)) = symmetric_divdiff(nodes, data, i, i + k);
    levels.push_back(std::move(level));
  }
  return levels;
}

namespace {

// Calls `visit` with every k-subset of {0..size-1} in lexicographic order;
// stops early when `visit` returns false.
template <class Visit>
bool for_each_subset(Index size, Index k, Visit&& visit) {
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Index{0});
  while (true) {
    if (!visit(idx)) return false;
    Index pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == size - k + pos) --pos;
    if (pos < 0) return true;
    ++idx[static_cast<std::size_t>(pos)];
    for (Index q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
}

}  // namespace

bool minors_nonneg(const Matrix<Rational>& a, int max_order) {
  if (max_order > 6) throw Error(ErrorKind::OrderTooLarge, "minor enumeration is limited to order 6");
  if (max_order < 1) throw Error(ErrorKind::InvalidInput, "max_order must be >= 1");
  const Index top = std::min<Index>({static_cast<Index>(max_order), a.rows(), a.cols()});
  for (Index k = 1; k <= top; ++k) {
    const bool ok = for_each_subset(a.rows(), k, [&](const std::vector<Index>& rows) {
      return for_each_subset(a.cols(), k, [&](const std::vector<Index>& cols) {
        Matrix<Rational> sub(k, k);
        for (Index i = 0; i < k; ++i)
          for (Index j = 0; j < k; ++j) sub(i, j) = a(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        return exact_determinant(std::move(sub)) >= 0;
      });
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

// Raises the default MPFR precision for the lifetime of the guard so that
// temporaries in mixed expressions are not rounded below the operands.
class ScopedDigits {
 public:
  explicit ScopedDigits(unsigned digits) : saved_(HighPrecision::default_precision()) {
    HighPrecision::default_precision(std::max(digits, saved_));
  }
  ~ScopedDigits() { HighPrecision::default_precision(saved_); }
  ScopedDigits(const ScopedDigits&) = delete;
  ScopedDigits& operator=(const ScopedDigits&) = delete;

 private:
  unsigned saved_;
};

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

// Fixed-size array of MPFR numbers sharing one precision.
class MpfrArray {
 public:
  MpfrArray(std::size_t n, mpfr_prec_t prec) : data_(n) {
    for (auto& x : data_) mpfr_init2(&x, prec);
  }
  ~MpfrArray() {
    for (auto& x : data_) mpfr_clear(&x);
  }
  MpfrArray(const MpfrArray&) = delete;
  MpfrArray& operator=(const MpfrArray&) = delete;

  mpfr_ptr operator[](std::size_t i) { return &data_[i]; }
  std::size_t size() const { return data_.size(); }

 private:
  std::vector<__mpfr_struct> data_;
};

struct JacobiRun {
  std::vector<HighPrecision> values;
  int sweeps = 0;
};

constexpr int kMaxSweeps = 200;

// One-sided Jacobi: rotate column pairs until every pair is orthogonal to
// working precision; the singular values are then the column norms.
JacobiRun one_sided_jacobi(const Matrix<Rational>& a, int digits) {
  const mpfr_prec_t prec = bits_for_digits(digits);
  const auto rows = static_cast<std::size_t>(a.rows());
  const auto cols = static_cast<std::size_t>(a.cols());
  MpfrArray w(rows * cols, prec);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r)
      mpfr_set_q(w[c * rows + r], a(static_cast<Index>(r), static_cast<Index>(c)).backend().data(), MPFR_RNDN);

  // Scratch: alpha beta gamma zeta t c s tmp1 tmp2 tol
  MpfrArray s(10, prec);
  mpfr_ptr alpha = s[0], beta = s[1], gam = s[2], zeta = s[3], tan = s[4], cs = s[5], sn = s[6],
           x = s[7], y = s[8], tol = s[9];
  // tol = rows * 2^-prec
  mpfr_set_ui(tol, static_cast<unsigned long>(std::max<std::size_t>(rows, 1)), MPFR_RNDN);
  mpfr_mul_2si(tol, tol, -static_cast<long>(prec), MPFR_RNDN);

  auto dot = [&](mpfr_ptr out, std::size_t p, std::size_t q) {
    mpfr_set_zero(out, 1);
    for (std::size_t r = 0; r < rows; ++r) mpfr_fma(out, w[p * rows + r], w[q * rows + r], out, MPFR_RNDN);
  };

  // Squared column norms, refreshed every sweep and updated per rotation.
  MpfrArray norms(cols, prec);

  JacobiRun run;
  bool rotated = true;
  while (rotated) {
    if (run.sweeps >= kMaxSweeps) {
      throw Error(ErrorKind::NoConvergence, "one-sided Jacobi did not converge at " +
                                                std::to_string(digits) + " digits");
    }
    ++run.sweeps;
    rotated = false;
    for (std::size_t c = 0; c < cols; ++c) dot(norms[c], c, c);
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        dot(gam, p, q);
        if (mpfr_zero_p(gam)) continue;
        mpfr_set(alpha, norms[p], MPFR_RNDN);
        mpfr_set(beta, norms[q], MPFR_RNDN);
        // Skip when |gamma| <= tol * sqrt(alpha * beta).
        mpfr_mul(x, alpha, beta, MPFR_RNDN);
        mpfr_sqrt(x, x, MPFR_RNDN);
        mpfr_mul(x, x, tol, MPFR_RNDN);
        mpfr_abs(y, gam, MPFR_RNDN);
        if (mpfr_lessequal_p(y, x)) continue;
        rotated = true;

        // zeta = (beta - alpha) / (2 gamma); t = sign(zeta) / (|zeta| + sqrt(1 + zeta^2))
        mpfr_sub(zeta, beta, alpha, MPFR_RNDN);
        mpfr_div(zeta, zeta, gam, MPFR_RNDN);
        mpfr_div_2ui(zeta, zeta, 1, MPFR_RNDN);
        mpfr_sqr(x, zeta, MPFR_RNDN);
        mpfr_add_ui(x, x, 1, MPFR_RNDN);
        mpfr_sqrt(x, x, MPFR_RNDN);
        mpfr_abs(y, zeta, MPFR_RNDN);
        mpfr_add(x, x, y, MPFR_RNDN);
        mpfr_ui_div(tan, 1, x, MPFR_RNDN);
        if (mpfr_sgn(zeta) < 0) mpfr_neg(tan, tan, MPFR_RNDN);
        // c = 1 / sqrt(1 + t^2), s = c t
        mpfr_sqr(x, tan, MPFR_RNDN);
        mpfr_add_ui(x, x, 1, MPFR_RNDN);
        mpfr_rec_sqrt(cs, x, MPFR_RNDN);
        mpfr_mul(sn, cs, tan, MPFR_RNDN);
        // alpha' = alpha - t gamma, beta' = beta + t gamma
        mpfr_mul(x, tan, gam, MPFR_RNDN);
        mpfr_sub(norms[p], alpha, x, MPFR_RNDN);
        mpfr_add(norms[q], beta, x, MPFR_RNDN);

        for (std::size_t r = 0; r < rows; ++r) {
          mpfr_ptr ap = w[p * rows + r];
          mpfr_ptr aq = w[q * rows + r];
          // ap' = c ap - s aq ; aq' = s ap + c aq
          mpfr_mul(x, sn, aq, MPFR_RNDN);
          mpfr_fms(x, cs, ap, x, MPFR_RNDN);
          mpfr_mul(y, sn, ap, MPFR_RNDN);
          mpfr_fma(y, cs, aq, y, MPFR_RNDN);
          mpfr_swap(ap, x);
          mpfr_swap(aq, y);
        }
      }
    }
  }

  const unsigned out_digits = static_cast<unsigned>(digits);
  for (std::size_t c = 0; c < cols; ++c) {
    dot(x, c, c);
    mpfr_sqrt(x, x, MPFR_RNDN);
    HighPrecision v;
    v.precision(out_digits);
    mpfr_set(v.backend().data(), x, MPFR_RNDN);
    run.values.push_back(std::move(v));
  }
  std::sort(run.values.begin(), run.values.end(), std::greater<>());
  return run;
}

// Decimal digits of agreement: -log10 of the largest relative difference.
double agreement_digits(const std::vector<HighPrecision>& a, const std::vector<HighPrecision>& b,
                        int digits) {
  const ScopedDigits guard(static_cast<unsigned>(digits));
  double worst = static_cast<double>(digits);
  for (std::size_t i = 0; i < a.size(); ++i) {
    HighPrecision ai = a[i];
    HighPrecision bi = b[i];
    ai.precision(static_cast<unsigned>(digits));
    bi.precision(static_cast<unsigned>(digits));
    if (ai == bi) continue;
    if (bi == 0) return 0.0;
    const HighPrecision rel = abs((ai - bi) / bi);
    worst = std::min(worst, -static_cast<double>(log10(rel)));
  }
  return worst;
}

std::string to_decimal(const HighPrecision& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

HpSvdResult hp_singular_values(const Matrix<Rational>& a, const PrecisionPolicy& policy) {
  if (policy.target_digits < 17) throw Error(ErrorKind::InvalidInput, "target_digits must be >= 17");
  if (a.rows() == 0 || a.cols() == 0) throw Error(ErrorKind::InvalidInput, "empty matrix");

  HpSvdResult result;
  int digits = std::max(policy.start_digits, policy.target_digits + 10);
  JacobiRun previous = one_sided_jacobi(a, digits);
  result.log.push_back({digits, previous.sweeps, to_decimal(previous.values.back(), policy.target_digits)});
  while (true) {
    const int next = digits * 2;
    if (next > policy.max_digits) {
      throw Error(ErrorKind::NoConvergence,
                  "singular values agreed to only " + std::to_string(result.agreed_digits) +
                      " digits at " + std::to_string(digits) + " digits of precision");
    }
    JacobiRun current = one_sided_jacobi(a, next);
    result.log.push_back({next, current.sweeps, to_decimal(current.values.back(), policy.target_digits)});
    result.agreed_digits = agreement_digits(previous.values, current.values, next);
    digits = next;
    previous = std::move(current);
    if (result.agreed_digits >= policy.target_digits) break;
  }
  result.values = std::move(previous.values);
  result.digits = digits;
  return result;
}

HpSvdResult hp_singular_values(const Matrix<double>& a, const PrecisionPolicy& policy) {
  return hp_singular_values(exact_matrix(a), policy);
}

double relative_error(const HighPrecision& exact, double approx) {
  const unsigned digits = exact.precision();
  const ScopedDigits guard(std::max(digits, 40u));
  HighPrecision y = exact;
  HighPrecision yt;
  yt.precision(std::max(digits, 40u));
  yt = approx;
  if (y == 0) return approx == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const HighPrecision e = abs((y - yt) / y);
  return static_cast<double>(e);
}

double relative_error(const Rational& exact, double approx) {
  if (!std::isfinite(approx)) return std::numeric_limits<double>::infinity();
  if (exact == 0) return approx == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const Rational e = abs((exact - Rational(approx)) / exact);
  return nearest_double(e);
}

double max_relative_error(const Vector<Rational>& exact, const Vector<double>& approx) {
  if (exact.size() != approx.size()) throw Error(ErrorKind::LengthMismatch, "size mismatch");
  double worst = 0.0;
  for (Index i = 0; i < exact.size(); ++i) worst = std::max(worst, relative_error(exact(i), approx(i)));
  return worst;
}

double max_relative_error(const Matrix<Rational>& exact, const Matrix<double>& approx) {
  if (exact.rows() != approx.rows() || exact.cols() != approx.cols()) {
    throw Error(ErrorKind::LengthMismatch, "shape mismatch");
  }
  double worst = 0.0;
  for (Index j = 0; j < exact.cols(); ++j)
    for (Index i = 0; i < exact.rows(); ++i) worst = std::max(worst, relative_error(exact(i, j), approx(i, j)));
  return worst;
}

}  // namespace tpn

namespace tpn {

double normwise_relative_error(const Vector<Rational>& exact, const Vector<double>& approx) {
  if (exact.size() != approx.size()) throw Error(ErrorKind::LengthMismatch, "size mismatch");
  if (!approx.allFinite()) return std::numeric_limits<double>::infinity();
  Rational num = 0;
  Rational den = 0;
  for (Index i = 0; i < exact.size(); ++i) {
    const Rational d = exact(i) - Rational(approx(i));
    num += d * d;
    den += exact(i) * exact(i);
  }
  if (den == 0) return num == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(nearest_double(num / den));
}

}  // namespace tpn
