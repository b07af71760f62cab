#include "tpnewton/perturb.hpp"

#include <string>

namespace tpn {

double gamma(long k, const FloatModel& model) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "gamma index must be nonnegative");
  const double ku = static_cast<double>(k) * model.unit_roundoff;
  if (ku >= 1.0) throw Error(ErrorKind::ModelOverflow, "k*u >= 1 for k = " + std::to_string(k));
  return ku / (1.0 - ku);
}

double bd_forward_error_bound(long n, const FloatModel& model) {
  if (n <= 1) throw Error(ErrorKind::InvalidInput, "the BD forward bound needs n > 1");
  return gamma(4 * n - 5, model);
}

double multiplier_error_bound(long j, const FloatModel& model) {
  if (j < 1) throw Error(ErrorKind::IndexOutOfRange, "column index must be >= 1");
  return j == 1 ? 0.0 : gamma(4 * j - 5, model);
}

double pivot_error_bound(long i, const FloatModel& model) {
  if (i < 1) throw Error(ErrorKind::IndexOutOfRange, "row index must be >= 1");
  return i == 1 ? 0.0 : gamma(2 * i - 3, model);
}

PerturbationSpec make_perturbation_spec(double theta, double rel_gap) {
  if (!(theta >= 0.0)) throw Error(ErrorKind::InvalidInput, "theta must be nonnegative");
  if (!(rel_gap > 0.0)) throw Error(ErrorKind::InvalidInput, "rel_gap must be positive");
  return {theta, rel_gap, 1.0 / rel_gap};
}

StructuredCondition structured_condition(long n, const PerturbationSpec& spec) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  const double cond = static_cast<double>(2 * n - 2) * spec.kappa * spec.theta;
  if (cond >= 1.0) {
    throw Error(ErrorKind::BoundBlowup, "(2n-2) kappa theta = " + std::to_string(cond) + " >= 1");
  }
  return {cond, cond / (1.0 - cond)};
}

}  // namespace tpn
