#pragma once

// Rounding-error model fl(a op b) = (a op b)(1 + delta)^{+-1}, |delta| <= u,
// the accumulated-error constants gamma_k = k u / (1 - k u), forward error
// bounds for the computed BD(L), and the structured perturbation bound for
// relative node perturbations t_i' = t_i (1 + delta_i).

#include "tpnewton/nodes.hpp"
#include "tpnewton/random.hpp"

#include <cstdint>
#include <limits>

namespace tpn {

struct FloatModel {
  double unit_roundoff;

  explicit FloatModel(double u) : unit_roundoff(u) {
    if (!(u > 0.0 && u < 1.0)) throw Error(ErrorKind::InvalidInput, "unit roundoff must lie in (0,1)");
  }

  /// IEEE binary64 with round-to-nearest: u = 2^-53.
  static FloatModel binary64() { return FloatModel(std::numeric_limits<double>::epsilon() / 2); }
};

double gamma(long k, const FloatModel& model);

/// gamma_{4n-5}: entrywise relative bound for fl(BD(L)) of order n+1, n > 1.
double bd_forward_error_bound(long n, const FloatModel& model);

/// Bound for the multiplier m_{i,j} (1-based j): 0 for j = 1, else gamma_{4j-5}.
double multiplier_error_bound(long j, const FloatModel& model);

/// Bound for the pivot p_{i,i} (1-based i): 0 for i = 1, else gamma_{2i-3}.
double pivot_error_bound(long i, const FloatModel& model);

struct PerturbationSpec {
  double theta;
  double rel_gap;
  double kappa;
};

PerturbationSpec make_perturbation_spec(double theta, double rel_gap);

struct StructuredCondition {
  double condition;  // (2n-2) kappa theta
  double bound;      // condition / (1 - condition)
};

StructuredCondition structured_condition(long n, const PerturbationSpec& spec);

/// min_{i != j} |t_i - t_j| / (|t_i| + |t_j|).
template <class Scalar>
Scalar rel_gap(const NodeSequence<Scalar>& nodes) {
  if (nodes.size() < 2) throw Error(ErrorKind::InvalidInput, "rel_gap needs at least two nodes");
  bool first = true;
  Scalar best(0);
  for (Index i = 0; i < nodes.size(); ++i) {
    for (Index j = i + 1; j < nodes.size(); ++j) {
      const Scalar den = abs_value(nodes[i]) + abs_value(nodes[j]);
      if (den == Scalar(0)) throw Error(ErrorKind::ZeroDenominator, "pair with |t_i| + |t_j| = 0");
      const Scalar gap = abs_value(Scalar(nodes[i] - nodes[j])) / den;
      if (first || gap < best) best = gap;
      first = false;
    }
  }
  return best;
}

/// t_i' = t_i (1 + delta_i), delta_i = theta * Rng::symmetric() drawn in node
/// order from Rng(seed). Exact for Rational; for double the product is
/// rounded once.
template <class Scalar>
NodeSequence<Scalar> perturb_nodes(const NodeSequence<Scalar>& nodes, double theta,
                                   std::uint64_t seed) {
  if (!(theta >= 0.0)) throw Error(ErrorKind::InvalidInput, "theta must be nonnegative");
  Rng rng(seed);
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(nodes.size()));
  for (Index i = 0; i < nodes.size(); ++i) {
    const double delta = theta * rng.symmetric();
    out.push_back(nodes[i] * (Scalar(1) + Scalar(delta)));
  }
  NodeSequence<Scalar> perturbed = [&] {
    try {
      return classify_nodes(std::move(out));
    } catch (const Error&) {
      throw Error(ErrorKind::OrderingBroken, "perturbation merged two nodes");
    }
  }();
  if (perturbed.ordering() != nodes.ordering() && nodes.size() > 1) {
    throw Error(ErrorKind::OrderingBroken, "perturbation changed the node ordering");
  }
  return perturbed;
}

}  // namespace tpn
