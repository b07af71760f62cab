#pragma once

// Evaluation of the Lagrange interpolant: Newton form, the modified Lagrange
// formula l(t) * sum f_i w_i / (t - t_i), and the barycentric quotient.

#include "tpnewton/nodes.hpp"

#include <optional>

namespace tpn {

template <class Scalar>
struct NewtonInterpolant {
  NodeSequence<Scalar> nodes;
  Vector<Scalar> coefficients;
  bool hra = false;
};

template <class Scalar>
NewtonInterpolant<Scalar> make_newton_interpolant(NodeSequence<Scalar> nodes,
                                                  Vector<Scalar> coefficients, bool hra = false) {
  if (coefficients.size() != nodes.size()) {
    throw Error(ErrorKind::LengthMismatch, "coefficient count must equal node count");
  }
  return {std::move(nodes), std::move(coefficients), hra};
}

/// Nested evaluation r <- d_i + (t - t_i) r, n multiplications.
template <class Scalar>
Scalar eval_newton(const NewtonInterpolant<Scalar>& p, const Scalar& t) {
  const Index last = p.coefficients.size() - 1;
  Scalar r = p.coefficients(last);
  for (Index i = last - 1; i >= 0; --i) r = p.coefficients(i) + (t - p.nodes[i]) * r;
  return r;
}

/// w_i = 1 / prod_{k != i} (t_i - t_k).
template <class Scalar>
Vector<Scalar> barycentric_weights(const NodeSequence<Scalar>& nodes) {
  Vector<Scalar> w(nodes.size());
  for (Index i = 0; i < nodes.size(); ++i) {
    Scalar prod(1);
    for (Index k = 0; k < nodes.size(); ++k)
      if (k != i) prod *= nodes[i] - nodes[k];
    w(i) = Scalar(1) / prod;
  }
  return w;
}

/// Divides every weight by max |w_i|. The barycentric quotient is invariant
/// under a common factor; the modified Lagrange formula is not.
template <class Scalar>
Vector<Scalar> normalize_weights(const Vector<Scalar>& w) {
  Scalar scale(0);
  for (Index i = 0; i < w.size(); ++i) scale = std::max(scale, abs_value(w(i)));
  return w / scale;
}

template <class Scalar>
struct BarycentricData {
  NodeSequence<Scalar> nodes;
  Vector<Scalar> weights;
  Vector<Scalar> data;
};

template <class Scalar>
BarycentricData<Scalar> make_barycentric(NodeSequence<Scalar> nodes, Vector<Scalar> data,
                                         bool normalize = false) {
  if (data.size() != nodes.size()) {
    throw Error(ErrorKind::LengthMismatch, "data length must equal node count");
  }
  Vector<Scalar> w = barycentric_weights(nodes);
  if (normalize) w = normalize_weights(w);
  return {std::move(nodes), std::move(w), std::move(data)};
}

namespace detail {

template <class Scalar>
std::optional<Scalar> node_hit(const BarycentricData<Scalar>& b, const Scalar& t) {
  for (Index i = 0; i < b.nodes.size(); ++i)
    if (t == b.nodes[i]) return b.data(i);
  return std::nullopt;
}

}  // namespace detail

template <class Scalar>
Scalar eval_barycentric(const BarycentricData<Scalar>& b, const Scalar& t) {
  if (auto hit = detail::node_hit(b, t)) return *hit;
  Scalar num(0);
  Scalar den(0);
  for (Index i = 0; i < b.nodes.size(); ++i) {
    const Scalar q = b.weights(i) / (t - b.nodes[i]);
    num += b.data(i) * q;
    den += q;
  }
  return num / den;
}

template <class Scalar>
Scalar eval_modified_lagrange(const BarycentricData<Scalar>& b, const Scalar& t) {
  if (auto hit = detail::node_hit(b, t)) return *hit;
  Scalar ell(1);
  Scalar sum(0);
  for (Index i = 0; i < b.nodes.size(); ++i) {
    ell *= t - b.nodes[i];
    sum += b.data(i) * b.weights(i) / (t - b.nodes[i]);
  }
  return ell * sum;
}

}  // namespace tpn
