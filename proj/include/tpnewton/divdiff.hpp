#pragma once

// Divided differences d_{i,k} = [t_i, ..., t_{i+k}] f by the two-term
// recursion
//
//   d_{i,k} = (d_{i+1,k-1} - d_{i,k-1}) / (t_{i+k} - t_i),
//
// together with the certificate under which the recursion is free of
// cancellation: strictly monotone nodes and nonzero data of strictly
// alternating sign. Under that certificate every level of the table keeps
// alternating signs, so each numerator adds two numbers of equal sign.

#include "tpnewton/nodes.hpp"

#include <string>
#include <vector>

namespace tpn {

struct HraCertificate {
  bool certified = false;
  std::string report;

  explicit operator bool() const { return certified; }
};

template <class Scalar>
HraCertificate hra_certificate(const NodeSequence<Scalar>& nodes, const Vector<Scalar>& data) {
  if (data.size() != nodes.size()) {
    throw Error(ErrorKind::LengthMismatch, "data length " + std::to_string(data.size()) +
                                               " != node count " + std::to_string(nodes.size()));
  }
  if (!nodes.monotone()) return {false, "nodes are not strictly monotone"};
  for (Index i = 0; i < data.size(); ++i) {
    if (data(i) == Scalar(0)) return {false, "data value " + std::to_string(i + 1) + " is zero"};
    if (i > 0 && sign(data(i)) == sign(data(i - 1))) {
      return {false, "data values " + std::to_string(i) + " and " + std::to_string(i + 1) +
                         " have the same sign"};
    }
  }
  return {true, "certified"};
}

/// Triangular table of divided differences; level k holds d_{1,k}..d_{n+1-k,k}.
template <class Scalar>
class DividedDifferenceTable {
 public:
  DividedDifferenceTable(std::vector<Vector<Scalar>> levels, bool hra_certified)
      : levels_(std::move(levels)), hra_certified_(hra_certified) {}

  /// Degree n: levels run 0..n.
  Index order() const { return static_cast<Index>(levels_.size()) - 1; }
  bool hra_certified() const { return hra_certified_; }
  const Vector<Scalar>& level(Index k) const { return levels_.at(static_cast<std::size_t>(k)); }
  /// Zero-based d_{i,k}.
  const Scalar& operator()(Index i, Index k) const { return level(k)(i); }

 private:
  std::vector<Vector<Scalar>> levels_;
  bool hra_certified_;
};

template <class Scalar>
DividedDifferenceTable<Scalar> divided_difference_table(const NodeSequence<Scalar>& nodes,
                                                        const Vector<Scalar>& data) {
  const HraCertificate cert = hra_certificate(nodes, data);
  const Index size = nodes.size();

  std::vector<Vector<Scalar>> levels;
  levels.reserve(static_cast<std::size_t>(size));
  Vector<Scalar> buffer = data;
  levels.push_back(buffer);
  for (Index k = 1; k < size; ++k) {
    // In place: entry i only reads entries i and i+1 of the previous level.
    for (Index i = 0; i + k < size; ++i) {
      buffer(i) = (buffer(i + 1) - buffer(i)) / (nodes[i + k] - nodes[i]);
    }
    levels.push_back(buffer.head(size - k));
  }
  return DividedDifferenceTable<Scalar>(std::move(levels), cert.certified);
}

/// Newton-form coefficients ([t_1]f, [t_1,t_2]f, ..., [t_1..t_{n+1}]f).
template <class Scalar>
Vector<Scalar> newton_coefficients(const DividedDifferenceTable<Scalar>& table) {
  Vector<Scalar> d(table.order() + 1);
  for (Index k = 0; k <= table.order(); ++k) d(k) = table(0, k);
  return d;
}

}  // namespace tpn
