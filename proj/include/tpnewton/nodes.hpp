#pragma once

#include "tpnewton/core.hpp"

#include <algorithm>
#include <vector>

namespace tpn {

enum class Ordering { StrictlyIncreasing, StrictlyDecreasing, UnorderedDistinct };

const char* to_string(Ordering ordering) noexcept;

/// Pairwise-distinct interpolation nodes t_1..t_{n+1} with their ordering.
/// Construct through classify_nodes().
template <class Scalar>
class NodeSequence {
 public:
  const std::vector<Scalar>& values() const { return values_; }
  Ordering ordering() const { return ordering_; }
  Index size() const { return static_cast<Index>(values_.size()); }
  /// Polynomial degree n = size() - 1.
  Index degree() const { return size() - 1; }
  const Scalar& operator[](Index i) const { return values_[static_cast<std::size_t>(i)]; }

  // A single node is trivially ordered both ways.
  bool increasing() const { return size() == 1 || ordering_ == Ordering::StrictlyIncreasing; }
  bool decreasing() const { return size() == 1 || ordering_ == Ordering::StrictlyDecreasing; }
  bool monotone() const { return increasing() || decreasing(); }

  Vector<Scalar> as_vector() const {
    Vector<Scalar> v(size());
    for (Index i = 0; i < size(); ++i) v(i) = (*this)[i];
    return v;
  }

  template <class Other>
  NodeSequence<Other> cast() const;

 private:
  template <class S>
  friend NodeSequence<S> classify_nodes(std::vector<S> values);

  std::vector<Scalar> values_;
  Ordering ordering_ = Ordering::StrictlyIncreasing;
};

/// Validates distinctness with exact comparisons and tags the ordering.
template <class Scalar>
NodeSequence<Scalar> classify_nodes(std::vector<Scalar> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "node list is empty");
  if constexpr (!is_exact_v<Scalar>) {
    for (const Scalar& v : values)
      if (!std::isfinite(static_cast<double>(v)))
        throw Error(ErrorKind::InvalidInput, "node is not finite");
  }

  std::vector<Scalar> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::DuplicateNodes, "interpolation nodes must be pairwise distinct");
  }

  bool inc = true;
  bool dec = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    inc = inc && values[i - 1] < values[i];
    dec = dec && values[i - 1] > values[i];
  }

  NodeSequence<Scalar> nodes;
  nodes.values_ = std::move(values);
  nodes.ordering_ = inc   ? Ordering::StrictlyIncreasing
                    : dec ? Ordering::StrictlyDecreasing
                          : Ordering::UnorderedDistinct;
  return nodes;
}

template <class Scalar>
template <class Other>
NodeSequence<Other> NodeSequence<Scalar>::cast() const {
  std::vector<Other> out;
  out.reserve(values_.size());
  for (const Scalar& v : values_) out.push_back(static_cast<Other>(v));
  return classify_nodes(std::move(out));
}

template <class Scalar>
NodeSequence<Scalar> reversed(const NodeSequence<Scalar>& nodes) {
  std::vector<Scalar> v(nodes.values().rbegin(), nodes.values().rend());
  return classify_nodes(std::move(v));
}

}  // namespace tpn
