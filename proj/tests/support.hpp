#pragma once

#include "tpnewton/core.hpp"
#include "tpnewton/io.hpp"
#include "tpnewton/nodes.hpp"
#include "tpnewton/random.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace tpn::test {

inline Rational q(const std::string& literal) { return parse_rational(literal); }

inline std::vector<Rational> qs(std::initializer_list<const char*> literals) {
  std::vector<Rational> out;
  for (const char* s : literals) out.push_back(q(s));
  return out;
}

inline NodeSequence<Rational> qnodes(std::initializer_list<const char*> literals) {
  return classify_nodes(qs(literals));
}

inline Vector<Rational> qvec(std::initializer_list<const char*> literals) {
  const auto v = qs(literals);
  Vector<Rational> out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

inline Matrix<Rational> qmat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const auto n = static_cast<Index>(rows.size());
  const auto m = static_cast<Index>(rows.begin()->size());
  Matrix<Rational> out(n, m);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const char* s : row) out(i, j++) = q(s);
    ++i;
  }
  return out;
}

inline Rational power(const Rational& x, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

inline Vector<double> dvec(std::initializer_list<double> values) {
  Vector<double> out(static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) out(i++) = v;
  return out;
}

/// Random rational p/q with 1 <= p <= pmax, 1 <= q <= qmax.
inline Rational random_positive_rational(Rng& rng, int pmax = 9, int qmax = 9) {
  return Rational(rng.uniform_int(1, pmax)) / Rational(rng.uniform_int(1, qmax));
}

/// Strictly increasing rational nodes starting near `start`.
inline std::vector<Rational> random_increasing_rationals(Rng& rng, int count, Rational start = Rational(0)) {
  std::vector<Rational> t;
  Rational x = start + Rational(rng.uniform_int(-3, 3)) / Rational(rng.uniform_int(1, 4));
  for (int i = 0; i < count; ++i) {
    t.push_back(x);
    x += random_positive_rational(rng);
  }
  return t;
}

/// Strictly increasing doubles in (0, 1), sorted uniform draws.
inline std::vector<double> random_increasing_doubles(Rng& rng, int count) {
  std::vector<double> t;
  while (static_cast<int>(t.size()) < count) {
    t.clear();
    for (int i = 0; i < count; ++i) t.push_back(rng.uniform01());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  return t;
}

/// Nonzero integers of alternating sign, first one positive.
inline Vector<double> random_alternating(Rng& rng, Index count, std::int64_t lo = 1, std::int64_t hi = 1000) {
  Vector<double> f(count);
  for (Index i = 0; i < count; ++i) f(i) = parity_sign(i) * static_cast<double>(rng.uniform_int(lo, hi));
  return f;
}

}  // namespace tpn::test
