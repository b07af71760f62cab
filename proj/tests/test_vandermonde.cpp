#include "support.hpp"

#include "tpnewton/oracle.hpp"
#include "tpnewton/vandermonde.hpp"

#include <doctest.h>

using namespace tpn;
using namespace tpn::test;

TEST_CASE("vandermonde_matrix examples") {
  CHECK(vandermonde_matrix(qnodes({"1", "2", "3"})) == qmat({{"1", "1", "1"}, {"1", "2", "4"}, {"1", "3", "9"}}));
  CHECK(vandermonde_matrix(qnodes({"5/3"})) == qmat({{"1"}}));
  CHECK(vandermonde_matrix(qnodes({"0", "1"})) == qmat({{"1", "0"}, {"1", "1"}}));
}

TEST_CASE("bd_vandermonde examples") {
  const auto bd = bd_vandermonde(qnodes({"1", "2", "3"}));
  CHECK(bd(1, 0) == 1);
  CHECK(bd(2, 0) == 1);
  CHECK(bd(2, 1) == 1);
  CHECK(bd.pivots() == qvec({"1", "1", "2"}));
  CHECK(bd(0, 1) == 1);
  CHECK(bd(0, 2) == 1);
  CHECK(bd(1, 2) == 2);
  CHECK(assemble(bd) == vandermonde_matrix(qnodes({"1", "2", "3"})));

  const auto two = bd_vandermonde(qnodes({"1", "2"}));
  CHECK(two.pivots() == qvec({"1", "1"}));
  CHECK(two(0, 1) == 1);

  try {
    bd_vandermonde(qnodes({"0", "1"}));
    FAIL("zero node accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveNodes);
  }
  try {
    bd_vandermonde(qnodes({"2", "1"}));
    FAIL("decreasing accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIncreasing);
  }
}

TEST_CASE("bd_change_of_basis_u examples") {
  CHECK(assemble(bd_change_of_basis_u(qnodes({"1", "2", "3"}))) ==
        qmat({{"1", "1", "1"}, {"0", "1", "3"}, {"0", "0", "1"}}));
  CHECK(assemble(bd_change_of_basis_u(qnodes({"4"}))) == qmat({{"1"}}));
  CHECK(assemble(bd_change_of_basis_u(qnodes({"0", "1"}))) == qmat({{"1", "0"}, {"0", "1"}}));
}

TEST_CASE("crout examples") {
  const auto p = crout(qnodes({"1", "2", "3"}));
  CHECK(p.lower * p.upper == vandermonde_matrix(qnodes({"1", "2", "3"})));
  const auto single = crout(qnodes({"9"}));
  CHECK(single.lower == qmat({{"1"}}));
  CHECK(single.upper == qmat({{"1"}}));
  const auto p01 = crout(qnodes({"0", "1"}));
  CHECK(p01.lower == qmat({{"1", "0"}, {"1", "1"}}));
  CHECK(p01.upper == qmat({{"1", "0"}, {"0", "1"}}));
}

TEST_CASE("properties over random rational nodes") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int count = static_cast<int>(rng.uniform_int(1, 9));
    const auto t = classify_nodes(random_increasing_rationals(rng, count, Rational(1)));
    if (!(t[0] > 0)) continue;
    const auto v = vandermonde_matrix(t);

    const auto p = crout(t);
    CHECK(p.lower * p.upper == v);

    const auto bdv = bd_vandermonde(t);
    const auto bdl = bd_newton(t);
    CHECK(assemble(bdv) == v);
    for (Index i = 0; i < t.size(); ++i)
      for (Index j = 0; j <= i; ++j) CHECK(bdv(i, j) == bdl(i, j));

    // Upper triangle of U holds divided differences of monomials.
    for (Index j = 1; j < t.size(); ++j) {
      Vector<Rational> f(t.size());
      for (Index i = 0; i < t.size(); ++i) f(i) = power(t[i], static_cast<unsigned>(j));
      const Vector<Rational> dd = exact_divdiff(t.values(), f);
      for (Index i = 0; i <= j; ++i) CHECK(p.upper(i, j) == dd(i));
    }
  }
}

namespace {

// Every minor of `a` is strictly positive; brute force over subset bitmasks.
bool all_minors_positive(const Matrix<Rational>& a) {
  const Index n = a.rows();
  for (unsigned rows = 1; rows < (1u << n); ++rows)
    for (unsigned cols = 1; cols < (1u << n); ++cols) {
      if (__builtin_popcount(rows) != __builtin_popcount(cols)) continue;
      std::vector<Index> r, c;
      for (Index i = 0; i < n; ++i) {
        if (rows & (1u << i)) r.push_back(i);
        if (cols & (1u << i)) c.push_back(i);
      }
      Matrix<Rational> sub(static_cast<Index>(r.size()), static_cast<Index>(c.size()));
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
          sub(static_cast<Index>(i), static_cast<Index>(j)) = a(r[i], c[j]);
      if (!(exact_determinant(sub) > 0)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("strict total positivity of V for positive increasing nodes") {
  Rng rng(8);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = classify_nodes(random_increasing_rationals(rng, static_cast<int>(rng.uniform_int(2, 6)), Rational(2)));
    if (!(t[0] > 0)) continue;
    CHECK(all_minors_positive(vandermonde_matrix(t)));
    ++checked;
  }
  CHECK(checked > 0);
  // A zero node breaks strictness: the 1x1 minor v_{1,2} = t_1 vanishes.
  CHECK_FALSE(all_minors_positive(vandermonde_matrix(qnodes({"0", "1", "2"}))));
}
