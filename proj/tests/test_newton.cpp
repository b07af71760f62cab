#include "support.hpp"

#include "tpnewton/newton.hpp"
#include "tpnewton/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace tpn;
using namespace tpn::test;

TEST_CASE("classify_nodes") {
  CHECK(classify_nodes(std::vector<double>{0, 0.5, 1}).ordering() == Ordering::StrictlyIncreasing);
  CHECK(classify_nodes(std::vector<double>{1, 0.5, 0}).ordering() == Ordering::StrictlyDecreasing);
  const auto mixed = classify_nodes(std::vector<double>{0, 1, 0.5});
  CHECK(mixed.ordering() == Ordering::UnorderedDistinct);
  CHECK_FALSE(mixed.monotone());
  CHECK(std::string(to_string(mixed.ordering())) == "unordered");

  const auto single = classify_nodes(std::vector<double>{3});
  CHECK(single.increasing());
  CHECK(single.decreasing());
  CHECK(single.degree() == 0);

  try {
    classify_nodes(std::vector<double>{0, 1, 0});
    FAIL("duplicates accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateNodes);
  }
  CHECK_THROWS_AS(classify_nodes(std::vector<double>{}), Error);
  CHECK_THROWS_AS(classify_nodes(std::vector<double>{0, NAN}), Error);
  // Exact comparison: nearby but distinct doubles are fine.
  CHECK(classify_nodes(std::vector<double>{1.0, std::nextafter(1.0, 2.0)}).increasing());
  CHECK_THROWS_AS(classify_nodes(qs({"1/2", "2/4"})), Error);
}

TEST_CASE("reversed flips the ordering") {
  const auto t = qnodes({"0", "1/3", "1"});
  const auto r = reversed(t);
  CHECK(r.decreasing());
  CHECK(r[0] == 1);
  CHECK(r[2] == 0);
}

TEST_CASE("colloc_matrix examples") {
  CHECK(colloc_matrix(qnodes({"0", "1/2", "1"})) == qmat({{"1", "0", "0"}, {"1", "1/2", "0"}, {"1", "1", "1/2"}}));
  CHECK(colloc_matrix(qnodes({"7"})) == qmat({{"1"}}));
  CHECK(colloc_matrix(qnodes({"1", "1/2", "0"})) == qmat({{"1", "0", "0"}, {"1", "-1/2", "0"}, {"1", "-1", "1/2"}}));
}

TEST_CASE("bd_newton examples") {
  const auto bd = bd_newton(qnodes({"0", "1/2", "1"}));
  CHECK(bd(1, 0) == 1);
  CHECK(bd(2, 0) == 1);
  CHECK(bd(2, 1) == 1);
  CHECK(bd.pivots() == qvec({"1", "1/2", "1/2"}));
  CHECK(bd.is_lower());
  CHECK_FALSE(bd.parity());

  const auto two = bd_newton(qnodes({"-3/4", "5/2"}));
  CHECK(two(1, 0) == 1);
  CHECK(two.pivots() == qvec({"1", "13/4"}));

  const auto b013 = bd_newton(qnodes({"0", "1", "3"}));
  CHECK(b013(2, 1) == 2);
  CHECK(b013(2, 2) == 6);

  CHECK(bd_newton(qnodes({"5"})) == BDMatrix<Rational>::identity(1));

  try {
    bd_newton(qnodes({"1", "0"}));
    FAIL("decreasing accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIncreasing);
  }
  CHECK_THROWS_AS(bd_newton(qnodes({"0", "1", "1/2"})), Error);
}

TEST_CASE("bd_newton_j examples") {
  const auto t = qnodes({"1", "1/2", "0"});
  const auto bd = bd_newton_j(t);
  CHECK(bd.parity());
  CHECK(bd(1, 0) == 1);
  CHECK(bd(2, 0) == 1);
  CHECK(bd(2, 1) == 1);
  CHECK(bd.pivots() == qvec({"1", "1/2", "1/2"}));
  CHECK(bd.is_nonnegative());
  CHECK(assemble(bd) == qmat({{"1", "0", "0"}, {"1", "1/2", "0"}, {"1", "1", "1/2"}}));
  CHECK(assemble(bd) == times_j(colloc_matrix(t)));

  CHECK(bd_newton_j(qnodes({"3", "1"})).pivots() == qvec({"1", "2"}));
  try {
    bd_newton_j(qnodes({"0", "1"}));
    FAIL("increasing accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDecreasing);
  }
}

TEST_CASE("eigenvalues are the pivots") {
  CHECK(eigenvalues(bd_newton(qnodes({"0", "1/2", "1"}))) == qvec({"1", "1/2", "1/2"}));
  CHECK(eigenvalues(BDMatrix<Rational>::identity(1)) == qvec({"1"}));
  CHECK(eigenvalues(bd_newton(qnodes({"0", "1", "3"}))) == qvec({"1", "1", "6"}));
  Matrix<double> g = Matrix<double>::Identity(2, 2);
  g(0, 1) = 1;
  try {
    eigenvalues(BDMatrix<double>(g));
    FAIL("upper part accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotTriangular);
  }
}

TEST_CASE("positivity and exact reconstruction over random rational nodes") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int count = static_cast<int>(rng.uniform_int(1, 9));
    const auto t = classify_nodes(random_increasing_rationals(rng, count));
    const auto bd = bd_newton(t);
    for (Index i = 0; i < t.size(); ++i)
      for (Index j = 0; j <= i; ++j) CHECK(bd(i, j) > 0);
    CHECK(bd.is_lower());
    CHECK(assemble(bd) == colloc_matrix(t));
    CHECK(bd == exact_bd_newton(t.values()));

    const auto r = reversed(t);
    const auto bdj = bd_newton_j(r);
    CHECK(bdj.is_nonnegative());
    CHECK(assemble(bdj) == times_j(colloc_matrix(r)));
  }
}

TEST_CASE("node recovery identities") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = classify_nodes(random_increasing_rationals(rng, static_cast<int>(rng.uniform_int(3, 8))));
    const auto bd = bd_newton(t);
    CHECK(t[1] - t[0] == bd(1, 1));
    for (Index i = 2; i < t.size(); ++i) CHECK(t[i] - t[i - 1] == bd(i, 1) * (t[i - 1] - t[i - 2]));
  }
}

TEST_CASE("double BD entries stay within the forward error envelope") {
  Rng rng(3);
  const double u = 0x1.0p-53;
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = classify_nodes(random_increasing_doubles(rng, 30));
    const auto exact = exact_bd_newton(exact_values(t.values()));
    const auto bd = bd_newton(t);
    const double bound = (4 * 29 - 5) * u / (1 - (4 * 29 - 5) * u);
    for (Index i = 0; i < t.size(); ++i)
      for (Index j = 0; j <= i; ++j) CHECK(relative_error(exact(i, j), bd(i, j)) <= bound);
  }
}

TEST_CASE("subnormal pivots are reported") {
  std::vector<double> t;
  for (int i = 0; i < 40; ++i) t.push_back(i * 1e-12);
  try {
    bd_newton(classify_nodes(t));
    FAIL("subnormal pivot not detected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SubnormalPivot);
    CHECK(is_numerical_contract(e.kind()));
  }
  std::vector<double> wide;
  for (int i = 0; i < 60; ++i) wide.push_back(i * 1e10);
  try {
    bd_newton(classify_nodes(wide));
    FAIL("overflow not detected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}
