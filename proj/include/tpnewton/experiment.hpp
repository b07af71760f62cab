#pragma once

// Error experiments on Newton collocation matrices at equidistant nodes:
//   table 1  Newton coefficients, alternating random integer data
//   table 2  Newton coefficients, Runge data 1/(1+25 t^2) on [-2, 2]
//   table 3  smallest singular value of L
//   table 4  inverse of L
// Every row reports max |(y - y~)/y| against the exact or high-precision
// reference computed from the same floating-point inputs. Rows fed by random
// data reproduce error magnitudes, not specific digits.

#include "tpnewton/core.hpp"
#include "tpnewton/nodes.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tpn {

/// Conventional baselines. Solves and inverses use forward substitution when
/// the matrix is lower triangular and partially pivoted LU otherwise; the
/// SVD is bidiagonalization based.
namespace baseline {

Vector<double> solve(const Matrix<double>& a, const Vector<double>& b);
Matrix<double> inverse(const Matrix<double>& a);
double smallest_singular_value(const Matrix<double>& a);

}  // namespace baseline

/// t_i = a + (i-1)(b-a)/(count-1), exact; reversed for decreasing order.
std::vector<Rational> equidistant_nodes(int count, const Rational& a, const Rational& b, bool increasing);

/// Nearest doubles of exact nodes, each rounded once.
NodeSequence<double> round_nodes(const std::vector<Rational>& exact);

/// Random integers in [0, 1000] with signs +, -, +, ...
Vector<double> alternating_integer_data(int count, std::uint64_t seed);

/// fl(1 / (1 + 25 t^2)) at each node.
Vector<double> runge_data(const NodeSequence<double>& nodes);

struct ErrorRow {
  int n_plus_1 = 0;
  std::string order;   // "inc" | "dec"
  std::string method;  // "divdiff" | "naive" | "bd" | "svd" | "inv"
  double max_rel_error = 0.0;
  std::uint64_t seed = 0;
  std::string baseline;  // reference the error was measured against
};

struct ErrorReport {
  int table = 0;
  std::uint64_t seed = 0;
  std::string node_spec;
  std::string timestamp;
  std::vector<ErrorRow> rows;

  /// Header `n_plus_1,order,method,max_rel_error,seed`; deterministic.
  std::string to_csv() const;
  std::string to_markdown() const;
  nlohmann::json to_json() const;

  const ErrorRow& row(int n_plus_1, const std::string& order, const std::string& method) const;
};

std::vector<int> default_sizes();

/// Runs one table. Throws InvalidInput for an unknown table id.
ErrorReport run_experiment(int table, const std::vector<int>& sizes, std::uint64_t seed);

}  // namespace tpn
