#include "tpnewton/experiment.hpp"

#include "tpnewton/divdiff.hpp"
#include "tpnewton/io.hpp"
#include "tpnewton/newton.hpp"
#include "tpnewton/oracle.hpp"
#include "tpnewton/random.hpp"
#include "tpnewton/tn_algebra.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace tpn {

namespace baseline {

namespace {

bool lower_triangular(const Matrix<double>& a) {
  for (Index j = 1; j < a.cols(); ++j)
    for (Index i = 0; i < j; ++i)
      if (a(i, j) != 0.0) return false;
  return true;
}

}  // namespace

Vector<double> solve(const Matrix<double>& a, const Vector<double>& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorKind::LengthMismatch, "baseline solve: dimension mismatch");
  }
  if (lower_triangular(a)) return a.triangularView<Eigen::Lower>().solve(b);
  return a.partialPivLu().solve(b);
}

Matrix<double> inverse(const Matrix<double>& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::LengthMismatch, "baseline inverse: matrix not square");
  const Matrix<double> identity = Matrix<double>::Identity(a.rows(), a.cols());
  if (lower_triangular(a)) return a.triangularView<Eigen::Lower>().solve(identity);
  return a.partialPivLu().solve(identity);
}

double smallest_singular_value(const Matrix<double>& a) {
  Eigen::BDCSVD<Matrix<double>> svd(a);
  if (svd.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "baseline SVD failed");
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace baseline

std::vector<Rational> equidistant_nodes(int count, const Rational& a, const Rational& b, bool increasing) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "node count must be positive");
  if (count > 1 && !(a < b)) throw Error(ErrorKind::InvalidInput, "interval must satisfy a < b");
  std::vector<Rational> t;
  t.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t.push_back(count == 1 ? a : Rational(a + (b - a) * Rational(i) / Rational(count - 1)));
  }
  if (!increasing) std::reverse(t.begin(), t.end());
  return t;
}

NodeSequence<double> round_nodes(const std::vector<Rational>& exact) {
  std::vector<double> t;
  t.reserve(exact.size());
  for (const auto& q : exact) t.push_back(nearest_double(q));
  return classify_nodes(std::move(t));
}

Vector<double> alternating_integer_data(int count, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 1);
  Vector<double> f(count);
  for (int i = 0; i < count; ++i) f(i) = parity_sign(i) * static_cast<double>(rng.uniform_int(0, 1000));
  return f;
}

Vector<double> runge_data(const NodeSequence<double>& nodes) {
  Vector<double> f(nodes.size());
  for (Index i = 0; i < nodes.size(); ++i) f(i) = 1.0 / (1.0 + 25.0 * nodes[i] * nodes[i]);
  return f;
}

namespace {

const char* kRationalOracle = "rational";
const char* kJacobiOracle = "mpfr-jacobi";
const char* kNormwiseOracle = "rational-2norm";

std::string now_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Setup {
  const char* order;
  bool increasing;
};

constexpr Setup kBothOrders[] = {{"inc", true}, {"dec", false}};

BDMatrix<double> bd_for(const NodeSequence<double>& t) {
  return t.increasing() ? bd_newton(t) : bd_newton_j(t);
}

// Runge data on symmetric nodes has exact zero coefficients, where the
// entrywise ratio is undefined, so those rows are measured normwise.
void coefficient_rows(ErrorReport& report, int size, const Setup& setup, const NodeSequence<double>& t,
                      const Vector<double>& f, bool normwise) {
  const Vector<Rational> exact = exact_divdiff(exact_values(t.values()), exact_vector(f));
  const Vector<double> divdiff = newton_coefficients(divided_difference_table(t, f));
  const Vector<double> naive = baseline::solve(colloc_matrix(t), f);
  const Vector<double> bd = solve_newton_interpolation(t, f).coefficients;
  auto error = [&](const Vector<double>& y) {
    return normwise ? normwise_relative_error(exact, y) : max_relative_error(exact, y);
  };
  const char* oracle = normwise ? kNormwiseOracle : kRationalOracle;
  report.rows.push_back({size, setup.order, "divdiff", error(divdiff), report.seed, oracle});
  report.rows.push_back({size, setup.order, "naive", error(naive), report.seed, oracle});
  report.rows.push_back({size, setup.order, "bd", error(bd), report.seed, oracle});
}

// L formed exactly from the (already rounded) nodes; the conventional
// methods also pay for rounding L itself, the BD route never forms it.
Matrix<Rational> exact_colloc(const NodeSequence<double>& t) {
  return colloc_matrix(classify_nodes(exact_values(t.values())));
}

void sigma_rows(ErrorReport& report, int size, const Setup& setup, const NodeSequence<double>& t) {
  const Matrix<double> l = colloc_matrix(t);
  const HpSvdResult ref = hp_singular_values(exact_colloc(t));
  const HighPrecision& exact = ref.smallest();
  report.rows.push_back({size, setup.order, "svd", relative_error(exact, baseline::smallest_singular_value(l)),
                         report.seed, kJacobiOracle});
  report.rows.push_back({size, setup.order, "bd", relative_error(exact, smallest_singular_value(bd_for(t))),
                         report.seed, kJacobiOracle});
}

void inverse_rows(ErrorReport& report, int size, const Setup& setup, const NodeSequence<double>& t) {
  const Matrix<double> l = colloc_matrix(t);
  const Matrix<Rational> exact = exact_inverse(exact_colloc(t));
  report.rows.push_back({size, setup.order, "inv", max_relative_error(exact, baseline::inverse(l)), report.seed,
                         kRationalOracle});
  report.rows.push_back({size, setup.order, "bd", max_relative_error(exact, tn_inverse(bd_for(t))), report.seed,
                         kRationalOracle});
}

}  // namespace

std::vector<int> default_sizes() { return {15, 25, 50, 100}; }

ErrorReport run_experiment(int table, const std::vector<int>& sizes, std::uint64_t seed) {
  if (table < 1 || table > 4) throw Error(ErrorKind::InvalidInput, "table must be 1, 2, 3 or 4");
  for (int size : sizes)
    if (size < 2) throw Error(ErrorKind::InvalidInput, "experiment sizes must be at least 2");

  ErrorReport report;
  report.table = table;
  report.seed = seed;
  report.timestamp = now_utc();
  report.node_spec = table == 2 ? "equidistant on [-2,2], increasing" : "equidistant on [0,1], increasing and decreasing";

  const Rational zero(0), one(1), two(2);
  for (int size : sizes) {
    if (table == 2) {
      const auto t = round_nodes(equidistant_nodes(size, -two, two, true));
      coefficient_rows(report, size, kBothOrders[0], t, runge_data(t), true);
      continue;
    }
    for (const Setup& setup : kBothOrders) {
      const auto t = round_nodes(equidistant_nodes(size, zero, one, setup.increasing));
      switch (table) {
        case 1: {
          // One draw per size, shared by both orders.
          Vector<double> f = alternating_integer_data(size, seed ^ static_cast<std::uint64_t>(size));
          coefficient_rows(report, size, setup, t, f, false);
          break;
        }
        case 3: sigma_rows(report, size, setup, t); break;
        case 4: inverse_rows(report, size, setup, t); break;
        default: break;
      }
    }
  }
  return report;
}

std::string ErrorReport::to_csv() const {
  std::ostringstream out;
  out << "n_plus_1,order,method,max_rel_error,seed\n";
  for (const ErrorRow& r : rows) {
    out << r.n_plus_1 << ',' << r.order << ',' << r.method << ',' << format_double(r.max_rel_error) << ','
        << r.seed << '\n';
  }
  return out.str();
}

std::string ErrorReport::to_markdown() const {
  std::vector<std::string> methods;
  for (const ErrorRow& r : rows)
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);

  std::vector<std::pair<int, std::string>> keys;
  for (const ErrorRow& r : rows) {
    const std::pair<int, std::string> key{r.n_plus_1, r.order};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }

  constexpr int kWidth = 10;
  std::ostringstream out;
  out << "| " << std::setw(6) << "n+1" << " | " << std::setw(5) << "order";
  for (const auto& m : methods) out << " | " << std::setw(kWidth) << m;
  out << " |\n|" << std::string(8, '-') << '|' << std::string(7, '-');
  for (std::size_t i = 0; i < methods.size(); ++i) out << '|' << std::string(kWidth + 2, '-');
  out << "|\n";
  for (const auto& [size, order] : keys) {
    out << "| " << std::setw(6) << size << " | " << std::setw(5) << order;
    for (const auto& m : methods) {
      std::string cell = "-";
      for (const ErrorRow& r : rows)
        if (r.n_plus_1 == size && r.order == order && r.method == m) cell = sci(r.max_rel_error);
      out << " | " << std::setw(kWidth) << cell;
    }
    out << " |\n";
  }
  return out.str();
}

nlohmann::json ErrorReport::to_json() const {
  nlohmann::json out_rows = nlohmann::json::array();
  for (const ErrorRow& r : rows) {
    out_rows.push_back({{"n_plus_1", r.n_plus_1},
                        {"order", r.order},
                        {"method", r.method},
                        {"max_rel_error", r.max_rel_error},
                        {"seed", r.seed},
                        {"baseline", r.baseline}});
  }
  return {{"table", table}, {"seed", seed}, {"nodes", node_spec}, {"timestamp", timestamp}, {"rows", out_rows}};
}

const ErrorRow& ErrorReport::row(int n_plus_1, const std::string& order, const std::string& method) const {
  for (const ErrorRow& r : rows)
    if (r.n_plus_1 == n_plus_1 && r.order == order && r.method == method) return r;
  throw Error(ErrorKind::InvalidInput, "no row for n+1=" + std::to_string(n_plus_1) + " " + order + " " + method);
}

}  // namespace tpn
