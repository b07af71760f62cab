// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"

#include "tpnewton/divdiff.hpp"
#include "tpnewton/experiment.hpp"
#include "tpnewton/interp.hpp"
#include "tpnewton/newton.hpp"
#include "tpnewton/oracle.hpp"
#include "tpnewton/perturb.hpp"
#include "tpnewton/tn_algebra.hpp"
#include "tpnewton/vandermonde.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace tpn;
using namespace tpn::test;

namespace {

constexpr double u = 0x1.0p-53;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Worst error over every size and order for one method.
double worst(const ErrorReport& r, const std::string& method) {
  double w = 0;
  for (const auto& row : r.rows)
    if (row.method == method) w = std::max(w, row.max_rel_error);
  return w;
}

double min_at(const ErrorReport& r, int size, const std::string& method) {
  double m = INFINITY;
  for (const auto& row : r.rows)
    if (row.n_plus_1 == size && row.method == method) m = std::min(m, row.max_rel_error);
  return m;
}

Outcome exact_reconstruction() {
  Rng rng(kSeed);
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int count = static_cast<int>(rng.uniform_int(1, 9));
    const auto t = classify_nodes(random_increasing_rationals(rng, count));
    const auto r = reversed(t);
    const auto positive = classify_nodes(random_increasing_rationals(rng, count, Rational(4)));
    const auto lu = crout(positive);
    const Matrix<Rational> v = vandermonde_matrix(positive);
    if (assemble(bd_newton(t)) != colloc_matrix(t)) ++bad;
    if (assemble(bd_newton_j(r)) != times_j(colloc_matrix(r))) ++bad;
    if (assemble(bd_vandermonde(positive)) != v) ++bad;
    if (Matrix<Rational>(lu.lower * lu.upper) != v) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " mismatches in 200 exact comparisons"};
}

Outcome table1() {
  const auto r = run_experiment(1, default_sizes(), kSeed);
  const double bd = worst(r, "bd");
  const double dd = worst(r, "divdiff");
  const double naive = min_at(r, 100, "naive");
  return {bd <= 1e-13 && dd <= 1e-13 && naive >= 1e3,
          "bd " + sci(bd) + ", divdiff " + sci(dd) + ", naive@100 " + sci(naive)};
}

Outcome table2() {
  const auto r = run_experiment(2, default_sizes(), kSeed);
  bool within = true;
  for (int size : default_sizes()) {
    const double a = r.row(size, "inc", "bd").max_rel_error;
    const double b = r.row(size, "inc", "divdiff").max_rel_error;
    within = within && std::max(a, b) <= 100 * std::max(std::min(a, b), u);
  }
  const double bd = r.row(100, "inc", "bd").max_rel_error;
  const double dd = r.row(100, "inc", "divdiff").max_rel_error;
  const double naive = r.row(100, "inc", "naive").max_rel_error;
  return {within && bd <= 1e-6 && dd <= 1e-6 && naive >= 1.0,
          std::string("normwise; factor-100 agreement ") + (within ? "holds" : "broken") + ", bd@100 " + sci(bd) +
              ", divdiff@100 " + sci(dd) + ", naive@100 " + sci(naive)};
}

Outcome table3() {
  const auto r = run_experiment(3, default_sizes(), kSeed);
  const double bd = worst(r, "bd");
  const double svd = std::min(min_at(r, 50, "svd"), min_at(r, 100, "svd"));
  return {bd <= 1e-12 && svd >= 1e-2, "bd " + sci(bd) + ", svd@50/100 >= " + sci(svd)};
}

Outcome table4() {
  const auto r = run_experiment(4, default_sizes(), kSeed);
  const double bd = worst(r, "bd");
  const double inv = min_at(r, 100, "inv");
  return {bd <= 1e-12 && inv >= 1e3, "bd " + sci(bd) + ", inv@100 " + sci(inv)};
}

Outcome bd_envelope() {
  const FloatModel model = FloatModel::binary64();
  Rng rng(kSeed);
  int violations = 0;
  double ratio = 0;
  for (int n : {5, 15, 25, 50}) {
    const double bound = bd_forward_error_bound(n, model);
    for (int trial = 0; trial < 100; ++trial) {
      const auto t = classify_nodes(random_increasing_doubles(rng, n + 1));
      const auto exact = exact_bd_newton(exact_values(t.values()));
      const auto bd = bd_newton(t);
      for (Index i = 0; i <= n; ++i)
        for (Index j = 0; j <= i; ++j) {
          const double e = relative_error(exact(i, j), bd(i, j));
          const double entry = i == j ? pivot_error_bound(i + 1, model) : multiplier_error_bound(j + 1, model);
          if (e > bound || e > entry) ++violations;
          ratio = std::max(ratio, e / bound);
        }
    }
  }
  return {violations == 0,
          std::to_string(violations) + " violations over 400 node sets, worst error/bound " + sci(ratio)};
}

Outcome perturbation_envelope() {
  const double theta = 1e-10;
  const auto t = classify_nodes(equidistant_nodes(20, Rational(0), Rational(1), true));
  const double gap = static_cast<double>(rel_gap(t));
  const double bound = structured_condition(t.size() - 1, make_perturbation_spec(theta, gap)).bound;
  const auto bd = bd_newton(t);
  double change = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto bdp = bd_newton(perturb_nodes(t, theta, kSeed * 1000 + seed));
    for (Index i = 0; i < t.size(); ++i)
      for (Index j = 0; j <= i; ++j)
        change = std::max(change, nearest_double(abs_value(Rational((bdp(i, j) - bd(i, j)) / bd(i, j)))));
  }
  return {change <= bound, "max change " + sci(change) + " vs bound " + sci(bound)};
}

Outcome sign_propagation() {
  Rng rng(kSeed);
  int broken = 0;
  double agreement = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto t = classify_nodes(random_increasing_doubles(rng, static_cast<int>(rng.uniform_int(2, 51))));
    if (trial % 2) t = reversed(t);
    Vector<double> f = random_alternating(rng, t.size());
    if (trial % 4 >= 2) f = -f;
    const auto table = divided_difference_table(t, f);
    if (!table.hra_certified()) ++broken;
    for (Index k = 0; k <= table.order(); ++k)
      if (sign_pattern(table.level(k)) == SignPattern::Other) ++broken;
    const Vector<double> dd = newton_coefficients(table);
    const Vector<double> bd = solve_newton_interpolation(t, f).coefficients;
    for (Index i = 0; i < t.size(); ++i) agreement = std::max(agreement, std::abs(dd(i) - bd(i)) / std::abs(dd(i)));
  }
  return {broken == 0 && agreement <= 100 * u,
          std::to_string(broken) + " non-alternating levels, dd/bd agreement " + sci(agreement / u) + " u"};
}

Outcome tp_characterization() {
  Rng rng(kSeed);
  int wrong = 0;
  int detected = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int count = static_cast<int>(rng.uniform_int(1, 6));
    auto values = random_increasing_rationals(rng, count);
    const auto inc = classify_nodes(values);
    const auto dec = reversed(inc);
    if (!minors_nonneg(colloc_matrix(inc), count)) ++wrong;
    if (!minors_nonneg(times_j(colloc_matrix(dec)), count)) ++wrong;
    if (count >= 3) {
      std::swap(values[1], values[2]);
      if (!minors_nonneg(colloc_matrix(classify_nodes(values)), count)) ++detected;
    }
  }
  return {wrong == 0 && detected > 0,
          std::to_string(wrong) + " false negatives, " + std::to_string(detected) + " unordered sets detected non-TP"};
}

Outcome interpolation_agreement() {
  Rng rng(kSeed);
  int exact_bad = 0;
  double spread = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int count = static_cast<int>(rng.uniform_int(1, 9));
    const auto t = classify_nodes(random_increasing_rationals(rng, count));
    Vector<Rational> f(count);
    for (Index i = 0; i < count; ++i) f(i) = Rational(rng.uniform_int(-50, 50)) / Rational(rng.uniform_int(1, 7));
    const auto p = make_newton_interpolant(t, newton_coefficients(divided_difference_table(t, f)));
    const auto b = make_barycentric(t, f);
    for (int k = 0; k < 4; ++k) {
      const Rational x = Rational(rng.uniform_int(-40, 40)) / Rational(rng.uniform_int(1, 13));
      const Rational y = eval_newton(p, x);
      if (eval_barycentric(b, x) != y || eval_modified_lagrange(b, x) != y) ++exact_bad;
    }

    // Same trial in doubles, evaluated midway between neighbouring nodes.
    const auto td = t.cast<double>();
    const Vector<double> fd = f.unaryExpr([](const Rational& v) { return nearest_double(v); });
    const auto pd = make_newton_interpolant(td, newton_coefficients(divided_difference_table(td, fd)));
    const auto bd = make_barycentric(td, fd);
    for (Index i = 0; i + 1 < count; ++i) {
      const double x = 0.5 * (td[i] + td[i + 1]);
      const double y = eval_newton(pd, x);
      const double scale = std::max(std::abs(y), fd.cwiseAbs().maxCoeff());
      spread = std::max({spread, std::abs(eval_barycentric(bd, x) - y) / scale,
                         std::abs(eval_modified_lagrange(bd, x) - y) / scale});
    }
  }
  return {exact_bad == 0 && spread <= 1e-12,
          std::to_string(exact_bad) + " exact mismatches, double spread " + sci(spread)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "exact BD reconstruction", 10, exact_reconstruction},
      {2, "coefficients, random alternating data", 60, table1},
      {3, "coefficients, Runge data", 60, table2},
      {4, "smallest singular value", 120, table3},
      {5, "inverse", 120, table4},
      {6, "BD forward error envelope", 60, bd_envelope},
      {7, "node perturbation envelope", 30, perturbation_envelope},
      {8, "sign propagation and dd/bd agreement", 0, sign_propagation},
      {9, "total positivity characterization", 0, tp_characterization},
      {10, "Newton and barycentric agreement", 0, interpolation_agreement},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool slow = c.limit_seconds > 0 && secs > c.limit_seconds;
    if (slow) o.ok = false;
    failures += o.ok ? 0 : 1;
    std::ostringstream time;
    time.precision(1);
    time << std::fixed << secs << "s";
    if (c.limit_seconds > 0) time << " of " << c.limit_seconds << "s";
    std::printf("%s criterion %d (%s): %s [%s]\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                time.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
