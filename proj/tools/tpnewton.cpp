// tpnewton: command-line front end.
//
// Exit status: 0 success, 2 invalid input, 3 numerical-contract failure.

#include "tpnewton/divdiff.hpp"
#include "tpnewton/experiment.hpp"
#include "tpnewton/interp.hpp"
#include "tpnewton/io.hpp"
#include "tpnewton/newton.hpp"
#include "tpnewton/oracle.hpp"
#include "tpnewton/tn_algebra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using tpn::Error;
using tpn::ErrorKind;
using tpn::Index;
using tpn::Rational;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string nodes;
  std::string data;
  std::string bd;
  int n = 0;
  std::string order = "inc";
  std::string interval = "0,1";
  std::uint64_t seed = 1;
  std::string format = "json";
  bool exact = false;
  std::string out;
  int table = 1;
  std::vector<int> sizes;
  std::vector<std::string> at;
};

// --- output --------------------------------------------------------------

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string cell(double x) { return tpn::format_double(x); }
std::string cell(const Rational& q) { return tpn::to_string(q); }

nlohmann::json json_cell(double x) { return x; }
nlohmann::json json_cell(const Rational& q) { return tpn::to_string(q); }

template <class Scalar>
void emit_vector(std::ostream& out, const std::string& format, const std::string& name,
                 const tpn::Vector<Scalar>& v, nlohmann::json extra = nlohmann::json::object()) {
  if (format == "json") {
    nlohmann::json values = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) values.push_back(json_cell(v(i)));
    extra[name] = std::move(values);
    out << extra.dump(2) << '\n';
  } else if (format == "csv") {
    out << "index," << name << '\n';
    for (Index i = 0; i < v.size(); ++i) out << i + 1 << ',' << cell(v(i)) << '\n';
  } else {
    out << "| index | " << name << " |\n|---|---|\n";
    for (Index i = 0; i < v.size(); ++i) out << "| " << i + 1 << " | " << cell(v(i)) << " |\n";
  }
  if (format != "json")
    for (const auto& [key, value] : extra.items()) out << "# " << key << ": " << value.dump() << '\n';
}

template <class Scalar>
void emit_matrix(std::ostream& out, const std::string& format, const std::string& name,
                 const tpn::Matrix<Scalar>& a, nlohmann::json extra = nlohmann::json::object()) {
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < a.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Index j = 0; j < a.cols(); ++j) row.push_back(json_cell(a(i, j)));
      rows.push_back(std::move(row));
    }
    extra[name] = std::move(rows);
    out << extra.dump(2) << '\n';
    return;
  }
  const char* sep = format == "csv" ? "," : " | ";
  for (Index i = 0; i < a.rows(); ++i) {
    if (format == "md") out << "| ";
    for (Index j = 0; j < a.cols(); ++j) out << (j ? sep : "") << cell(a(i, j));
    out << (format == "md" ? " |\n" : "\n");
  }
  for (const auto& [key, value] : extra.items()) out << "# " << key << ": " << value.dump() << '\n';
}

// --- input ---------------------------------------------------------------

std::vector<std::string> require_literals(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, std::string("--") + what + " FILE is required");
  return tpn::read_literals(path);
}

template <class Scalar>
tpn::NodeSequence<Scalar> load_nodes(const Options& o) {
  const auto literals = require_literals(o.nodes, "nodes");
  if constexpr (tpn::is_exact_v<Scalar>) {
    return tpn::classify_nodes(tpn::to_rationals(literals));
  } else {
    return tpn::classify_nodes(tpn::to_doubles(literals));
  }
}

template <class Scalar>
tpn::Vector<Scalar> load_data(const Options& o) {
  const auto literals = require_literals(o.data, "data");
  tpn::Vector<Scalar> v(static_cast<Index>(literals.size()));
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if constexpr (tpn::is_exact_v<Scalar>) {
      v(static_cast<Index>(i)) = tpn::parse_rational(literals[i]);
    } else {
      v(static_cast<Index>(i)) = tpn::parse_double(literals[i]);
    }
  }
  return v;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
}

template <class Scalar>
tpn::BDMatrix<Scalar> newton_bd(const tpn::NodeSequence<Scalar>& t) {
  if (t.increasing()) return tpn::bd_newton(t);
  if (t.decreasing()) return tpn::bd_newton_j(t);
  throw Error(ErrorKind::InvalidInput, "nodes must be strictly monotone");
}

/// BD from --bd FILE, otherwise the Newton BD of --nodes.
template <class Scalar>
tpn::BDMatrix<Scalar> load_bd(const Options& o) {
  if (!o.bd.empty()) {
    if constexpr (tpn::is_exact_v<Scalar>) {
      return tpn::bd_from_json_exact(load_json(o.bd));
    } else {
      return tpn::bd_from_json(load_json(o.bd));
    }
  }
  return newton_bd(load_nodes<Scalar>(o));
}

std::pair<Rational, Rational> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidInput, "--interval expects a,b");
  const Rational a = tpn::parse_rational(text.substr(0, comma));
  const Rational b = tpn::parse_rational(text.substr(comma + 1));
  if (!(a < b)) throw Error(ErrorKind::InvalidInput, "--interval requires a < b");
  return {a, b};
}

bool increasing_order(const std::string& order) { return order == "inc"; }

// --- commands ------------------------------------------------------------

void cmd_gen_nodes(const Options& o, std::ostream& out) {
  if (o.n < 1) throw Error(ErrorKind::InvalidInput, "--n (node count) must be positive");
  const auto [a, b] = parse_interval(o.interval);
  const auto t = tpn::equidistant_nodes(o.n, a, b, increasing_order(o.order));
  if (o.format == "json") {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& q : t) nodes.push_back({{"exact", tpn::to_string(q)}, {"double", tpn::nearest_double(q)}});
    out << nlohmann::json{{"nodes", nodes}}.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "index,exact,double\n";
    for (std::size_t i = 0; i < t.size(); ++i)
      out << i + 1 << ',' << tpn::to_string(t[i]) << ',' << cell(tpn::nearest_double(t[i])) << '\n';
  } else if (o.format == "md") {
    out << "| index | exact | double |\n|---|---|---|\n";
    for (std::size_t i = 0; i < t.size(); ++i)
      out << "| " << i + 1 << " | " << tpn::to_string(t[i]) << " | " << cell(tpn::nearest_double(t[i])) << " |\n";
  } else {
    // Plain node file: one exact literal per line, readable by --nodes.
    for (const auto& q : t) out << tpn::to_string(q) << "  # " << cell(tpn::nearest_double(q)) << '\n';
  }
}

void cmd_experiment(const Options& o, std::ostream& out) {
  const auto sizes = o.sizes.empty() ? tpn::default_sizes() : o.sizes;
  const tpn::ErrorReport report = tpn::run_experiment(o.table, sizes, o.seed);
  if (o.format == "json") {
    out << report.to_json().dump(2) << '\n';
  } else if (o.format == "md") {
    out << report.to_markdown();
  } else {
    out << report.to_csv();
  }
}

template <class Scalar>
void cmd_bd(const Options& o, std::ostream& out) {
  const auto bd = newton_bd(load_nodes<Scalar>(o));
  if (o.format == "json") {
    out << tpn::to_json(bd).dump(2) << '\n';
  } else {
    emit_matrix(out, o.format, "entries", bd.entries(), {{"parity", bd.parity()}});
  }
}

template <class Scalar>
void cmd_divdiff(const Options& o, std::ostream& out) {
  const auto table = tpn::divided_difference_table(load_nodes<Scalar>(o), load_data<Scalar>(o));
  emit_vector(out, o.format, "coefficients", tpn::newton_coefficients(table), {{"hra", table.hra_certified()}});
}

template <class Scalar>
void cmd_solve(const Options& o, std::ostream& out) {
  if (o.bd.empty()) {
    const auto p = tpn::solve_newton_interpolation(load_nodes<Scalar>(o), load_data<Scalar>(o));
    emit_vector(out, o.format, "coefficients", p.coefficients, {{"hra", p.hra}});
    return;
  }
  const auto s = tpn::tn_solve(load_bd<Scalar>(o), load_data<Scalar>(o));
  emit_vector(out, o.format, "x", s.x, {{"hra", s.hra}});
}

template <class Scalar>
void cmd_inverse(const Options& o, std::ostream& out) {
  emit_matrix(out, o.format, "inverse", tpn::tn_inverse(load_bd<Scalar>(o)));
}

void cmd_sigma_min(const Options& o, std::ostream& out) {
  nlohmann::json result;
  if (o.exact) {
    const auto bd = load_bd<Rational>(o);
    const auto ref = tpn::hp_singular_values(tpn::assemble(bd));
    std::ostringstream digits;
    digits << std::setprecision(30) << ref.smallest();
    result = {{"sigma_min", digits.str()}, {"digits", ref.digits}, {"agreed_digits", ref.agreed_digits}};
  } else {
    result = {{"sigma_min", tpn::smallest_singular_value(load_bd<double>(o))}};
  }
  if (o.format == "json") {
    out << result.dump(2) << '\n';
  } else {
    const std::string v = result["sigma_min"].is_string() ? result["sigma_min"].get<std::string>()
                                                          : cell(result["sigma_min"].get<double>());
    out << (o.format == "csv" ? "sigma_min\n" + v + "\n" : "| sigma_min |\n|---|\n| " + v + " |\n");
  }
}

template <class Scalar>
void cmd_eval(const Options& o, std::ostream& out) {
  if (o.at.empty()) throw Error(ErrorKind::InvalidInput, "--at requires at least one point");
  const auto t = load_nodes<Scalar>(o);
  const auto f = load_data<Scalar>(o);
  const auto table = tpn::divided_difference_table(t, f);
  const auto newton = tpn::make_newton_interpolant(t, tpn::newton_coefficients(table));
  const auto bary = tpn::make_barycentric(t, f);

  const auto count = static_cast<Index>(o.at.size());
  tpn::Matrix<Scalar> values(count, 4);
  for (Index k = 0; k < count; ++k) {
    Scalar x;
    if constexpr (tpn::is_exact_v<Scalar>) {
      x = tpn::parse_rational(o.at[static_cast<std::size_t>(k)]);
    } else {
      x = tpn::parse_double(o.at[static_cast<std::size_t>(k)]);
    }
    values(k, 0) = x;
    values(k, 1) = tpn::eval_newton(newton, x);
    values(k, 2) = tpn::eval_modified_lagrange(bary, x);
    values(k, 3) = tpn::eval_barycentric(bary, x);
  }
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (Index k = 0; k < count; ++k) {
      rows.push_back({{"t", json_cell(values(k, 0))},
                      {"newton", json_cell(values(k, 1))},
                      {"lagrange", json_cell(values(k, 2))},
                      {"barycentric", json_cell(values(k, 3))}});
    }
    out << nlohmann::json{{"values", rows}}.dump(2) << '\n';
    return;
  }
  if (o.format == "csv") out << "t,newton,lagrange,barycentric\n";
  if (o.format == "md") out << "| t | newton | lagrange | barycentric |\n|---|---|---|---|\n";
  emit_matrix(out, o.format, "values", values);
}

/// Exact reference data for a node/data file pair.
void cmd_fixture(const Options& o, std::ostream& out) {
  const auto t = load_nodes<Rational>(o);
  const auto f = load_data<Rational>(o);
  if (!t.monotone()) throw Error(ErrorKind::InvalidInput, "fixture nodes must be strictly monotone");
  const auto bd = newton_bd(t);
  const tpn::Matrix<Rational> l = tpn::colloc_matrix(t);
  const auto inv = tpn::exact_inverse(l);
  const auto sigma = tpn::hp_singular_values(l);

  auto strings = [](const auto& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(tpn::to_string(v(i)));
    return a;
  };
  nlohmann::json inverse = nlohmann::json::array();
  for (Index i = 0; i < inv.rows(); ++i) inverse.push_back(strings(tpn::Vector<Rational>(inv.row(i).transpose())));
  std::ostringstream s;
  s << std::setprecision(25) << sigma.smallest();

  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& q : t.values()) nodes.push_back(tpn::to_string(q));
  const nlohmann::json fixture = {{"nodes", nodes},
                                  {"data", strings(f)},
                                  {"bd", tpn::to_json(bd)},
                                  {"coefficients", strings(tpn::exact_divdiff(t.values(), f))},
                                  {"inverse", inverse},
                                  {"sigma_min", s.str()}};
  out << fixture.dump(2) << '\n';
}

int report(const Error& e) {
  std::cerr << "tpnewton: " << tpn::to_string(e.kind()) << ": " << e.what() << '\n';
  return tpn::is_numerical_contract(e.kind()) ? kExitNumerical : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accurate computations with Newton collocation matrices"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "md"}));
    cmd->add_option("--out", o.out, "Write output to FILE instead of stdout");
  };
  auto add_inputs = [&o, &add_common](CLI::App* cmd, bool data) {
    cmd->add_option("--nodes", o.nodes, "Node file: one decimal or p/q literal per line");
    if (data) cmd->add_option("--data", o.data, "Data file, same format as --nodes");
    cmd->add_flag("--exact", o.exact, "Exact rational arithmetic");
    add_common(cmd);
  };

  auto* gen = app.add_subcommand("gen-nodes", "Equidistant nodes, exact and rounded");
  gen->add_option("--n", o.n, "Number of nodes (n+1)")->required();
  gen->add_option("--interval", o.interval, "Endpoints a,b")->capture_default_str();
  gen->add_option("--order", o.order, "inc or dec")->check(CLI::IsMember({"inc", "dec"}));
  add_common(gen);

  auto* exp = app.add_subcommand("experiment", "Error table against the exact/high-precision oracle");
  exp->add_option("--table", o.table, "Table 1-4")->required()->check(CLI::Range(1, 4));
  exp->add_option("--sizes", o.sizes, "Node counts n+1 (default 15 25 50 100)");
  exp->add_option("--seed", o.seed, "Seed (TPNEWTON_SEED overrides)");
  add_common(exp);

  auto* bd = app.add_subcommand("bd", "Bidiagonal decomposition of the Newton matrix");
  add_inputs(bd, false);
  auto* dd = app.add_subcommand("divdiff", "Newton coefficients by divided differences");
  add_inputs(dd, true);
  auto* solve = app.add_subcommand("solve", "Newton coefficients through the BD, or assemble(BD) x = data");
  add_inputs(solve, true);
  solve->add_option("--bd", o.bd, "BD JSON file");
  auto* inv = app.add_subcommand("inverse", "Inverse through the BD");
  add_inputs(inv, false);
  inv->add_option("--bd", o.bd, "BD JSON file");
  auto* sigma = app.add_subcommand("sigma-min", "Smallest singular value");
  add_inputs(sigma, false);
  sigma->add_option("--bd", o.bd, "BD JSON file");
  auto* eval = app.add_subcommand("eval", "Evaluate the interpolant by three formulas");
  add_inputs(eval, true);
  eval->add_option("--at", o.at, "Evaluation points")->required();
  auto* fixture = app.add_subcommand("fixture", "Exact oracle data as JSON");
  fixture->add_option("--nodes", o.nodes)->required();
  fixture->add_option("--data", o.data)->required();
  fixture->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (const char* env = std::getenv("TPNEWTON_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "tpnewton: TPNEWTON_SEED is not an unsigned integer\n";
      return kExitInvalid;
    }
  }

  try {
    Sink sink(o.out);
    std::ostream& out = sink.stream();
    if (gen->parsed()) {
      if (gen->count("--format") == 0) o.format = "text";
      cmd_gen_nodes(o, out);
    } else if (exp->parsed()) {
      if (exp->count("--format") == 0) o.format = "csv";
      cmd_experiment(o, out);
    } else if (bd->parsed()) {
      o.exact ? cmd_bd<Rational>(o, out) : cmd_bd<double>(o, out);
    } else if (dd->parsed()) {
      o.exact ? cmd_divdiff<Rational>(o, out) : cmd_divdiff<double>(o, out);
    } else if (solve->parsed()) {
      o.exact ? cmd_solve<Rational>(o, out) : cmd_solve<double>(o, out);
    } else if (inv->parsed()) {
      o.exact ? cmd_inverse<Rational>(o, out) : cmd_inverse<double>(o, out);
    } else if (sigma->parsed()) {
      cmd_sigma_min(o, out);
    } else if (eval->parsed()) {
      o.exact ? cmd_eval<Rational>(o, out) : cmd_eval<double>(o, out);
    } else if (fixture->parsed()) {
      cmd_fixture(o, out);
    }
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "tpnewton: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
