#include "tpnewton/io.hpp"

#include "tpnewton/oracle.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tpn {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_integer(const std::string& s) {
  std::string digits = s;
  bool negative = false;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (!all_digits(digits)) throw Error(ErrorKind::Parse, "bad integer '" + s + "'");
  boost::multiprecision::mpz_int z(digits);
  if (negative) z = -z;
  return Rational(z);
}

Rational pow10(long e) {
  return Rational(boost::multiprecision::pow(boost::multiprecision::mpz_int(10), static_cast<unsigned>(e)));
}

Rational parse_decimal(const std::string& s) {
  std::string mantissa = s;
  long exponent = 0;
  if (const auto pos = s.find_first_of("eE"); pos != std::string::npos) {
    mantissa = s.substr(0, pos);
    const std::string exp_text = s.substr(pos + 1);
    const char* first = exp_text.data();
    if (!exp_text.empty() && exp_text[0] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || first == ptr) {
      throw Error(ErrorKind::Parse, "bad exponent in '" + s + "'");
    }
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string int_part = mantissa;
  std::string frac_part;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw Error(ErrorKind::Parse, "bad number '" + s + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw Error(ErrorKind::Parse, "bad number '" + s + "'");
  }
  Rational value = parse_integer(int_part + frac_part + (int_part.empty() && frac_part.empty() ? "0" : ""));
  exponent -= static_cast<long>(frac_part.size());
  if (exponent > 0) value *= pow10(exponent);
  if (exponent < 0) value /= pow10(-exponent);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& literal) {
  const std::string s = trim(literal);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty literal");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_integer(trim(s.substr(0, slash)));
    const Rational den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
    return num / den;
  }
  return parse_decimal(s);
}

double parse_double(const std::string& literal) {
  const std::string s = trim(literal);
  if (s.find('/') == std::string::npos) {
    // strtod is correctly rounded; validate the syntax through the exact parser.
    parse_decimal(s);
    return std::strtod(s.c_str(), nullptr);
  }
  return nearest_double(parse_rational(s));
}

std::string to_string(const Rational& q) { return q.str(); }

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<std::string> split_literals(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> read_literals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return split_literals(buf.str());
}

std::vector<double> to_doubles(const std::vector<std::string>& literals) {
  std::vector<double> out;
  out.reserve(literals.size());
  for (const auto& s : literals) out.push_back(parse_double(s));
  return out;
}

std::vector<Rational> to_rationals(const std::vector<std::string>& literals) {
  std::vector<Rational> out;
  out.reserve(literals.size());
  for (const auto& s : literals) out.push_back(parse_rational(s));
  return out;
}

nlohmann::json to_json(const BDMatrix<double>& bd) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < bd.order(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < bd.order(); ++j) row.push_back(bd(i, j));
    rows.push_back(std::move(row));
  }
  return {{"order", bd.order()}, {"parity", bd.parity()}, {"entries", std::move(rows)}};
}

nlohmann::json to_json(const BDMatrix<Rational>& bd) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < bd.order(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < bd.order(); ++j) row.push_back(to_string(bd(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"order", bd.order()}, {"parity", bd.parity()}, {"entries", std::move(rows)}};
}

namespace {

template <class Scalar, class Convert>
BDMatrix<Scalar> bd_from_json_impl(const nlohmann::json& j, Convert convert) {
  try {
    const auto order = j.at("order").get<Index>();
    const bool parity = j.value("parity", false);
    const auto& rows = j.at("entries");
    if (order < 1 || rows.size() != static_cast<std::size_t>(order)) {
      throw Error(ErrorKind::InvalidInput, "BD JSON: entries do not match order");
    }
    Matrix<Scalar> grid(order, order);
    for (Index i = 0; i < order; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (row.size() != static_cast<std::size_t>(order)) {
        throw Error(ErrorKind::InvalidInput, "BD JSON: ragged row " + std::to_string(i + 1));
      }
      for (Index c = 0; c < order; ++c) grid(i, c) = convert(row.at(static_cast<std::size_t>(c)));
    }
    return BDMatrix<Scalar>(std::move(grid), parity);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("BD JSON: ") + e.what());
  }
}

}  // namespace

BDMatrix<double> bd_from_json(const nlohmann::json& j) {
  return bd_from_json_impl<double>(j, [](const nlohmann::json& v) {
    return v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>();
  });
}

BDMatrix<Rational> bd_from_json_exact(const nlohmann::json& j) {
  return bd_from_json_impl<Rational>(j, [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    return exact_value(v.get<double>());
  });
}

}  // namespace tpn
