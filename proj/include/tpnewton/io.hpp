#pragma once

// Text and JSON formats: scalar files (one literal per line, decimal or
// "p/q", '#' starts a comment) and the BD serialization
// {"order": k, "parity": bool, "entries": [[...], ...]}.

#include "tpnewton/bd_matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tpn {

/// Exact value of a decimal ("-1.25e-3") or rational ("-5/4") literal.
Rational parse_rational(const std::string& literal);

/// Nearest double of the same literal (rationals are rounded once).
double parse_double(const std::string& literal);

/// Canonical exact text: "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

/// Literals of a scalar file, comments and blank lines removed.
std::vector<std::string> read_literals(const std::string& path);
std::vector<std::string> split_literals(const std::string& text);

std::vector<double> to_doubles(const std::vector<std::string>& literals);
std::vector<Rational> to_rationals(const std::vector<std::string>& literals);

nlohmann::json to_json(const BDMatrix<double>& bd);
/// Entries as exact "p/q" strings.
nlohmann::json to_json(const BDMatrix<Rational>& bd);

/// Accepts numbers or literal strings as entries.
BDMatrix<double> bd_from_json(const nlohmann::json& j);
BDMatrix<Rational> bd_from_json_exact(const nlohmann::json& j);

}  // namespace tpn
