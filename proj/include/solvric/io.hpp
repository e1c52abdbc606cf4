#pragma once

#include <string>

#include <json.hpp>

#include "solvric/certificate.hpp"
#include "solvric/lp.hpp"

namespace solvric {

/// Algebra document:
///
///   dim: 3
///   labels: [X1, X2, Z]          # optional
///   brackets:
///     - {i: 1, j: 2, k: 3, c: 1}  # [e_i, e_j] += c e_k, 1-based, i < j
///
/// Throws ParseError (with 1-based line/column), JacobiViolated.
LieAlgebra parse_algebra(const std::string& text);
LieAlgebra load_algebra(const std::string& path);
/// Canonical form: constants sorted by (i, j, k), numbers with 17
/// significant digits. parse_algebra(write_algebra(g)) reproduces g.
std::string write_algebra(const LieAlgebra& g);

/// Metric document: `dim: n` and `gram: [...]`, n*n numbers row-major
/// (a flat list or a list of rows). Throws ParseError, NotPositiveDefinite.
InnerProduct parse_metric(const std::string& text);
InnerProduct load_metric(const std::string& path);
std::string write_metric(const InnerProduct& q);

/// "%.17g".
std::string format_number(double x);

nlohmann::json matrix_json(const Mat& m);
nlohmann::json vector_json(const Vec& v);
nlohmann::json report_json(const DecisionReport& r);
/// metric, ricci, eigenvalues, max_eigenvalue, provenance, tolerances,
/// verdict.
nlohmann::json certificate_json(const Certificate& c);

}  // namespace solvric
