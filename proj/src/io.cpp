#include "solvric/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "solvric/errors.hpp"

namespace solvric {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
  const YAML::Mark m = node.Mark();
  throw ParseError(what, m.line + 1, m.column + 1);
}

YAML::Node parse_document(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw ParseError("document must be a mapping", 1, 1);
  return root;
}

double number(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail(n, what + " must be a number");
  try {
    const double v = n.as<double>();
    if (!std::isfinite(v)) fail(n, what + " must be finite");
    return v;
  } catch (const YAML::BadConversion&) {
    fail(n, what + " must be a number, got '" + n.Scalar() + "'");
  }
}

int integer(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail(n, what + " must be an integer");
  try {
    return n.as<int>();
  } catch (const YAML::BadConversion&) {
    fail(n, what + " must be an integer, got '" + n.Scalar() + "'");
  }
}

int read_dim(const YAML::Node& root) {
  const YAML::Node d = root["dim"];
  if (!d) throw ParseError("missing field 'dim'", 1, 1);
  const int n = integer(d, "dim");
  if (n < 1) fail(d, "dim must be positive");
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

LieAlgebra parse_algebra(const std::string& text) {
  YAML::Node root = parse_document(text);
  const int n = read_dim(root);
  std::vector<std::string> labels;
  if (const YAML::Node ln = root["labels"]) {
    if (!ln.IsSequence()) fail(ln, "labels must be a list");
    if (static_cast<int>(ln.size()) != n) fail(ln, "labels must have dim entries");
    for (const auto& s : ln) {
      if (!s.IsScalar()) fail(s, "label must be a string");
      labels.push_back(s.Scalar());
    }
  }
  std::vector<StructureConstant> cs;
  if (const YAML::Node bn = root["brackets"]) {
    if (!bn.IsSequence()) fail(bn, "brackets must be a list of {i, j, k, c} records");
    for (const auto& rec : bn) {
      if (!rec.IsMap()) fail(rec, "bracket record must be a mapping {i, j, k, c}");
      for (const char* key : {"i", "j", "k", "c"})
        if (!rec[key]) fail(rec, std::string("bracket record is missing '") + key + "'");
      if (rec.size() != 4) fail(rec, "bracket record has unexpected fields");
      const int i = integer(rec["i"], "i"), j = integer(rec["j"], "j"), k = integer(rec["k"], "k");
      for (auto [v, node] : {std::pair{i, rec["i"]}, std::pair{j, rec["j"]}, std::pair{k, rec["k"]}})
        if (v < 1 || v > n) fail(node, "index out of range 1.." + std::to_string(n));
      if (i >= j) fail(rec["j"], "bracket record needs i < j");
      cs.push_back({i - 1, j - 1, k - 1, number(rec["c"], "c")});
    }
  }
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string key = it->first.as<std::string>();
    if (key != "dim" && key != "labels" && key != "brackets") fail(it->first, "unknown field '" + key + "'");
  }
  return LieAlgebra(n, cs, labels);
}

LieAlgebra load_algebra(const std::string& path) { return parse_algebra(read_file(path)); }

std::string write_algebra(const LieAlgebra& g) {
  std::ostringstream out;
  out << "dim: " << g.dim() << "\n";
  if (!g.labels().empty()) {
    out << "labels: [";
    for (int i = 0; i < g.dim(); ++i) out << (i ? ", " : "") << g.label(i);
    out << "]\n";
  }
  auto cs = g.constants();
  std::sort(cs.begin(), cs.end(), [](const StructureConstant& a, const StructureConstant& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  if (cs.empty()) {
    out << "brackets: []\n";
  } else {
    out << "brackets:\n";
    for (const auto& c : cs)
      out << "  - {i: " << c.i + 1 << ", j: " << c.j + 1 << ", k: " << c.k + 1 << ", c: " << format_number(c.c)
          << "}\n";
  }
  return out.str();
}

InnerProduct parse_metric(const std::string& text) {
  YAML::Node root = parse_document(text);
  const int n = read_dim(root);
  const YAML::Node gn = root["gram"];
  if (!gn) throw ParseError("missing field 'gram'", 1, 1);
  if (!gn.IsSequence()) fail(gn, "gram must be a list");
  std::vector<double> vals;
  for (const auto& e : gn) {
    if (e.IsSequence()) {
      if (static_cast<int>(e.size()) != n) fail(e, "gram row must have dim entries");
      for (const auto& x : e) vals.push_back(number(x, "gram entry"));
    } else {
      vals.push_back(number(e, "gram entry"));
    }
  }
  if (static_cast<int>(vals.size()) != n * n) fail(gn, "gram must have dim*dim entries");
  Mat q(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) q(r, c) = vals[static_cast<std::size_t>(r * n + c)];
  return InnerProduct(q);
}

InnerProduct load_metric(const std::string& path) { return parse_metric(read_file(path)); }

std::string write_metric(const InnerProduct& q) {
  std::ostringstream out;
  const int n = q.dim();
  out << "dim: " << n << "\ngram:\n";
  for (int r = 0; r < n; ++r) {
    out << "  - [";
    for (int c = 0; c < n; ++c) out << (c ? ", " : "") << format_number(q.gram()(r, c));
    out << "]\n";
  }
  return out.str();
}

nlohmann::json matrix_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_json(const Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

nlohmann::json report_json(const DecisionReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["theorem"] = r.theorem;
  j["margin"] = r.margin;
  j["detail"] = r.detail;
  j["witness"] = r.witness ? vector_json(*r.witness) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json certificate_json(const Certificate& c) {
  nlohmann::json j;
  j["metric"] = matrix_json(c.metric.gram());
  j["ricci"] = matrix_json(c.ricci);
  j["eigenvalues"] = vector_json(c.eigenvalues);
  j["max_eigenvalue"] = c.max_eigenvalue;
  j["provenance"] = c.provenance;
  j["s"] = c.s;
  j["tolerances"] = {{"negativity", c.tolerance}, {"definiteness_relative", 1e-9}};
  j["verdict"] = c.certified() ? "certified" : "not-certified";
  return j;
}

}  // namespace solvric
