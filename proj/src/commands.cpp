#include "solvric/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "solvric/catalog.hpp"
#include "solvric/classify.hpp"
#include "solvric/construct.hpp"
#include "solvric/decide.hpp"
#include "solvric/errors.hpp"
#include "solvric/io.hpp"
#include "solvric/optimize.hpp"

namespace solvric {

namespace {

using nlohmann::json;

std::string render(const json& j) { return j.dump(2) + "\n"; }

std::string text_matrix(const Mat& m, const std::string& indent = "  ") {
  std::ostringstream out;
  for (int r = 0; r < m.rows(); ++r) {
    out << indent;
    for (int c = 0; c < m.cols(); ++c) out << (c ? "  " : "") << format_number(m(r, c));
    out << "\n";
  }
  return out.str();
}

std::string text_vector(const Vec& v) {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_number(v(i));
  out << "]";
  return out.str();
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Exists:
      return exit_code::kSuccess;
    case Verdict::NotExists:
      return exit_code::kNotExists;
    case Verdict::Unknown:
      return exit_code::kUnknown;
  }
  return exit_code::kUnknown;
}

std::string text_report(const std::string& title, const DecisionReport& r) {
  std::ostringstream out;
  out << title << ": " << to_string(r.verdict) << " [" << r.theorem << "]";
  if (r.witness) out << " witness " << text_vector(*r.witness);
  if (r.margin != 0.0) out << " margin " << format_number(r.margin);
  if (!r.detail.empty()) out << "\n  " << r.detail;
  return out.str() + "\n";
}

json decision_json(const OverallDecision& d) {
  json j;
  j["verdict"] = to_string(d.verdict);
  j["theorem"] = d.theorem;
  j["nilradical_class"] = d.nil_class;
  j["primary"] = report_json(d.primary);
  json sub = json::object();
  for (const auto& [name, rep] : d.sub) sub[name] = report_json(rep);
  j["sub"] = sub;
  return j;
}

std::string decision_text(const OverallDecision& d) {
  std::ostringstream out;
  out << "nilradical: " << d.nil_class << "\n";
  out << "verdict: " << to_string(d.verdict) << " [" << d.theorem << "]\n";
  out << text_report("primary", d.primary);
  for (const auto& [name, rep] : d.sub) out << text_report(name, rep);
  return out.str();
}

void write_output_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << body;
}

bool is_input_error(const Error& e) {
  static const char* kinds[] = {"ParseError", "InvalidInput", "DimensionMismatch", "NotPositiveDefinite",
                                "JacobiViolated", "NotSolvable", "NotADerivation", "RankTooHigh"};
  for (const char* k : kinds)
    if (e.kind() == k) return true;
  return false;
}

}  // namespace

LieAlgebra resolve_algebra(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_algebra(arg);
  if (arg.find(':') != std::string::npos) return catalog_entry(arg).algebra;
  throw InvalidInput("'" + arg + "' is neither a file nor a catalog name");
}

CommandResult cmd_check(const std::string& alg, const CommandOptions& opt) {
  LieAlgebra g = resolve_algebra(alg);
  json j;
  j["command"] = "check";
  j["dim"] = g.dim();
  j["jacobi_defect"] = jacobi_defect(g);
  const bool solvable = is_solvable(g);
  j["solvable"] = solvable;
  j["unimodular"] = is_unimodular(g);
  j["nilpotent"] = is_nilpotent(g);
  CommandResult res;
  if (solvable) {
    Analysis an = analyze(g);
    j["nilradical_dim"] = an.nil.dim();
    j["nilradical_class"] = describe(an.cls);
    j["rank"] = an.rank();
  } else {
    j["nilradical_dim"] = nullptr;
    j["nilradical_class"] = nullptr;
    j["error"] = "NotSolvable";
    res.exit_code = exit_code::kInputError;
  }
  if (opt.structured) {
    res.output = render(j);
  } else {
    std::ostringstream out;
    out << "dim: " << g.dim() << "\njacobi defect: " << format_number(j["jacobi_defect"].get<double>())
        << "\nsolvable: " << (solvable ? "yes" : "no") << "\nunimodular: " << (j["unimodular"].get<bool>() ? "yes" : "no")
        << "\nnilpotent: " << (j["nilpotent"].get<bool>() ? "yes" : "no") << "\n";
    if (solvable)
      out << "nilradical: dim " << j["nilradical_dim"].get<int>() << ", class "
          << j["nilradical_class"].get<std::string>() << "\nrank: " << j["rank"].get<int>() << "\n";
    res.output = out.str();
  }
  return res;
}

CommandResult cmd_ricci(const std::string& alg, const std::string& metric, const CommandOptions& opt) {
  LieAlgebra g = resolve_algebra(alg);
  InnerProduct q = (metric.empty() || metric == "identity") ? InnerProduct::identity(g.dim()) : load_metric(metric);
  if (q.dim() != g.dim()) throw DimensionMismatch("metric has dim " + std::to_string(q.dim()) + ", algebra has dim " +
                                                  std::to_string(g.dim()));
  MetricLieAlgebra m(g, q);
  const Mat ric = ricci_operator(m);
  const Vec ev = symmetric_eigenvalues(ric);
  const double scal = scalar_curvature(m);
  const Definiteness def = definiteness(ric, opt.tol);
  CommandResult res;
  if (opt.structured) {
    json j;
    j["command"] = "ricci";
    j["ricci"] = matrix_json(ric);
    j["eigenvalues"] = vector_json(ev);
    j["scalar_curvature"] = scal;
    j["definiteness"] = to_string(def);
    res.output = render(j);
  } else {
    res.output = "Ricci (orthonormal frame):\n" + text_matrix(ric) + "eigenvalues: " + text_vector(ev) +
                 "\nscalar curvature: " + format_number(scal) + "\ndefiniteness: " + to_string(def) + "\n";
  }
  return res;
}

CommandResult cmd_decide(const std::string& alg, const CommandOptions& opt) {
  LieAlgebra g = resolve_algebra(alg);
  Analysis an = analyze(g);
  OverallDecision d = decide(an);
  CommandResult res;
  res.exit_code = verdict_exit(d.verdict);
  if (opt.structured) {
    json j = decision_json(d);
    j["command"] = "decide";
    res.output = render(j);
  } else {
    res.output = decision_text(d);
  }
  return res;
}

CommandResult cmd_construct(const std::string& alg, const CommandOptions& opt) {
  LieAlgebra g = resolve_algebra(alg);
  Analysis an = analyze(g);
  OverallDecision d = decide(an);
  CommandResult res;
  json j;
  j["command"] = "construct";
  j["decision"] = decision_json(d);
  if (d.verdict != Verdict::Exists) {
    res.exit_code = verdict_exit(d.verdict);
    res.output = opt.structured ? render(j) : decision_text(d) + "no metric constructed\n";
    return res;
  }
  ConstructOptions co;
  co.pullback.s_max = opt.smax;
  co.fallback.seed = opt.seed;
  co.fallback.budget = opt.budget;
  co.fallback.restarts = opt.restarts;
  Certificate c = construct_metric(an, d, co);
  const bool ok = verify_certificate(g, c);
  res.exit_code = ok ? exit_code::kSuccess : exit_code::kUnknown;
  j["certificate"] = certificate_json(c);
  j["certified"] = ok;
  if (!opt.out_path.empty()) write_output_file(opt.out_path, render(j));
  if (opt.structured) {
    res.output = render(j);
  } else {
    std::ostringstream out;
    out << decision_text(d) << "metric (" << c.provenance << ", s = " << format_number(c.s) << "):\n"
        << text_matrix(c.metric.gram()) << "Ricci eigenvalues: " << text_vector(c.eigenvalues)
        << "\nmax eigenvalue: " << format_number(c.max_eigenvalue) << " (tolerance " << format_number(c.tolerance)
        << ")\ncertified: " << (ok ? "yes" : "no") << "\n";
    if (!opt.out_path.empty()) out << "certificate written to " << opt.out_path << "\n";
    res.output = out.str();
  }
  return res;
}

CommandResult cmd_optimize(const std::string& alg, const CommandOptions& opt) {
  LieAlgebra g = resolve_algebra(alg);
  OptimizeOptions oo;
  oo.seed = opt.seed;
  oo.budget = opt.budget;
  oo.restarts = opt.restarts;
  if (opt.tol > 0) oo.certify_tol = opt.tol;
  OptimizeResult r = optimize_metric(g, oo);
  CommandResult res;
  res.exit_code = r.certified ? exit_code::kSuccess : exit_code::kUnknown;
  json j;
  j["command"] = "optimize";
  j["certified"] = r.certified;
  j["objective"] = r.best.max_eigenvalue;
  j["evaluations"] = r.evaluations;
  j["restarts_run"] = r.restarts_run;
  j["certificate"] = certificate_json(r.best);
  if (!opt.out_path.empty()) write_output_file(opt.out_path, render(j));
  if (opt.structured) {
    res.output = render(j);
  } else {
    std::ostringstream out;
    out << "certified: " << (r.certified ? "yes" : "no") << "\nbest max eigenvalue: "
        << format_number(r.best.max_eigenvalue) << "\nevaluations: " << r.evaluations
        << "\nrestarts: " << r.restarts_run << "\nmetric (det 1):\n"
        << text_matrix(r.best.metric.gram());
    if (!r.certified) out << "note: failing to certify proves nothing about existence\n";
    res.output = out.str();
  }
  return res;
}

CommandResult cmd_catalog(const CommandOptions& opt) {
  json arr = json::array();
  std::ostringstream out;
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name);
    const std::string expected = e.expected ? to_string(*e.expected) : "-";
    arr.push_back({{"name", name},
                   {"description", e.description},
                   {"dim", e.algebra.dim()},
                   {"nilradical_class", e.nil_class},
                   {"expected", expected}});
    out << name << "  dim " << e.algebra.dim() << "  " << e.nil_class << "  expected " << expected << "  -- "
        << e.description << "\n";
  }
  CommandResult res;
  res.output = opt.structured ? render(json{{"command", "catalog"}, {"entries", arr}}) : out.str();
  return res;
}

CommandResult cmd_selftest(const CommandOptions& opt) {
  json arr = json::array();
  std::ostringstream out;
  bool all = true;
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name);
    std::string problem;
    std::string verdict = "-", cls = "-";
    try {
      Analysis an = analyze(e.algebra);
      cls = describe(an.cls);
      OverallDecision d = decide(an);
      verdict = to_string(d.verdict);
      if (cls != e.nil_class) problem = "class " + cls + ", expected " + e.nil_class;
      if (e.expected && d.verdict != *e.expected)
        problem = "verdict " + verdict + ", expected " + to_string(*e.expected);
      if (problem.empty() && d.verdict == Verdict::Exists) {
        ConstructOptions co;
        co.pullback.s_max = opt.smax;
        Certificate c = construct_metric(an, d, co);
        if (!verify_certificate(e.algebra, c)) problem = "construction did not certify";
      }
    } catch (const Error& ex) {
      problem = ex.what();
    }
    const bool ok = problem.empty();
    all = all && ok;
    arr.push_back({{"name", name}, {"class", cls}, {"verdict", verdict}, {"ok", ok}, {"problem", problem}});
    out << (ok ? "ok    " : "FAIL  ") << name << "  " << cls << "  " << verdict << (ok ? "" : "  -- " + problem)
        << "\n";
  }
  CommandResult res;
  res.exit_code = all ? exit_code::kSuccess : exit_code::kFailure;
  res.output = opt.structured ? render(json{{"command", "selftest"}, {"entries", arr}, {"ok", all}}) : out.str();
  return res;
}

CommandResult run_guarded(const std::function<CommandResult()>& fn, const CommandOptions& opt) {
  CommandResult res;
  try {
    return fn();
  } catch (const Error& e) {
    res.exit_code = is_input_error(e) ? exit_code::kInputError : exit_code::kUnknown;
    json j{{"error", e.kind()}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
      j["line"] = pe->line();
      j["column"] = pe->column();
    }
    res.output = opt.structured ? render(j) : std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace solvric
