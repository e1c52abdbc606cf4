#include "solvric/optimize.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "solvric/errors.hpp"

namespace solvric {

namespace {

struct ObjectiveData {
  const LieAlgebra* g = nullptr;
  int n = 0;
  int evaluations = 0;
  double certify_tol = 0.0;
};

std::optional<Certificate> try_certificate(const LieAlgebra& g, const Vec& x, int n) {
  try {
    Mat q = gram_from_params(x, n);
    return make_certificate(g, InnerProduct(0.5 * (q + q.transpose())), "optimizer");
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool accepted(const std::optional<Certificate>& c, double certify_tol) {
  return c && c->certified() && c->max_eigenvalue < -certify_tol;
}

Vec current_point(const gsl_multimin_fminimizer* s) {
  Vec x(static_cast<Eigen::Index>(s->x->size));
  for (std::size_t i = 0; i < s->x->size; ++i) x(static_cast<Eigen::Index>(i)) = gsl_vector_get(s->x, i);
  return x;
}

double objective(const gsl_vector* v, void* params) {
  auto* data = static_cast<ObjectiveData*>(params);
  ++data->evaluations;
  Vec x(static_cast<Eigen::Index>(v->size));
  for (std::size_t i = 0; i < v->size; ++i) x(static_cast<Eigen::Index>(i)) = gsl_vector_get(v, i);
  try {
    const double r = normalized_max_ricci(*data->g, gram_from_params(x, data->n));
    return std::isfinite(r) ? r : std::numeric_limits<double>::max();
  } catch (const Error&) {
    return std::numeric_limits<double>::max();
  }
}

struct RunResult {
  Vec x;
  double value = 0.0;
};

RunResult nelder_mead(ObjectiveData& data, const Vec& start, int max_evals) {
  const std::size_t k = static_cast<std::size_t>(start.size());
  gsl_multimin_function f{&objective, k, &data};
  gsl_vector* x = gsl_vector_alloc(k);
  gsl_vector* step = gsl_vector_alloc(k);
  for (std::size_t i = 0; i < k; ++i) gsl_vector_set(x, i, start(static_cast<Eigen::Index>(i)));
  gsl_vector_set_all(step, 0.25);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, k);
  const int stop_at = data.evaluations + max_evals;
  gsl_multimin_fminimizer_set(s, &f, x, step);
  // One iteration costs at most k + 2 evaluations (a shrink step).
  const int per_iteration = static_cast<int>(k) + 2;
  while (data.evaluations + per_iteration <= stop_at) {
    // Stop as soon as the best vertex certifies; pushing further only
    // drifts toward degenerate metrics.
    if (s->fval < -data.certify_tol && accepted(try_certificate(*data.g, current_point(s), data.n), data.certify_tol))
      break;
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10) == GSL_SUCCESS) break;
  }
  RunResult out;
  out.x = current_point(s);
  out.value = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return out;
}

}  // namespace

Mat gram_from_params(const Vec& x, int n) {
  if (x.size() != n * (n + 1) / 2) throw DimensionMismatch("parameter vector has the wrong length");
  Mat l = Mat::Zero(n, n);
  int idx = 0;
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) l(i, j) = x(idx++);
    l(i, i) = std::exp(x(idx));
    logdet += 2.0 * x(idx++);
  }
  Mat q = l * l.transpose();
  return q * std::exp(-logdet / n);
}

Vec params_from_gram(const Mat& q) {
  const int n = static_cast<int>(q.rows());
  Eigen::LLT<Mat> llt(q);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("warm start is not positive definite");
  Mat l = llt.matrixL();
  Vec x(n * (n + 1) / 2);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) x(idx++) = l(i, j);
    x(idx++) = std::log(l(i, i));
  }
  return x;
}

double normalized_max_ricci(const LieAlgebra& g, const Mat& q) {
  const int n = g.dim();
  const double det = q.determinant();
  if (!(det > 0)) throw NotPositiveDefinite("metric has nonpositive determinant");
  Mat qn = q / std::pow(det, 1.0 / n);
  qn = Mat(0.5 * (qn + qn.transpose()));
  Mat ric = ricci_operator(MetricLieAlgebra(g, InnerProduct(qn)));
  return symmetric_eigenvalues(ric).maxCoeff();
}

OptimizeResult optimize_metric(const LieAlgebra& g, const OptimizeOptions& opt) {
  const int n = g.dim();
  if (n == 0) throw InvalidInput("empty algebra");
  if (opt.restarts <= 0 || opt.budget <= 0) throw InvalidInput("budget and restarts must be positive");
  const int k = n * (n + 1) / 2;
  std::mt19937 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ObjectiveData data{&g, n, 0, opt.certify_tol};
  const int per_restart = std::max(1, opt.budget / opt.restarts);

  Vec base = opt.initial ? params_from_gram(*opt.initial) : Vec(Vec::Zero(k));
  OptimizeResult res;
  bool have_best = false;
  double best_value = std::numeric_limits<double>::infinity();
  Vec best_x;
  for (int r = 0; r < opt.restarts; ++r) {
    Vec start = base;
    if (r > 0)
      for (int i = 0; i < k; ++i) start(i) += opt.perturbation * normal(rng);
    RunResult run = nelder_mead(data, start, per_restart);
    ++res.restarts_run;
    if (!have_best || run.value < best_value) {
      best_value = run.value;
      best_x = run.x;
      have_best = true;
    }
    auto c = try_certificate(g, run.x, n);
    if (accepted(c, opt.certify_tol)) {
      res.best = *c;
      res.certified = true;
      break;
    }
  }
  if (!res.certified) {
    auto c = try_certificate(g, best_x, n);
    if (!c) c = try_certificate(g, base, n);
    if (!c) throw NotPositiveDefinite("optimizer: no usable metric");
    res.best = *c;
  }
  res.evaluations = data.evaluations;
  return res;
}

}  // namespace solvric
