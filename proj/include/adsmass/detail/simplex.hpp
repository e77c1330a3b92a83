#pragma once

// Thin wrapper over GSL's nmsimplex2 minimizer.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <memory>

namespace adsmass::detail {

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

inline SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x0, double step, double size_tol = 1e-10,
                                 int max_iter = 20000, double f_tol = 1e-15) {
  static const bool handler_off = (gsl_set_error_handler_off(), true);
  (void)handler_off;
  const auto n = static_cast<std::size_t>(x0.size());
  struct Ctx {
    const std::function<double(const Eigen::VectorXd&)>* f;
    Eigen::VectorXd buf;
  } ctx{&f, Eigen::VectorXd(x0.size())};

  gsl_multimin_function fn;
  fn.n = n;
  fn.params = &ctx;
  fn.f = [](const gsl_vector* v, void* params) {
    auto* c = static_cast<Ctx*>(params);
    for (std::size_t i = 0; i < v->size; ++i) c->buf[static_cast<Eigen::Index>(i)] = gsl_vector_get(v, i);
    return (*c->f)(c->buf);
  };

  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> ss(gsl_vector_alloc(n), gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[static_cast<Eigen::Index>(i)]);
  gsl_vector_set_all(ss.get(), step);

  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get());

  // Objectives with a flat direction never shrink the simplex, so also stop
  // once the best value has stalled for a window of iterations.
  const int window = 50 * static_cast<int>(n);
  double last = s->fval;
  int stalled = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), size_tol) == GSL_SUCCESS) break;
    if (last - s->fval > f_tol * (1.0 + std::abs(s->fval))) {
      last = s->fval;
      stalled = 0;
    } else if (++stalled >= window) {
      break;
    }
  }

  SimplexResult out;
  out.x.resize(x0.size());
  for (std::size_t i = 0; i < n; ++i) out.x[static_cast<Eigen::Index>(i)] = gsl_vector_get(s->x, i);
  out.value = s->fval;
  return out;
}

}  // namespace adsmass::detail
