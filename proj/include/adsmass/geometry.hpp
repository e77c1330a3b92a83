#pragma once

// The AdS hyperboloid eta(y, y) = -1 in R^{3,2}, its static and conformal
// charts, pointwise Killing field norms, and hypersurface orthogonality.

#include "adsmass/detail/simplex.hpp"
#include "adsmass/so32.hpp"

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace adsmass {

struct HyperboloidPoint {
  Vec5 y = Vec5::Unit(0);
};

/// eta(y, y) + 1.
inline double quadric_residual(const HyperboloidPoint& p) {
  return p.y.dot(ambient_metric() * p.y) + 1.0;
}

struct StaticChartPoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct ConformalPoint {
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  double u = -1.0;
};

inline HyperboloidPoint embed_static(const StaticChartPoint& p) {
  const double w = std::sqrt(1.0 + p.r * p.r);
  HyperboloidPoint out;
  out.y << w * std::sin(p.t), p.r * std::sin(p.theta) * std::sin(p.phi),
      p.r * std::sin(p.theta) * std::cos(p.phi), p.r * std::cos(p.theta), w * std::cos(p.t);
  return out;
}

/// u = 2/(y4 - 1), x = -u (y0, y1, y2, y3).
inline ConformalPoint to_conformal(const HyperboloidPoint& p, double tol = 1e-12) {
  const double den = p.y[4] - 1.0;
  if (std::abs(den) <= tol) throw Error(ErrorKind::ChartBoundary, "y4 = 1 is outside the conformal chart", p.y[4]);
  ConformalPoint c;
  c.u = 2.0 / den;
  c.x = -c.u * p.y.head<4>();
  return c;
}

/// Inverse of to_conformal. The stored u must agree with (|x_spatial|^2 - x0^2)/4 - 1.
inline HyperboloidPoint from_conformal(const ConformalPoint& c, double tol = 1e-10) {
  if (std::abs(c.u) <= 1e-12) throw Error(ErrorKind::ChartBoundary, "u = 0 is outside the conformal chart", c.u);
  const double expected = 0.25 * (c.x.tail<3>().squaredNorm() - c.x[0] * c.x[0]) - 1.0;
  if (std::abs(expected - c.u) > tol * tolerance_scale(std::abs(c.u)))
    throw Error(ErrorKind::DegenerateInput, "u is inconsistent with x", expected - c.u);
  HyperboloidPoint p;
  p.y.head<4>() = -c.x / c.u;
  p.y[4] = 2.0 / c.u + 1.0;
  return p;
}

/// The Killing vector M y at y.
inline Vec5 eval_killing(const KillingField& K, const HyperboloidPoint& p) {
  return to_matrix(K) * p.y;
}

/// -eta(M y, M y).
inline double norm_minus(const KillingField& K, const HyperboloidPoint& p) {
  const Vec5 v = eval_killing(K, p);
  return -v.dot(ambient_metric() * v);
}

/// Uniform t in [0, 2 pi), r in [0, r_max], direction uniform on the sphere.
template <class URBG>
StaticChartPoint sample_static_point(URBG& rng, double r_max) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StaticChartPoint p;
  p.t = 2.0 * std::numbers::pi * unit(rng);
  p.r = r_max * unit(rng);
  p.theta = std::acos(1.0 - 2.0 * unit(rng));
  p.phi = 2.0 * std::numbers::pi * unit(rng);
  return p;
}

/// |A| > max(|B|, |C|, |D|) and A^2 + |D|^2 > |B|^2 + |C|^2.
inline bool is_timelike(const KillingField& K) {
  return std::abs(K.A) > std::max({K.B.norm(), K.C.norm(), K.D.norm()}) &&
         K.A * K.A + K.D.squaredNorm() > K.B.squaredNorm() + K.C.squaredNorm();
}

struct MinNormConfig {
  int starts = 64;
  double r_max = 10.0;
  std::uint64_t seed = 0;
};

/// Numerical minimum of -<K, K> over the hyperboloid: seeded random starts
/// in the static chart, each refined by a simplex search in (t, y1, y2, y3).
inline double min_norm(const KillingField& K, const MinNormConfig& cfg = {}) {
  if (!is_timelike(K)) throw Error(ErrorKind::NotTimelike, "K is not timelike");
  auto point = [](const Eigen::VectorXd& v) {
    const Vec3 s = v.tail<3>();
    const double w = std::sqrt(1.0 + s.squaredNorm());
    HyperboloidPoint p;
    p.y << w * std::sin(v[0]), s, w * std::cos(v[0]);
    return p;
  };
  auto objective = [&](const Eigen::VectorXd& v) { return norm_minus(K, point(v)); };

  std::mt19937_64 rng(cfg.seed);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.starts; ++i) {
    const HyperboloidPoint p0 = embed_static(sample_static_point(rng, cfg.r_max));
    Eigen::VectorXd v(4);
    v << std::atan2(p0.y[0], p0.y[4]), p0.y.segment<3>(1);
    for (int pass = 0; pass < 2; ++pass) v = detail::nelder_mead(objective, v, 0.5).x;
    best = std::min(best, objective(v));
  }
  return best;
}

namespace detail {
// Components (a < b < c) of alpha ^ d alpha at y, where alpha = eta(M y, .)
// and d alpha = sum_{a<b} 2 N_ba dy^a ^ dy^b with N = eta M.
inline double frobenius_at(const Mat5& N, const Vec5& y) {
  const Vec5 alpha = N * y;
  auto omega = [&](int a, int b) { return 2.0 * N(b, a); };
  double m = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c)
        m = std::max(m, std::abs(alpha[a] * omega(b, c) - alpha[b] * omega(a, c) + alpha[c] * omega(a, b)));
  return m;
}
}  // namespace detail

struct FrobeniusConfig {
  int samples = 128;
  double r_max = 10.0;
  std::uint64_t seed = 0;
};

/// Max over sampled points of |alpha ^ d alpha| / max(1, |y|). Zero iff
/// B x C = -A D (for A != 0).
inline double frobenius_residual(const KillingField& K, const FrobeniusConfig& cfg = {}) {
  const Mat5 N = ambient_metric() * to_matrix(K);
  std::mt19937_64 rng(cfg.seed);
  double m = 0.0;
  for (int i = 0; i < cfg.samples; ++i) {
    const HyperboloidPoint p = embed_static(sample_static_point(rng, cfg.r_max));
    m = std::max(m, detail::frobenius_at(N, p.y) / std::max(1.0, p.y.norm()));
  }
  return m;
}

}  // namespace adsmass
