#pragma once

// Observer fields O, spinor Killing fields S, the causal gap, and the
// decomposition of observers into positive combinations of S members.

#include "adsmass/clifford.hpp"

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace adsmass {

struct Residual {
  std::string name;
  double value = 0.0;
};

struct MembershipReport {
  bool member = false;
  std::vector<Residual> residuals;
  double tolerance = 0.0;

  double operator[](std::string_view name) const {
    for (const auto& r : residuals)
      if (r.name == name) return r.value;
    throw Error(ErrorKind::BadIndex, "unknown residual " + std::string(name));
  }
};

/// Observer test: A D = -B x C, A > max(|B|, |C|, |D|), A^2 + |D|^2 - |B|^2 - |C|^2 = 1.
/// Equalities are compared against tol * max(1, s^2) with s = K.magnitude();
/// the inequalities are reported as margins and must exceed tol.
inline MembershipReport is_observer(const KillingField& K, double tol = 1e-9) {
  const double s = tolerance_scale(K.magnitude());
  const double eq_tol = tol * s * s;
  MembershipReport r;
  r.tolerance = tol;
  const double frob = (K.A * K.D + K.B.cross(K.C)).cwiseAbs().maxCoeff();
  const double norm = K.A * K.A + K.D.squaredNorm() - K.B.squaredNorm() - K.C.squaredNorm() - 1.0;
  r.residuals = {{"AD+BxC", frob},
                 {"A-|B|", K.A - K.B.norm()},
                 {"A-|C|", K.A - K.C.norm()},
                 {"A-|D|", K.A - K.D.norm()},
                 {"norm-1", norm}};
  r.member = frob <= eq_tol && std::abs(norm) <= eq_tol && r["A-|B|"] > tol && r["A-|C|"] > tol &&
             r["A-|D|"] > tol;
  return r;
}

/// Delta^2 = -B.(C x D)/A.
inline double delta_squared(const KillingField& K) { return -K.B.dot(K.C.cross(K.D)) / K.A; }

/// The relations characterizing S. Each residual is divided by s^deg with
/// s = K.magnitude(), so membership is invariant under positive scaling.
inline MembershipReport is_spinor_killing(const KillingField& K, double tol = 1e-9) {
  if (std::abs(K.A) <= tol * tolerance_scale(K.magnitude()))
    throw Error(ErrorKind::DegenerateInput, "A = 0 leaves Delta^2 undefined", K.A);
  const double s = K.magnitude();
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
  const double d2 = delta_squared(K);
  const double bb = K.B.squaredNorm(), cc = K.C.squaredNorm(), dd = K.D.squaredNorm();
  const double bc = K.B.dot(K.C), cd = K.C.dot(K.D), db = K.D.dot(K.B);

  MembershipReport r;
  r.tolerance = tol;
  r.residuals = {
      {"A>0", K.A / s},
      {"A^2", (K.A * K.A - (bb + cc + dd - 2.0 * d2)) / s2},
      {"BC", (bc * bc - (bb - d2) * (cc - d2)) / s4},
      {"CD", (cd * cd - (cc - d2) * (dd - d2)) / s4},
      {"BD", (db * db - (bb - d2) * (dd - d2)) / s4},
      {"|B|^2-Delta^2", (bb - d2) / s2},
      {"|C|^2-Delta^2", (cc - d2) / s2},
      {"|D|^2-Delta^2", (dd - d2) / s2},
      {"Delta^2", d2 / s2},
      {"dots", bc * cd * db / s6},
  };
  r.member = r["A>0"] > 0.0;
  for (const char* eq : {"A^2", "BC", "CD", "BD"}) r.member = r.member && std::abs(r[eq]) <= tol;
  for (const char* ge : {"|B|^2-Delta^2", "|C|^2-Delta^2", "|D|^2-Delta^2", "Delta^2", "dots"})
    r.member = r.member && r[ge] >= -tol;
  return r;
}

/// Observer from (B, C): A^2 is the larger root of A^4 - (1 + |B|^2 + |C|^2) A^2 + |B x C|^2,
/// D = -B x C / A. Every (B, C) gives a member of O.
inline KillingField observer_from_BC(const Vec3& B, const Vec3& C) {
  const double S = 1.0 + B.squaredNorm() + C.squaredNorm();
  const Vec3 BxC = B.cross(C);
  const double disc = std::max(0.0, S * S - 4.0 * BxC.squaredNorm());
  const double A = std::sqrt(0.5 * (S + std::sqrt(disc)));
  return {A, B, C, -BxC / A};
}

/// B, C uniform in the ball of radius 1.5; redraws if A fails the margin.
template <class URBG>
KillingField sample_observer(URBG& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto ball = [&] {
    for (;;) {
      const Vec3 v(u(rng), u(rng), u(rng));
      if (v.norm() <= 1.5) return v;
    }
  };
  for (;;) {
    const Vec3 B = ball();
    const Vec3 C = ball();
    const KillingField K = observer_from_BC(B, C);
    if (K.A > std::max({B.norm(), C.norm(), K.D.norm()}) + 1e-9) return K;
  }
}

inline KillingField sample_observer(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_observer(rng);
}

/// Real and imaginary parts independent standard normals.
template <class URBG>
Spinor sample_spinor(URBG& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Spinor psi;
  for (int i = 0; i < 4; ++i) psi[i] = Complex(n(rng), n(rng));
  return psi;
}

template <class URBG>
std::pair<Spinor, KillingField> sample_spinor_killing(URBG& rng) {
  const Spinor psi = sample_spinor(rng);
  return {psi, spinor_to_killing(psi)};
}

inline std::pair<Spinor, KillingField> sample_spinor_killing(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_spinor_killing(rng);
}

struct CausalGap {
  double value = 0.0;
  Vec3 argmin = Vec3::UnitX();
};

/// min over unit x of A^2 - (B.x)^2 - (C.x)^2 - (D.x)^2. The minimizer is
/// the top eigenvector of B B^T + C C^T + D D^T, signed so that its largest
/// component is positive.
inline CausalGap causal_gap(const KillingField& K) {
  const Mat3 G = K.B * K.B.transpose() + K.C * K.C.transpose() + K.D * K.D.transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> es(G);
  Vec3 x = es.eigenvectors().col(2);
  Eigen::Index i;
  x.cwiseAbs().maxCoeff(&i);
  if (x[i] < 0) x = -x;
  return {K.A * K.A - es.eigenvalues()[2], x};
}

/// (A, B, C, D) -> (A, cos t B + sin t C, -sin t B + cos t C, D).
inline KillingField rotate_BC(const KillingField& K, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {K.A, c * K.B + s * K.C, -s * K.B + c * K.C, K.D};
}

/// (A, B, C, D) -> (A, C, D, B).
inline KillingField permute_BCD(const KillingField& K) { return {K.A, K.C, K.D, K.B}; }

/// Applies a spatial rotation R to B, C and D.
inline KillingField rotate_spatial(const KillingField& K, const Mat3& R) {
  return {K.A, R * K.B, R * K.C, R * K.D};
}

struct HullTerm {
  double lambda = 0.0;
  KillingField S;
};

struct HullDecomposition {
  std::vector<HullTerm> terms;
  double reconstruction_error = 0.0;
};

namespace detail {
// Orthonormal rows completing a unit vector.
inline Mat3 frame_from(const Vec3& e1) {
  const Vec3 t = std::abs(e1[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e2 = e1.cross(t).normalized();
  Mat3 R;
  R.row(0) = e1;
  R.row(1) = e2;
  R.row(2) = e1.cross(e2);
  return R;
}

inline HullDecomposition finish(const KillingField& K, std::vector<HullTerm> terms) {
  KillingField sum;
  for (const auto& t : terms) sum = sum + t.lambda * t.S;
  return {std::move(terms), max_abs_diff(sum, K)};
}
}  // namespace detail

/// Writes an observer as a positive combination of S members.
///
/// D = 0: B and C are parallel to some n, and K = l+ (1, (b/r) n, (c/r) n, 0)
/// + l- (1, -(b/r) n, -(c/r) n, 0) with l± = (A ± r)/2, r^2 = |B|^2 + |C|^2.
///
/// D != 0: in the frame e1 = B^, e3 = D^, K = (A, (b,0,0), (c1,c2,0), (0,0,d))
/// with c2 < 0. Shifting d to d' = d - x keeps (A', B, C, d' e3) in S when
/// A' = -b c2 / d' and f(x) = (b c2 / d')^2 - (b^2 + c1^2 + c2^2) + d'^2 = 0.
/// f(0) = 1 and f(d - sqrt(b |c2|)) <= 0, so x is found by bisection. The
/// remainder (A - A', 0, 0, x e3) splits into two rays (1, 0, 0, ±e3).
inline HullDecomposition hull_decompose(const KillingField& K, double tol = 1e-9) {
  if (!is_observer(K, tol).member) throw Error(ErrorKind::NotObserver, "hull_decompose needs an observer field");
  const double scale = tolerance_scale(K.magnitude());

  if (K.D.norm() <= 1e-12 * scale) {
    const double r = std::sqrt(K.B.squaredNorm() + K.C.squaredNorm());
    if (r == 0.0) {
      const KillingField plus{1.0, Vec3::UnitX(), Vec3::Zero(), Vec3::Zero()};
      const KillingField minus{1.0, -Vec3::UnitX(), Vec3::Zero(), Vec3::Zero()};
      return detail::finish(K, {{0.5 * K.A, plus}, {0.5 * K.A, minus}});
    }
    const Vec3 n = (K.B.norm() >= K.C.norm() ? K.B : K.C).normalized();
    const double b = K.B.dot(n) / r, c = K.C.dot(n) / r;
    const KillingField plus{1.0, b * n, c * n, Vec3::Zero()};
    const KillingField minus{1.0, -b * n, -c * n, Vec3::Zero()};
    return detail::finish(K, {{0.5 * (K.A + r), plus}, {0.5 * (K.A - r), minus}});
  }

  Mat3 R;
  R.row(0) = K.B.normalized();
  R.row(2) = K.D.normalized();
  R.row(1) = R.row(2).cross(R.row(0));
  const KillingField N = rotate_spatial(K, R);
  const double b = N.B[0], c1 = N.C[0], c2 = N.C[1], d = N.D[2];
  if (!(b > 0.0 && d > 0.0 && c2 < 0.0))
    throw Error(ErrorKind::BisectionFailure, "normal form has unexpected signs", c2);

  const double rhs = b * b + c1 * c1 + c2 * c2;
  auto f = [&](double x) {
    const double dp = d - x;
    const double q = b * c2 / dp;
    return q * q - rhs + dp * dp;
  };
  double lo = d - std::sqrt(b * std::abs(c2)), hi = 0.0;
  if (!(f(hi) > 0.0) || f(lo) > 1e-12 * scale * scale)
    throw Error(ErrorKind::BisectionFailure, "bracket signs are wrong", f(lo));
  for (int it = 0; it < 200 && hi - lo > 1e-12 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  const double x = 0.5 * (lo + hi);
  const double dp = d - x;
  const double Ap = -b * c2 / dp;
  const double alpha = N.A - Ap;

  const Mat3 Rt = R.transpose();
  const Vec3 e3 = Rt.col(2);
  const KillingField core = rotate_spatial({Ap, N.B, N.C, Vec3(0.0, 0.0, dp)}, Rt);
  const KillingField up{1.0, Vec3::Zero(), Vec3::Zero(), e3};
  const KillingField down{1.0, Vec3::Zero(), Vec3::Zero(), -e3};
  return detail::finish(K, {{1.0, core}, {0.5 * (alpha + x), up}, {0.5 * (alpha - x), down}});
}

struct HullWitness {
  KillingField K;
  Vec3 x0 = Vec3::UnitX();
  double gap = 0.0;
  double D_dot_x0 = 0.0;
};

/// The S member (3, (-1,0,0), (-2,0,0), (2,0,0)), image of (1, 0, 1+i, 0). Its
/// causal gap vanishes at x0 = (1,0,0) while D.x0 = 2; a positive combination
/// of observers with zero gap at x0 would need D.x0 = 0 for each term.
inline HullWitness hull_witness() {
  HullWitness w;
  w.K = {3.0, Vec3(-1.0, 0.0, 0.0), Vec3(-2.0, 0.0, 0.0), Vec3(2.0, 0.0, 0.0)};
  const CausalGap g = causal_gap(w.K);
  w.x0 = g.argmin;
  w.gap = g.value;
  w.D_dot_x0 = w.K.D.dot(w.x0);
  return w;
}

}  // namespace adsmass
