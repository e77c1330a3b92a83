#pragma once

// so(3,2) in (A, B, C, D) coordinates.
//
// Ambient coordinates are ordered (y0, y1, y2, y3, y4) with metric
// eta = diag(-1, 1, 1, 1, -1); AdS is the quadric eta(y, y) = -1.
// A Killing field K acts on R^{3,2} as the linear vector field y -> M y.
//
// Bracket convention: [K1, K2] := from_matrix(M1 M2 - M2 M1). The vector
// field bracket is the negative of this. Every invariant consumed here is
// built from even powers of ad, so nothing downstream depends on the sign.

#include "adsmass/types.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <limits>
#include <random>

namespace adsmass {

/// Ambient metric diag(-1, 1, 1, 1, -1).
inline Mat5 ambient_metric() {
  Mat5 eta = Mat5::Identity();
  eta(0, 0) = -1.0;
  eta(4, 4) = -1.0;
  return eta;
}

/// Levi-Civita symbol on {0, 1, 2}.
constexpr int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

/// Matrix of the vector field y -> M y for K. Satisfies M eta + (M eta)^T = 0.
inline Mat5 to_matrix(const KillingField& K) {
  Mat5 M = Mat5::Zero();
  M(4, 0) = K.A;
  M(0, 4) = -K.A;
  for (int i = 0; i < 3; ++i) {
    M(0, i + 1) = M(i + 1, 0) = K.B[i];
    M(4, i + 1) = M(i + 1, 4) = K.C[i];
  }
  for (int r = 0; r < 3; ++r)
    for (int q = 0; q < 3; ++q) {
      double s = 0.0;
      for (int p = 0; p < 3; ++p) s += K.D[p] * levi_civita(p, q, r);
      M(r + 1, q + 1) = s;
    }
  return M;
}

/// Largest entry of |M eta + (M eta)^T|.
inline double algebra_residual(const Mat5& M) {
  const Mat5 Meta = M * ambient_metric();
  return (Meta + Meta.transpose()).cwiseAbs().maxCoeff();
}

/// Inverse of to_matrix. Throws NotInAlgebra when M eta is not antisymmetric.
inline KillingField from_matrix(const Mat5& M, double tol = 1e-10) {
  const double scale = tolerance_scale(M.cwiseAbs().maxCoeff());
  if (algebra_residual(M) > tol * scale)
    throw Error(ErrorKind::NotInAlgebra, "M eta is not antisymmetric", algebra_residual(M));
  KillingField K;
  K.A = M(4, 0);
  for (int i = 0; i < 3; ++i) {
    K.B[i] = M(0, i + 1);
    K.C[i] = M(4, i + 1);
  }
  for (int p = 0; p < 3; ++p) {
    double s = 0.0;
    for (int q = 0; q < 3; ++q)
      for (int r = 0; r < 3; ++r) s += levi_civita(p, q, r) * M(r + 1, q + 1);
    K.D[p] = 0.5 * s;
  }
  return K;
}

namespace detail {
// Read-off without the membership check; for matrices that are in the
// algebra by construction (commutators, conjugates).
inline KillingField read_coords(const Mat5& M) {
  return from_matrix(M, std::numeric_limits<double>::infinity());
}
}  // namespace detail

inline KillingField bracket(const KillingField& K1, const KillingField& K2) {
  const Mat5 M1 = to_matrix(K1);
  const Mat5 M2 = to_matrix(K2);
  return detail::read_coords(M1 * M2 - M2 * M1);
}

/// Killing form 6(-A1 A2 - D1.D2 + B1.B2 + C1.C2), the polarization of
/// B(K, K) = 6(-A^2 - |D|^2 + |B|^2 + |C|^2). Equals Tr(ad ad) = 3 Tr(M1 M2).
inline double killing_form(const KillingField& K1, const KillingField& K2) {
  return 6.0 * (-K1.A * K2.A - K1.D.dot(K2.D) + K1.B.dot(K2.B) + K1.C.dot(K2.C));
}

/// Observer energy pairing e A + p.B + c.C + j.D.
inline double pair(const ConservedCharges& mu, const KillingField& K) {
  return mu.e * K.A + mu.p.dot(K.B) + mu.c.dot(K.C) + mu.j.dot(K.D);
}

/// Matrix of L -> [K, L] in the basis (A, B1..B3, C1..C3, D1..D3).
inline Mat10 ad_matrix(const KillingField& K) {
  Mat10 ad;
  for (int i = 0; i < 10; ++i)
    ad.col(i) = bracket(K, KillingField::from_coords(Vec10::Unit(i))).coords();
  return ad;
}

/// The K with (1/6) B(K, L) = pair(mu, L) for every L.
inline KillingField charges_to_field(const ConservedCharges& mu) {
  return {-mu.e, mu.p, mu.c, -mu.j};
}

/// Inverse of charges_to_field.
inline ConservedCharges field_to_charges(const KillingField& K) {
  return {-K.A, K.B, K.C, -K.D};
}

struct InvariantPair {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Closed-form coadjoint invariants
///   alpha = e^2 + |j|^2 - |p|^2 - |c|^2
///   beta  = (e^2 - |j|^2 - |p|^2 - |c|^2)^2 - 4|j x p|^2 - 4|p x c|^2
///           - 4|c x j|^2 + 8 e c.(p x j)
inline InvariantPair invariants(const ConservedCharges& mu) {
  const double e2 = mu.e * mu.e;
  const double jj = mu.j.squaredNorm(), pp = mu.p.squaredNorm(), cc = mu.c.squaredNorm();
  const double alpha = e2 + jj - pp - cc;
  const double s = e2 - jj - pp - cc;
  const double beta = s * s - 4.0 * mu.j.cross(mu.p).squaredNorm() -
                      4.0 * mu.p.cross(mu.c).squaredNorm() -
                      4.0 * mu.c.cross(mu.j).squaredNorm() +
                      8.0 * mu.e * mu.c.dot(mu.p.cross(mu.j));
  return {alpha, beta};
}

/// Same invariants from traces of the adjoint representation:
///   alpha = -Tr(ad^2)/6,  beta = -Tr(ad^4)/3 + Tr(ad^2)^2/12.
inline InvariantPair invariants_via_ad(const ConservedCharges& mu) {
  const Mat10 ad = ad_matrix(charges_to_field(mu));
  const Mat10 ad2 = ad * ad;
  const double t2 = ad2.trace();
  const double t4 = (ad2 * ad2).trace();
  return {-t2 / 6.0, -t4 / 3.0 + t2 * t2 / 12.0};
}

/// Element of SO(3,2) acting on ambient coordinates.
struct GroupElement {
  Mat5 matrix = Mat5::Identity();

  GroupElement inverse() const {
    const Mat5 eta = ambient_metric();
    return {eta * matrix.transpose() * eta};
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.matrix * b.matrix};
  }
};

/// Largest entry of |g^T eta g - eta|.
inline double group_residual(const GroupElement& g) {
  const Mat5 eta = ambient_metric();
  return (g.matrix.transpose() * eta * g.matrix - eta).cwiseAbs().maxCoeff();
}

inline void require_group(const GroupElement& g, double tol = 1e-10) {
  const double scale = tolerance_scale(g.matrix.cwiseAbs().maxCoeff());
  const double r = group_residual(g);
  if (r > tol * scale * scale) throw Error(ErrorKind::NotInGroup, "g^T eta g != eta", r);
}

/// exp(t * to_matrix(K)), Pade scaling and squaring.
inline GroupElement group_exp(const KillingField& K, double t) {
  const Mat5 X = t * to_matrix(K);
  return {X.exp()};
}

/// Ad_g K = g M g^{-1}.
inline KillingField adjoint_action(const GroupElement& g, const KillingField& K) {
  require_group(g);
  return detail::read_coords(g.matrix * to_matrix(K) * g.inverse().matrix);
}

/// 10x10 matrix of K -> Ad_g K in (A, B, C, D) coordinates.
inline Mat10 adjoint_matrix(const GroupElement& g) {
  require_group(g);
  const Mat5 ginv = g.inverse().matrix;
  Mat10 L;
  for (int i = 0; i < 10; ++i)
    L.col(i) = detail::read_coords(g.matrix * to_matrix(KillingField::from_coords(Vec10::Unit(i))) * ginv)
                   .coords();
  return L;
}

/// Coadjoint action, defined by pair(Ad*_g mu, K) = pair(mu, Ad_{g^-1} K).
inline ConservedCharges coadjoint_action(const GroupElement& g, const ConservedCharges& mu) {
  const Mat10 L = adjoint_matrix(g.inverse());
  return ConservedCharges::from_coords(L.transpose() * mu.coords());
}

/// Uniform entries in [-r, r].
template <class URBG>
KillingField sample_field(URBG& rng, double r = 2.0) {
  std::uniform_real_distribution<double> u(-r, r);
  Vec10 v;
  for (int i = 0; i < 10; ++i) v[i] = u(rng);
  return KillingField::from_coords(v);
}

template <class URBG>
ConservedCharges sample_charges(URBG& rng, double r = 2.0) {
  return field_to_charges(sample_field(rng, r));
}

/// Product of `factors` one-parameter subgroups exp(t K) with random K and
/// t in [-1, 1]; lies in the identity component.
template <class URBG>
GroupElement sample_group_element(URBG& rng, int factors = 5) {
  std::uniform_real_distribution<double> t(-1.0, 1.0);
  GroupElement g;
  for (int i = 0; i < factors; ++i) g = g * group_exp(sample_field(rng, 1.0), t(rng));
  return g;
}

struct RestFrame {
  ConservedCharges charges;
  GroupElement g;
};

/// Boost along p-hat (the y4-y^i generator, which mixes e with p) so that the
/// transformed momentum vanishes. The boost parameter is found by bisection.
/// Requires e > |p|.
inline RestFrame boost_to_rest_frame(const ConservedCharges& mu, double tol = 1e-9) {
  const double scale = tolerance_scale(mu.magnitude());
  const double pn = mu.p.norm();
  if (mu.e <= pn + tol * scale)
    throw Error(ErrorKind::NotTimelikeEnergyMomentum, "boost to rest frame needs e > |p|", mu.e - pn);
  if (pn == 0.0) return {mu, GroupElement{}};

  const Vec3 dir = mu.p / pn;
  const KillingField gen{0.0, Vec3::Zero(), dir, Vec3::Zero()};
  auto momentum = [&](double t) { return coadjoint_action(group_exp(gen, t), mu).p.dot(dir); };

  // momentum(0) = |p| > 0; search outward for a sign change.
  double lo = 0.0, hi = 0.0;
  double f_lo = pn;
  bool found = false;
  for (double step = 0.5; step < 64.0 && !found; step *= 2.0) {
    for (double t : {step, -step}) {
      const double f = momentum(t);
      if (f <= 0.0) {
        lo = 0.0;
        hi = t;
        found = true;
        break;
      }
    }
  }
  if (!found) throw Error(ErrorKind::NotTimelikeEnergyMomentum, "no rest-frame boost bracket", mu.e - pn);

  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = momentum(mid);
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  const GroupElement g = group_exp(gen, 0.5 * (lo + hi));
  ConservedCharges out = coadjoint_action(g, mu);
  return {out, g};
}

}  // namespace adsmass
