#pragma once

// Rest mass of conserved charges: closed form, optimal observer, numerical
// infimum over observers, the energy matrix Q and its trace invariants.

#include "adsmass/detail/simplex.hpp"
#include "adsmass/killing_sets.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace adsmass {

namespace detail {
inline CMat4 rotation_generator_g0(int m) { return gamma_matrix(0) * rotation_generator(m); }
}  // namespace detail

/// J = e g0 - p_j g_j + c_k i g0 g_k + j_m (i/2) eps^{mkl} g_k g_l.
inline CMat4 clifford_charge(const ConservedCharges& mu) {
  using namespace std::complex_literals;
  CMat4 J = mu.e * gamma_matrix(0);
  for (int k = 0; k < 3; ++k) {
    J -= mu.p[k] * gamma_matrix(k + 1);
    J += (1i * mu.c[k]) * gamma_matrix(0) * gamma_matrix(k + 1);
    J += mu.j[k] * rotation_generator(k);
  }
  return J;
}

struct EnergyMatrix {
  CMat4 Q = CMat4::Identity();
  Eigen::Vector4d eigenvalues = Eigen::Vector4d::Ones();
};

/// Q = e I - p_j g0 g_j + c_k i g_k + j_m (i/2) eps^{mkl} g0 g_k g_l, so that
/// psi^* Q psi = pair(mu, spinor_to_killing(psi)).
inline EnergyMatrix energy_matrix(const ConservedCharges& mu) {
  using namespace std::complex_literals;
  EnergyMatrix out;
  CMat4 Q = mu.e * CMat4::Identity();
  for (int k = 0; k < 3; ++k) {
    Q -= mu.p[k] * gamma_matrix(0) * gamma_matrix(k + 1);
    Q += (1i * mu.c[k]) * gamma_matrix(k + 1);
    Q += mu.j[k] * detail::rotation_generator_g0(k);
  }
  out.Q = Q;
  out.eigenvalues = Eigen::SelfAdjointEigenSolver<CMat4>(Q, Eigen::EigenvaluesOnly).eigenvalues();
  return out;
}

/// Real part of psi^* Q psi.
inline double spinor_energy(const ConservedCharges& mu, const Spinor& psi) {
  return psi.dot(energy_matrix(mu).Q * psi).real();
}

struct PositivityReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// psd iff the smallest eigenvalue of Q is >= -tol max(1, |Q|), |Q| the spectral radius.
inline PositivityReport check_positivity(const ConservedCharges& mu, double tol = 1e-9) {
  const EnergyMatrix E = energy_matrix(mu);
  const double radius = E.eigenvalues.cwiseAbs().maxCoeff();
  return {E.eigenvalues[0] >= -tol * tolerance_scale(radius), E.eigenvalues[0]};
}

/// p, c, j uniform in [-r, r]^3 and e = margin - (smallest eigenvalue of
/// Q at e = 0), so that Q has smallest eigenvalue exactly `margin`.
template <class URBG>
ConservedCharges sample_psd_charges(URBG& rng, double margin, double r = 1.0, bool zero_p = false) {
  std::uniform_real_distribution<double> u(-r, r);
  ConservedCharges mu;
  for (int k = 0; k < 3; ++k) {
    mu.p[k] = zero_p ? 0.0 : u(rng);
    mu.c[k] = u(rng);
    mu.j[k] = u(rng);
  }
  mu.e = 0.0;
  mu.e = margin - energy_matrix(mu).eigenvalues[0];
  return mu;
}

struct CasimirTraces {
  double t2 = 0.0;
  double t4 = 0.0;
};

/// t2 = Tr(J^2)/4 = alpha and t4 = Tr(J^4)/4 = 2 alpha^2 - beta.
inline CasimirTraces casimir_traces(const ConservedCharges& mu) {
  const CMat4 J = clifford_charge(mu);
  const CMat4 J2 = J * J;
  return {0.25 * J2.trace().real(), 0.25 * (J2 * J2).trace().real()};
}

struct ObserverResult {
  KillingField K;
  bool attained = true;
};

namespace detail {

// Optimal observer for charges with p = 0, valid when e^2 - |c|^2 - |j|^2 > 2|c x j|.
// With P = e^2 - |j|^2 - |c|^2 and R = 2|c x j|, cos(phi) = R / (P + sqrt(P^2 - R^2)),
// Q^2 = |j|^2 cos^2 + |c|^2 + R cos, eta = Q / (sin sqrt(e^2 - Q^2)), |D| = eta cos,
// |C| = eta, A = sqrt(eta^2 + 1/sin^2) and |B| = A cos.
inline KillingField rest_frame_observer(double e, const Vec3& c, const Vec3& j) {
  const double scale = tolerance_scale(std::max({std::abs(e), c.norm(), j.norm()}));
  const double tiny = 1e-14 * scale;
  const double jn = j.norm(), cn = c.norm();
  if (jn <= tiny && cn <= tiny) return {1.0, Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};

  Vec3 u1, u2;
  if (jn > tiny) {
    u1 = j / jn;
    const Vec3 cperp = c - c.dot(u1) * u1;
    u2 = cperp.norm() > tiny ? Vec3(cperp.normalized()) : Vec3(frame_from(u1).row(1).transpose());
  } else {
    u1 = c / cn;
    u2 = frame_from(u1).row(1).transpose();
  }
  const double cx = c.dot(u1), cy = std::max(0.0, c.dot(u2));

  const double P = e * e - jn * jn - cn * cn;
  const double R = 2.0 * c.cross(j).norm();
  const double cosphi = R / (P + std::sqrt(std::max(0.0, P * P - R * R)));
  const double sinphi = std::sqrt(std::max(0.0, 1.0 - cosphi * cosphi));
  const double Q2 = jn * jn * cosphi * cosphi + cn * cn + R * cosphi;
  const double eta = std::sqrt(Q2) / (sinphi * std::sqrt(e * e - Q2));
  const double d = eta * cosphi;
  const double A = std::sqrt(eta * eta + 1.0 / (sinphi * sinphi));

  Eigen::Vector2d w(-(d * jn + eta * cy), eta * cx);
  if (w.norm() > 0.0)
    w.normalize();
  else
    w = Eigen::Vector2d(1.0, 0.0);
  const Vec3 dir = w[0] * u1 + w[1] * u2;
  const Vec3 perp = -w[1] * u1 + w[0] * u2;
  return {A, A * cosphi * u1.cross(u2), eta * perp, d * dir};
}

}  // namespace detail

/// Observer attaining the rest mass. Charges are boosted to p = 0, the
/// observer is built there and pulled back. On the boundary P = R the
/// infimum is not attained; the construction is evaluated at e + 1e-6 scale
/// and flagged attained = false.
inline ObserverResult optimal_observer(const ConservedCharges& mu, double tol = 1e-9) {
  const double scale = tolerance_scale(mu.magnitude());
  const RestFrame rf = boost_to_rest_frame(mu, tol);
  const ConservedCharges& r = rf.charges;

  const double P = r.e * r.e - r.j.squaredNorm() - r.c.squaredNorm();
  const double R = 2.0 * r.c.cross(r.j).norm();
  const double margin = P - R;
  if (margin < -tol * scale * scale) throw Error(ErrorKind::Degenerate, "charges violate P >= R", margin);

  const bool attained = margin > tol * scale * scale;
  const double e = attained ? r.e : r.e + 1e-6 * scale;
  const KillingField K0 = detail::rest_frame_observer(e, r.c, r.j);
  return {adjoint_action(rf.g.inverse(), K0), attained};
}

enum class RigidityFlag { NullEnergyMomentum, BoundaryEqualityWithAlignedCJ, ZeroMass };

constexpr std::string_view to_string(RigidityFlag f) {
  switch (f) {
    case RigidityFlag::NullEnergyMomentum: return "NullEnergyMomentum";
    case RigidityFlag::BoundaryEqualityWithAlignedCJ: return "BoundaryEqualityWithAlignedCJ";
    case RigidityFlag::ZeroMass: return "ZeroMass";
  }
  return "Unknown";
}

struct MassReport {
  double m = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<KillingField> optimal_observer;
  bool attained = false;
  std::vector<RigidityFlag> flags;
  double q_min_eigenvalue = 0.0;

  bool has_flag(RigidityFlag f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

/// m = sqrt((alpha + sqrt(beta))/2). Throws NotPositive (value = smallest
/// eigenvalue of Q) when Q is not positive semidefinite.
inline MassReport rest_mass(const ConservedCharges& mu, double tol = 1e-9) {
  const PositivityReport pos = check_positivity(mu, tol);
  if (!pos.psd) throw Error(ErrorKind::NotPositive, "energy matrix is not positive semidefinite", pos.min_eigenvalue);

  const double scale = tolerance_scale(mu.magnitude());
  MassReport rep;
  rep.q_min_eigenvalue = pos.min_eigenvalue;
  const InvariantPair inv = invariants(mu);
  rep.alpha = inv.alpha;
  rep.beta = inv.beta;
  const double m2 = std::max(0.0, 0.5 * (inv.alpha + std::sqrt(std::max(0.0, inv.beta))));
  rep.m = std::sqrt(m2);

  const double pn = mu.p.norm();
  const bool null = std::abs(mu.e - pn) <= tol * scale;
  if (null) rep.flags.push_back(RigidityFlag::NullEnergyMomentum);
  if (pn <= tol * scale) {
    const double cxj = mu.c.cross(mu.j).norm();
    const double bound = std::sqrt(mu.c.squaredNorm() + mu.j.squaredNorm() + 2.0 * cxj);
    if (std::abs(mu.e - bound) <= tol * scale && cxj <= tol * scale * scale)
      rep.flags.push_back(RigidityFlag::BoundaryEqualityWithAlignedCJ);
  }
  if (m2 <= tol * scale * scale) rep.flags.push_back(RigidityFlag::ZeroMass);

  if (!null) {
    const ObserverResult obs = optimal_observer(mu, tol);
    rep.optimal_observer = obs.K;
    rep.attained = obs.attained;
  }
  return rep;
}

struct NumericMassConfig {
  int budget = 10000;
  std::uint64_t seed = 0;
  int refine_starts = 8;
};

/// Minimum of pair(mu, K) over sampled observers. O is parametrized by
/// (B, C) in R^6 via observer_from_BC; the best samples are refined by a
/// simplex search in the same coordinates.
inline double rest_mass_numeric(const ConservedCharges& mu, const NumericMassConfig& cfg = {}) {
  const PositivityReport pos = check_positivity(mu);
  if (!pos.psd) throw Error(ErrorKind::NotPositive, "energy matrix is not positive semidefinite", pos.min_eigenvalue);

  auto energy = [&](const Eigen::VectorXd& x) {
    return pair(mu, observer_from_BC(x.head<3>(), x.tail<3>()));
  };

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(10.0));
  std::vector<std::pair<double, Eigen::VectorXd>> samples;
  samples.reserve(static_cast<std::size_t>(cfg.budget));
  for (int i = 0; i < cfg.budget; ++i) {
    Eigen::VectorXd x(6);
    const double s = std::exp(log_scale(rng));
    for (int k = 0; k < 6; ++k) x[k] = s * normal(rng);
    samples.emplace_back(energy(x), std::move(x));
  }
  const auto n = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(cfg.refine_starts));
  std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(n), samples.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  double best = samples.empty() ? std::numeric_limits<double>::infinity() : samples.front().first;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd x = samples[i].second;
    for (int pass = 0; pass < 4; ++pass) {
      const double step = 0.1 * std::max(1.0, x.norm());
      const detail::SimplexResult res = detail::nelder_mead(energy, x, step, 1e-11);
      x = res.x;
      best = std::min(best, res.value);
    }
  }
  return best;
}

}  // namespace adsmass
