// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "adsmass/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>

using namespace adsmass;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  criterion(1, "witness map", [] {
    Spinor psi;
    psi << 1.0, 0.0, Complex(1.0, 1.0), 0.0;
    const KillingField expect{3.0, Vec3(-1, 0, 0), Vec3(-2, 0, 0), Vec3(2, 0, 0)};
    const double err = max_abs_diff(spinor_to_killing(psi), expect);
    return Outcome{err <= 1e-12, fmt("error %.3e <= 1e-12", err)};
  });

  criterion(2, "fierz identity", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const double r = verify_fierz();
    const double secs = seconds_since(t0);
    return Outcome{r <= 1e-13 && secs < 1.0, fmt("max residual %.3e <= 1e-13 over 256 tuples, %.3fs < 1s", r, secs)};
  });

  criterion(3, "contraction identities and def_V", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(3);
    double contraction = 0.0, def_v = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Spinor psi = sample_spinor(rng);
      const SpinorBilinears b = spinor_bilinears(psi);
      const double sc = tolerance_scale(b.A * b.A);
      for (double r : contraction_residuals(b)) contraction = std::max(contraction, r / sc);
      def_v = std::max(def_v, detail::def_v_residual(is_spinor_killing(spinor_to_killing(psi))));
    }
    const double secs = seconds_since(t0);
    return Outcome{contraction <= 1e-9 && def_v <= 1e-9 && secs < 5.0,
                   fmt("contraction %.3e, def_V %.3e <= 1e-9 on 1000 spinors, %.2fs < 5s", contraction, def_v, secs)};
  });

  criterion(4, "killing form triple agreement", [] {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const KillingField K = sample_field(rng);
      const double closed = 6.0 * (-K.A * K.A - K.D.squaredNorm() + K.B.squaredNorm() + K.C.squaredNorm());
      const Mat10 ad = ad_matrix(K);
      const Mat5 M = to_matrix(K);
      const double tr_ad = (ad * ad).trace(), tr_m = 3.0 * (M * M).trace();
      worst = std::max({worst, std::abs(closed - tr_ad), std::abs(closed - tr_m), std::abs(tr_ad - tr_m)});
    }
    return Outcome{worst <= 1e-9, fmt("max disagreement %.3e <= 1e-9 on 1000 fields", worst)};
  });

  criterion(5, "invariant agreement and coadjoint invariance", [] {
    std::mt19937_64 rng(5);
    double traces = 0.0, coadjoint = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const ConservedCharges mu = sample_charges(rng);
      const InvariantPair a = invariants(mu), b = invariants_via_ad(mu);
      traces = std::max({traces, detail::rel_diff(a.alpha, b.alpha), detail::rel_diff(a.beta, b.beta)});
    }
    for (int i = 0; i < 100; ++i) {
      const ConservedCharges mu = sample_charges(rng);
      const ConservedCharges nu = coadjoint_action(sample_group_element(rng), mu);
      const InvariantPair a = invariants(mu), b = invariants(nu);
      const double sc = std::max({1.0, mu.magnitude(), nu.magnitude()});
      coadjoint = std::max({coadjoint, std::abs(a.alpha - b.alpha) / (sc * sc),
                            std::abs(a.beta - b.beta) / std::pow(sc, 4)});
    }
    return Outcome{traces <= 1e-8 && coadjoint <= 1e-8,
                   fmt("ad traces rel %.3e, coadjoint %.3e (both <= 1e-8)", traces, coadjoint)};
  });

  criterion(6, "rest mass", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> margin(0.05, 1.0);
    double numeric = -kInf, below = 0.0, pairing = 0.0;
    for (int i = 0; i < 50; ++i) {
      const ConservedCharges mu = sample_psd_charges(rng, margin(rng));
      const MassReport rep = rest_mass(mu);
      const double sc = tolerance_scale(mu.magnitude());
      const double mh = rest_mass_numeric(mu, {10000, rng()});
      below = std::max(below, rep.m - mh);
      numeric = std::max(numeric, (mh - rep.m) / sc);
      pairing = rep.optimal_observer ? std::max(pairing, std::abs(pair(mu, *rep.optimal_observer) - rep.m)) : kInf;
    }
    auto m_of = [](double e, Vec3 c, Vec3 j) { return rest_mass({e, Vec3::Zero(), c, j}).m; };
    const double m1 = m_of(2.0, Vec3::Zero(), Vec3::Zero());
    const double m2 = m_of(5.0, Vec3(1, 0, 0), Vec3(0, 2, 0));
    const double m3 = m_of(3.0, Vec3(1, 0, 0), Vec3(0, 2, 0));
    const double specific = std::max({std::abs(m1 - 2.0), std::abs(m2 - std::sqrt(0.5 * (28.0 + std::sqrt(384.0)))),
                                      std::abs(m3 - std::sqrt(6.0))});
    const double secs = seconds_since(t0);
    const bool ok = below <= 1e-9 && numeric <= 1e-4 && pairing <= 1e-6 && specific <= 1e-12 && secs < 30.0;
    return Outcome{ok, fmt("numeric excess %.3e <= 1e-4 scale (deficit %.3e <= 1e-9), pairing %.3e <= 1e-6", numeric,
                           below, pairing) +
                           fmt(", specific values %.3e, %.2fs < 30s", specific, secs)};
  });

  criterion(7, "geometry", [] {
    std::mt19937_64 rng(7);
    double norm = 0.0;
    for (int i = 0; i < 20; ++i) norm = std::max(norm, std::abs(min_norm(sample_observer(rng), {64, 10.0, rng()}) - 1.0));
    int mismatches = 0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
      const Vec3 B(u(rng), u(rng), u(rng)), C(u(rng), u(rng), u(rng));
      double A = u(rng);
      if (std::abs(A) < 0.1) A = std::copysign(0.1, A);
      KillingField K{A, B, C, -B.cross(C) / A};
      if (i % 2 == 1) K.D += Vec3(u(rng), u(rng), u(rng));
      const double sc = tolerance_scale(K.magnitude());
      const bool orthogonal = (K.B.cross(K.C) + K.A * K.D).norm() <= 1e-9 * sc;
      const bool zero_residual = frobenius_residual(K, {128, 10.0, rng()}) <= 1e-9 * sc;
      if (orthogonal != zero_residual) ++mismatches;
    }
    return Outcome{norm <= 1e-5 && mismatches == 0,
                   fmt("min_norm |m-1| %.3e <= 1e-5 on 20 observers, %g/200 frobenius mismatches", norm, mismatches)};
  });

  criterion(8, "hull decomposition and witness", [] {
    std::mt19937_64 rng(8);
    double recon = 0.0;
    bool terms_ok = true;
    for (int i = 0; i < 100; ++i) {
      const KillingField K = sample_observer(rng);
      const HullDecomposition h = hull_decompose(K);
      for (const auto& t : h.terms) terms_ok = terms_ok && t.lambda > 0.0 && is_spinor_killing(t.S).member;
      recon = std::max(recon, h.reconstruction_error / tolerance_scale(K.magnitude()));
    }
    const HullWitness w = hull_witness();
    const bool witness_ok = w.gap == 0.0 && w.D_dot_x0 == 2.0 && is_spinor_killing(w.K).member;
    return Outcome{recon <= 1e-8 && terms_ok && witness_ok,
                   fmt("reconstruction %.3e <= 1e-8 scale, witness gap %g, D.x0 %g", recon, w.gap, w.D_dot_x0) +
                       (terms_ok ? "" : ", bad term")};
  });

  criterion(9, "positivity inequalities", [] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> margin(0.011, 1.0);
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
      const ConservedCharges mu = sample_psd_charges(rng, margin(rng));
      if (!(check_positivity(mu).min_eigenvalue > 0.01)) return Outcome{false, "sampled charge below margin"};
      const InvariantPair inv = invariants(mu);
      if (!(inv.alpha > 0.0 && inv.beta > 0.0 && inv.beta < inv.alpha * inv.alpha)) ++violations;
    }
    double excess = 0.0;
    for (int i = 0; i < 200; ++i) {
      const ConservedCharges mu = sample_psd_charges(rng, 0.0, 1.0, true);
      const double bound = std::sqrt(mu.c.squaredNorm() + mu.j.squaredNorm() + 2.0 * mu.c.cross(mu.j).norm());
      excess = std::max(excess, bound - mu.e);
    }
    return Outcome{violations == 0 && excess <= 1e-9,
                   fmt("%g/200 violations of 0 < beta < alpha^2, max(bound - e) %.3e <= 1e-9", violations, excess)};
  });

  criterion(10, "spinor preimage", [] {
    std::mt19937_64 rng(10);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const KillingField K = sample_spinor_killing(rng).second;
      worst = std::max(worst, max_abs_diff(spinor_to_killing(spinor_preimage(K)), K) / tolerance_scale(K.magnitude()));
    }
    return Outcome{worst <= 1e-8, fmt("round trip %.3e <= 1e-8 scale on 100 elements", worst)};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
