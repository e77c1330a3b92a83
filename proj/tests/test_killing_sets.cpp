#include "adsmass/killing_sets.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace adsmass;

namespace {
KillingField field(double A, Vec3 B, Vec3 C, Vec3 D) { return {A, B, C, D}; }
const KillingField kWitness = field(3, Vec3(-1, 0, 0), Vec3(-2, 0, 0), Vec3(2, 0, 0));

double max_def_v(const MembershipReport& r) {
  double m = 0.0;
  for (const char* eq : {"A^2", "BC", "CD", "BD"}) m = std::max(m, std::abs(r[eq]));
  for (const char* ge : {"|B|^2-Delta^2", "|C|^2-Delta^2", "|D|^2-Delta^2", "Delta^2", "dots"})
    m = std::max(m, -r[ge]);
  return m;
}

void expect_valid_decomposition(const KillingField& K, const HullDecomposition& h) {
  const double s = tolerance_scale(K.magnitude());
  EXPECT_LE(h.reconstruction_error, 1e-8 * s);
  KillingField sum;
  for (const auto& t : h.terms) {
    EXPECT_GT(t.lambda, 0.0);
    EXPECT_TRUE(is_spinor_killing(t.S).member);
    sum = sum + t.lambda * t.S;
  }
  EXPECT_LE(max_abs_diff(sum, K), 1e-8 * s);
}
}  // namespace

TEST(KillingSets, ObserverExamples) {
  EXPECT_TRUE(is_observer(field(1, Vec3::Zero(), Vec3::Zero(), Vec3::Zero())).member);
  EXPECT_TRUE(is_observer(field(std::sqrt(2.0), Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero())).member);
  const MembershipReport w = is_observer(kWitness);
  EXPECT_FALSE(w.member);
  EXPECT_DOUBLE_EQ(w["AD+BxC"], 6.0);
  EXPECT_DOUBLE_EQ(w["norm-1"], 7.0);
}

TEST(KillingSets, SpinorExamples) {
  const MembershipReport w = is_spinor_killing(kWitness);
  EXPECT_TRUE(w.member);
  EXPECT_EQ(w["Delta^2"], 0.0);
  EXPECT_EQ(w["A^2"], 0.0);
  EXPECT_EQ(w["BC"], 0.0);
  // (B.C)(C.D)(D.B) = 2 (-4) (-2), normalized by 3^6.
  EXPECT_DOUBLE_EQ(w["dots"], 16.0 / 729.0);
  EXPECT_TRUE(is_spinor_killing(field(1, Vec3::Zero(), Vec3(0, 0, 1), Vec3::Zero())).member);
  const MembershipReport t = is_spinor_killing(field(1, Vec3::Zero(), Vec3::Zero(), Vec3::Zero()));
  EXPECT_FALSE(t.member);
  EXPECT_DOUBLE_EQ(t["A^2"], 1.0);
  try {
    is_spinor_killing(field(0, Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
  }
}

TEST(KillingSets, SamplersSatisfyConstraints) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const KillingField K = sample_observer(s);
    const MembershipReport r = is_observer(K, 1e-10);
    EXPECT_TRUE(r.member) << s;
    EXPECT_GE(causal_gap(K).value, -1e-9);

    const auto [psi, S] = sample_spinor_killing(s);
    EXPECT_LE(max_def_v(is_spinor_killing(S)), 1e-9);
    EXPECT_TRUE(is_spinor_killing(S).member);
  }
  EXPECT_EQ(max_abs_diff(sample_observer(42), sample_observer(42)), 0.0);
  EXPECT_EQ((sample_spinor_killing(42).first - sample_spinor_killing(42).first).norm(), 0.0);
  const auto [psi, K] = sample_spinor_killing(7);
  EXPECT_LE(max_abs_diff(spinor_to_killing(2.0 * psi), 4.0 * K), 1e-12 * tolerance_scale(4.0 * K.magnitude()));
}

TEST(KillingSets, SpinorSetIsCone) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const KillingField K = sample_spinor_killing(s).second;
    for (double l : {1e-3, 0.5, 7.0, 1e3}) EXPECT_TRUE(is_spinor_killing(l * K).member);
  }
}

TEST(KillingSets, CausalGap) {
  const CausalGap w = causal_gap(kWitness);
  EXPECT_NEAR(w.value, 0.0, 1e-12);
  EXPECT_LE((w.argmin - Vec3(1, 0, 0)).norm(), 1e-12);
  EXPECT_DOUBLE_EQ(causal_gap(field(1, Vec3::Zero(), Vec3::Zero(), Vec3::Zero())).value, 1.0);
  EXPECT_NEAR(causal_gap(field(2, Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, -1))).value, 3.0, 1e-12);
}

TEST(KillingSets, RotateAndPermute) {
  const KillingField K = field(1.3, Vec3(0.1, -0.4, 2), Vec3(1, 1, 0.2), Vec3(-0.3, 0.5, 0.6));
  EXPECT_EQ(max_abs_diff(rotate_BC(K, 0.0), K), 0.0);
  const KillingField r = rotate_BC(field(1, Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero()), std::numbers::pi / 2);
  EXPECT_LE(max_abs_diff(r, field(1, Vec3::Zero(), Vec3(-1, 0, 0), Vec3::Zero())), 1e-16);
  EXPECT_TRUE(is_spinor_killing(r).member);
  EXPECT_EQ(max_abs_diff(permute_BCD(permute_BCD(permute_BCD(K))), K), 0.0);

  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const KillingField S = sample_spinor_killing(s).second;
    EXPECT_LE(max_def_v(is_spinor_killing(rotate_BC(S, u(rng)))), 1e-9);
    EXPECT_LE(max_def_v(is_spinor_killing(permute_BCD(S))), 1e-9);
    EXPECT_TRUE(is_observer(rotate_BC(sample_observer(s), u(rng))).member);
  }
}

TEST(KillingSets, HullExamples) {
  const KillingField T = field(1, Vec3::Zero(), Vec3::Zero(), Vec3::Zero());
  const HullDecomposition h = hull_decompose(T);
  ASSERT_EQ(h.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(h.terms[0].lambda, 0.5);
  EXPECT_DOUBLE_EQ(h.terms[1].lambda, 0.5);
  EXPECT_EQ(max_abs_diff(h.terms[0].S, field(1, Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero())), 0.0);
  EXPECT_EQ(max_abs_diff(h.terms[1].S, field(1, Vec3(-1, 0, 0), Vec3::Zero(), Vec3::Zero())), 0.0);
  expect_valid_decomposition(T, h);

  const KillingField K = field(std::sqrt(2.0), Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero());
  const HullDecomposition g = hull_decompose(K);
  ASSERT_EQ(g.terms.size(), 2u);
  EXPECT_NEAR(g.terms[0].lambda, (std::sqrt(2.0) + 1) / 2, 1e-15);
  EXPECT_NEAR(g.terms[1].lambda, (std::sqrt(2.0) - 1) / 2, 1e-15);
  expect_valid_decomposition(K, g);

  try {
    hull_decompose(kWitness);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotObserver);
  }
}

TEST(KillingSets, HullDecomposesObservers) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const KillingField K = sample_observer(s);
    expect_valid_decomposition(K, hull_decompose(K));
  }
  // D = 0 branch with B parallel to C.
  for (double t : {0.2, 1.0, 3.0}) {
    const Vec3 n = Vec3(1, 2, -1).normalized();
    const KillingField K = observer_from_BC(t * n, -0.5 * t * n);
    EXPECT_EQ(K.D.norm(), 0.0);
    expect_valid_decomposition(K, hull_decompose(K));
  }
}

TEST(KillingSets, Witness) {
  const HullWitness w = hull_witness();
  EXPECT_EQ(max_abs_diff(w.K, kWitness), 0.0);
  EXPECT_TRUE(is_spinor_killing(w.K).member);
  EXPECT_FALSE(is_observer(w.K).member);
  EXPECT_EQ(w.gap, 0.0);
  EXPECT_EQ(w.x0, Vec3(1, 0, 0));
  EXPECT_EQ(w.D_dot_x0, 2.0);
}
