#include "adsmass/killing_sets.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace adsmass;
using namespace std::complex_literals;

namespace {
KillingField field(double A, Vec3 B, Vec3 C, Vec3 D) { return {A, B, C, D}; }
}  // namespace

TEST(Clifford, GammaRelations) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const CMat4 ac = gamma_matrix(a) * gamma_matrix(b) + gamma_matrix(b) * gamma_matrix(a);
      const double expect = a != b ? 0.0 : (a == 0 ? 2.0 : -2.0);
      EXPECT_EQ((ac - expect * CMat4::Identity()).cwiseAbs().maxCoeff(), 0.0) << a << b;
    }
}

TEST(Clifford, BasisHermiticityRule) {
  ASSERT_EQ(gamma_basis().size(), 16u);
  for (const auto& g : gamma_basis())
    EXPECT_EQ((g.matrix.adjoint() - double(g.sign) * g.matrix).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Clifford, GammaProducts) {
  EXPECT_EQ((gamma({}) - CMat4::Identity()).norm(), 0.0);
  CMat4 g0 = CMat4::Zero();
  g0(0, 2) = g0(1, 3) = g0(2, 0) = g0(3, 1) = 1.0;
  EXPECT_EQ((gamma({0}) - g0).norm(), 0.0);
  const Spinor psi(1.0, 0.0, 1.0 + 1i, 0.0);
  const Spinor expect(-1i, 0.0, 1.0 - 1i, 0.0);
  EXPECT_LE((gamma({2, 3}) * psi - expect).norm(), 1e-15);
  EXPECT_THROW(gamma({1, 1}), Error);
  EXPECT_THROW(gamma({2, 1}), Error);
  EXPECT_THROW(gamma({4}), Error);
}

TEST(Clifford, SpinorFormExamples) {
  EXPECT_EQ(spinor_form(Spinor(1, 0, 1, 0), Spinor(1, 0, 1, 0)), Complex(2.0));
  EXPECT_EQ(spinor_form(Spinor(1, 0, 0, 0), Spinor(1, 0, 0, 0)), Complex(0.0));
  const Spinor psi(1.0, 0.0, 1.0 + 1i, 0.0);
  EXPECT_LE(std::abs(spinor_form(psi, psi) - 2.0), 1e-15);
  EXPECT_LE(std::abs(spinor_form(psi, psi) - hermitian(gamma_matrix(0) * psi, psi)), 1e-15);
}

TEST(Clifford, CliffordMultiplicationIsSymmetric) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int i = 0; i < 200; ++i) {
    const Spinor phi = sample_spinor(rng), psi = sample_spinor(rng);
    const Eigen::Vector4d X(n(rng), n(rng), n(rng), n(rng));
    const CMat4 Xc = clifford_vector(X);
    EXPECT_LE(std::abs(spinor_form(Xc * phi, psi) - spinor_form(phi, Xc * psi)), 1e-12);
  }
}

TEST(Clifford, SesquilinearForm) {
  std::mt19937_64 rng(12);
  const Spinor phi = sample_spinor(rng), psi = sample_spinor(rng);
  const Complex l(0.3, -1.2);
  EXPECT_LE(std::abs(spinor_form(l * phi, psi) - l * spinor_form(phi, psi)), 1e-13);
  EXPECT_LE(std::abs(spinor_form(phi, l * psi) - std::conj(l) * spinor_form(phi, psi)), 1e-13);
}

TEST(Clifford, SpinorMapExamples) {
  const KillingField w = spinor_to_killing(Spinor(1.0, 0.0, 1.0 + 1i, 0.0));
  EXPECT_LE(max_abs_diff(w, field(3, Vec3(-1, 0, 0), Vec3(-2, 0, 0), Vec3(2, 0, 0))), 1e-12);

  const KillingField z = spinor_to_killing(Spinor(1.0, -1i, 1i, 1.0) / 2.0);
  EXPECT_LE(max_abs_diff(z, field(1, Vec3::Zero(), Vec3(0, 0, 1), Vec3::Zero())), 1e-15);

  const KillingField c1 = spinor_to_killing(Spinor(-1.0, 1i, 1i, -1.0) / 2.0);
  EXPECT_LE(max_abs_diff(c1, field(1, Vec3(0, 0, -1), Vec3(1, 0, 0), Vec3(0, 1, 0))), 1e-15);
}

TEST(Clifford, SpinorMapIsRealQuadraticAndInS) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Spinor psi = sample_spinor(rng);
    const KillingField K = spinor_to_killing(psi);
    const double s = tolerance_scale(K.magnitude());
    EXPECT_LE(spinor_to_killing_imaginary(psi), 1e-12 * s);
    const Complex l(0.7, -0.4);
    EXPECT_LE(max_abs_diff(spinor_to_killing(l * psi), std::norm(l) * K), 1e-12 * s);
    EXPECT_TRUE(is_spinor_killing(K).member);
  }
}

TEST(Clifford, ContractionIdentities) {
  const SpinorBilinears zero = spinor_bilinears(Spinor::Zero());
  EXPECT_EQ(zero.A, 0.0);
  EXPECT_EQ(zero.E.norm() + std::abs(zero.F) + std::abs(zero.G) + std::abs(zero.H), 0.0);

  const SpinorBilinears w = spinor_bilinears(Spinor(1.0, 0.0, 1.0 + 1i, 0.0));
  EXPECT_NEAR(27.0, 9.0 + w.E.squaredNorm() + w.F * w.F + w.G * w.G + w.H * w.H, 1e-12);

  std::mt19937_64 rng(14);
  for (int i = 0; i < 1000; ++i) {
    const SpinorBilinears s = spinor_bilinears(sample_spinor(rng));
    const double sc = tolerance_scale(s.A * s.A);
    for (double r : contraction_residuals(s)) EXPECT_LE(r, 1e-9 * sc);
    EXPECT_NEAR(s.H * s.H, s.B.squaredNorm() - s.delta_squared(), 1e-9 * sc);
  }
}

TEST(Clifford, Fierz) {
  EXPECT_LE(verify_fierz(), 1e-13);
  EXPECT_EQ(std::abs(fierz_residual(1, 1, 1, 1)), 0.0);
  std::mt19937_64 rng(15);
  std::normal_distribution<double> n;
  CMat4 M;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) M(r, c) = Complex(n(rng), n(rng));
  EXPECT_LE((fierz_expand(M) - M).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Clifford, SL2CInvariance) {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    Eigen::Matrix2cd g;
    g << Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng));
    g /= std::sqrt(g.determinant());
    const CMat4 rho = sl2c_action(g);
    const Spinor phi = sample_spinor(rng), psi = sample_spinor(rng);
    const Complex a = spinor_form(rho * phi, rho * psi), b = spinor_form(phi, psi);
    EXPECT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b)) * rho.cwiseAbs2().sum());
  }
}

TEST(Clifford, IsometryLifts) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Spinor psi = sample_spinor(rng);
    const KillingField K = spinor_to_killing(psi);
    const double t = u(rng);
    EXPECT_LE(max_abs_diff(spinor_to_killing(time_translation_lift(t) * psi), rotate_BC(K, t)), 1e-12);

    const Mat3 R = Eigen::Quaterniond(u(rng), u(rng), u(rng), u(rng)).normalized().toRotationMatrix();
    EXPECT_LE(max_abs_diff(spinor_to_killing(rotation_lift(R) * psi), rotate_spatial(K, R)), 1e-12);

    const KillingField P = spinor_to_killing(permutation_lift() * psi);
    EXPECT_LE(max_abs_diff(P, KillingField{K.A, K.D, K.B, K.C}), 1e-12);
  }
}
