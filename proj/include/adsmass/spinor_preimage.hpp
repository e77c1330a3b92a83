#pragma once

// A spinor psi with spinor_to_killing(psi) = K for K in S.

#include "adsmass/killing_sets.hpp"

#include <Eigen/Geometry>

namespace adsmass {

namespace detail {

inline Mat3 rotation_about_x(double phi) {
  return Eigen::AngleAxisd(phi, Vec3::UnitX()).toRotationMatrix();
}

// psi = (1, e^{-i t}, e^{i t}, 1)/2 has image (1, 0, -sin t u, cos t u) with
// u = (0, cos t, -sin t). Used when B vanishes, so C and D are parallel.
inline Spinor zero_b_preimage(const KillingField& K) {
  using namespace std::complex_literals;
  const Vec3 n = (K.C.norm() >= K.D.norm() ? K.C : K.D).normalized();
  const double t = std::atan2(-K.C.dot(n), K.D.dot(n));
  const Spinor psi = 0.5 * Spinor(1.0, std::exp(-1i * t), std::exp(1i * t), 1.0);
  const Vec3 u(0.0, std::cos(t), -std::sin(t));
  const Mat3 R = Eigen::Quaterniond::FromTwoVectors(u, n).toRotationMatrix();
  return rotation_lift(R) * psi;
}

// Normal form (1, (-b,0,0), (0,c,-g), (0,m,c)) with b > 0.
inline Spinor normal_form_preimage(double c, double g, double m) {
  using namespace std::complex_literals;
  if (m < g) {
    const double s = std::sqrt(g - m);
    const Complex z = std::sqrt(Complex(-(m + g), -2.0 * c));
    return 0.5 * Spinor(s, z, -std::conj(z), -s);
  }
  const double s = std::sqrt(m - g);
  const Complex z = std::sqrt(Complex(m + g, 2.0 * c));
  return 0.5 * Spinor(s, z, std::conj(z), s);
}

// Equal-branch case m = g: C, D, -B form a right-handed orthonormal frame and
// the image of (-1, i, i, -1)/2, namely (1, -e3, e1, e2), is rotated onto it.
inline Spinor tie_preimage(const KillingField& K) {
  using namespace std::complex_literals;
  Mat3 R;
  R.col(0) = K.C.normalized();
  R.col(1) = K.D.normalized();
  R.col(2) = -K.B.normalized();
  const Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  R = svd.matrixU() * svd.matrixV().transpose();
  const Spinor psi = 0.5 * Spinor(-1.0, 1i, 1i, -1.0);
  return rotation_lift(R) * psi;
}

}  // namespace detail

/// Constructs a preimage under spinor_to_killing:
///  1. scale to A = 1;
///  2. rotate (B, C) so that B.D = 0;
///  3. permute (A, B, C, D) -> (A, D, B, C) if needed so that |B|^2 = Delta^2;
///  4. rotate space so B = (-b, 0, 0) and C_y = D_z, giving the normal form
///     (1, (-b,0,0), (0,c,-g), (0,m,c));
///  5. write down the normal-form spinor and undo steps 4..1 on the spinor.
inline Spinor spinor_preimage(const KillingField& K, double tol = 1e-8) {
  if (K.A <= 0.0) throw Error(ErrorKind::DegenerateInput, "spinor_preimage needs A > 0", K.A);
  const MembershipReport rep = is_spinor_killing(K, tol);
  if (!rep.member) throw Error(ErrorKind::NotInSpinorSet, "K violates the spinor Killing relations");

  const KillingField K1 = (1.0 / K.A) * K;
  const double bd = K1.B.dot(K1.D), cd = K1.C.dot(K1.D);
  const double theta = (bd == 0.0 && cd == 0.0) ? 0.0 : std::atan2(-bd, cd);
  KillingField K2 = rotate_BC(K1, theta);

  const double d2 = delta_squared(K2);
  const bool permuted = K2.D.squaredNorm() - d2 < K2.B.squaredNorm() - d2;
  if (permuted) K2 = {K2.A, K2.D, K2.B, K2.C};

  Spinor psi2;
  if (K2.B.norm() <= 1e-12) {
    psi2 = detail::zero_b_preimage(K2);
  } else {
    const Mat3 R1 = detail::frame_from(-K2.B.normalized());
    const KillingField K3 = rotate_spatial(K2, R1);
    const double phi = std::atan2(K3.C[1] - K3.D[2], K3.C[2] + K3.D[1]);
    const Mat3 R = detail::rotation_about_x(phi) * R1;
    const KillingField K4 = rotate_spatial(K2, R);
    const double c = K4.C[1], g = -K4.C[2], m = K4.D[1];
    if (std::abs(m - g) <= 1e-12)
      psi2 = detail::tie_preimage(K2);
    else
      psi2 = rotation_lift(R).adjoint() * detail::normal_form_preimage(c, g, m);
  }

  if (permuted) psi2 = permutation_lift().adjoint() * psi2;
  return std::sqrt(K.A) * (time_translation_lift(theta).adjoint() * psi2);
}

}  // namespace adsmass
