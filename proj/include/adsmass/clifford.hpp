#pragma once

// Clifford algebra of R^{3,1} on C^4 and the spinor -> Killing field map.
//
// Spinors are psi = (w1, w2, u1, u2), read as the pair (v1, v2) of C^2
// vectors. <a, b> denotes the standard Hermitian product, linear in a.

#include "adsmass/so32.hpp"

#include <array>
#include <bit>
#include <span>
#include <vector>

namespace adsmass {

namespace detail {
inline CMat4 make_gamma(int mu) {
  using namespace std::complex_literals;
  CMat4 g = CMat4::Zero();
  switch (mu) {
    case 0:
      g(0, 2) = g(1, 3) = g(2, 0) = g(3, 1) = 1.0;
      break;
    case 1:
      g(0, 2) = 1.0;
      g(1, 3) = -1.0;
      g(2, 0) = -1.0;
      g(3, 1) = 1.0;
      break;
    case 2:
      g(0, 3) = 1.0;
      g(1, 2) = 1.0;
      g(2, 1) = -1.0;
      g(3, 0) = -1.0;
      break;
    case 3:
      g(0, 3) = -1i;
      g(1, 2) = 1i;
      g(2, 1) = 1i;
      g(3, 0) = -1i;
      break;
    default:
      throw Error(ErrorKind::BadIndex, "gamma index out of range", mu);
  }
  return g;
}
}  // namespace detail

/// gamma_mu for mu in {0, 1, 2, 3}: gamma_0^2 = I, gamma_j^2 = -I.
inline const CMat4& gamma_matrix(int mu) {
  static const std::array<CMat4, 4> g = {detail::make_gamma(0), detail::make_gamma(1),
                                         detail::make_gamma(2), detail::make_gamma(3)};
  if (mu < 0 || mu > 3) throw Error(ErrorKind::BadIndex, "gamma index out of range", mu);
  return g[static_cast<std::size_t>(mu)];
}

/// Product gamma_{i1} ... gamma_{ik} for a strictly increasing multi-index
/// drawn from {0, 1, 2, 3}. The empty index gives the identity.
inline CMat4 gamma(std::span<const int> indices) {
  CMat4 out = CMat4::Identity();
  int prev = -1;
  for (int i : indices) {
    if (i < 0 || i > 3) throw Error(ErrorKind::BadIndex, "gamma index out of range", i);
    if (i <= prev) throw Error(ErrorKind::BadIndex, "gamma indices must be strictly increasing", i);
    out = out * gamma_matrix(i);
    prev = i;
  }
  return out;
}

inline CMat4 gamma(std::initializer_list<int> indices) {
  return gamma(std::span<const int>(indices.begin(), indices.size()));
}

struct GammaElement {
  std::vector<int> indices;
  CMat4 matrix;
  /// (-1)^{k(k+1)/2 + s}, s = 1 when 0 is among the indices. The conjugate
  /// transpose of `matrix` equals sign * matrix.
  int sign = 1;
};

/// All 16 products gamma_{a1...ak} indexed by the subsets of {0, 1, 2, 3}.
inline const std::vector<GammaElement>& gamma_basis() {
  static const std::vector<GammaElement> basis = [] {
    std::vector<GammaElement> out;
    for (int k = 0; k <= 4; ++k)
      for (int mask = 0; mask < 16; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != k) continue;
        std::vector<int> idx;
        for (int b = 0; b < 4; ++b)
          if (mask & (1 << b)) idx.push_back(b);
        const int s = (mask & 1) ? 1 : 0;
        const int e = k * (k + 1) / 2 + s;
        out.push_back({idx, gamma(std::span<const int>(idx)), (e % 2 == 0) ? 1 : -1});
      }
    return out;
  }();
  return basis;
}

/// Standard Hermitian product <a, b> = sum a_k conj(b_k).
inline Complex hermitian(const Spinor& a, const Spinor& b) { return b.dot(a); }

/// ((v1, v2), (u1, u2)) = <v1, u2> + <v2, u1>; equals <gamma_0 phi, psi>.
inline Complex spinor_form(const Spinor& phi, const Spinor& psi) {
  return psi.tail<2>().dot(phi.head<2>()) + psi.head<2>().dot(phi.tail<2>());
}

/// Clifford multiplication by a real vector X = (X^0, X^1, X^2, X^3) of R^{3,1}.
inline CMat4 clifford_vector(const Eigen::Vector4d& X) {
  CMat4 out = CMat4::Zero();
  for (int mu = 0; mu < 4; ++mu) out += X[mu] * gamma_matrix(mu);
  return out;
}

/// (i/2) eps^{jkl} gamma_k gamma_l, j in {0,1,2} for spatial directions 1..3.
inline CMat4 rotation_generator(int j) {
  using namespace std::complex_literals;
  CMat4 out = CMat4::Zero();
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const int e = levi_civita(j, k, l);
      if (e != 0) out += (0.5i * double(e)) * gamma_matrix(k + 1) * gamma_matrix(l + 1);
    }
  return out;
}

/// The Killing field of an imaginary Killing spinor with value psi at the
/// base point o:
///   A = (g0 psi, psi), B_j = -(g_j psi, psi), C_j = (i g_0 g_j psi, psi),
///   D_j = ((i/2) eps^{jkl} g_k g_l psi, psi).
inline KillingField spinor_to_killing(const Spinor& psi) {
  using namespace std::complex_literals;
  const CMat4& g0 = gamma_matrix(0);
  KillingField K;
  K.A = spinor_form(g0 * psi, psi).real();
  for (int j = 0; j < 3; ++j) {
    const CMat4& gj = gamma_matrix(j + 1);
    K.B[j] = -spinor_form(gj * psi, psi).real();
    K.C[j] = spinor_form((1i * g0 * gj) * psi, psi).real();
    K.D[j] = spinor_form(rotation_generator(j) * psi, psi).real();
  }
  return K;
}

/// Largest imaginary part among the ten forms defining spinor_to_killing.
inline double spinor_to_killing_imaginary(const Spinor& psi) {
  using namespace std::complex_literals;
  const CMat4& g0 = gamma_matrix(0);
  double m = std::abs(spinor_form(g0 * psi, psi).imag());
  for (int j = 0; j < 3; ++j) {
    const CMat4& gj = gamma_matrix(j + 1);
    m = std::max(m, std::abs(spinor_form(gj * psi, psi).imag()));
    m = std::max(m, std::abs(spinor_form((1i * g0 * gj) * psi, psi).imag()));
    m = std::max(m, std::abs(spinor_form(rotation_generator(j) * psi, psi).imag()));
  }
  return m;
}

/// Killing field coefficients plus the auxiliary bilinears E, F, G, H built
/// with the standard Hermitian product.
struct SpinorBilinears {
  double A = 0.0;
  Vec3 B = Vec3::Zero();
  Vec3 C = Vec3::Zero();
  Vec3 D = Vec3::Zero();
  Vec3 E = Vec3::Zero();
  double F = 0.0;
  double G = 0.0;
  double H = 0.0;

  /// Delta^2 = -B.(C x D)/A; zero when A vanishes.
  double delta_squared() const { return A == 0.0 ? 0.0 : -B.dot(C.cross(D)) / A; }
};

inline SpinorBilinears spinor_bilinears(const Spinor& psi) {
  using namespace std::complex_literals;
  const KillingField K = spinor_to_killing(psi);
  SpinorBilinears s;
  s.A = K.A;
  s.B = K.B;
  s.C = K.C;
  s.D = K.D;
  for (int j = 0; j < 3; ++j) s.E[j] = hermitian(rotation_generator(j) * psi, psi).real();
  s.F = -hermitian(gamma({1, 2, 3}) * psi, psi).real();
  s.G = hermitian(gamma_matrix(0) * psi, psi).real();
  s.H = -hermitian((1i * gamma({0, 1, 2, 3})) * psi, psi).real();
  return s;
}

/// Absolute residuals of the eight contraction identities, in order:
///   3A^2 = |B|^2+|C|^2+|D|^2+|E|^2+F^2+G^2+H^2
///   A B = -C x D + H E,   A C = -D x B + F E,   A D = -B x C + G E
///   A H = B.E,   A F = C.E,   A G = D.E,   A E = H B + F C + G D
inline std::array<double, 8> contraction_residuals(const SpinorBilinears& s) {
  const double A = s.A;
  return {
      std::abs(3 * A * A - (s.B.squaredNorm() + s.C.squaredNorm() + s.D.squaredNorm() +
                            s.E.squaredNorm() + s.F * s.F + s.G * s.G + s.H * s.H)),
      (A * s.B - (-s.C.cross(s.D) + s.H * s.E)).cwiseAbs().maxCoeff(),
      (A * s.C - (-s.D.cross(s.B) + s.F * s.E)).cwiseAbs().maxCoeff(),
      (A * s.D - (-s.B.cross(s.C) + s.G * s.E)).cwiseAbs().maxCoeff(),
      std::abs(A * s.H - s.B.dot(s.E)),
      std::abs(A * s.F - s.C.dot(s.E)),
      std::abs(A * s.G - s.D.dot(s.E)),
      (A * s.E - (s.H * s.B + s.F * s.C + s.G * s.D)).cwiseAbs().maxCoeff(),
  };
}

/// Residual of the Fierz completeness relation at one index tuple:
///   4 I_a^m I_n^b - sum_B sign_B (g_B)_a^b (g_B)_n^m.
inline Complex fierz_residual(int a, int m, int n, int b) {
  Complex sum = 0.0;
  for (const auto& g : gamma_basis()) sum += double(g.sign) * g.matrix(a, b) * g.matrix(n, m);
  const double lhs = (a == m && n == b) ? 4.0 : 0.0;
  return lhs - sum;
}

/// Max |residual| of the Fierz identity over all 256 index tuples.
inline double verify_fierz() {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int b = 0; b < 4; ++b) worst = std::max(worst, std::abs(fierz_residual(a, m, n, b)));
  return worst;
}

/// Expansion M = (1/4) sum_B sign_B g_B Tr(g_B M).
inline CMat4 fierz_expand(const CMat4& M) {
  CMat4 out = CMat4::Zero();
  for (const auto& g : gamma_basis()) out += (double(g.sign) * (g.matrix * M).trace()) * g.matrix;
  return 0.25 * out;
}

/// The SL(2,C) action rho(g) = diag(conj(g), (g^T)^{-1}) preserving spinor_form.
inline CMat4 sl2c_action(const Eigen::Matrix2cd& g) {
  CMat4 out = CMat4::Zero();
  out.topLeftCorner<2, 2>() = g.conjugate();
  out.bottomRightCorner<2, 2>() = g.transpose().inverse();
  return out;
}

// Spinor-side lifts of isometries used by the preimage construction.

/// Lift of the time translation that rotates (B, C) by theta:
/// K(U psi) = (A, cos B + sin C, -sin B + cos C, D) with U = exp(i theta g0 / 2).
inline CMat4 time_translation_lift(double theta) {
  using namespace std::complex_literals;
  return std::cos(0.5 * theta) * CMat4::Identity() + (1i * std::sin(0.5 * theta)) * gamma_matrix(0);
}

/// Lift of a spatial rotation R (acting on B, C, D simultaneously):
/// w I + x g23 + y g31 + z g12 for the unit quaternion (w, x, y, z) of R.
inline CMat4 rotation_lift(const Mat3& R) {
  const Eigen::Quaterniond q(R);
  static const CMat4 g23 = gamma({2, 3});
  static const CMat4 g31 = gamma_matrix(3) * gamma_matrix(1);
  static const CMat4 g12 = gamma({1, 2});
  return q.w() * CMat4::Identity() + q.x() * g23 + q.y() * g31 + q.z() * g12;
}

/// psi -> (i w1 + i u1, i w2 + i u2, w1 - u1, w2 - u2)/sqrt 2, which maps the
/// image (A, B, C, D) to (A, D, B, C).
inline CMat4 permutation_lift() {
  using namespace std::complex_literals;
  CMat4 S = CMat4::Zero();
  S(0, 0) = 1i;
  S(0, 2) = 1i;
  S(1, 1) = 1i;
  S(1, 3) = 1i;
  S(2, 0) = 1.0;
  S(2, 2) = -1.0;
  S(3, 1) = 1.0;
  S(3, 3) = -1.0;
  return S / std::sqrt(2.0);
}

}  // namespace adsmass
