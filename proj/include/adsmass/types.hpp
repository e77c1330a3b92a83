#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adsmass {

using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat10 = Eigen::Matrix<double, 10, 10>;
using Complex = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using CMat4 = Eigen::Matrix4cd;

enum class ErrorKind {
  NotInAlgebra,
  NotInGroup,
  NotTimelikeEnergyMomentum,
  BadIndex,
  NotInSpinorSet,
  DegenerateInput,
  ChartBoundary,
  NotTimelike,
  NotObserver,
  BisectionFailure,
  NotPositive,
  Degenerate,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::NotTimelikeEnergyMomentum: return "NotTimelikeEnergyMomentum";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotInSpinorSet: return "NotInSpinorSet";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ChartBoundary: return "ChartBoundary";
    case ErrorKind::NotTimelike: return "NotTimelike";
    case ErrorKind::NotObserver: return "NotObserver";
    case ErrorKind::BisectionFailure: return "BisectionFailure";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

/// Domain error raised by every library operation. `value()` carries the
/// offending quantity where one exists (e.g. the minimum eigenvalue of Q).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

/// Element of so(3,2) written as
///   A (y0 d4 - y4 d0) + B_i (y0 di + yi d0) + C_j (y4 dj + yj d4) + D_p eps_pqr y^q dr.
struct KillingField {
  double A = 0.0;
  Vec3 B = Vec3::Zero();
  Vec3 C = Vec3::Zero();
  Vec3 D = Vec3::Zero();

  /// Coordinates in the order (A, B1..B3, C1..C3, D1..D3).
  Vec10 coords() const {
    Vec10 v;
    v << A, B, C, D;
    return v;
  }

  static KillingField from_coords(const Vec10& v) {
    return {v[0], v.segment<3>(1), v.segment<3>(4), v.segment<3>(7)};
  }

  /// Largest of |A|, |B|, |C|, |D|.
  double magnitude() const {
    return std::max({std::abs(A), B.norm(), C.norm(), D.norm()});
  }

  friend KillingField operator+(const KillingField& a, const KillingField& b) {
    return {a.A + b.A, a.B + b.B, a.C + b.C, a.D + b.D};
  }
  friend KillingField operator-(const KillingField& a, const KillingField& b) {
    return {a.A - b.A, a.B - b.B, a.C - b.C, a.D - b.D};
  }
  friend KillingField operator*(double s, const KillingField& k) {
    return {s * k.A, s * k.B, s * k.C, s * k.D};
  }
};

/// Conserved charges (energy, linear momentum, center of mass, angular
/// momentum): a dual element of so(3,2), paired against KillingField.
struct ConservedCharges {
  double e = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 c = Vec3::Zero();
  Vec3 j = Vec3::Zero();

  Vec10 coords() const {
    Vec10 v;
    v << e, p, c, j;
    return v;
  }

  static ConservedCharges from_coords(const Vec10& v) {
    return {v[0], v.segment<3>(1), v.segment<3>(4), v.segment<3>(7)};
  }

  double magnitude() const {
    return std::max({std::abs(e), p.norm(), c.norm(), j.norm()});
  }
};

/// Maximum absolute coordinate difference.
inline double max_abs_diff(const KillingField& a, const KillingField& b) {
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ConservedCharges& a, const ConservedCharges& b) {
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff();
}

/// Scale factor used to turn absolute tolerances into relative ones.
inline double tolerance_scale(double magnitude) { return std::max(1.0, magnitude); }

}  // namespace adsmass
