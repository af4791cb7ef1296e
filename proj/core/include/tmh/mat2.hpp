#pragma once

#include <array>

#include "tmh/precision.hpp"

namespace tmh {

/// 2-vector over PrecisionReal.
struct PrecVec2 {
  PrecisionReal x, y;

  PrecVec2() = default;
  PrecVec2(PrecisionReal x_, PrecisionReal y_) : x(std::move(x_)), y(std::move(y_)) {}

  PrecisionReal norm() const { return hypot(x, y); }
  friend PrecVec2 operator-(const PrecVec2& a, const PrecVec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend PrecVec2 operator+(const PrecVec2& a, const PrecVec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend PrecVec2 operator*(const PrecisionReal& c, const PrecVec2& v) { return {c * v.x, c * v.y}; }
};

/// 2x2 matrix over PrecisionReal. Row-major entries a11 a12 a21 a22.
struct PrecMat2 {
  std::array<PrecisionReal, 4> e;

  PrecMat2() = default;
  PrecMat2(PrecisionReal a11, PrecisionReal a12, PrecisionReal a21, PrecisionReal a22)
      : e{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}

  static PrecMat2 identity(long prec) {
    return {PrecisionReal(1L, prec), PrecisionReal(0L, prec),
            PrecisionReal(0L, prec), PrecisionReal(1L, prec)};
  }

  const PrecisionReal& operator()(int i, int j) const { return e[static_cast<size_t>(2 * i + j)]; }
  PrecisionReal& operator()(int i, int j) { return e[static_cast<size_t>(2 * i + j)]; }

  PrecisionReal trace() const { return e[0] + e[3]; }
  PrecisionReal det() const { return e[0] * e[3] - e[1] * e[2]; }

  friend PrecMat2 operator*(const PrecMat2& a, const PrecMat2& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
  }
  friend PrecVec2 operator*(const PrecMat2& a, const PrecVec2& v) {
    return {a.e[0] * v.x + a.e[1] * v.y, a.e[2] * v.x + a.e[3] * v.y};
  }
  friend PrecMat2 operator-(const PrecMat2& a, const PrecMat2& b) {
    return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
  }
  friend PrecMat2 operator+(const PrecMat2& a, const PrecMat2& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
  }
  friend PrecMat2 operator*(const PrecisionReal& c, const PrecMat2& a) {
    return {c * a.e[0], c * a.e[1], c * a.e[2], c * a.e[3]};
  }
};

PrecisionReal frobenius_norm(const PrecMat2& a);

/// Spectral 2-norm from tr(A^T A) and det(A).
PrecisionReal op_norm(const PrecMat2& a);

/// ln of the 2-norm (handles magnitudes far outside double range).
double log_op_norm(const PrecMat2& a);

/// Unit right-singular vector for the smallest singular value
/// (eigenvector of A^T A for its smaller eigenvalue).
PrecVec2 smallest_singular_direction(const PrecMat2& a);

/// Angle t with v = (cos t, -sin t) up to sign of v, reduced to (-pi/2, pi/2].
double direction_angle(const PrecVec2& v);

}  // namespace tmh
