#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace tmh {

/// Real number as mantissa in [1,2) u {0} u (-2,-1] times 2^exp2.
/// Holds magnitudes like e^(2^n gamma) that overflow machine doubles.
struct ScaledReal {
  double mantissa = 0.0;
  std::int64_t exp2 = 0;

  static ScaledReal from_double(double x);
  double to_double() const;  // may overflow to +-inf outside machine range
  /// ln |value|; throws for zero.
  double log_abs() const;
  bool is_zero() const { return mantissa == 0.0; }

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_shifted(a.mantissa * b.mantissa, a.exp2 + b.exp2);
  }

  static ScaledReal from_shifted(double m, std::int64_t e);
};

/// 2x2 real matrix with a shared power-of-two scale: represented = m * 2^exp2.
/// Normalized so the max absolute entry of m lies in [1,2) (zero matrix: exp2 = 0).
/// Row-major storage: m[0]=a11 m[1]=a12 m[2]=a21 m[3]=a22.
struct ScaledMat2 {
  std::array<double, 4> m{0, 0, 0, 0};
  std::int64_t exp2 = 0;

  static ScaledMat2 identity() { return {{1, 0, 0, 1}, 0}; }
  static ScaledMat2 from_entries(double a11, double a12, double a21, double a22);

  bool is_zero() const { return m[0] == 0 && m[1] == 0 && m[2] == 0 && m[3] == 0; }
  double trace_mantissa() const { return m[0] + m[3]; }
  /// Determinant of the represented matrix evaluated in log2: det(m) * 2^(2 exp2).
  double det_mantissa() const { return m[0] * m[3] - m[1] * m[2]; }
  /// Entry of the represented matrix as a ScaledReal.
  ScaledReal entry(int i, int j) const {
    return ScaledReal::from_shifted(m[static_cast<size_t>(2 * i + j)], exp2);
  }
};

/// Product of represented matrices, normalized. Entrywise error <= 4 ulp.
ScaledMat2 scaled_mul(const ScaledMat2& a, const ScaledMat2& b);

/// Natural log of the spectral 2-norm of the represented matrix.
/// Closed form from tr(A^T A) and det(A); throws on the zero matrix.
double log_norm(const ScaledMat2& a);

/// True inverse (divides by the determinant); throws on singular mantissa.
ScaledMat2 inverse(const ScaledMat2& a);

/// 2-vector with shared power-of-two scale, max |component| in [1,2).
struct ScaledVec2 {
  double x = 0.0, y = 0.0;
  std::int64_t exp2 = 0;

  static ScaledVec2 from_components(double x, double y);
  /// ln of the euclidean norm; throws for the zero vector.
  double log_norm() const;
  bool is_zero() const { return x == 0.0 && y == 0.0; }
};

/// Represented matrix times represented vector, normalized.
ScaledVec2 scaled_mul(const ScaledMat2& a, const ScaledVec2& v);

}  // namespace tmh
