#include "tmh/scaled.hpp"

#include <cmath>
#include <limits>

namespace tmh {

namespace {

constexpr double ln2 = 0.6931471805599453094172321214581766;

void check_exp_range(std::int64_t e) {
  // exp2 overflow is a fatal error by contract; the guard band keeps
  // intermediate sums representable.
  constexpr std::int64_t lim = std::numeric_limits<std::int64_t>::max() / 4;
  if (e > lim || e < -lim) throw std::overflow_error("ScaledMat2 exponent overflow");
}

}  // namespace

ScaledReal ScaledReal::from_double(double x) {
  return from_shifted(x, 0);
}

ScaledReal ScaledReal::from_shifted(double m, std::int64_t e) {
  if (m == 0.0) return {};
  int k = 0;
  double f = std::frexp(m, &k);  // f in [0.5,1), m = f * 2^k
  check_exp_range(e + k);
  return {f * 2.0, e + k - 1};
}

double ScaledReal::to_double() const {
  if (is_zero()) return 0.0;
  if (exp2 > 1100) return mantissa > 0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
  if (exp2 < -1100) return 0.0;
  return std::ldexp(mantissa, static_cast<int>(exp2));
}

double ScaledReal::log_abs() const {
  if (is_zero()) throw std::domain_error("log of zero");
  return std::log(std::fabs(mantissa)) + static_cast<double>(exp2) * ln2;
}

ScaledMat2 ScaledMat2::from_entries(double a11, double a12, double a21, double a22) {
  ScaledMat2 r{{a11, a12, a21, a22}, 0};
  double mx = std::max(std::max(std::fabs(a11), std::fabs(a12)),
                       std::max(std::fabs(a21), std::fabs(a22)));
  if (mx == 0.0) return {};
  int k = 0;
  std::frexp(mx, &k);  // mx in [2^(k-1), 2^k)
  int shift = k - 1;
  for (auto& e : r.m) e = std::ldexp(e, -shift);
  r.exp2 = shift;
  return r;
}

ScaledMat2 scaled_mul(const ScaledMat2& a, const ScaledMat2& b) {
  ScaledMat2 p;
  p.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
  p.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
  p.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
  p.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
  std::int64_t e = a.exp2 + b.exp2;
  check_exp_range(e);
  ScaledMat2 r = ScaledMat2::from_entries(p.m[0], p.m[1], p.m[2], p.m[3]);
  r.exp2 += e;
  check_exp_range(r.exp2);
  return r;
}

double log_norm(const ScaledMat2& a) {
  if (a.is_zero()) throw std::domain_error("log of zero norm");
  // ||A||^2 is the larger eigenvalue of A^T A:
  //   (f + sqrt(f^2 - 4 d^2)) / 2, f = sum of squared entries, d = det.
  double f = a.m[0] * a.m[0] + a.m[1] * a.m[1] + a.m[2] * a.m[2] + a.m[3] * a.m[3];
  double d = a.det_mantissa();
  double disc = f * f - 4.0 * d * d;
  if (disc < 0.0) disc = 0.0;
  double s2 = (f + std::sqrt(disc)) / 2.0;
  return 0.5 * std::log(s2) + static_cast<double>(a.exp2) * ln2;
}

ScaledMat2 inverse(const ScaledMat2& a) {
  double d = a.det_mantissa();
  if (d == 0.0) throw std::domain_error("singular matrix");
  // A^-1 = adj(m)/det(m) * 2^-exp2; split det into mantissa * 2^k to stay in range.
  int k = 0;
  double dm = std::frexp(d, &k);  // |dm| in [0.5,1)
  ScaledMat2 r = ScaledMat2::from_entries(a.m[3] / dm, -a.m[1] / dm, -a.m[2] / dm, a.m[0] / dm);
  r.exp2 += -a.exp2 - k;
  check_exp_range(r.exp2);
  return r;
}

ScaledVec2 ScaledVec2::from_components(double x, double y) {
  if (x == 0.0 && y == 0.0) return {};
  double mx = std::max(std::fabs(x), std::fabs(y));
  int k = 0;
  std::frexp(mx, &k);
  int shift = k - 1;
  return {std::ldexp(x, -shift), std::ldexp(y, -shift), shift};
}

double ScaledVec2::log_norm() const {
  if (is_zero()) throw std::domain_error("log of zero norm");
  return 0.5 * std::log(x * x + y * y) + static_cast<double>(exp2) * ln2;
}

ScaledVec2 scaled_mul(const ScaledMat2& a, const ScaledVec2& v) {
  double x = a.m[0] * v.x + a.m[1] * v.y;
  double y = a.m[2] * v.x + a.m[3] * v.y;
  ScaledVec2 r = ScaledVec2::from_components(x, y);
  if (r.is_zero()) return r;
  r.exp2 += a.exp2 + v.exp2;
  check_exp_range(r.exp2);
  return r;
}

}  // namespace tmh
