#include "tmh/mat2.hpp"

#include <cmath>

namespace tmh {

PrecisionReal frobenius_norm(const PrecMat2& a) {
  return sqrt(a.e[0] * a.e[0] + a.e[1] * a.e[1] + a.e[2] * a.e[2] + a.e[3] * a.e[3]);
}

PrecisionReal op_norm(const PrecMat2& a) {
  PrecisionReal f = a.e[0] * a.e[0] + a.e[1] * a.e[1] + a.e[2] * a.e[2] + a.e[3] * a.e[3];
  PrecisionReal d = a.det();
  PrecisionReal disc = f * f - 4L * (d * d);
  if (disc.sign() < 0) disc = PrecisionReal(0L, disc.prec_bits());
  return sqrt((f + sqrt(disc)) / 2L);
}

double log_op_norm(const PrecMat2& a) {
  PrecisionReal n = op_norm(a);
  if (n.is_zero()) throw std::domain_error("log of zero norm");
  return log(n).to_double();
}

PrecVec2 smallest_singular_direction(const PrecMat2& a) {
  // A^T A = [p q; q r]; smaller eigenvalue lam- = (p+r - sqrt((p-r)^2+4q^2))/2.
  PrecisionReal p = a.e[0] * a.e[0] + a.e[2] * a.e[2];
  PrecisionReal q = a.e[0] * a.e[1] + a.e[2] * a.e[3];
  PrecisionReal r = a.e[1] * a.e[1] + a.e[3] * a.e[3];
  PrecisionReal lam = (p + r - sqrt((p - r) * (p - r) + 4L * (q * q))) / 2L;
  // (A^T A - lam I) v = 0: candidates (-q, p-lam) and (r-lam, -q); keep the
  // better-conditioned one.
  PrecVec2 c1(-q, p - lam), c2(r - lam, -q);
  PrecisionReal n1 = c1.norm(), n2 = c2.norm();
  PrecVec2 v = (n1 >= n2) ? c1 : c2;
  PrecisionReal n = (n1 >= n2) ? n1 : n2;
  if (n.is_zero()) {
    // A^T A is a multiple of the identity: every direction is singular.
    return {PrecisionReal(1L, p.prec_bits()), PrecisionReal(0L, p.prec_bits())};
  }
  return {v.x / n, v.y / n};
}

double direction_angle(const PrecVec2& v) {
  double x = v.x.to_double(), y = v.y.to_double();
  double t = std::atan2(-y, x);
  // projective reduction to (-pi/2, pi/2]
  const double pi = 3.14159265358979323846;
  while (t > pi / 2) t -= pi;
  while (t <= -pi / 2) t += pi;
  return t;
}

}  // namespace tmh
