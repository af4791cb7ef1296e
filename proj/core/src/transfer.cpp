#include "tmh/transfer.hpp"

#include <cmath>
#include <stdexcept>

#include "tmh/sequence.hpp"

namespace tmh {

namespace {

double potential_d(double lambda, std::int64_t site) {
  return tm_letter(site) == Letter::A ? lambda : -lambda;
}

}  // namespace

ScaledMat2 local_matrix(double E, double lambda, std::int64_t site) {
  return ScaledMat2::from_entries(E - potential_d(lambda, site), -1.0, 1.0, 0.0);
}

PrecMat2 local_matrix_prec(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t site) {
  long prec = E.prec_bits();
  PrecisionReal v = tm_letter(site) == Letter::A ? lambda : -lambda;
  return {E - v, PrecisionReal(-1L, prec), PrecisionReal(1L, prec), PrecisionReal(0L, prec)};
}

ScaledMat2 transfer_product(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t m,
                            std::int64_t n) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  double Ed = E.to_double(), ld = lambda.to_double();
  if (m == n) return ScaledMat2::identity();
  if (m < n) {
    ScaledMat2 T = ScaledMat2::identity();
    for (std::int64_t k = m + 1; k <= n; ++k) T = scaled_mul(local_matrix(Ed, ld, k), T);
    return T;
  }
  ScaledMat2 T = ScaledMat2::identity();
  for (std::int64_t k = n + 1; k <= m; ++k) T = scaled_mul(local_matrix(Ed, ld, k), T);
  return inverse(T);
}

PrecMat2 transfer_product_prec(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t m,
                               std::int64_t n) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  long prec = E.prec_bits();
  if (m == n) return PrecMat2::identity(prec);
  PrecMat2 T = PrecMat2::identity(prec);
  std::int64_t lo = std::min(m, n), hi = std::max(m, n);
  for (std::int64_t k = lo + 1; k <= hi; ++k) T = local_matrix_prec(E, lambda, k) * T;
  if (m < n) return T;
  // det = 1: inverse is the adjugate
  return {T(1, 1), -T(0, 1), -T(1, 0), T(0, 0)};
}

std::vector<DyadicPair> dyadic_pairs(const PrecisionReal& E, const PrecisionReal& lambda, int N) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  double Ed = E.to_double(), ld = lambda.to_double();
  std::vector<DyadicPair> out;
  out.reserve(static_cast<size_t>(N) + 1);
  ScaledMat2 A = ScaledMat2::from_entries(Ed - ld, -1.0, 1.0, 0.0);
  ScaledMat2 B = ScaledMat2::from_entries(Ed + ld, -1.0, 1.0, 0.0);
  out.push_back({A, B, 0});
  for (int k = 1; k <= N; ++k) {
    ScaledMat2 A2 = scaled_mul(B, A);
    ScaledMat2 B2 = scaled_mul(A, B);
    A = A2;
    B = B2;
    out.push_back({A, B, k});
  }
  return out;
}

std::vector<PrecDyadicPair> dyadic_pairs_prec(const PrecisionReal& E, const PrecisionReal& lambda,
                                              int N) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  long prec = E.prec_bits();
  std::vector<PrecDyadicPair> out;
  out.reserve(static_cast<size_t>(N) + 1);
  PrecisionReal one(1L, prec), zero(0L, prec);
  PrecMat2 A{E - lambda, -one, one, zero};
  PrecMat2 B{E + lambda, -one, one, zero};
  out.push_back({A, B, 0});
  for (int k = 1; k <= N; ++k) {
    PrecMat2 A2 = B * A;
    PrecMat2 B2 = A * B;
    A = A2;
    B = B2;
    out.push_back({A, B, k});
  }
  return out;
}

std::vector<std::pair<std::int64_t, double>> norm_profile(const PrecisionReal& E,
                                                          const PrecisionReal& lambda,
                                                          std::int64_t N) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  double Ed = E.to_double(), ld = lambda.to_double();
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(static_cast<size_t>(N));
  ScaledMat2 T = ScaledMat2::identity();
  for (std::int64_t k = 1; k <= N; ++k) {
    T = scaled_mul(local_matrix(Ed, ld, k), T);
    out.emplace_back(k, log_norm(T));
  }
  return out;
}

std::vector<std::pair<std::int64_t, double>> norm_profile_prec(const PrecisionReal& E,
                                                               const PrecisionReal& lambda,
                                                               std::int64_t N) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(static_cast<size_t>(N));
  long prec = E.prec_bits();
  PrecMat2 T = PrecMat2::identity(prec);
  for (std::int64_t k = 1; k <= N; ++k) {
    T = local_matrix_prec(E, lambda, k) * T;
    out.emplace_back(k, log_op_norm(T));
  }
  return out;
}

double reflection_check(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  ScaledMat2 left = transfer_product(E, lambda, 0, -n);
  ScaledMat2 Tn = transfer_product(E, lambda, 0, n);
  ScaledMat2 U = ScaledMat2::from_entries(0, 1, 1, 0);
  ScaledMat2 right = scaled_mul(U, scaled_mul(Tn, U));
  // both normalized; equal magnitudes mean nearby exponents
  std::int64_t de = left.exp2 - right.exp2;
  if (de > 64 || de < -64) return 1.0;
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    double a = std::ldexp(left.m[static_cast<size_t>(i)], static_cast<int>(de));
    double b = right.m[static_cast<size_t>(i)];
    worst = std::max(worst, std::fabs(a - b));
    scale = std::max(scale, std::fabs(b));
  }
  return worst / (scale > 0 ? scale : 1.0);
}

}  // namespace tmh
