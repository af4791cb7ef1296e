#include "tmh/tracemap.hpp"

namespace tmh {

namespace {

// Raw recurrence at one precision. t[0] is a placeholder zero.
std::vector<PrecisionReal> trace_run(const PrecisionReal& E, const PrecisionReal& lambda, int N,
                                     long prec) {
  PrecisionReal Ep = E.with_precision(prec);
  PrecisionReal lp = lambda.with_precision(prec);
  std::vector<PrecisionReal> t;
  t.reserve(static_cast<size_t>(N) + 1);
  t.emplace_back(0L, prec);
  PrecisionReal q = Ep * Ep - lp * lp;  // E^2 - lambda^2
  t.push_back(q - 2L);
  if (N >= 2) t.push_back(q * q - 4L * (Ep * Ep) + 2L);
  for (int n = 2; n < N; ++n) t.push_back(t[static_cast<size_t>(n) - 1] * t[static_cast<size_t>(n) - 1] * (t[static_cast<size_t>(n)] - 2L) + 2L);
  return t;
}

}  // namespace

TraceSequence trace_seq(const PrecisionReal& E, const PrecisionReal& lambda, int N,
                        const TraceOptions& opts) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  if (N < 2) throw std::invalid_argument("need N >= 2");
  long prec = std::min(E.prec_bits(), lambda.prec_bits());

  TraceSequence seq;
  seq.E = E;
  seq.lambda = lambda;
  seq.size = N;
  seq.t = trace_run(E, lambda, N, prec);

  // Shadow run at half precision. The recurrence squares magnitudes, so a
  // relative split between the two runs localizes where significance died.
  std::vector<PrecisionReal> shadow = trace_run(E, lambda, N, std::max(prec / 2, PrecisionReal::min_prec + 0L));
  PrecisionReal tol = PrecisionReal::pow2(-prec / 8, 64);
  seq.reliable_index = N;
  for (int n = 1; n <= N; ++n) {
    const PrecisionReal& a = seq.t[static_cast<size_t>(n)];
    const PrecisionReal& b = shadow[static_cast<size_t>(n)];
    PrecisionReal scale = abs(a) + abs(b) + 1L;
    if (abs(a - b) > tol * scale) {
      seq.reliable_index = n - 1;
      break;
    }
  }
  if (seq.reliable_index < N && !opts.allow_partial)
    throw PrecisionExhausted("precision exhausted at index " + std::to_string(seq.reliable_index + 1),
                             seq.reliable_index + 1);

  // Auxiliary sequences. mu_n pairs with t_{2n-1}; nu_n, omega_n with t_{2n}.
  int M = N / 2;
  PrecisionReal Ep = E.with_precision(prec);
  PrecisionReal lp = lambda.with_precision(prec);
  seq.mu.reserve(static_cast<size_t>(M) + 1);
  seq.nu.reserve(static_cast<size_t>(M) + 1);
  seq.omega.reserve(static_cast<size_t>(M) + 1);
  seq.mu.emplace_back(0L, prec);
  seq.nu.emplace_back(0L, prec);
  seq.omega.emplace_back(0L, prec);
  if (M >= 1) {
    seq.mu.push_back(-2L * lp);
    seq.nu.push_back(4L * (lp * Ep));
    seq.omega.push_back(2L * (lp * (Ep * Ep - lp * lp)));
  }
  for (int n = 1; n < M; ++n) {
    seq.mu.push_back((seq.t[static_cast<size_t>(2 * n)] - 2L) * seq.t[static_cast<size_t>(2 * n) - 1] * seq.mu[static_cast<size_t>(n)]);
    seq.nu.push_back((seq.t[static_cast<size_t>(2 * n) + 1] - 2L) * seq.t[static_cast<size_t>(2 * n)] * seq.nu[static_cast<size_t>(n)]);
    seq.omega.push_back((seq.t[static_cast<size_t>(2 * n) + 1] - 2L) * seq.t[static_cast<size_t>(2 * n)] * seq.omega[static_cast<size_t>(n)]);
  }
  return seq;
}

CouplingAngle coupling_angle(const PrecisionReal& E, const PrecisionReal& lambda) {
  if (E.is_zero()) throw std::domain_error("zero energy not in spectrum");
  PrecisionReal kappa = (E * E - lambda * lambda) / (2L * E);
  if (abs(kappa) >= PrecisionReal(1L, kappa.prec_bits()))
    throw std::domain_error("not a type-II/III candidate");
  return {kappa, asin(kappa)};
}

std::vector<PrecisionReal> invariant_residuals(const TraceSequence& seq) {
  long prec = seq.t[1].prec_bits();
  PrecisionReal r0(0L, prec), r1(0L, prec), r2(0L, prec);
  for (int n = 2; n < seq.size; ++n) {
    PrecisionReal res = abs(seq.t[static_cast<size_t>(n) + 1] -
                            seq.t[static_cast<size_t>(n) - 1] * seq.t[static_cast<size_t>(n) - 1] * (seq.t[static_cast<size_t>(n)] - 2L) - 2L);
    PrecisionReal scale = abs(seq.t[static_cast<size_t>(n) + 1]) + 1L;
    res = res / scale;
    if (res > r0) r0 = res;
  }
  int M = seq.size / 2;
  for (int n = 1; n <= M; ++n) {
    const PrecisionReal& todd = seq.t[static_cast<size_t>(2 * n) - 1];
    PrecisionReal res = abs(seq.t[static_cast<size_t>(2 * n)] - todd * todd + seq.mu[static_cast<size_t>(n)] * seq.mu[static_cast<size_t>(n)] + 2L) /
                        (abs(seq.t[static_cast<size_t>(2 * n)]) + 1L);
    if (res > r1) r1 = res;
    if (2 * n + 1 <= seq.size) {
      const PrecisionReal& tev = seq.t[static_cast<size_t>(2 * n)];
      PrecisionReal res2 = abs(seq.t[static_cast<size_t>(2 * n) + 1] - tev * tev + seq.nu[static_cast<size_t>(n)] * seq.nu[static_cast<size_t>(n)] -
                               seq.omega[static_cast<size_t>(n)] * seq.omega[static_cast<size_t>(n)] + 2L) /
                          (abs(seq.t[static_cast<size_t>(2 * n) + 1]) + 1L);
      if (res2 > r2) r2 = res2;
    }
  }
  PrecisionReal r3 = abs(seq.t[1] * seq.t[1] - seq.t[2] - 2L - 4L * (seq.lambda * seq.lambda));
  return {r0, r1, r2, r3};
}

}  // namespace tmh
