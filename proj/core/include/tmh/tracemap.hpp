#pragma once

#include <stdexcept>
#include <vector>

#include "tmh/precision.hpp"

namespace tmh {

/// Thrown when the doubly-exponential recurrence has consumed all significant
/// bits before the requested index; carries the first unreliable index.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, int index)
      : std::runtime_error(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// Traces t_n of the level-n dyadic transfer matrices plus the auxiliary
/// sequences mu_n (odd-level matrix difference), nu_n and omega_n (even-level
/// difference coefficients). Seeds:
///   t_1 = E^2 - lambda^2 - 2,  t_2 = (E^2 - lambda^2)^2 - 4E^2 + 2,
///   mu_1 = -2 lambda, nu_1 = 4 lambda E, omega_1 = 2 lambda (E^2 - lambda^2),
/// recurrences:
///   t_{n+1} = t_{n-1}^2 (t_n - 2) + 2,
///   mu_{n+1} = (t_{2n} - 2) t_{2n-1} mu_n,
///   nu_{n+1} = (t_{2n+1} - 2) t_{2n} nu_n,    omega likewise.
struct TraceSequence {
  PrecisionReal E, lambda;
  std::vector<PrecisionReal> t;      // t[1..N]; t[0] unused
  std::vector<PrecisionReal> mu;     // mu[1..N/2]
  std::vector<PrecisionReal> nu;     // nu[1..N/2]
  std::vector<PrecisionReal> omega;  // omega[1..N/2]
  int size = 0;                      // N
  int reliable_index = 0;            // last index passing the shadow check
};

struct TraceOptions {
  /// Build the full sequence but do not throw when the shadow run flags
  /// exhaustion before N; reliable_index records the cut.
  bool allow_partial = false;
};

TraceSequence trace_seq(const PrecisionReal& E, const PrecisionReal& lambda, int N,
                        const TraceOptions& opts = {});

/// kappa(E) = (E^2 - lambda^2) / (2E) with theta = arcsin(kappa).
/// Requires E != 0 and |kappa| < 1.
struct CouplingAngle {
  PrecisionReal kappa;
  PrecisionReal theta;
};

CouplingAngle coupling_angle(const PrecisionReal& E, const PrecisionReal& lambda);

/// Max residuals of the exact identities, in order:
///   [0] t_{n+1} - t_{n-1}^2 (t_n - 2) - 2         over all n
///   [1] t_{2n} - t_{2n-1}^2 + mu_n^2 + 2          over all n
///   [2] t_{2n+1} - t_{2n}^2 + nu_n^2 - omega_n^2 + 2
///   [3] t_1^2 - t_2 - 2 - 4 lambda^2
std::vector<PrecisionReal> invariant_residuals(const TraceSequence& seq);

}  // namespace tmh
