#pragma once

#include <stdexcept>
#include <vector>

#include "tmh/precision.hpp"

namespace tmh {

class BandIsolationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed band [lo, hi] of the level-n periodic approximant
/// sigma_n = {E : |t_n(E)| <= 2}, with the trace value (+2 or -2) at each
/// endpoint. t_n restricted to a band is monotone and spans [-2, 2].
struct Band {
  PrecisionReal lo, hi;
  int trace_lo = 0;  // +2 or -2
  int trace_hi = 0;
  int level = 0;
};

/// The 2^n bands of sigma_n, sorted, each endpoint located by bisection on
/// t_n -+ 2 to width <= tol. Throws BandIsolationFailed when grid refinement
/// cannot isolate exactly 2^n crossings per edge value.
std::vector<Band> sigma_bands(const PrecisionReal& lambda, int n, const PrecisionReal& tol);

/// Nested spectrum approximation sigma_n u sigma_{n+1}.
struct SpectrumApprox {
  int level = 0;
  std::vector<Band> bands;  // bands of both levels, sorted by lo

  /// Maximal disjoint intervals of the union (bands merged when they overlap).
  std::vector<std::pair<PrecisionReal, PrecisionReal>> merged() const;
  bool covers(const PrecisionReal& E, const PrecisionReal& tol) const;
  /// Sum of merged interval lengths.
  PrecisionReal total_measure() const;
};

SpectrumApprox spectrum_approx(const PrecisionReal& lambda, int n, const PrecisionReal& tol);

/// All real roots of t_k in the spectral window, isolated by sign-change
/// bracketing and bisected until both the bracket width and |t_k| fall
/// below tol. Roots of t_k are the level-k extended-state energies.
std::vector<PrecisionReal> type1_energies(const PrecisionReal& lambda, int k,
                                          const PrecisionReal& tol);

/// t_n(E) alone (recurrence evaluation, no auxiliary sequences).
PrecisionReal trace_at(const PrecisionReal& E, const PrecisionReal& lambda, int n);

}  // namespace tmh
