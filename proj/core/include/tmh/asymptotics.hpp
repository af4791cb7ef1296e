#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tmh/dynamics.hpp"
#include "tmh/mat2.hpp"
#include "tmh/precision.hpp"
#include "tmh/tracemap.hpp"

namespace tmh {

/// Sign bookkeeping consumed by every structure check.
/// eta: eventual sign of mu_n (meaningful for type-II energies);
/// eta_hat: eventual sign of nu_n (type-III);
/// delta[n] = prod_{j<=n} -sign(t_{2j}), delta_hat[n] = prod_{j<=n} -sign(t_{2j-1}).
struct SignData {
  int eta = 0;
  int eta_hat = 0;
  std::vector<int> delta;      // index 0..M, delta[0] = 1
  std::vector<int> delta_hat;  // index 0..M, delta_hat[0] = 1
};

SignData trace_signs(const TraceSequence& seq, EnergyType type);

/// Growth rate gamma with the large trace subsequence ~ e^{2^n gamma} and the
/// small one ~ e^{-2^n gamma}. Raw per-index estimates are corrected by the
/// exact first-order term ln2 / 2^n; gamma is read off the plateau of the
/// corrected sequence (past it the estimates drift with the energy's own
/// precision horizon).
struct GammaEstimate {
  double gamma = 0.0;
  std::vector<std::pair<int, double>> residuals;  // (trace index m, raw gamma_m)
  EnergyType type = EnergyType::Undetermined;
  int reliable_m = 0;  // index whose corrected estimate was adopted
};

GammaEstimate estimate_gamma(const TraceSequence& seq, EnergyType type);

/// Per-level residuals of the dyadic matrix limit laws.
/// Type-II:  A_{2n+1}/t_{2n+1} -> (I - eta U)/2,  t_{2n} A_{2n} -> delta_n c (V + eta W)
/// Type-III: A_{2n}/t_{2n} -> C_{eta_hat}/2,
///           t_{2n-1} A_{2n-1} -> +- delta_hat_n (sqrt2/2) U C_{eta_hat},
/// with C_{+-} = I -+ sec(theta) V -+ tan(theta) W. The *_secondary fields are
/// the companion laws for B.
struct StructureLevel {
  int n = 0;
  double resid_primary = 0.0;
  double resid_secondary = 0.0;
  double scalar = 0.0;  // extracted level constant (c_n, or odd-level scalar)
};

struct StructureReport {
  EnergyType type = EnergyType::Undetermined;
  int eta = 0, eta_hat = 0;
  double c = 0.0, c_hat = 0.0;  // type-II even-structure constants
  std::vector<StructureLevel> odd_levels;
  std::vector<StructureLevel> even_levels;
  int reliable_odd = 0;   // length of the decaying prefix
  int reliable_even = 0;
};

StructureReport structure_limits(const PrecisionReal& E, const PrecisionReal& lambda,
                                 EnergyType type, int depth);

/// C_{+-}(E) of the type-III structure laws.
PrecMat2 structure_matrix_C(const CouplingAngle& ca, int sign, long prec);

/// Stable directions of the parity subsequence of dyadic matrices
/// (A_{2n} for type-II, A_{2n-1} for type-III) and their B companions,
/// via the smallest singular direction at each level.
struct DirectionPair {
  PrecVec2 s, s_hat;
  double angle_s = 0.0;      // convention v_theta = (cos theta, -sin theta)
  double angle_s_hat = 0.0;
  std::vector<double> gaps;  // |sin angle(s_n, s_{n+1})| per level
  int level_used = 0;
};

DirectionPair stable_direction(const PrecisionReal& E, const PrecisionReal& lambda,
                               EnergyType type, int depth);

/// Formal-solution profile psi_vec_n = T_{0->n} v_theta0 on both half-lines,
/// at the precision carried by E (the subordinate branch is a cancellation).
struct SolutionProfile {
  double theta0 = 0.0;
  std::vector<std::pair<std::int64_t, double>> log_psi;      // n = 1..n_max (dense to 4096, dyadic beyond)
  std::vector<std::pair<std::int64_t, double>> log_psi_neg;  // reflected side, same indices
  double fitted_alpha = 0.0;       // envelope exponent: log||psi_n|| <= alpha log n on block maxima
  double fitted_decay_rate = 0.0;  // rate of the decaying dyadic subsequence (~ gamma)
  int decay_points = 0;            // how many dyadic dips entered the fit
};

SolutionProfile solution_profile(const PrecisionReal& E, const PrecisionReal& lambda,
                                 const PrecisionReal& theta0, std::int64_t n_max);

/// Fits the smallest C making the dyadic-block two-sided bounds hold over the
/// whole profile, then verifies the sqrt-envelope
///   n^-alpha e^{(gamma/2) sqrt n} <= ||T_n|| <= n^alpha e^{2 gamma sqrt n}
/// with alpha = log C / log 2 (type-II) or 3 log C / log 2 (type-III).
/// Type-I profiles are checked against 1 <= ||T_n|| <= C instead.
struct EnvelopeReport {
  double C = 1.0;
  double alpha = 0.0;
  int violations = 0;
  std::int64_t first_violation = 0;
  double lower_margin = 0.0;  // min over k of log||T_k|| - lower bound
  double upper_margin = 0.0;  // min over k of upper bound - log||T_k||
  std::vector<double> dyadic_ratios;  // log||T_{2^m}|| / 2^{m/2}
};

EnvelopeReport envelope_check(double gamma,
                              const std::vector<std::pair<std::int64_t, double>>& profile,
                              EnergyType type);

}  // namespace tmh
