#include "tmh/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "tmh/transfer.hpp"

namespace tmh {

namespace {

constexpr double ln2d = 0.6931471805599453;

double log_abs_d(const PrecisionReal& x) { return log(abs(x)).to_double(); }

}  // namespace

SignData trace_signs(const TraceSequence& seq, EnergyType type) {
  SignData sd;
  int M = std::min(seq.size, seq.reliable_index) / 2;
  sd.delta.assign(static_cast<size_t>(M) + 1, 1);
  sd.delta_hat.assign(static_cast<size_t>(M) + 1, 1);
  for (int n = 1; n <= M; ++n) {
    sd.delta[static_cast<size_t>(n)] =
        sd.delta[static_cast<size_t>(n) - 1] * (-seq.t[static_cast<size_t>(2 * n)].sign());
    sd.delta_hat[static_cast<size_t>(n)] =
        sd.delta_hat[static_cast<size_t>(n) - 1] * (-seq.t[static_cast<size_t>(2 * n) - 1].sign());
  }
  int Mm = std::min<int>(M, static_cast<int>(seq.mu.size()) - 1);
  if (Mm >= 1) {
    sd.eta = seq.mu[static_cast<size_t>(Mm)].sign();
    sd.eta_hat = seq.nu[static_cast<size_t>(Mm)].sign();
  }
  (void)type;
  return sd;
}

GammaEstimate estimate_gamma(const TraceSequence& seq, EnergyType type) {
  if (type != EnergyType::TypeII && type != EnergyType::TypeIII)
    throw std::invalid_argument("gamma estimation needs a type-II or type-III energy");
  GammaEstimate g;
  g.type = type;
  int N = std::min(seq.size, seq.reliable_index);
  std::vector<double> corrected(static_cast<size_t>(N) + 1, 0.0);
  std::vector<bool> have(static_cast<size_t>(N) + 1, false);
  for (int m = 3; m <= N; ++m) {
    // scale 2^n pairing: type-II pairs (t_{2n-1}, t_{2n}), type-III (t_{2n}, t_{2n+1}).
    int n = (type == EnergyType::TypeII) ? (m + 1) / 2 : m / 2;
    if (n < 1) continue;
    bool big = (type == EnergyType::TypeII) ? (m % 2 == 1) : (m % 2 == 0);
    double scale = std::ldexp(1.0, n);
    double raw = (big ? 1.0 : -1.0) * log_abs_d(seq.t[static_cast<size_t>(m)]) / scale;
    g.residuals.emplace_back(m, raw);
    corrected[static_cast<size_t>(m)] = raw + ln2d / scale;
    have[static_cast<size_t>(m)] = true;
  }
  // Adopt the corrected estimate where successive values agree best.
  double best_gap = 1e300;
  for (int m = 4; m <= N; ++m) {
    if (!have[static_cast<size_t>(m)] || !have[static_cast<size_t>(m) - 1]) continue;
    double gap = std::fabs(corrected[static_cast<size_t>(m)] - corrected[static_cast<size_t>(m) - 1]);
    if (gap < best_gap) {
      best_gap = gap;
      g.reliable_m = m;
      g.gamma = corrected[static_cast<size_t>(m)];
    }
  }
  if (g.reliable_m == 0 || g.gamma <= 0.0 || best_gap > 0.05 * std::fabs(g.gamma) + 1e-12)
    throw std::runtime_error("not asymptotic regime");
  return g;
}

PrecMat2 structure_matrix_C(const CouplingAngle& ca, int sign, long prec) {
  PrecisionReal sec = PrecisionReal(1L, prec) / cos(ca.theta.with_precision(prec));
  PrecisionReal tn = tan(ca.theta.with_precision(prec));
  PrecisionReal one(1L, prec);
  PrecisionReal s(static_cast<long>(sign), prec);
  // I -+ sec V -+ tan W = [[1 -+ sec, +- tan], [-+ tan, 1 +- sec]]
  return {one - s * sec, s * tn, -s * tn, one + s * sec};
}

namespace {

double frob_d(const PrecMat2& a) { return frobenius_norm(a).to_double(); }

// Longest strictly-decreasing prefix of per-level residuals.
int decaying_prefix(const std::vector<StructureLevel>& lv) {
  int n = lv.empty() ? 0 : 1;
  for (size_t i = 1; i < lv.size(); ++i) {
    if (lv[i].resid_primary < lv[i - 1].resid_primary && lv[i].resid_primary > 0)
      n = static_cast<int>(i) + 1;
    else
      break;
  }
  return n;
}

}  // namespace

StructureReport structure_limits(const PrecisionReal& E, const PrecisionReal& lambda,
                                 EnergyType type, int depth) {
  if (type != EnergyType::TypeII && type != EnergyType::TypeIII)
    throw std::invalid_argument("structure laws need a type-II or type-III energy");
  long prec = E.prec_bits();
  int top = 2 * depth + 2;
  TraceSequence seq = trace_seq(E, lambda.with_precision(prec), top, {.allow_partial = true});
  SignData sd = trace_signs(seq, type);
  auto pairs = dyadic_pairs_prec(E, lambda.with_precision(prec), top);
  PrecisionReal one(1L, prec), zero(0L, prec);
  PrecMat2 I = PrecMat2::identity(prec);
  PrecMat2 U{zero, one, one, zero};
  PrecMat2 V{one, zero, zero, -one};
  PrecMat2 W{zero, -one, one, zero};

  StructureReport rep;
  rep.type = type;
  rep.eta = sd.eta;
  rep.eta_hat = sd.eta_hat;
  int maxn = std::min(depth, (seq.reliable_index - 1) / 2);

  if (type == EnergyType::TypeII) {
    PrecisionReal half(0.5, prec);
    PrecMat2 odd_target_A = half * (I - PrecisionReal(static_cast<long>(sd.eta), prec) * U);
    PrecMat2 odd_target_B = half * (I + PrecisionReal(static_cast<long>(sd.eta), prec) * U);
    for (int n = 1; 2 * n + 1 <= std::min(top, seq.reliable_index) && n <= depth; ++n) {
      const PrecisionReal& t = seq.t[static_cast<size_t>(2 * n) + 1];
      PrecisionReal inv = one / t;
      StructureLevel lv;
      lv.n = n;
      lv.resid_primary = frob_d(inv * pairs[static_cast<size_t>(2 * n) + 1].A - odd_target_A);
      lv.resid_secondary = frob_d(inv * pairs[static_cast<size_t>(2 * n) + 1].B - odd_target_B);
      rep.odd_levels.push_back(lv);
    }
    // constants c, c_hat from the plateau of per-level extractions
    std::vector<double> cn, chn;
    for (int n = 1; n <= maxn; ++n) {
      PrecMat2 tA = seq.t[static_cast<size_t>(2 * n)] * pairs[static_cast<size_t>(2 * n)].A;
      PrecMat2 tB = seq.t[static_cast<size_t>(2 * n)] * pairs[static_cast<size_t>(2 * n)].B;
      double dn = sd.delta[static_cast<size_t>(n)];
      cn.push_back(tA(0, 0).to_double() / dn);
      chn.push_back(tB(0, 0).to_double() / dn);
    }
    size_t best = 0;
    double bg = 1e300;
    for (size_t i = 1; i < cn.size(); ++i) {
      double gap = std::fabs(cn[i] - cn[i - 1]);
      if (gap < bg) { bg = gap; best = i; }
    }
    rep.c = cn.empty() ? 0.0 : cn[best];
    rep.c_hat = chn.empty() ? 0.0 : chn[best];
    PrecisionReal cP(rep.c, prec), chP(rep.c_hat, prec);
    PrecisionReal etaP(static_cast<long>(sd.eta), prec);
    PrecMat2 evenA = cP * (V + etaP * W);
    PrecMat2 evenB = chP * (V - etaP * W);
    for (int n = 1; n <= maxn; ++n) {
      PrecisionReal dn(static_cast<long>(sd.delta[static_cast<size_t>(n)]), prec);
      StructureLevel lv;
      lv.n = n;
      lv.scalar = cn[static_cast<size_t>(n) - 1];
      lv.resid_primary =
          frob_d(seq.t[static_cast<size_t>(2 * n)] * pairs[static_cast<size_t>(2 * n)].A - dn * evenA);
      lv.resid_secondary =
          frob_d(seq.t[static_cast<size_t>(2 * n)] * pairs[static_cast<size_t>(2 * n)].B - dn * evenB);
      rep.even_levels.push_back(lv);
    }
  } else {
    CouplingAngle ca = coupling_angle(E, lambda.with_precision(prec));
    PrecMat2 Cp = structure_matrix_C(ca, rep.eta_hat, prec);
    PrecMat2 Cm = structure_matrix_C(ca, -rep.eta_hat, prec);
    PrecisionReal half(0.5, prec);
    PrecMat2 even_target_A = half * Cp;
    PrecMat2 even_target_B = half * Cm;
    for (int n = 1; n <= maxn; ++n) {
      const PrecisionReal& t = seq.t[static_cast<size_t>(2 * n)];
      PrecisionReal inv = one / t;
      StructureLevel lv;
      lv.n = n;
      lv.resid_primary = frob_d(inv * pairs[static_cast<size_t>(2 * n)].A - even_target_A);
      lv.resid_secondary = frob_d(inv * pairs[static_cast<size_t>(2 * n)].B - even_target_B);
      rep.even_levels.push_back(lv);
    }
    // odd law: t_{2n-1} A_{2n-1} = +- delta_hat_n (sqrt2/2) U C_{eta_hat}
    PrecMat2 UC = U * Cp;
    PrecMat2 UCm = U * Cm;
    PrecisionReal uc2 = UC.e[0] * UC.e[0] + UC.e[1] * UC.e[1] + UC.e[2] * UC.e[2] + UC.e[3] * UC.e[3];
    PrecisionReal ucm2 = UCm.e[0] * UCm.e[0] + UCm.e[1] * UCm.e[1] + UCm.e[2] * UCm.e[2] + UCm.e[3] * UCm.e[3];
    std::vector<double> sn;
    for (int n = 1; 2 * n - 1 <= seq.reliable_index && n <= depth; ++n) {
      PrecMat2 tA = seq.t[static_cast<size_t>(2 * n) - 1] * pairs[static_cast<size_t>(2 * n) - 1].A;
      PrecisionReal dot = tA.e[0] * UC.e[0] + tA.e[1] * UC.e[1] + tA.e[2] * UC.e[2] + tA.e[3] * UC.e[3];
      double s = (dot / uc2).to_double() / sd.delta_hat[static_cast<size_t>(n)];
      sn.push_back(s);
    }
    int sign_lim = (!sn.empty() && sn.back() < 0) ? -1 : 1;
    if (sn.size() >= 2) sign_lim = (sn[sn.size() / 2] < 0) ? -1 : 1;
    PrecisionReal lim = PrecisionReal(static_cast<long>(sign_lim), prec) * sqrt(PrecisionReal(2L, prec)) / 2L;
    for (size_t i = 0; i < sn.size(); ++i) {
      int n = static_cast<int>(i) + 1;
      PrecisionReal dh(static_cast<long>(sd.delta_hat[static_cast<size_t>(n)]), prec);
      StructureLevel lv;
      lv.n = n;
      lv.scalar = std::fabs(sn[i]);
      lv.resid_primary =
          frob_d(seq.t[static_cast<size_t>(2 * n) - 1] * pairs[static_cast<size_t>(2 * n) - 1].A - (dh * lim) * UC);
      lv.resid_secondary =
          frob_d(seq.t[static_cast<size_t>(2 * n) - 1] * pairs[static_cast<size_t>(2 * n) - 1].B + (dh * lim) * UCm);
      rep.odd_levels.push_back(lv);
    }
  }
  rep.reliable_odd = decaying_prefix(rep.odd_levels);
  rep.reliable_even = decaying_prefix(rep.even_levels);
  if (rep.reliable_odd < 2 && rep.reliable_even < 2)
    throw std::runtime_error("structure law violated");
  return rep;
}

DirectionPair stable_direction(const PrecisionReal& E, const PrecisionReal& lambda,
                               EnergyType type, int depth) {
  if (type != EnergyType::TypeII && type != EnergyType::TypeIII)
    throw std::invalid_argument("stable directions need a type-II or type-III energy");
  long prec = E.prec_bits();
  int top = 2 * depth + 2;
  auto pairs = dyadic_pairs_prec(E, lambda.with_precision(prec), top);
  std::vector<PrecVec2> sA, sB;
  for (int n = 1; n <= depth; ++n) {
    int level = (type == EnergyType::TypeII) ? 2 * n : 2 * n - 1;
    if (level > top) break;
    sA.push_back(smallest_singular_direction(pairs[static_cast<size_t>(level)].A));
    sB.push_back(smallest_singular_direction(pairs[static_cast<size_t>(level)].B));
  }
  DirectionPair dp;
  for (size_t i = 1; i < sA.size(); ++i) {
    PrecisionReal cross = sA[i - 1].x * sA[i].y - sA[i - 1].y * sA[i].x;
    dp.gaps.push_back(std::fabs(cross.to_double()));
  }
  // keep levels while the angle gaps still shrink
  size_t used = sA.size();
  for (size_t i = 1; i < dp.gaps.size(); ++i) {
    if (!(dp.gaps[i] < dp.gaps[i - 1])) {
      used = i + 1;
      break;
    }
  }
  if (sA.size() < 2 || used < 2) throw std::runtime_error("stable direction not resolved");
  dp.s = sA[used - 1];
  dp.s_hat = sB[used - 1];
  dp.angle_s = direction_angle(dp.s);
  dp.angle_s_hat = direction_angle(dp.s_hat);
  dp.level_used = static_cast<int>(used);
  return dp;
}

SolutionProfile solution_profile(const PrecisionReal& E, const PrecisionReal& lambda,
                                 const PrecisionReal& theta0, std::int64_t n_max) {
  long prec = E.prec_bits();
  SolutionProfile sp;
  sp.theta0 = theta0.to_double();
  PrecVec2 v{cos(theta0.with_precision(prec)), -sin(theta0.with_precision(prec))};
  std::int64_t dense = std::min<std::int64_t>(n_max, 4096);

  auto want = [&](std::int64_t n) {
    if (n <= dense) return true;
    return (n & (n - 1)) == 0;  // dyadic beyond the dense range
  };

  PrecVec2 cur = v;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    cur = local_matrix_prec(E, lambda.with_precision(prec), n) * cur;
    if (want(n)) sp.log_psi.emplace_back(n, log(cur.norm()).to_double());
  }
  cur = v;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    // psi_vec_{-n} = M_{-(n-1)}^{-1} psi_vec_{-(n-1)}, M^{-1} = [[0,1],[-1,E-V]]
    PrecMat2 M = local_matrix_prec(E, lambda.with_precision(prec), -(n - 1));
    PrecMat2 Minv{M(1, 1), -M(0, 1), -M(1, 0), M(0, 0)};
    cur = Minv * cur;
    if (want(n)) sp.log_psi_neg.emplace_back(n, log(cur.norm()).to_double());
  }

  // envelope exponent from dyadic-block maxima
  double alpha = 0.0;
  for (int m = 4; (1LL << m) <= n_max; ++m) {
    double mx = -1e300;
    std::int64_t at = 1LL << m;
    for (const auto& [n, ln] : sp.log_psi)
      if (n >= (1LL << m) && n < (2LL << m) && ln > mx) { mx = ln; at = n; }
    if (mx > -1e299) alpha = std::max(alpha, mx / std::log(static_cast<double>(at)));
  }
  sp.fitted_alpha = alpha;

  // decay rate of the decreasing dyadic subsequence (parity auto-detected):
  // least squares of log||psi_{2^m}|| against -2^{m/2 rounded} over the
  // longer decreasing parity class
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::pair<double, double>> pts;  // (2^j, log norm), m = 2j+parity
    for (const auto& [n, ln] : sp.log_psi) {
      if (n < 4 || (n & (n - 1)) != 0) continue;
      int m = 0;
      while ((1LL << m) < n) ++m;
      if (m % 2 != parity) continue;
      pts.emplace_back(std::ldexp(1.0, m / 2), ln);
    }
    int dec = 0;
    for (size_t i = 1; i < pts.size(); ++i)
      if (pts[i].second < pts[i - 1].second) ++dec;
    if (dec >= 2 && dec + 1 >= static_cast<int>(pts.size()) - 1 && static_cast<int>(pts.size()) > sp.decay_points) {
      double sxx = 0, sxy = 0, sx = 0, sy = 0, n = static_cast<double>(pts.size());
      for (auto& [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
      double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      sp.fitted_decay_rate = -slope;
      sp.decay_points = static_cast<int>(pts.size());
    }
  }
  return sp;
}

EnvelopeReport envelope_check(double gamma,
                              const std::vector<std::pair<std::int64_t, double>>& profile,
                              EnergyType type) {
  EnvelopeReport rep;
  for (const auto& [k, ln] : profile) {
    if (k >= 2 && (k & (k - 1)) == 0) {
      int m = 0;
      while ((1LL << m) < k) ++m;
      rep.dyadic_ratios.push_back(ln / std::pow(2.0, m / 2.0));
    }
  }

  if (type == EnergyType::TypeI) {
    double mx = 0, mn = 0;
    for (const auto& [k, ln] : profile) { mx = std::max(mx, ln); mn = std::min(mn, ln); }
    rep.C = std::exp(mx);
    rep.alpha = 0.0;
    rep.lower_margin = mn;  // >= 0 up to roundoff: ||T|| >= 1 for det-1
    rep.upper_margin = 0.0;
    for (const auto& [k, ln] : profile)
      if (ln < -1e-6) { ++rep.violations; if (rep.violations == 1) rep.first_violation = k; }
    return rep;
  }

  auto block = [&](std::int64_t k) {
    int bl = 0;
    while ((2LL << bl) <= k) ++bl;  // bl = floor(log2 k)
    return (type == EnergyType::TypeII) ? bl / 2 : (bl + 1) / 2;
  };
  double lnC = 0.0;
  for (const auto& [k, ln] : profile) {
    int n = block(k);
    if (type == EnergyType::TypeII) {
      double lo = std::ldexp(gamma, n), hi = std::ldexp(gamma, n + 1);
      lnC = std::max(lnC, std::max((lo - ln) / (n + 1), (ln - hi) / (n + 1)));
    } else {
      double lo = std::ldexp(gamma, n - 1), hi = std::ldexp(gamma, n);
      lnC = std::max(lnC, std::max((lo - ln) / (n + 2), (ln - hi) / (n + 2)));
    }
  }
  rep.C = std::exp(lnC);
  rep.alpha = (type == EnergyType::TypeII ? 1.0 : 3.0) * lnC / ln2d;

  rep.lower_margin = 1e300;
  rep.upper_margin = 1e300;
  for (const auto& [k, ln] : profile) {
    double lk = std::log(static_cast<double>(k));
    double rk = std::sqrt(static_cast<double>(k));
    double lo = -rep.alpha * lk + 0.5 * gamma * rk;
    double hi = rep.alpha * lk + 2.0 * gamma * rk;
    rep.lower_margin = std::min(rep.lower_margin, ln - lo);
    rep.upper_margin = std::min(rep.upper_margin, hi - ln);
    if (ln < lo || ln > hi) {
      ++rep.violations;
      if (rep.violations == 1) rep.first_violation = k;
    }
  }
  return rep;
}

}  // namespace tmh
