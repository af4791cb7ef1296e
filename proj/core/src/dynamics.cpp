#include "tmh/dynamics.hpp"

#include <algorithm>

#include "tmh/spectrum.hpp"

namespace tmh {

Point2 f_map(const Point2& p) {
  PrecisionReal x2 = p.x * p.x;
  PrecisionReal w = x2 * (p.y - 2L);
  return {w + 2L, w * (p.y * p.y) + 2L};
}

Point2 inverse_branch(const Point2& p, int eps, int eta) {
  if ((eps != 1 && eps != -1) || (eta != 1 && eta != -1))
    throw std::invalid_argument("branch signs must be +-1");
  long prec = p.x.prec_bits();
  PrecisionReal two(2L, prec);
  PrecisionReal dx = two - p.x, dy = two - p.y;
  if (eta == -1) {
    if (!(p.x < two && p.y < two)) throw std::domain_error("outside branch domain");
  } else {
    bool in_low = p.x < two && p.y < two;
    bool in_high = p.x > two && p.y > two;
    if (!(in_low || in_high) || !((p.y - 4L * p.x + 6L) > 0L))
      throw std::domain_error("outside branch domain");
  }
  PrecisionReal ynew = sqrt(dy / dx);
  if (eta == -1) ynew = -ynew;
  PrecisionReal den = two - ynew;
  if (!(den.sign() != 0) || (dx / den).sign() < 0) throw std::domain_error("outside branch domain");
  PrecisionReal xnew = sqrt(dx / den);
  if (eps == -1) xnew = -xnew;
  return {xnew, ynew};
}

bool in_strip(const Point2& p) {
  long prec = p.x.prec_bits();
  PrecisionReal one(1L, prec);
  return abs(p.x) <= one && p.y <= p.x * p.x - 2L;
}

namespace {

OrbitRecord orbit_run(const Point2& start, int max_iter) {
  OrbitRecord rec;
  rec.start = start;
  Point2 p = start;
  for (int j = 0; j <= max_iter; ++j) {
    rec.points.push_back(p);
    bool inside = in_strip(p);
    rec.in_S.push_back(inside);
    if (!inside) {
      rec.escape_index = j;
      break;
    }
    rec.depth_a.push_back(p.x * p.x - p.y - 2L);
    if (p.x.sign() == 0) ++rec.zero_ties;
    rec.itinerary.push_back(p.x.sign() > 0 ? 1 : 0);
    if (j == max_iter) break;
    p = f_map(p);
  }
  return rec;
}

}  // namespace

OrbitRecord orbit_in_S(const Point2& start, int max_iter, const OrbitOptions& opts) {
  if (max_iter < 1) throw std::invalid_argument("need max_iter >= 1");
  OrbitRecord rec = orbit_run(start, max_iter);
  long prec = std::min(start.x.prec_bits(), start.y.prec_bits());
  long half = std::max(prec / 2, PrecisionReal::min_prec + 0L);
  OrbitRecord shadow =
      orbit_run({start.x.with_precision(half), start.y.with_precision(half)}, max_iter);
  PrecisionReal tol = PrecisionReal::pow2(-prec / 8, 64);
  rec.reliable_steps = static_cast<int>(rec.points.size()) - 1;
  size_t upto = std::min(rec.points.size(), shadow.points.size());
  for (size_t j = 0; j < upto; ++j) {
    PrecisionReal dx = abs(rec.points[j].x - shadow.points[j].x);
    PrecisionReal scale = abs(rec.points[j].x) + 1L;
    if (dx > tol * scale) {
      rec.reliable_steps = static_cast<int>(j) - 1;
      break;
    }
  }
  int traversed = static_cast<int>(rec.points.size()) - 1;
  if (rec.reliable_steps < traversed && !opts.allow_partial)
    throw PrecisionExhausted("orbit precision exhausted at step " +
                                 std::to_string(rec.reliable_steps + 1),
                             rec.reliable_steps + 1);
  return rec;
}

const char* to_string(EnergyType t) {
  switch (t) {
    case EnergyType::TypeI: return "TypeI";
    case EnergyType::TypeII: return "TypeII";
    case EnergyType::TypeIII: return "TypeIII";
    default: return "Undetermined";
  }
}

EnergyClassification classify_energy(const PrecisionReal& E, const PrecisionReal& lambda,
                                     int depth, const PrecisionReal& tol) {
  if (depth < 2) throw std::invalid_argument("need depth >= 2");
  int N = 2 * depth + 4;
  TraceSequence seq = trace_seq(E, lambda, N, {.allow_partial = true});
  int nr = seq.reliable_index;
  long prec = seq.t[1].prec_bits();
  PrecisionReal one(1L, prec), two(2L, prec);

  for (int k = 1; k <= nr; ++k) {
    if (abs(seq.t[static_cast<size_t>(k)]) < tol)
      return {EnergyType::TypeI, k, nr - k, "trace root"};
  }

  if (abs(seq.t[1]) > two + tol && abs(seq.t[2]) > two + tol)
    return {EnergyType::Undetermined, 0, 0, "outside spectrum approximation"};

  // Orbit of (t_k, t_{k+1}) must stay in S through all reliable data.
  for (int k = 1; k + 1 <= nr; ++k) {
    int steps = 0;
    bool escaped = false;
    for (int j = 0; k + 2 * j + 1 <= nr; ++j) {
      const PrecisionReal& x = seq.t[static_cast<size_t>(k + 2 * j)];
      const PrecisionReal& y = seq.t[static_cast<size_t>(k + 2 * j) + 1];
      if (abs(x) <= one && y <= x * x - 2L) {
        steps = j + 1;
      } else {
        escaped = true;
        break;
      }
    }
    if (!escaped && steps >= depth) {
      EnergyType ty = (k % 2 == 0) ? EnergyType::TypeII : EnergyType::TypeIII;
      return {ty, k, steps, "orbit trapped in S"};
    }
  }
  return {EnergyType::Undetermined, 0, 0, "no parity pattern stabilized within depth"};
}

// ---------------------------------------------------------------------------
// Survivor-interval tracking along a one-parameter curve into the strip.
// ---------------------------------------------------------------------------

namespace {

using Curve = std::function<Point2(const PrecisionReal&, long)>;

PrecisionReal x_at_step(const Curve& curve, const PrecisionReal& s, int j, long prec) {
  Point2 p = curve(s, prec);
  for (int i = 0; i < j; ++i) p = f_map(p);
  return p.x;
}

enum class ClipStatus { Ok, NoBracket, WidthCollapse };

struct Tracker {
  Curve curve;
  long prec;
  PrecisionReal a, b;

  PrecisionReal x_of(const PrecisionReal& s, int j) const { return x_at_step(curve, s, j, prec); }

  bool width_collapsed() const {
    PrecisionReal scale = abs(a) + 1L;
    return (b - a) < scale * PrecisionReal::pow2(-(prec - 96), 64);
  }

  // Bisect x_j(s) = edge inside a sign-changing cell; returns the bracket.
  std::pair<PrecisionReal, PrecisionReal> bisect(PrecisionReal lo, PrecisionReal hi, int j,
                                                 const PrecisionReal& edge) const {
    PrecisionReal flo = x_of(lo, j) - edge;
    int slo = flo.sign();
    for (long it = 0; it < prec + 64; ++it) {
      PrecisionReal mid = (lo + hi) / 2L;
      if (mid == lo || mid == hi) break;
      PrecisionReal fm = x_of(mid, j) - edge;
      if (fm.sign() == slo && fm.sign() != 0) lo = mid;
      else hi = mid;
    }
    return {lo, hi};
  }

  // Narrow [a, b] to the leftmost maximal run with x_j in [rlo, rhi]
  // (plus an optional strip-membership test at round 0).
  ClipStatus clip(int j, const PrecisionReal& rlo, const PrecisionReal& rhi, int m,
                  bool check_parabola) {
    if (width_collapsed()) return ClipStatus::WidthCollapse;
    std::vector<PrecisionReal> grid, xs;
    std::vector<bool> inside;
    grid.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      PrecisionReal s = a + (b - a) * static_cast<long>(i) / static_cast<long>(m - 1);
      grid.push_back(s);
      Point2 p = curve(s, prec);
      for (int it = 0; it < j; ++it) p = f_map(p);
      bool ok = p.x >= rlo && p.x <= rhi;
      if (ok && check_parabola) ok = p.y <= p.x * p.x - 2L;
      xs.push_back(p.x);
      inside.push_back(ok);
    }
    int first_in = -1;
    for (int i = 0; i < m; ++i)
      if (inside[static_cast<size_t>(i)]) { first_in = i; break; }

    if (first_in >= 0) {
      int last_in = first_in;
      while (last_in + 1 < m && inside[static_cast<size_t>(last_in + 1)]) ++last_in;
      PrecisionReal a2 = grid[static_cast<size_t>(std::max(first_in - 1, 0))];
      PrecisionReal b2 = grid[static_cast<size_t>(std::min(last_in + 1, m - 1))];
      if (first_in > 0) {
        const PrecisionReal& u = xs[static_cast<size_t>(first_in - 1)];
        PrecisionReal edge = (u < rlo) ? rlo : rhi;
        if ((u - edge).sign() * (xs[static_cast<size_t>(first_in)] - edge).sign() < 0)
          a2 = bisect(grid[static_cast<size_t>(first_in - 1)], grid[static_cast<size_t>(first_in)], j, edge).first;
      }
      if (last_in < m - 1) {
        const PrecisionReal& v = xs[static_cast<size_t>(last_in + 1)];
        PrecisionReal edge = (v < rlo) ? rlo : rhi;
        if ((xs[static_cast<size_t>(last_in)] - edge).sign() * (v - edge).sign() < 0)
          b2 = bisect(grid[static_cast<size_t>(last_in)], grid[static_cast<size_t>(last_in + 1)], j, edge).second;
      }
      a = a2;
      b = b2;
      return ClipStatus::Ok;
    }

    // Survivor thinner than the grid: find the leftmost cell whose image
    // sweeps across the whole symbol range and bisect both edges inside it.
    for (int i = 0; i + 1 < m; ++i) {
      const PrecisionReal& u = xs[static_cast<size_t>(i)];
      const PrecisionReal& v = xs[static_cast<size_t>(i + 1)];
      bool sweeps = (u < rlo && v > rhi) || (u > rhi && v < rlo);
      if (!sweeps) continue;
      auto e1 = bisect(grid[static_cast<size_t>(i)], grid[static_cast<size_t>(i + 1)], j, rlo);
      auto e2 = bisect(grid[static_cast<size_t>(i)], grid[static_cast<size_t>(i + 1)], j, rhi);
      a = std::min(e1.first, e2.first);
      b = std::max(e1.second, e2.second);
      return ClipStatus::Ok;
    }
    return ClipStatus::NoBracket;
  }
};

int padded_symbol(const std::vector<int>& prefix, int j) {
  if (prefix.empty()) return 0;
  return j < static_cast<int>(prefix.size()) ? prefix[static_cast<size_t>(j)] : prefix.back();
}

struct TrackOutcome {
  PrecisionReal lo, hi;
  int rounds = 0;
  long prec = 0;
};

// Runs the cylinder refinement at fixed precision. Throws ItineraryInfeasible
// on a clean dead end; returns nullopt when precision ran out.
std::optional<TrackOutcome> track_fiber_once(const Curve& curve, const PrecisionReal& lo,
                                             const PrecisionReal& hi,
                                             const std::vector<int>& prefix, int min_depth,
                                             const HuntOptions& opts, long prec) {
  Tracker tr{curve, prec, lo.with_precision(prec), hi.with_precision(prec)};
  PrecisionReal pin = PrecisionReal::pow2(-opts.pin_bits, 64);
  int j = 0;
  while (j <= min_depth || (tr.b - tr.a) > pin) {
    int sym = padded_symbol(prefix, j);
    if (sym != 0 && sym != 1) throw std::invalid_argument("itinerary symbols must be 0/1");
    PrecisionReal rlo(sym == 0 ? -1L : 0L, prec);
    PrecisionReal rhi(sym == 0 ? 0L : 1L, prec);
    ClipStatus st = ClipStatus::NoBracket;
    for (int m = opts.grid_points; m <= opts.grid_points * 4; m *= 2) {
      st = tr.clip(j, rlo, rhi, m, j == 0);
      if (st != ClipStatus::NoBracket) break;
    }
    if (st == ClipStatus::WidthCollapse) return std::nullopt;
    if (st == ClipStatus::NoBracket) {
      // At depth 0/1 the geometry is fully resolved at any working precision:
      // a dead end there is genuine. Deeper ones may be precision artifacts.
      if (j <= 1) throw ItineraryInfeasible("itinerary infeasible at depth " + std::to_string(j));
      return std::nullopt;
    }
    ++j;
    if (j > 4096) throw std::runtime_error("fiber tracking failed to pin");
  }
  return TrackOutcome{tr.a, tr.b, j, prec};
}

TrackOutcome track_fiber(const Curve& curve, const PrecisionReal& lo, const PrecisionReal& hi,
                         const std::vector<int>& prefix, int min_depth, const HuntOptions& opts) {
  long prec = opts.start_prec > 0 ? opts.start_prec : std::max(2 * opts.pin_bits, 384L);
  for (; prec <= opts.max_prec; prec *= 2) {
    auto out = track_fiber_once(curve, lo, hi, prefix, min_depth, opts, prec);
    if (out) return *out;
  }
  throw ItineraryInfeasible("itinerary infeasible within precision budget");
}

}  // namespace

HuntResult find_typed_energy(const PrecisionReal& lambda, const PrecisionReal& window_lo,
                             const PrecisionReal& window_hi, EnergyType target,
                             const std::vector<int>& itinerary_prefix, int depth,
                             const HuntOptions& opts) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  if (depth < 1) throw std::invalid_argument("need depth >= 1");
  if (!(window_lo < window_hi)) throw std::invalid_argument("empty window");
  if (target != EnergyType::TypeII && target != EnergyType::TypeIII)
    throw std::invalid_argument("target must be TypeII or TypeIII");

  int k0 = (target == EnergyType::TypeIII) ? 1 : 2;
  long scan_prec = std::max(lambda.prec_bits(), 256L);
  PrecisionReal one(1L, scan_prec);

  for (int k = k0; k <= opts.max_k; k += 2) {
    // Does the curve (t_k, t_{k+1}) enter the strip over this window?
    bool enters = false;
    const int m = 65;
    for (int i = 0; i < m; ++i) {
      PrecisionReal E = window_lo + (window_hi - window_lo) * static_cast<long>(i) / (m - 1);
      PrecisionReal Ep = E.with_precision(scan_prec);
      PrecisionReal tk = trace_at(Ep, lambda.with_precision(scan_prec), k);
      PrecisionReal tk1 = trace_at(Ep, lambda.with_precision(scan_prec), k + 1);
      if (abs(tk) <= one && tk1 <= tk * tk - 2L) {
        enters = true;
        break;
      }
    }
    if (!enters) continue;

    Curve curve = [&lambda, k](const PrecisionReal& E, long prec) -> Point2 {
      PrecisionReal Ep = E.with_precision(prec);
      PrecisionReal lp = lambda.with_precision(prec);
      return {trace_at(Ep, lp, k), trace_at(Ep, lp, k + 1)};
    };
    TrackOutcome out;
    try {
      out = track_fiber(curve, window_lo, window_hi, itinerary_prefix, depth, opts);
    } catch (const ItineraryInfeasible&) {
      continue;  // try a deeper seed level
    }

    HuntResult res;
    res.energy = (out.lo + out.hi) / 2L;
    res.width = out.hi - out.lo;
    res.witness_k = k;
    res.depth_verified = out.rounds - 1;
    res.prec_bits = out.prec;
    for (int j = 0; j < out.rounds; ++j) res.itinerary.push_back(padded_symbol(itinerary_prefix, j));

    // Final midpoint verification against a shadow-checked trace run.
    TraceSequence seq = trace_seq(res.energy, lambda.with_precision(out.prec),
                                  k + 2 * res.depth_verified + 2, {.allow_partial = true});
    int verified = 0;
    for (int j = 0; j <= res.depth_verified; ++j) {
      if (k + 2 * j + 1 > seq.reliable_index) break;
      const PrecisionReal& x = seq.t[static_cast<size_t>(k + 2 * j)];
      const PrecisionReal& y = seq.t[static_cast<size_t>(k + 2 * j) + 1];
      bool inside = abs(x) <= PrecisionReal(1L, out.prec) && y <= x * x - 2L;
      int sym = x.sign() > 0 ? 1 : 0;
      if (!inside || sym != res.itinerary[static_cast<size_t>(j)]) break;
      verified = j + 1;
    }
    if (verified <= depth)
      throw std::runtime_error("hunted energy failed verification; raise pin_bits");
    res.depth_verified = verified - 1;
    res.itinerary.resize(static_cast<size_t>(verified));
    return res;
  }
  throw WindowMissesSpectrum("window misses spectrum");
}

GammaCouplingSample gamma_coupling_sample(const std::vector<int>& itinerary_prefix, int depth,
                                          const HuntOptions& opts) {
  if (depth < 1) throw std::invalid_argument("need depth >= 1");
  Curve curve = [](const PrecisionReal& y, long prec) -> Point2 {
    PrecisionReal yp = y.with_precision(prec);
    return f_map({PrecisionReal(-2L, prec), yp});
  };
  long p0 = opts.start_prec > 0 ? opts.start_prec : std::max(2 * opts.pin_bits, 384L);
  PrecisionReal ylo = PrecisionReal(5L, p0) / 4L, yhi = PrecisionReal(7L, p0) / 4L;
  TrackOutcome out = track_fiber(curve, ylo, yhi, itinerary_prefix, depth, opts);
  GammaCouplingSample s;
  s.y = (out.lo + out.hi) / 2L;
  s.lambda = sqrt(2L - s.y) / 2L;
  s.depth_verified = out.rounds - 1;
  s.prec_bits = out.prec;
  return s;
}

}  // namespace tmh
