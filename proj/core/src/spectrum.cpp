#include "tmh/spectrum.hpp"

#include <algorithm>

namespace tmh {

PrecisionReal trace_at(const PrecisionReal& E, const PrecisionReal& lambda, int n) {
  PrecisionReal q = E * E - lambda * lambda;
  PrecisionReal t1 = q - 2L;
  if (n == 1) return t1;
  PrecisionReal t2 = q * q - 4L * (E * E) + 2L;
  for (int k = 2; k < n; ++k) {
    PrecisionReal t3 = t1 * t1 * (t2 - 2L) + 2L;
    t1 = t2;
    t2 = t3;
  }
  return t2;
}

namespace {

// Bisect t_n(E) = c on a sign-changing bracket to width <= tol.
std::pair<PrecisionReal, PrecisionReal> bisect_trace(const PrecisionReal& lambda, int n, long c,
                                                     PrecisionReal lo, PrecisionReal hi,
                                                     const PrecisionReal& tol) {
  PrecisionReal flo = trace_at(lo, lambda, n) - c;
  int slo = flo.sign();
  while (hi - lo > tol) {
    PrecisionReal mid = (lo + hi) / 2L;
    if (mid == lo || mid == hi) break;
    PrecisionReal fm = trace_at(mid, lambda, n) - c;
    if (fm.sign() == slo && fm.sign() != 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

struct Edge {
  PrecisionReal at;
  int value;  // +2 or -2
};

}  // namespace

std::vector<Band> sigma_bands(const PrecisionReal& lambda, int n, const PrecisionReal& tol) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  if (n < 1 || n > 24) throw std::invalid_argument("band level out of range");
  if (tol.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
  long prec = lambda.prec_bits();
  PrecisionReal W = abs(lambda) + PrecisionReal(2.25, prec);  // |E| <= |lambda| + 2 plus margin
  const size_t want = static_cast<size_t>(1) << n;

  for (int attempt = 0; attempt < 5; ++attempt) {
    size_t M = (static_cast<size_t>(1) << (n + 4 + attempt)) + 1;
    std::vector<PrecisionReal> grid, tv;
    grid.reserve(M);
    tv.reserve(M);
    for (size_t i = 0; i < M; ++i) {
      PrecisionReal x = -W + (2L * W) * static_cast<long>(i) / static_cast<long>(M - 1);
      grid.push_back(x);
      tv.push_back(trace_at(x, lambda, n));
    }
    std::vector<Edge> edges;
    bool clean = true;
    for (long c : {2L, -2L}) {
      size_t count = 0;
      for (size_t i = 0; i + 1 < M; ++i) {
        PrecisionReal a = tv[i] - c, b = tv[i + 1] - c;
        if (a.sign() == 0 || b.sign() == 0) { clean = false; break; }
        if (a.sign() * b.sign() < 0) {
          auto [lo, hi] = bisect_trace(lambda, n, c, grid[i], grid[i + 1], tol);
          edges.push_back({(lo + hi) / 2L, static_cast<int>(c)});
          ++count;
        }
      }
      if (!clean || count != want) { clean = false; break; }
    }
    if (!clean) continue;

    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.at < b.at; });
    // Pair consecutive edges into bands and validate the interior/gap pattern.
    std::vector<Band> bands;
    bool ok = true;
    for (size_t i = 0; i + 1 < edges.size(); i += 2) {
      PrecisionReal mid = (edges[i].at + edges[i + 1].at) / 2L;
      if (abs(trace_at(mid, lambda, n)) > PrecisionReal(2L, prec)) { ok = false; break; }
      if (i + 2 < edges.size()) {
        PrecisionReal gap = (edges[i + 1].at + edges[i + 2].at) / 2L;
        if (abs(trace_at(gap, lambda, n)) <= PrecisionReal(2L, prec)) { ok = false; break; }
      }
      bands.push_back({edges[i].at, edges[i + 1].at, edges[i].value, edges[i + 1].value, n});
    }
    if (ok && bands.size() == want) return bands;
  }
  throw BandIsolationFailed("band isolation failed at level " + std::to_string(n));
}

std::vector<std::pair<PrecisionReal, PrecisionReal>> SpectrumApprox::merged() const {
  std::vector<std::pair<PrecisionReal, PrecisionReal>> out;
  for (const Band& b : bands) {
    if (!out.empty() && b.lo <= out.back().second) {
      if (b.hi > out.back().second) out.back().second = b.hi;
    } else {
      out.emplace_back(b.lo, b.hi);
    }
  }
  return out;
}

bool SpectrumApprox::covers(const PrecisionReal& E, const PrecisionReal& tol) const {
  for (const Band& b : bands)
    if (E >= b.lo - tol && E <= b.hi + tol) return true;
  return false;
}

PrecisionReal SpectrumApprox::total_measure() const {
  PrecisionReal s(0L, bands.empty() ? PrecisionReal::default_prec : bands[0].lo.prec_bits());
  for (const auto& [lo, hi] : merged()) s += hi - lo;
  return s;
}

SpectrumApprox spectrum_approx(const PrecisionReal& lambda, int n, const PrecisionReal& tol) {
  SpectrumApprox ap;
  ap.level = n;
  ap.bands = sigma_bands(lambda, n, tol);
  std::vector<Band> next = sigma_bands(lambda, n + 1, tol);
  ap.bands.insert(ap.bands.end(), next.begin(), next.end());
  std::sort(ap.bands.begin(), ap.bands.end(),
            [](const Band& a, const Band& b) { return a.lo < b.lo; });
  return ap;
}

std::vector<PrecisionReal> type1_energies(const PrecisionReal& lambda, int k,
                                          const PrecisionReal& tol) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  if (k < 1 || k > 20) throw std::invalid_argument("level out of range");
  long prec = lambda.prec_bits();
  PrecisionReal W = abs(lambda) + PrecisionReal(2.25, prec);
  size_t M = (static_cast<size_t>(1) << (k + 4)) + 1;
  std::vector<PrecisionReal> roots;
  PrecisionReal prev_x = -W;
  PrecisionReal prev_t = trace_at(prev_x, lambda, k);
  for (size_t i = 1; i < M; ++i) {
    PrecisionReal x = -W + (2L * W) * static_cast<long>(i) / static_cast<long>(M - 1);
    PrecisionReal t = trace_at(x, lambda, k);
    if (prev_t.sign() * t.sign() < 0) {
      PrecisionReal lo = prev_x, hi = x;
      int slo = prev_t.sign();
      while (true) {
        PrecisionReal mid = (lo + hi) / 2L;
        if (mid == lo || mid == hi) { roots.push_back(mid); break; }
        PrecisionReal fm = trace_at(mid, lambda, k);
        if (hi - lo <= tol && abs(fm) < tol) { roots.push_back(mid); break; }
        if (fm.sign() == slo && fm.sign() != 0) lo = mid;
        else hi = mid;
      }
    }
    prev_x = x;
    prev_t = t;
  }
  return roots;
}

}  // namespace tmh
