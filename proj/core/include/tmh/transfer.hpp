#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tmh/mat2.hpp"
#include "tmh/precision.hpp"
#include "tmh/scaled.hpp"

namespace tmh {

/// One-site transfer matrix [[E - V(n), -1], [1, 0]].
ScaledMat2 local_matrix(double E, double lambda, std::int64_t site);
PrecMat2 local_matrix_prec(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t site);

/// T_{m->n}: ordered product M_n ... M_{m+1} for m < n, identity for m = n,
/// and the inverse product for m > n. Machine path; E and lambda are rounded
/// to double once.
ScaledMat2 transfer_product(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t m,
                            std::int64_t n);
/// Arbitrary-precision path (entries at the precision of E).
PrecMat2 transfer_product_prec(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t m,
                               std::int64_t n);

/// Level-n dyadic matrices: A_n over the first 2^n sites, B_n over the barred
/// block, built by A_{n+1} = B_n A_n, B_{n+1} = A_n B_n from the one-site seeds.
struct DyadicPair {
  ScaledMat2 A, B;
  int level = 0;
};
std::vector<DyadicPair> dyadic_pairs(const PrecisionReal& E, const PrecisionReal& lambda, int N);

struct PrecDyadicPair {
  PrecMat2 A, B;
  int level = 0;
};
std::vector<PrecDyadicPair> dyadic_pairs_prec(const PrecisionReal& E, const PrecisionReal& lambda,
                                              int N);

/// (k, ln ||T_{0->k}||) for k = 1..N, one local multiply per step.
std::vector<std::pair<std::int64_t, double>> norm_profile(const PrecisionReal& E,
                                                          const PrecisionReal& lambda,
                                                          std::int64_t N);
/// Same profile with arbitrary-precision products. Needed at hunted energies,
/// where the dyadic cancellations push the required working precision far past
/// machine doubles.
std::vector<std::pair<std::int64_t, double>> norm_profile_prec(const PrecisionReal& E,
                                                               const PrecisionReal& lambda,
                                                               std::int64_t N);

/// Entrywise relative difference between T_{0->-n} computed directly and
/// U T_{0->n} U (reflection symmetry of the two-sided potential).
double reflection_check(const PrecisionReal& E, const PrecisionReal& lambda, std::int64_t n);

}  // namespace tmh
