#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmh/precision.hpp"
#include "tmh/tracemap.hpp"

namespace tmh {

/// Point of the plane carrying the trace-map dynamics
/// f(x,y) = (x^2(y-2)+2, x^2 y^2 (y-2)+2).
struct Point2 {
  PrecisionReal x, y;
};

Point2 f_map(const Point2& p);

/// Inverse branch F_{eps,eta} (eps, eta in {-1,+1}):
///   F(x,y) = ( eps sqrt((2-x)/(2 - eta sqrt((2-y)/(2-x)))), eta sqrt((2-y)/(2-x)) ).
/// Branch numbering: F0 = F_{-,-}, F1 = F_{+,-}, F2 = F_{-,+}, F3 = F_{+,+}.
/// Throws std::domain_error outside the branch domain.
Point2 inverse_branch(const Point2& p, int eps, int eta);

/// Trapping strip S = { |x| <= 1, y <= x^2 - 2 }.
bool in_strip(const Point2& p);

struct OrbitRecord {
  Point2 start;
  std::vector<Point2> points;   // orbit including the start
  std::vector<bool> in_S;
  std::vector<int> itinerary;   // sign symbols while in S: 0 for x<0, 1 for x>0
  std::optional<int> escape_index;
  std::vector<PrecisionReal> depth_a;  // a_k = x_k^2 - y_k - 2 (strip depth)
  int zero_ties = 0;            // x == 0 tie-broken to symbol 0
  int reliable_steps = 0;       // shadow-run validated prefix
};

struct OrbitOptions {
  bool allow_partial = false;
};

OrbitRecord orbit_in_S(const Point2& start, int max_iter, const OrbitOptions& opts = {});

enum class EnergyType { TypeI, TypeII, TypeIII, Undetermined };

const char* to_string(EnergyType t);

struct EnergyClassification {
  EnergyType type = EnergyType::Undetermined;
  int witness_k = 0;
  int depth_verified = 0;
  std::string diagnostic;
};

/// TypeI when some |t_k| < tol; TypeII/TypeIII when the orbit of
/// (t_k, t_{k+1}) stays in S through the available reliable depth for an even
/// (odd) k. Undetermined is an ordinary outcome, never an error.
EnergyClassification classify_energy(const PrecisionReal& E, const PrecisionReal& lambda,
                                     int depth, const PrecisionReal& tol);

class WindowMissesSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ItineraryInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HuntOptions {
  long pin_bits = 384;   // refine until the survivor interval is this narrow
  long start_prec = 0;   // 0: derived from pin_bits
  long max_prec = 1 << 16;
  int grid_points = 129;
  int max_k = 13;        // deepest seed trace level tried
};

struct HuntResult {
  PrecisionReal energy;  // midpoint of the pinned survivor interval
  PrecisionReal width;
  int witness_k = 0;
  std::vector<int> itinerary;
  int depth_verified = 0;
  long prec_bits = 0;
};

/// Constructive hunt for a type-II (even witness) or type-III (odd witness)
/// energy inside [window_lo, window_hi]: seeds at the smallest trace level k of
/// the right parity whose curve (t_k, t_{k+1}) enters S over the window, then
/// tracks the survivor interval of the itinerary cylinder (prefix padded by
/// repeating its last symbol), bisecting the cylinder edges t_{k+2j} = -1/0/+1
/// and doubling the working precision whenever the interval collapses to ulps.
/// `depth` is the minimum number of verified trace-map steps; refinement
/// continues past it until the energy is pinned to pin_bits.
HuntResult find_typed_energy(const PrecisionReal& lambda, const PrecisionReal& window_lo,
                             const PrecisionReal& window_hi, EnergyType target,
                             const std::vector<int>& itinerary_prefix, int depth,
                             const HuntOptions& opts = {});

/// Couplings whose band-edge energies E = +-lambda are type-III: bisects
/// y in [5/4, 7/4] so that the orbit of f(-2, y) stays in S with the given
/// itinerary, then lambda = sqrt(2 - y)/2.
struct GammaCouplingSample {
  PrecisionReal lambda;
  PrecisionReal y;
  int depth_verified = 0;
  long prec_bits = 0;
};

GammaCouplingSample gamma_coupling_sample(const std::vector<int>& itinerary_prefix, int depth,
                                          const HuntOptions& opts = {});

}  // namespace tmh
