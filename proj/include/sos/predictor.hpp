#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sos/lattice.hpp"
#include "sos/numeric.hpp"
#include "sos/schensted.hpp"

namespace sos {

enum class TrivialShape { none, single_row, single_column };

// Basis of the vertically rescaled lattice {(x, (n/N)y) : y = ax mod N}
// describing w(n, a/N), together with the convergent bookkeeping behind it.
// Built through slope_frame at threshold N/n and cross-checked against the
// convergent formulas x = <q_x, n q_x d_x>, y = <q_y, -n q_y d_y>.
struct RescaledFrame {
  long n = 0;
  Int a, N;  // rational representative a/N with N > n
  TrivialShape trivial = TrivialShape::none;
  LatticeVector x_vec, y_vec;  // rational vertical parts
  FrameCase case_tag = FrameCase::c1a;
  Int s = 1;
  long h = 0;
  int star = 0;          // 0 when the minimal convergent index is odd, else 2
  Int q_x, q_y;          // q_{2h+star}, q_{2h+1}
  Rat delta_x, delta_y;  // |a/N - p/q| at those indices

  // Basis reoriented for increasing-path analysis: the frame itself in case
  // 1, the coordinate swap (<x2,x1>, <-y2,-y1>) in case 2, so that
  // 0 < m_X <= 1 <= |m_Y| always holds.
  std::pair<std::pair<Rat, Rat>, std::pair<Rat, Rat>> analysis_pair() const;
};

// Frame for w(n, alpha). Inputs with alpha <= 1/n or alpha >= 1 - 1/n get a
// trivial single-row/single-column marker instead of a frame. Rational alpha
// with denominator <= n is replaced by the mediant of its order-n Farey
// interval; irrational alpha by a parity-matched convergent with q_m > n.
RescaledFrame rescaled_frame(long n, const AlphaSpec& alpha);

// Crossing counts l_j = |chi_j| for the lines of slope m_Y through the points
// jX, evaluated exactly in rationals. X is increasing with slope in (0,1], Y
// decreasing with |slope| >= 1, and X2*Y1 - X1*Y2 = n.
struct CrossingProfile {
  long n = 0;
  Rat X1, X2, Y1, Y2;

  long l(const Rat& j) const;
  // Index range of chi_j: points jX + iY for lo <= i <= hi.
  Int lo_index(const Rat& j) const;
  Int hi_index(const Rat& j) const;
  Rat j_min(long k) const;  // least j in [0, Y1] with l_j >= k
  Rat j_max(long k) const;  // greatest j in [|Y2|, Y1-Y2] with l_j >= k
  long lin(long k) const;   // # integers i with l_i >= k
  Rat J0() const;
  Rat domain_end() const { return Y1 - Y2; }
  CrossingProfile starred() const;  // decreasing-side twin (rho image)
};

CrossingProfile crossing_profile(const RescaledFrame& frame);

using PlanePoint = std::pair<Rat, Rat>;

// The union-of-k-increasing-paths witness at j = max{j_k, domain_end - j_k'}:
// the crossing sets below j, k Y-translates of the connecting path, the one-
// and two-X-step points past the upper path ends, and the crossing sets above,
// together with a minimal chain cover as certificate.
struct KPathCover {
  Rat j, j_bar;
  std::vector<PlanePoint> points;               // deduplicated, sorted
  std::vector<std::vector<PlanePoint>> chains;  // greedy minimal chain cover
  long lower_bound = 0;                         // sum_i min(l_i, k) - 3
  long upper_bound = 0;                         // sum_i min(l_i, k)
};

KPathCover construct_k_paths(const RescaledFrame& frame, long k);

struct EstimateBand {
  Rat center, radius;
  bool in_range = true;  // false past the corner (k > y0-1 resp. x0-1)
};

// Two-line boundary prediction for the shape of w(n, alpha): arm/leg bounds,
// per-row and per-column estimates, the piecewise linear boundary L, and its
// corner (x0, y0).
struct ShapePrediction {
  long n = 0;
  TrivialShape trivial = TrivialShape::none;
  Rat arm_lo, arm_hi;  // arm lies in (arm_lo, arm_hi]
  Rat leg_lo, leg_hi;
  Rat slope1, slope2;  // -2*X1*X2/n and -n/(2*|Y1*Y2|)
  Rat x0, y0;
  Rat X1, X2, Y1, Y2;

  Rat L(const Rat& x) const;                // domain [0, arm_hi]
  EstimateBand row_estimate(long k) const;  // lambda_k, valid for k <= y0-1
  EstimateBand col_estimate(long k) const;  // lambda'_k, valid for k <= x0-1
};

ShapePrediction shape_prediction(const RescaledFrame& frame);
ShapePrediction shape_prediction(long n, const AlphaSpec& alpha);

// Local extrema of arm/sqrt(n) and leg/sqrt(n) near n ~ beta_{2h} and
// beta_{2h+1}: M+ = 1/(q sqrt(d)) and m- = 2 q sqrt(d) at index 2h, m+ and M-
// analogously at 2h+1. Decimal strings are correctly rounded; the products
// M+*m- and m+*M- are exactly 2.
struct NormalizedExtrema {
  Int q_even, q_odd;
  Rat delta_even, delta_odd;
  std::string M_plus, m_minus, m_plus, M_minus;
};

NormalizedExtrema normalized_extrema(const AlphaSpec& alpha, long h, unsigned digits = 12);

struct DistanceReport {
  Rat max_distance_sq;  // exact squared distance at the argmax
  Rat argmax_x;
  double max_distance = 0.0;
};

// Max over a sample grid (all integer x, staircase corner abscissae, x0, and
// the domain endpoints) of the exact minimum Euclidean distance from
// (x, L(x)) to the staircase boundary of lambda. Both curves are linear
// between grid points, so the grid max is the true max.
DistanceReport boundary_distance(const Partition& lambda, const ShapePrediction& pred);

// Limit-shape curve for uniformly random permutations, in rescaled (x, y)
// coordinates, sampled along u = x - y in [-2, 2]; plot overlay only.
std::vector<std::pair<double, double>> lsvk_curve(long samples);

}  // namespace sos
