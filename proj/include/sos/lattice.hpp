#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sos/numeric.hpp"

namespace sos {

// A vector of the torus lattice L_{a,b} = {(x,y) : y = ax mod b}. The
// vertical part stays rational so the same type serves the n/N-rescaled
// lattice; in the unscaled lattice it is integer-valued.
struct LatticeVector {
  Int h;
  Rat v;

  friend bool operator==(const LatticeVector& l, const LatticeVector& r) {
    return l.h == r.h && l.v == r.v;
  }
  LatticeVector operator-(const LatticeVector& o) const { return {h - o.h, v - o.v}; }
  LatticeVector operator+(const LatticeVector& o) const { return {h + o.h, v + o.v}; }
  // Cross product h*o.v - v*o.h; negative iff this vector's slope exceeds
  // o's, for vectors in the closed right half plane.
  Rat cross(const LatticeVector& o) const { return o.v * h - v * o.h; }
  Rat norm2() const { return v * v + Rat(h) * Rat(h); }
  std::string text() const;  // "<h,v>"
};

// The unit-length vectors of L_{a,b}: U increasing with strictly decreasing
// slope (u1 = <1,a>), V decreasing with strictly increasing slope
// (v1 = <1,a-b>).
struct UnitVectorFan {
  Int a, b;
  std::vector<LatticeVector> U;
  std::vector<LatticeVector> V;
};

enum class FrameCase { c1a, c1b, c2a, c2b };
std::string case_text(FrameCase c);

// The four vectors bracketing slopes +-tau, the derived basis x = c - d,
// y = b - a, and the case/s classification of that basis.
struct SlopeFrame {
  Rat tau;
  LatticeVector a_vec, b_vec, c_vec, d_vec, x_vec, y_vec;
  FrameCase case_tag = FrameCase::c1a;
  Int s = 1;
};

enum class SymmetryMap { rho, omega };

// Unit vectors from the slow-Euclid trace: positive-t rows as <t,r>, negative
// as <-t,-r>, remainder 0 excluded. Cached per (a,b); the reference stays
// valid for the process lifetime.
const UnitVectorFan& unit_vectors(const Int& a, const Int& b);

// ell+ of <x,y> and ell- of <x,y-b> for a point of L_{a,b} in [0,b]^2, by
// exact decomposition in the consecutive-unit-vector pair bracketing the
// slope (closing the fans with <0,+-b> and <b,0>).
std::pair<long, long> lattice_length(const Int& a, const Int& b, const Int& x, const Int& y);

// The frame at slope threshold tau >= 1: a,b are the unit vectors with
// m_a >= tau > m_b, c,d those with m_c > -tau >= m_d.
SlopeFrame slope_frame(const Int& a, const Int& b, const Rat& tau);

// rho: (x,y) -> (<-y2,y1>, <x2,-x1>); omega: (x,y) -> (<y1,-y2>, <x1,-x2>).
// Requires integer-valued vertical parts (unscaled lattice bases).
std::pair<LatticeVector, LatticeVector> apply_symmetry(
    const std::pair<LatticeVector, LatticeVector>& xy, SymmetryMap map);

// Independent dynamic-programming walk lengths for every box point of
// L_{a,b} (the b+1 residue points plus (0,b) and (b,b)), keyed by (x,y).
// Quadratic; guarded at b <= 500.
std::map<std::pair<long, long>, std::pair<long, long>> lattice_length_oracle(long a, long b);

// Debug CSV "x,y,lplus,lminus" rows for every box point, sorted by x then y.
std::string lattice_csv(const Int& a, const Int& b);

}  // namespace sos
