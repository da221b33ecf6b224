#include "sos/lattice.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace sos {

std::string LatticeVector::text() const {
  std::string s = "<" + h.get_str() + ",";
  s += v.get_num().get_str();
  if (v.get_den() != 1) s += "/" + v.get_den().get_str();
  return s + ">";
}

std::string case_text(FrameCase c) {
  switch (c) {
    case FrameCase::c1a: return "1a";
    case FrameCase::c1b: return "1b";
    case FrameCase::c2a: return "2a";
    case FrameCase::c2b: return "2b";
  }
  return "?";
}

const UnitVectorFan& unit_vectors(const Int& a, const Int& b) {
  static std::mutex mu;
  static std::map<std::pair<Int, Int>, std::unique_ptr<UnitVectorFan>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(a, b);
  auto it = memo.find(key);
  if (it != memo.end()) return *it->second;
  auto trace = slow_euclid(a, b);  // validates 1 <= a < b and coprimality
  auto fan = std::make_unique<UnitVectorFan>();
  fan->a = a;
  fan->b = b;
  for (const auto& row : trace.rows) {
    if (row.r <= 0) continue;  // the terminating remainder is not a unit vector
    if (row.t > 0)
      fan->U.push_back({row.t, Rat(row.r)});
    else if (row.t < 0)
      fan->V.push_back({-row.t, Rat(-row.r)});
  }
  return *memo.emplace(std::move(key), std::move(fan)).first->second;
}

namespace {

// Fans closed with the vertical/horizontal wrap-around vectors, so every
// increasing (resp. decreasing) lattice vector is bracketed.
std::vector<LatticeVector> closed_increasing(const UnitVectorFan& fan) {
  std::vector<LatticeVector> out;
  out.push_back({0, Rat(fan.b)});
  out.insert(out.end(), fan.U.begin(), fan.U.end());
  out.push_back({fan.b, Rat(0)});
  return out;
}

std::vector<LatticeVector> closed_decreasing(const UnitVectorFan& fan) {
  std::vector<LatticeVector> out;
  out.push_back({0, Rat(-fan.b)});
  out.insert(out.end(), fan.V.begin(), fan.V.end());
  out.push_back({fan.b, Rat(0)});
  return out;
}

// Nonnegative integer decomposition w = c*fan[k-1] + d*fan[k] in the
// consecutive pair bracketing w's slope; returns c + d. `increasing` selects
// the slope ordering of the list (decreasing slopes for U, increasing for V).
Int decompose_length(const std::vector<LatticeVector>& fan, const LatticeVector& w,
                     bool increasing) {
  // Find the first k >= 1 whose slope has passed w's.
  std::size_t lo = 1, hi = fan.size() - 1;
  auto passed = [&](std::size_t k) {
    Rat c = fan[k].cross(w);
    return increasing ? c >= 0 : c <= 0;
  };
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (passed(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  const LatticeVector &P = fan[lo - 1], &Q = fan[lo];
  Rat det = P.cross(Q);
  Rat c = w.cross(Q) / det;
  Rat d = P.cross(w) / det;
  if (c.get_den() != 1 || d.get_den() != 1 || c < 0 || d < 0)
    throw std::logic_error("unit-vector decomposition failed");
  return c.get_num() + d.get_num();
}

}  // namespace

std::pair<long, long> lattice_length(const Int& a, const Int& b, const Int& x, const Int& y) {
  const UnitVectorFan& fan = unit_vectors(a, b);
  if (x < 0 || x > b || y < 0 || y > b) throw std::domain_error("point outside [0,b]^2");
  if ((y - a * x) % b != 0) throw std::domain_error("point not on the lattice");
  long lp = 0, lm = 0;
  if (x != 0 || y != 0)
    lp = decompose_length(closed_increasing(fan), {x, Rat(y)}, true).get_si();
  if (x != 0 || y != b)
    lm = decompose_length(closed_decreasing(fan), {x, Rat(y - b)}, false).get_si();
  return {lp, lm};
}

namespace {

LatticeVector scaled(const LatticeVector& u, const Int& k) { return {u.h * k, u.v * k}; }

}  // namespace

SlopeFrame slope_frame(const Int& a, const Int& b, const Rat& tau) {
  if (tau < 1) throw std::domain_error("slope threshold below 1 is not supported");
  const UnitVectorFan& fan = unit_vectors(a, b);
  auto inc = closed_increasing(fan);
  auto dec = closed_decreasing(fan);

  // Last increasing vector with slope >= tau (slopes strictly decrease).
  std::size_t lo = 0, hi = inc.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (inc[mid].v >= tau * inc[mid].h)
      lo = mid;
    else
      hi = mid - 1;
  }
  SlopeFrame f;
  f.tau = tau;
  f.a_vec = inc[lo];
  f.b_vec = inc[lo + 1];

  // Last decreasing vector with slope <= -tau (slopes strictly increase).
  lo = 0, hi = dec.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (dec[mid].v <= -tau * dec[mid].h)
      lo = mid;
    else
      hi = mid - 1;
  }
  f.d_vec = dec[lo];
  f.c_vec = dec[lo + 1];

  f.x_vec = f.c_vec - f.d_vec;
  f.y_vec = f.b_vec - f.a_vec;
  const LatticeVector &x = f.x_vec, &y = f.y_vec;

  // Exactly one of x, y must fall strictly inside the slope band (-tau, tau);
  // otherwise tau lies past the steepest fan slope and no frame exists.
  bool x_small = x.v < tau * x.h && x.v > -tau * x.h;
  bool y_small = y.v < tau * y.h && y.v > -tau * y.h;
  if (x_small == y_small)
    throw std::domain_error("slope threshold outside the lattice's frame range");
  bool case1 = y.v <= -tau * y.h;  // y steep: case 1, else case 2

  // The sub-case is whichever relation set admits an integer s >= 1. Both
  // admit s = 1 simultaneously (the sets coincide there); then the shorter of
  // x, y breaks the tie.
  auto try_sub = [&](FrameCase tag) -> Int {
    LatticeVector num{0, Rat(0)}, den{0, Rat(0)};
    switch (tag) {
      case FrameCase::c1a: num = x - f.a_vec, den = y; break;
      case FrameCase::c1b: num = f.c_vec - y, den = x; break;
      case FrameCase::c2a: num = f.b_vec - x, den = y; break;
      case FrameCase::c2b: num = y - f.d_vec, den = x; break;
    }
    Rat s;
    if (den.h != 0)
      s = Rat(num.h) / Rat(den.h);
    else if (den.v != 0)
      s = num.v / den.v;
    else
      return 0;
    if (s.get_den() != 1 || s < 1 || !(num == scaled(den, s.get_num()))) return 0;
    Int si = s.get_num();
    bool ok = false;
    switch (tag) {
      case FrameCase::c1a:
        ok = f.a_vec == x - scaled(y, si) && f.b_vec == x - scaled(y, si - 1) &&
             f.c_vec == x + y && f.d_vec == y;
        break;
      case FrameCase::c1b:
        ok = f.a_vec == x - y && f.b_vec == x && f.c_vec == y + scaled(x, si) &&
             f.d_vec == y + scaled(x, si - 1);
        break;
      case FrameCase::c2a:
        ok = f.a_vec == x + scaled(y, si - 1) && f.b_vec == x + scaled(y, si) &&
             f.c_vec == y && f.d_vec == y - x;
        break;
      case FrameCase::c2b:
        ok = f.a_vec == x && f.b_vec == x + y && f.c_vec == y - scaled(x, si - 1) &&
             f.d_vec == y - scaled(x, si);
        break;
    }
    return ok ? si : 0;
  };

  FrameCase tag_a = case1 ? FrameCase::c1a : FrameCase::c2a;
  FrameCase tag_b = case1 ? FrameCase::c1b : FrameCase::c2b;
  Int sa = try_sub(tag_a), sb = try_sub(tag_b);
  if (sa != 0 && sb != 0) {
    bool prefer_a = y.norm2() <= x.norm2();
    f.case_tag = prefer_a ? tag_a : tag_b;
    f.s = prefer_a ? sa : sb;
  } else if (sa != 0) {
    f.case_tag = tag_a;
    f.s = sa;
  } else if (sb != 0) {
    f.case_tag = tag_b;
    f.s = sb;
  } else {
    throw std::logic_error("frame case relations do not hold");
  }
  return f;
}

std::pair<LatticeVector, LatticeVector> apply_symmetry(
    const std::pair<LatticeVector, LatticeVector>& xy, SymmetryMap map) {
  const LatticeVector &x = xy.first, &y = xy.second;
  if (x.v.get_den() != 1 || y.v.get_den() != 1)
    throw std::domain_error("symmetry maps require integer lattice vectors");
  Int x2 = x.v.get_num(), y2 = y.v.get_num();
  if (map == SymmetryMap::rho) return {{-y2, Rat(y.h)}, {x2, Rat(-x.h)}};
  return {{y.h, Rat(-y2)}, {x.h, Rat(-x2)}};
}

std::map<std::pair<long, long>, std::pair<long, long>> lattice_length_oracle(long a, long b) {
  if (b > 500) throw resource_error("lattice_length_oracle: b exceeds 500");
  if (a < 1 || a >= b || gcd(Int(a), Int(b)) != 1)
    throw std::domain_error("requires coprime 1 <= a < b");
  std::vector<std::pair<long, long>> pts;
  for (long x = 0; x <= b; ++x) pts.push_back({x, a * x % b});
  pts.push_back({0, b});
  pts.push_back({b, b});

  std::map<std::pair<long, long>, std::pair<long, long>> out;
  // Increasing walks from (0,0).
  std::sort(pts.begin(), pts.end());
  std::vector<long> lp(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == std::make_pair(0L, 0L)) continue;
    long best = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (pts[j].second <= pts[i].second) best = std::max(best, lp[j] + 1);
    lp[i] = best;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) out[pts[i]].first = lp[i];
  // Decreasing walks from (0,b).
  std::sort(pts.begin(), pts.end(),
            [](auto& l, auto& r) { return l.first != r.first ? l.first < r.first : l.second > r.second; });
  std::vector<long> lm(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == std::make_pair(0L, b)) continue;
    long best = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (pts[j].second >= pts[i].second) best = std::max(best, lm[j] + 1);
    lm[i] = best;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) out[pts[i]].second = lm[i];
  return out;
}

std::string lattice_csv(const Int& a, const Int& b) {
  if (b > 1000000) throw resource_error("lattice_csv: b exceeds 10^6");
  std::vector<std::pair<Int, Int>> pts;
  for (Int x = 0; x <= b; ++x) pts.push_back({x, a * x % b});
  pts.push_back({0, b});
  pts.push_back({b, b});
  std::sort(pts.begin(), pts.end());
  std::ostringstream os;
  os << "x,y,lplus,lminus\n";
  for (const auto& [x, y] : pts) {
    auto [p, m] = lattice_length(a, b, x, y);
    os << x.get_str() << "," << y.get_str() << "," << p << "," << m << "\n";
  }
  return os.str();
}

}  // namespace sos
