#include "sos/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "sos/sosperm.hpp"

namespace sos {

namespace {

// delta_i < eps, decided exactly from the side of the convergent.
bool delta_below(const AlphaSpec& alpha, const ConvergentRow& row, std::size_t i,
                 const Rat& eps) {
  Rat conv = make_rat(row.p, row.q);
  if (i % 2 == 0) return alpha.compare(conv + eps) < 0;  // alpha - p/q < eps
  return alpha.compare(conv - eps) > 0;                  // p/q - alpha < eps
}

// Least i with |alpha - p_i/q_i| strictly below 1/n, together with the table.
std::pair<long, ConvergentTable> minimal_index(const AlphaSpec& alpha, long n) {
  Rat eps = make_rat(1, n);
  auto table = convergent_table(alpha, TableNeed::until_delta_at_most(eps));
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < table.rows.size(); ++i)
      if (delta_below(alpha, table.rows[i], i, eps)) return {static_cast<long>(i), table};
    // The stopping row sat exactly at 1/n; one more convergent is strictly
    // closer.
    table = convergent_table(alpha, TableNeed::until_index(table.rows.size()));
  }
  throw std::logic_error("no convergent strictly within 1/n");
}

}  // namespace

std::pair<std::pair<Rat, Rat>, std::pair<Rat, Rat>> RescaledFrame::analysis_pair() const {
  if (trivial != TrivialShape::none)
    throw std::domain_error("trivial shape has no lattice frame");
  Rat x1(x_vec.h), x2 = x_vec.v, y1(y_vec.h), y2 = y_vec.v;
  if (case_tag == FrameCase::c1a || case_tag == FrameCase::c1b)
    return {{x1, x2}, {y1, y2}};
  return {{x2, x1}, {-y2, -y1}};
}

RescaledFrame rescaled_frame(long n, const AlphaSpec& alpha) {
  if (n < 1) throw std::domain_error("n must be positive");
  RescaledFrame f;
  f.n = n;
  if (alpha.compare(make_rat(1, n)) <= 0) {
    f.trivial = TrivialShape::single_row;
    return f;
  }
  if (alpha.compare(make_rat(n - 1, n)) >= 0) {
    f.trivial = TrivialShape::single_column;
    return f;
  }

  // Rational representative a/N with N > n inducing the same permutation.
  Rat rep;
  long expected_i = -1;
  if (alpha.is_rational()) {
    rep = alpha.rational_value().get_den() <= n ? farey_interval(n, alpha).mediant()
                                                : alpha.rational_value();
  } else {
    auto probe = convergent_table(alpha, TableNeed::until_q_exceeds(Int(n) * pow10(24)));
    if (probe.terminated) {
      // A finite coefficient stream is exactly its last convergent.
      rep = make_rat(probe.rows.back().p, probe.rows.back().q);
      if (rep.get_den() <= n)
        rep = farey_interval(n, AlphaSpec::from_rational(rep)).mediant();
    } else {
      expected_i = minimal_index(alpha, n).first;
      // Any parity-matched convergent with q_m > n induces the same
      // permutation and the same minimal index; going much deeper makes the
      // frame's deltas match the irrational limit to well beyond display
      // precision.
      rep = proxy_convergent(alpha, Int(n) * pow10(24), static_cast<int>(expected_i % 2));
    }
  }
  AlphaSpec spec = AlphaSpec::from_rational(rep);
  auto [i, table] = minimal_index(spec, n);
  if (expected_i >= 0 && i != expected_i)
    throw std::logic_error("proxy changed the minimal convergent index");

  f.a = rep.get_num();
  f.N = rep.get_den();
  if (i % 2 == 0) {
    f.h = (i - 2) / 2;
    f.star = 2;
  } else {
    f.h = (i - 1) / 2;
    f.star = 0;
  }
  const auto& rx = table.rows[2 * f.h + f.star];
  const auto& ry = table.rows[2 * f.h + 1];
  f.q_x = rx.q;
  f.delta_x = rx.delta;
  f.q_y = ry.q;
  f.delta_y = ry.delta;

  SlopeFrame sf = slope_frame(f.a, f.N, make_rat(f.N, n));
  Rat scale = make_rat(n, f.N);
  f.x_vec = {sf.x_vec.h, sf.x_vec.v * scale};
  f.y_vec = {sf.y_vec.h, sf.y_vec.v * scale};
  f.case_tag = sf.case_tag;
  f.s = sf.s;

  LatticeVector fx{f.q_x, Rat(n) * f.q_x * f.delta_x};
  LatticeVector fy{f.q_y, -Rat(n) * f.q_y * f.delta_y};
  if (!(f.x_vec == fx) || !(f.y_vec == fy))
    throw std::logic_error("frame disagrees with the convergent formulas");
  bool case1 = f.case_tag == FrameCase::c1a || f.case_tag == FrameCase::c1b;
  if (case1 != (i % 2 == 0))
    throw std::logic_error("frame case disagrees with the convergent parity");
  if (f.x_vec.v * f.y_vec.h - Rat(f.x_vec.h) * f.y_vec.v != n)
    throw std::logic_error("frame determinant is not n");
  return f;
}

long CrossingProfile::l(const Rat& j) const {
  Int lo = lo_index(j), hi = hi_index(j);
  if (hi < lo) return 0;
  return Int(hi - lo + 1).get_si();
}

Int CrossingProfile::lo_index(const Rat& j) const {
  return std::max(ceil_rat(-j * X1 / Y1), ceil_rat((j * X2 - n) / (-Y2)));
}

Int CrossingProfile::hi_index(const Rat& j) const {
  return std::min(floor_rat((Rat(n) - j * X1) / Y1), floor_rat(j * X2 / (-Y2)));
}

Rat CrossingProfile::j_min(long k) const {
  if (k < 1) throw std::domain_error("k must be positive");
  if (k <= l(Rat(0))) return Rat(0);
  Rat unit = Y1 * (-Y2) / n;  // linear spacing of l along j
  for (int widen = 1; widen <= 8; ++widen) {
    Rat wlo = Rat(k - 1 - widen) * unit, whi = Rat(k + 1 + widen) * unit;
    if (wlo < 0) wlo = 0;
    if (whi > Y1) whi = Y1;
    std::vector<Rat> cand;
    auto add_events = [&](const Rat& step) {  // entry events m*step, m >= 0
      for (Int m = std::max(Int(0), ceil_rat(wlo / step)); Rat(m) * step <= whi; ++m)
        cand.push_back(Rat(m) * step);
    };
    add_events(Y1 / X1);    // entering the left edge
    add_events(-Y2 / X2);   // entering the bottom edge
    std::sort(cand.begin(), cand.end());
    for (const Rat& j : cand)
      if (l(j) >= k) return j;
    if (wlo == 0 && whi == Y1) break;
  }
  throw std::domain_error("k exceeds the crossing counts of this lattice");
}

Rat CrossingProfile::j_max(long k) const {
  if (k < 1) throw std::domain_error("k must be positive");
  Rat end = domain_end();
  Rat unit = Y1 * (-Y2) / n;
  for (int widen = 1; widen <= 8; ++widen) {
    Rat wlo = end - Rat(k + 1 + widen) * unit, whi = end;
    if (wlo < -Y2) wlo = -Y2;
    std::vector<Rat> cand{end};
    auto add_events = [&](const Rat& Yc, const Rat& Xc) {  // exit at (n - i*Yc)/Xc
      Rat ia = (Rat(n) - wlo * Xc) / Yc, ib = (Rat(n) - whi * Xc) / Yc;
      if (ia > ib) std::swap(ia, ib);
      for (Int m = ceil_rat(ia); Rat(m) <= ib; ++m) {
        Rat j = (Rat(n) - Rat(m) * Yc) / Xc;
        if (j <= end) cand.push_back(j);
      }
    };
    add_events(Y2, X2);  // leaving the top edge
    add_events(Y1, X1);  // leaving the right edge
    std::sort(cand.begin(), cand.end(), std::greater<Rat>());
    for (const Rat& j : cand)
      if (j >= wlo && l(j) >= k) return j;
    if (wlo == -Y2) break;
  }
  throw std::domain_error("k exceeds the crossing counts of this lattice");
}

long CrossingProfile::lin(long k) const {
  return Int(floor_rat(j_max(k)) - ceil_rat(j_min(k)) + 1).get_si();
}

Rat CrossingProfile::J0() const { return Y1 * Y2 * (X1 - X2) / (X1 * Y2 + X2 * Y1); }

CrossingProfile CrossingProfile::starred() const { return {n, -Y2, Y1, X2, -X1}; }

CrossingProfile crossing_profile(const RescaledFrame& frame) {
  auto [X, Y] = frame.analysis_pair();
  return {frame.n, X.first, X.second, Y.first, Y.second};
}

KPathCover construct_k_paths(const RescaledFrame& frame, long k) {
  CrossingProfile pr = crossing_profile(frame);
  if (k < 1) throw std::domain_error("k must be positive");
  if (k > pr.l(pr.J0()))
    throw std::domain_error("k exceeds the crossing count at J0");
  Rat end = pr.domain_end();
  KPathCover cover;
  cover.j = std::max(pr.j_min(k), Rat(end - pr.j_max(k)));
  cover.j_bar = end - cover.j;
  const Rat &j = cover.j, &jb = cover.j_bar;

  auto point = [&](const Rat& jj, const Int& i) -> PlanePoint {
    return {jj * pr.X1 + Rat(i) * pr.Y1, jj * pr.X2 + Rat(i) * pr.Y2};
  };
  auto in_box = [&](const PlanePoint& p) {
    return p.first >= 0 && p.first <= pr.n && p.second >= 0 && p.second <= pr.n;
  };

  std::set<PlanePoint> S;
  auto add_chi = [&](const Int& ii) {
    Rat jj(ii);
    for (Int t = pr.lo_index(jj), hi = pr.hi_index(jj); t <= hi; ++t)
      S.insert(point(jj, t));
  };
  Int cj = ceil_rat(j), fjb = floor_rat(jb), fend = floor_rat(end);
  for (Int ii = 1; ii < cj; ++ii) add_chi(ii);
  for (Int ii = fjb + 3; ii <= fend; ++ii) add_chi(ii);

  // Connecting path P from the top of psi_j to the top of phi_{j_bar}: one X
  // step per line, shedding Y units at the balanced rate.
  Int lo_j = pr.lo_index(j), lo_jb = pr.lo_index(jb);
  Int m = fjb - cj, C = lo_j - lo_jb;
  // m == 0 collapses P to the single point on line cj; C is then irrelevant.
  if (m < 0 || C < 0) throw std::logic_error("path endpoints are not connectable");
  std::vector<PlanePoint> P;
  for (Int t = 0; t <= m; ++t) {
    Int drop = m == 0 ? Int(0) : Int(t * C / m);
    P.push_back(point(Rat(cj + t), lo_j - drop));
  }
  for (std::size_t t = 1; t < P.size(); ++t)
    if (P[t].first < P[t - 1].first || P[t].second < P[t - 1].second)
      throw std::logic_error("connecting path is not increasing");
  for (const auto& p : P)
    if (!in_box(p)) throw std::logic_error("connecting path leaves the box");
  for (long t = 0; t < k; ++t)
    for (const auto& p : P) {
      PlanePoint q{p.first + Rat(t) * pr.Y1, p.second + Rat(t) * pr.Y2};
      if (in_box(q)) S.insert(q);
    }
  // One and two X steps past the top k points of phi_{j_bar}.
  for (long t = 0; t < k; ++t) {
    PlanePoint w = point(Rat(fjb), lo_jb + t);
    for (int step = 1; step <= 2; ++step) {
      PlanePoint q{w.first + Rat(step) * pr.X1, w.second + Rat(step) * pr.X2};
      if (in_box(q)) S.insert(q);
    }
  }

  long ub = 0;
  for (Int ii = 1; ii <= fend; ++ii) ub += std::min(pr.l(Rat(ii)), k);
  cover.upper_bound = ub;
  cover.lower_bound = ub - 3;
  cover.points.assign(S.begin(), S.end());

  // Greedy minimal cover by weakly increasing chains (points arrive in
  // lexicographic order; append to the chain with the largest tail below).
  for (const auto& p : cover.points) {
    long best = -1;
    for (std::size_t c = 0; c < cover.chains.size(); ++c) {
      const PlanePoint& tail = cover.chains[c].back();
      if (tail.second <= p.second &&
          (best < 0 || cover.chains[best].back().second < tail.second))
        best = static_cast<long>(c);
    }
    if (best < 0) {
      cover.chains.push_back({p});
    } else {
      cover.chains[best].push_back(p);
    }
  }
  return cover;
}

Rat ShapePrediction::L(const Rat& x) const {
  if (trivial != TrivialShape::none)
    throw std::domain_error("trivial shape has no boundary prediction");
  if (x < 0 || x > arm_hi) throw std::domain_error("x outside the boundary domain");
  if (x <= x0) return leg_hi + slope1 * x;
  return Rat(n) * (arm_hi - x) / (2 * Y1 * (-Y2));
}

EstimateBand ShapePrediction::row_estimate(long k) const {
  if (trivial != TrivialShape::none)
    throw std::domain_error("trivial shape has no row estimates");
  if (k < 1) throw std::domain_error("k must be positive");
  Rat spread = 2 * Y1 * (-Y2) / n;
  return {arm_hi - Rat(k) * spread, 4 + spread, Rat(k) <= y0 - 1};
}

EstimateBand ShapePrediction::col_estimate(long k) const {
  if (trivial != TrivialShape::none)
    throw std::domain_error("trivial shape has no column estimates");
  if (k < 1) throw std::domain_error("k must be positive");
  Rat spread = 2 * X1 * X2 / n;
  return {leg_hi - Rat(k) * spread, 4 + spread, Rat(k) <= x0 - 1};
}

ShapePrediction shape_prediction(const RescaledFrame& frame) {
  ShapePrediction sp;
  sp.n = frame.n;
  sp.trivial = frame.trivial;
  if (frame.trivial == TrivialShape::single_row) {
    sp.arm_lo = frame.n - 1;
    sp.arm_hi = frame.n;
    sp.leg_lo = 0;
    sp.leg_hi = 1;
    return sp;
  }
  if (frame.trivial == TrivialShape::single_column) {
    sp.arm_lo = 0;
    sp.arm_hi = 1;
    sp.leg_lo = frame.n - 1;
    sp.leg_hi = frame.n;
    return sp;
  }
  auto [X, Y] = frame.analysis_pair();
  sp.X1 = X.first;
  sp.X2 = X.second;
  sp.Y1 = Y.first;
  sp.Y2 = Y.second;
  sp.arm_hi = sp.Y1 - sp.Y2;
  sp.arm_lo = sp.arm_hi - 2;
  sp.leg_hi = sp.X1 + sp.X2;
  sp.leg_lo = sp.leg_hi - 2;
  sp.slope1 = -2 * sp.X1 * sp.X2 / sp.n;
  sp.slope2 = -Rat(sp.n) / (2 * sp.Y1 * (-sp.Y2));
  Rat den = sp.X1 * sp.Y2 + sp.X2 * sp.Y1;
  sp.x0 = Rat(sp.n) * (sp.Y1 + sp.Y2) / den;
  sp.y0 = Rat(sp.n) * (sp.X2 - sp.X1) / den;
  return sp;
}

ShapePrediction shape_prediction(long n, const AlphaSpec& alpha) {
  return shape_prediction(rescaled_frame(n, alpha));
}

NormalizedExtrema normalized_extrema(const AlphaSpec& alpha, long h, unsigned digits) {
  if (h < 0) throw std::domain_error("h must be nonnegative");
  auto table = convergent_table(alpha, TableNeed::until_index(2 * h + 1));
  if (table.rows.size() < static_cast<std::size_t>(2 * h + 2))
    throw std::domain_error("expansion ends before index 2h+1");
  const auto& re = table.rows[2 * h];
  const auto& ro = table.rows[2 * h + 1];
  if (re.delta == 0 || ro.delta == 0)
    throw std::domain_error("exact convergent has no extremum scale");
  NormalizedExtrema ex;
  ex.q_even = re.q;
  ex.q_odd = ro.q;
  ex.delta_even = re.delta;
  ex.delta_odd = ro.delta;
  Rat se = Rat(re.q) * re.q * re.delta;  // q^2 * delta at 2h
  Rat so = Rat(ro.q) * ro.q * ro.delta;  // q^2 * delta at 2h+1
  ex.M_plus = sqrt_decimal(1 / se, digits);
  ex.m_minus = sqrt_decimal(4 * se, digits);
  ex.m_plus = sqrt_decimal(4 * so, digits);
  ex.M_minus = sqrt_decimal(1 / so, digits);
  return ex;
}

DistanceReport boundary_distance(const Partition& lambda, const ShapePrediction& pred) {
  if (pred.trivial != TrivialShape::none)
    throw std::domain_error("trivial prediction has no boundary estimate");
  const auto& rows = lambda.rows;
  if (rows.empty()) throw std::domain_error("empty shape");
  long r = static_cast<long>(rows.size());

  // Staircase vertices, from (lambda_1, 0) up to (0, #rows).
  std::vector<PlanePoint> verts;
  verts.push_back({Rat(rows[0]), Rat(0)});
  long k = 0;
  while (k < r) {
    long k2 = k;
    while (k2 + 1 < r && rows[k2 + 1] == rows[k]) ++k2;
    verts.push_back({Rat(rows[k]), Rat(k2 + 1)});
    if (k2 + 1 < r) verts.push_back({Rat(rows[k2 + 1]), Rat(k2 + 1)});
    k = k2 + 1;
  }
  verts.push_back({Rat(0), Rat(r)});

  auto dist2_seg = [](const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) -> Rat {
    Rat dx = b.first - a.first, dy = b.second - a.second;
    Rat px = p.first - a.first, py = p.second - a.second;
    Rat len2 = dx * dx + dy * dy;
    Rat t = len2 == 0 ? Rat(0) : (px * dx + py * dy) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    Rat ex = px - t * dx, ey = py - t * dy;
    return ex * ex + ey * ey;
  };

  std::set<Rat> xs;
  Rat end = pred.arm_hi;
  for (Int ii = 0; ii <= floor_rat(end); ++ii) xs.insert(Rat(ii));
  xs.insert(end);
  if (pred.x0 >= 0 && pred.x0 <= end) xs.insert(pred.x0);
  for (const auto& v : verts)
    if (v.first >= 0 && v.first <= end) xs.insert(v.first);

  DistanceReport rep;
  rep.max_distance_sq = -1;
  for (const Rat& x : xs) {
    PlanePoint p{x, pred.L(x)};
    Rat best = -1;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      Rat d2 = dist2_seg(p, verts[i], verts[i + 1]);
      if (best < 0 || d2 < best) best = d2;
    }
    if (best > rep.max_distance_sq) {
      rep.max_distance_sq = best;
      rep.argmax_x = x;
    }
  }
  rep.max_distance = std::sqrt(rep.max_distance_sq.get_d());
  return rep;
}

std::vector<std::pair<double, double>> lsvk_curve(long samples) {
  if (samples < 2) throw std::domain_error("need at least two samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (long i = 0; i < samples; ++i) {
    double u = -2.0 + 4.0 * static_cast<double>(i) / (samples - 1);
    double s = (2.0 / std::numbers::pi) *
               (u * std::asin(u / 2.0) + std::sqrt(std::max(0.0, 4.0 - u * u)));
    out.push_back({(s + u) / 2, (s - u) / 2});
  }
  return out;
}

}  // namespace sos
