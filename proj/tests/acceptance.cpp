// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failed criteria.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "sos/lattice.hpp"
#include "sos/predictor.hpp"
#include "sos/sosperm.hpp"

using namespace sos;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// --- 1: w(7, 3/10), its shape, and its tableau pair -------------------------

Outcome criterion1() {
  Outcome o;
  auto alpha = AlphaSpec::parse("3/10");
  sos_permutation(7, alpha);  // warm the convergent caches before timing
  auto t0 = std::chrono::steady_clock::now();
  auto w = sos_permutation(7, alpha);
  auto t = rsk(w);
  double ms = ms_since(t0);
  if (w.one_line() != "7 4 1 5 2 6 3") o.fail("permutation is " + w.one_line());
  if (shape(w).text() != "3,3,1") o.fail("shape is " + shape(w).text());
  std::vector<std::vector<long>> P{{1, 2, 3}, {4, 5, 6}, {7}};
  std::vector<std::vector<long>> Q{{1, 4, 6}, {2, 5, 7}, {3}};
  if (t.P != P) o.fail("insertion tableau mismatch");
  if (t.Q != Q) o.fail("recording tableau mismatch");
  if (ms >= 1.0) o.fail("took " + fmt(ms) + " ms");
  if (o.pass) o.detail = "w(7,3/10) = 7415263, sh = 3,3,1, tableaux match, " + fmt(ms) + " ms";
  return o;
}

// --- 2: the (51,71) slow-Euclid trace and its unit vectors ------------------

Outcome criterion2() {
  Outcome o;
  auto tr = slow_euclid(Int(51), Int(71));
  // (i, j, r, s, t); the two initialization rows carry j = 0
  std::vector<std::array<long, 5>> expected{
      {-1, 0, 71, 1, 0},  {0, 0, 51, 0, 1},    {1, 1, 20, 1, -1},  {2, 1, 31, -1, 2},
      {2, 2, 11, -2, 3},  {3, 1, 9, 3, -4},    {4, 1, 2, -5, 7},   {5, 1, 7, 8, -11},
      {5, 2, 5, 13, -18}, {5, 3, 3, 18, -25},  {5, 4, 1, 23, -32}, {6, 1, 1, -28, 39},
      {6, 2, 0, -51, 71}};
  if (tr.rows.size() != expected.size()) {
    o.fail("trace has " + std::to_string(tr.rows.size()) + " rows");
  } else {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto& r = tr.rows[i];
      const auto& e = expected[i];
      if (r.i != e[0] || r.j != e[1] || r.r != e[2] || r.s != e[3] || r.t != e[4]) {
        o.fail("row " + std::to_string(i) + " differs");
        break;
      }
    }
  }
  std::vector<Int> blocks{1, 2, 1, 1, 4, 2};
  if (tr.block_sizes != blocks) o.fail("block sizes differ");
  const auto& fan = unit_vectors(51, 71);
  std::vector<LatticeVector> U{{1, Rat(51)}, {2, Rat(31)}, {3, Rat(11)}, {7, Rat(2)}, {39, Rat(1)}};
  std::vector<LatticeVector> V{{1, Rat(-20)}, {4, Rat(-9)},  {11, Rat(-7)},
                               {18, Rat(-5)}, {25, Rat(-3)}, {32, Rat(-1)}};
  if (fan.U != U) o.fail("U vectors differ");
  if (fan.V != V) o.fail("V vectors differ");
  if (o.pass) o.detail = "13 trace rows, blocks 1,2,1,1,4,2, 5 U and 6 V vectors";
  return o;
}

// --- 3: walk lengths on L_{51,71} -------------------------------------------

Outcome criterion3() {
  Outcome o;
  lattice_length(51, 71, 1, 51);  // warm the fan cache before timing
  auto oracle = lattice_length_oracle(51, 71);
  auto t0 = std::chrono::steady_clock::now();
  if (lattice_length(51, 71, 37, 41) != std::pair<long, long>{7, 4})
    o.fail("(37,41) walk lengths differ");
  if (lattice_length(51, 71, 30, 39) != std::pair<long, long>{6, 4})
    o.fail("(30,39) walk lengths differ");
  if (lattice_length(51, 71, 71, 71).first != 13) o.fail("l+ at (71,71) is not 13");
  if (lattice_length(51, 71, 71, 0).second != 9) o.fail("l- at (71,0) is not 9");
  long mismatches = 0;
  for (const auto& [pt, lens] : oracle)
    if (lattice_length(51, 71, pt.first, pt.second) != lens) ++mismatches;
  double ms = ms_since(t0);
  if (mismatches) o.fail(std::to_string(mismatches) + " points disagree with the oracle");
  if (ms >= 100.0) o.fail("took " + fmt(ms) + " ms");
  if (o.pass)
    o.detail = "all " + std::to_string(oracle.size()) + " box points match the oracle, " +
               fmt(ms) + " ms";
  return o;
}

// --- 4: exact boundary coefficients for (210, 25/211) -----------------------

Outcome criterion4() {
  Outcome o;
  auto sp = shape_prediction(210, AlphaSpec::parse("25/211"));
  if (sp.L(Rat(0)) != make_rat(4217, 211)) o.fail("intercept differs");
  if (sp.slope1 != make_rat(-102, 211)) o.fail("first slope differs");
  if (sp.slope2 != make_rat(-211, 176)) o.fail("second slope differs");
  // the second piece is (1999/88) + slope2 * x
  if (sp.L(sp.x0) - sp.slope2 * sp.x0 != make_rat(1999, 88)) o.fail("second intercept differs");
  if (sp.x0 != make_rat(622, 163)) o.fail("breakpoint differs");
  if (sp.arm_hi != make_rat(3998, 211)) o.fail("endpoint differs");
  if (o.pass) o.detail = "L = 4217/211 - (102/211)x then 1999/88 - (211/176)x on [622/163, 3998/211]";
  return o;
}

// --- 5: the e example at n = 4700 --------------------------------------------

Outcome criterion5() {
  Outcome o;
  auto alpha = AlphaSpec::e_stream();
  auto sp = shape_prediction(4700, alpha);
  std::string s1 = decimal_string(sp.slope1, 5), s2 = decimal_string(sp.slope2, 5);
  if (s1 != "-1.01332") o.fail("slope1 rounds to " + s1);
  if (s2 != "-3.53850") o.fail("slope2 rounds to " + s2);
  auto rep = boundary_distance(shape(sos_permutation(4700, alpha)), sp);
  if (!(rep.max_distance_sq < 64)) o.fail("distance is " + fmt(rep.max_distance));
  if (o.pass)
    o.detail = "slopes " + s1 + ", " + s2 + ", max distance " + fmt(rep.max_distance);
  return o;
}

// --- 6: bound scan over alphas and log-spaced sizes --------------------------

std::vector<long> log_spaced_sizes(long count, long max_n) {
  std::vector<long> sizes;
  double lo = std::log10(5.0), hi = std::log10(static_cast<double>(max_n));
  for (long i = 0; i < count; ++i) {
    long n = std::lround(std::pow(10.0, lo + (hi - lo) * i / (count - 1)));
    if (sizes.empty() || n > sizes.back()) sizes.push_back(n);
  }
  return sizes;
}

// The two order-10^7-denominator Farey neighbors of 51/71.
std::vector<AlphaSpec> farey_perturbed_51_71() {
  long t = 0;
  while (51 * ++t % 71 != 1) {}
  long p = (51 * t - 1) / 71, m = 140845;
  Rat below = make_rat(51 * m + p, 71 * m + t);
  Rat above = make_rat(51 * m - p, 71 * m - t);
  if (!(below < make_rat(51, 71) && make_rat(51, 71) < above))
    throw std::logic_error("neighbor construction failed");
  return {AlphaSpec::from_rational(below), AlphaSpec::from_rational(above)};
}

Outcome criterion6() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<AlphaSpec> alphas{AlphaSpec::e_stream(), AlphaSpec::surd(1, 5, 2),
                                AlphaSpec::surd(0, 2, 1)};
  for (auto& a : farey_perturbed_51_71()) alphas.push_back(a);
  auto sizes = log_spaced_sizes(200, 100000);
  long checked = 0, violations = 0;
  double worst = 0;
  std::string first_bad;
  auto flag = [&](const std::string& what) {
    ++violations;
    if (first_bad.empty()) first_bad = what;
  };
  for (const auto& alpha : alphas)
    for (long n : sizes) {
      auto sp = shape_prediction(n, alpha);
      auto lam = shape(sos_permutation(n, alpha));
      long arm = lam.rows.front(), leg = static_cast<long>(lam.rows.size());
      std::string id = alpha.text() + " n=" + std::to_string(n);
      ++checked;
      if (sp.trivial == TrivialShape::single_row) {
        if (leg != 1) flag(id + ": not a single row");
        continue;
      }
      if (sp.trivial == TrivialShape::single_column) {
        if (arm != 1) flag(id + ": not a single column");
        continue;
      }
      if (sp.arm_hi - sp.arm_lo != 2 || sp.leg_hi - sp.leg_lo != 2)
        flag(id + ": sandwich width is not 2");
      if (!(Rat(arm) > sp.arm_lo && Rat(arm) <= sp.arm_hi)) flag(id + ": arm out of bounds");
      if (!(Rat(leg) > sp.leg_lo && Rat(leg) <= sp.leg_hi)) flag(id + ": leg out of bounds");
      auto conj = lam.conjugate();
      for (long k = 1;; ++k) {
        auto band = sp.row_estimate(k);
        if (!band.in_range) break;
        long row = k <= leg ? lam.rows[k - 1] : 0;
        if (!(abs(Rat(row) - band.center) < band.radius && band.radius <= 6))
          flag(id + ": row " + std::to_string(k));
      }
      for (long k = 1;; ++k) {
        auto band = sp.col_estimate(k);
        if (!band.in_range) break;
        long col = k <= arm ? conj.rows[k - 1] : 0;
        if (!(abs(Rat(col) - band.center) < band.radius && band.radius <= 6))
          flag(id + ": column " + std::to_string(k));
      }
      auto rep = boundary_distance(lam, sp);
      worst = std::max(worst, rep.max_distance);
      if (!(rep.max_distance_sq < 64)) flag(id + ": distance " + fmt(rep.max_distance));
    }
  if (violations) o.fail(std::to_string(violations) + " violations, first: " + first_bad);
  if (o.pass)
    o.detail = std::to_string(checked) + " (alpha, n) pairs, worst distance " + fmt(worst) +
               ", " + fmt(ms_since(t0) / 1000.0) + " s";
  return o;
}

// --- 7: exhaustive Greene invariants ------------------------------------------

bool greene_matches(const Permutation& w) {
  auto lam = shape(w);
  auto conj = lam.conjugate();
  long Ik = 0, Dk = 0;
  for (long k = 1; k <= w.size(); ++k) {
    auto [i, d] = greene_oracle(w, k);
    Ik = k <= static_cast<long>(lam.rows.size()) ? Ik + lam.rows[k - 1] : Ik;
    Dk = k <= static_cast<long>(conj.rows.size()) ? Dk + conj.rows[k - 1] : Dk;
    if (i != Ik || d != Dk) return false;
  }
  return true;
}

Outcome criterion7() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<long> vals(8);
  std::iota(vals.begin(), vals.end(), 1L);
  long bad = 0;
  do {
    if (!greene_matches(Permutation{vals})) ++bad;
  } while (std::next_permutation(vals.begin(), vals.end()));
  std::mt19937 rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    long n = std::uniform_int_distribution<long>(1, 12)(rng);
    long den = std::uniform_int_distribution<long>(2, 4000)(rng);
    long num = std::uniform_int_distribution<long>(1, den - 1)(rng);
    if (std::gcd(num, den) != 1) continue;
    if (!greene_matches(sos_permutation(n, AlphaSpec::from_rational(make_rat(num, den)))))
      ++bad;
  }
  if (bad) o.fail(std::to_string(bad) + " permutations disagree");
  if (o.pass)
    o.detail = "all of S_8 plus 500 sampled permutations, " + fmt(ms_since(t0) / 1000.0) + " s";
  return o;
}

// --- 8: enumeration counts, step structure, probabilities --------------------

Outcome criterion8() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<long> phi(301);
  std::iota(phi.begin(), phi.end(), 0L);
  for (long p = 2; p <= 300; ++p)
    if (phi[p] == p)  // p is prime
      for (long m = p; m <= 300; m += p) phi[m] -= phi[m] / p;
  long total = 0;
  for (long n = 1; n <= 300 && o.pass; ++n) {
    auto list = enumerate_sos(n);
    long expected = std::accumulate(phi.begin() + 1, phi.begin() + n + 1, 0L);
    if (static_cast<long>(list.size()) != expected) {
      o.fail("count at n = " + std::to_string(n) + " is " + std::to_string(list.size()));
      break;
    }
    Rat mass(0);
    for (const auto& [iv, w] : list) {
      mass += iv.width();
      auto rep = check_three_gap(w, iv);
      if (!rep.ok) {
        o.fail("n = " + std::to_string(n) + ": " + rep.detail);
        break;
      }
    }
    if (o.pass && mass != 1) o.fail("widths at n = " + std::to_string(n) + " sum to " +
                                    mass.get_str());
    total += static_cast<long>(list.size());
  }
  if (o.pass)
    o.detail = std::to_string(total) + " permutations across n <= 300, " +
               fmt(ms_since(t0) / 1000.0) + " s";
  return o;
}

// --- 9: union-of-k-paths certificates ----------------------------------------

Outcome criterion9() {
  Outcome o;
  std::mt19937 rng(43);
  long frames = 0, covers = 0;
  while (frames < 50) {
    long n = std::uniform_int_distribution<long>(3, 700)(rng);
    long N = std::uniform_int_distribution<long>(n + 1, 4 * n + 7)(rng);
    long a = std::uniform_int_distribution<long>(1, N - 1)(rng);
    if (std::gcd(a, N) != 1) continue;
    auto alpha = AlphaSpec::from_rational(make_rat(a, N));
    if (alpha.compare(make_rat(1, n)) <= 0 || alpha.compare(make_rat(n - 1, n)) >= 0) continue;
    auto frame = rescaled_frame(n, alpha);
    ++frames;
    auto pr = crossing_profile(frame);
    auto lam = shape(sos_permutation(n, alpha));
    std::vector<long> I{0};
    for (long r : lam.rows) I.push_back(I.back() + r);
    long kmax = pr.l(pr.J0());
    std::string id = "n=" + std::to_string(n) + " alpha=" + alpha.text();
    for (long k = 1; k <= kmax; ++k) {
      auto cover = construct_k_paths(frame, k);
      ++covers;
      if (static_cast<long>(cover.chains.size()) > k) {
        o.fail(id + " k=" + std::to_string(k) + ": more than k chains");
        break;
      }
      std::size_t covered = 0;
      bool monotone = true;
      for (const auto& chain : cover.chains) {
        covered += chain.size();
        for (std::size_t t = 1; t < chain.size(); ++t)
          monotone = monotone && chain[t].first >= chain[t - 1].first &&
                     chain[t].second >= chain[t - 1].second;
      }
      if (!monotone || covered != cover.points.size()) {
        o.fail(id + " k=" + std::to_string(k) + ": chain cover is not a certificate");
        break;
      }
      if (static_cast<long>(cover.points.size()) < cover.lower_bound) {
        o.fail(id + " k=" + std::to_string(k) + ": below the lower bound");
        break;
      }
      long interior = 0;  // lattice points of the permutation itself (x >= 1)
      for (const auto& p : cover.points)
        if (p.first > 0) ++interior;
      long Ik = I[std::min<std::size_t>(k, I.size() - 1)];
      if (interior > Ik) {
        o.fail(id + " k=" + std::to_string(k) + ": exceeds the Greene invariant");
        break;
      }
    }
    if (!o.pass) break;
  }
  if (o.pass)
    o.detail = "50 frames, " + std::to_string(covers) + " covers certified";
  return o;
}

// --- 10: normalized arm/leg extrema along n = 2^k ----------------------------

Outcome criterion10() {
  Outcome o;
  auto alpha = AlphaSpec::e_stream();
  const long kmin = 1, kmax = 20;
  std::vector<double> na(kmax + 1), nl(kmax + 1);
  for (long k = kmin; k <= kmax; ++k) {
    long n = 1L << k;
    auto [arm, leg] = arm_leg(sos_permutation(n, alpha));
    na[k] = arm / std::sqrt(static_cast<double>(n));
    nl[k] = leg / std::sqrt(static_cast<double>(n));
  }
  // predicted scales: round(log2(1/delta_i)), split by convergent-index parity
  auto table = convergent_table(alpha, TableNeed::until_q_exceeds(Int(1) << 21));
  std::vector<long> even_scales, odd_scales;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    long k = std::lround(-std::log2(table.rows[i].delta.get_d()));
    (i % 2 == 0 ? even_scales : odd_scales).push_back(k);
  }
  auto matches = [](const std::vector<long>& scales, long k) {
    return std::any_of(scales.begin(), scales.end(),
                       [&](long s) { return std::abs(s - k) <= 1; });
  };
  // arm/sqrt(n) peaks and leg/sqrt(n) dips only at even-index scales; roles
  // swap at odd index
  long matched = 0;
  for (long k = kmin + 1; k <= kmax - 1; ++k) {
    struct Check {
      bool is_extremum;
      const std::vector<long>& scales;
      const char* what;
    };
    bool na_max = na[k] >= na[k - 1] && na[k] >= na[k + 1];
    bool na_min = na[k] <= na[k - 1] && na[k] <= na[k + 1];
    bool nl_max = nl[k] >= nl[k - 1] && nl[k] >= nl[k + 1];
    bool nl_min = nl[k] <= nl[k - 1] && nl[k] <= nl[k + 1];
    for (const Check& c : {Check{na_max, even_scales, "arm maximum"},
                           Check{na_min, odd_scales, "arm minimum"},
                           Check{nl_max, odd_scales, "leg maximum"},
                           Check{nl_min, even_scales, "leg minimum"}}) {
      if (!c.is_extremum) continue;
      if (matches(c.scales, k))
        ++matched;
      else
        o.fail(std::string(c.what) + " at k = " + std::to_string(k) +
               " has no nearby convergent scale");
    }
  }
  if (matched == 0) o.fail("no local extrema found");
  if (o.pass)
    o.detail = std::to_string(matched) + " convergent scales matched across n = 2..2^20";
  return o;
}

}  // namespace

int main() {
  using Fn = Outcome (*)();
  std::vector<std::pair<const char*, Fn>> criteria{
      {"w(7,3/10) permutation, shape, tableaux", criterion1},
      {"(51,71) slow-Euclid table and unit vectors", criterion2},
      {"(51,71) walk lengths vs oracle", criterion3},
      {"(210, 25/211) exact boundary", criterion4},
      {"e at n=4700 slopes and distance", criterion5},
      {"bound scan over alphas and sizes", criterion6},
      {"Greene oracle equivalence", criterion7},
      {"enumeration counts and three-gap steps", criterion8},
      {"k-path construction certificates", criterion9},
      {"normalized arm/leg extrema for e", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first
              << "): " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << "\n"
              << std::flush;
  }
  return failed;
}
