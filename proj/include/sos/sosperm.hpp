#pragma once

#include <string>
#include <vector>

#include "sos/numeric.hpp"
#include "sos/schensted.hpp"

namespace sos {

struct FareyInterval {
  Rat left, right;  // consecutive order-n Farey fractions, left <= alpha < right
  long order = 0;
  bool endpoint = false;  // alpha itself is an order-n Farey fraction (the left endpoint)

  Rat width() const { return right - left; }
  Rat mediant() const {
    return make_rat(left.get_num() + right.get_num(), left.get_den() + right.get_den());
  }
  std::string text() const;  // "a/b,c/d"
};

// The sorting permutation of (alpha*i mod 1 : i = 1..n). Ties (rational alpha
// with denominator <= n) resolve by index, matching the lexicographically
// first choice.
Permutation sos_permutation(long n, const AlphaSpec& alpha);

// The order-n Farey interval [a/b, c/d) containing alpha.
FareyInterval farey_interval(long n, const AlphaSpec& alpha);

struct ThreeGapReport {
  bool ok = true;
  long first_violation = 0;  // position i of the first bad step (0 = the w(1) check)
  std::string detail;
};

// Checks w(1) = b and the three-case step recurrence with the interval's
// denominators b, d.
ThreeGapReport check_three_gap(const Permutation& w, const FareyInterval& iv);

// All order-n Farey intervals with their permutations (from the mediant),
// sorted by left endpoint. Guarded by cap.
std::vector<std::pair<FareyInterval, Permutation>> enumerate_sos(long n, long cap = 3000);

}  // namespace sos
