#pragma once

#include <string>
#include <vector>

#include "sos/rational.hpp"

namespace sos {

struct Permutation {
  std::vector<long> values;  // one-line notation, a permutation of 1..n

  long size() const { return static_cast<long>(values.size()); }
  Permutation inverse() const;
  std::string one_line() const;  // space-separated
  static Permutation from_values(std::vector<long> values);  // validates
};

struct Partition {
  std::vector<long> rows;  // weakly decreasing, positive

  long total() const;
  Partition conjugate() const;
  std::string text() const;  // comma-separated row lengths
};

struct TableauPair {
  // rows[0] is the bottom row (French convention; rendering is a display
  // choice, storage is just row lists).
  std::vector<std::vector<long>> P, Q;
};

TableauPair rsk(const Permutation& w);

// Shape of the insertion tableau, via bump bookkeeping only (no recording
// tableau); handles large n.
Partition shape(const Permutation& w);

// (longest increasing, longest decreasing) by patience sorting, O(n log n).
std::pair<long, long> arm_leg(const Permutation& w);

// Exhaustive-search Greene invariants (I_k, D_k); guarded at n <= 12.
std::pair<long, long> greene_oracle(const Permutation& w, long k);

// French-notation rendering, bottom row last.
std::string render_french(const std::vector<std::vector<long>>& rows);

}  // namespace sos
