#include "sos/schensted.hpp"

#include <algorithm>
#include <numeric>

namespace sos {

Permutation Permutation::from_values(std::vector<long> values) {
  std::vector<bool> seen(values.size() + 1, false);
  for (long v : values) {
    if (v < 1 || v > static_cast<long>(values.size()) || seen[v])
      throw std::domain_error("not a permutation of 1..n");
    seen[v] = true;
  }
  return Permutation{std::move(values)};
}

Permutation Permutation::inverse() const {
  std::vector<long> inv(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) inv[values[i] - 1] = static_cast<long>(i) + 1;
  return Permutation{std::move(inv)};
}

std::string Permutation::one_line() const {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(values[i]);
  }
  return s;
}

long Partition::total() const { return std::accumulate(rows.begin(), rows.end(), 0L); }

Partition Partition::conjugate() const {
  Partition c;
  if (rows.empty()) return c;
  c.rows.assign(rows[0], 0);
  for (long len : rows)
    for (long j = 0; j < len; ++j) ++c.rows[j];
  return c;
}

std::string Partition::text() const {
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(rows[i]);
  }
  return s;
}

TableauPair rsk(const Permutation& w) {
  TableauPair t;
  for (std::size_t step = 0; step < w.values.size(); ++step) {
    long x = w.values[step];
    std::size_t row = 0;
    while (true) {
      if (row == t.P.size()) {
        t.P.push_back({x});
        t.Q.push_back({static_cast<long>(step) + 1});
        break;
      }
      auto& r = t.P[row];
      auto it = std::upper_bound(r.begin(), r.end(), x);
      if (it == r.end()) {
        r.push_back(x);
        t.Q[row].push_back(static_cast<long>(step) + 1);
        break;
      }
      std::swap(*it, x);  // bump
      ++row;
    }
  }
  return t;
}

Partition shape(const Permutation& w) {
  // Same bumping as rsk() but rows only hold their current entries; the
  // recording side is never materialized.
  std::vector<std::vector<long>> rows;
  for (long x : w.values) {
    std::size_t row = 0;
    while (true) {
      if (row == rows.size()) {
        rows.push_back({x});
        break;
      }
      auto& r = rows[row];
      auto it = std::upper_bound(r.begin(), r.end(), x);
      if (it == r.end()) {
        r.push_back(x);
        break;
      }
      std::swap(*it, x);
      ++row;
    }
  }
  Partition p;
  for (const auto& r : rows) p.rows.push_back(static_cast<long>(r.size()));
  return p;
}

std::pair<long, long> arm_leg(const Permutation& w) {
  std::vector<long> inc, dec;  // patience pile tops
  for (long x : w.values) {
    auto it = std::lower_bound(inc.begin(), inc.end(), x);
    if (it == inc.end())
      inc.push_back(x);
    else
      *it = x;
    auto jt = std::lower_bound(dec.begin(), dec.end(), -x);
    if (jt == dec.end())
      dec.push_back(-x);
    else
      *jt = -x;
  }
  return {static_cast<long>(inc.size()), static_cast<long>(dec.size())};
}

namespace {

// Longest strictly increasing subsequence length of a (sub)sequence.
long lis(const std::vector<long>& v) {
  std::vector<long> tops;
  for (long x : v) {
    auto it = std::lower_bound(tops.begin(), tops.end(), x);
    if (it == tops.end())
      tops.push_back(x);
    else
      *it = x;
  }
  return static_cast<long>(tops.size());
}

}  // namespace

std::pair<long, long> greene_oracle(const Permutation& w, long k) {
  long n = w.size();
  if (n > 12) throw resource_error("greene_oracle is exhaustive; use shape() prefix sums for n > 12");
  // By Dilworth/Mirsky on the permutation poset, a subset is a union of k
  // increasing subsequences iff its longest decreasing subsequence has length
  // <= k; so I_k = max |T| over subsets with LDS(T) <= k, and dually for D_k.
  long best_i = 0, best_d = 0;
  std::vector<long> sub;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    sub.clear();
    for (long i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(w.values[i]);
    long size = static_cast<long>(sub.size());
    if (size <= best_i && size <= best_d) continue;
    std::vector<long> neg(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) neg[i] = -sub[i];
    if (size > best_i && lis(neg) <= k) best_i = size;
    if (size > best_d && lis(sub) <= k) best_d = size;
  }
  return {best_i, best_d};
}

std::string render_french(const std::vector<std::vector<long>>& rows) {
  std::string out;
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(rows[i][j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sos
