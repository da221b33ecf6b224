#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sos/rational.hpp"

namespace sos {

// Memoized producer of continued-fraction coefficients of a number in [0,1),
// i.e. with a_0 = 0 enforced. Thread-safe; values never change once produced.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;

  // Coefficient a_i (a_0 == 0). Throws std::domain_error past the end of a
  // terminating (rational) expansion.
  Int coeff(std::size_t i);
  bool has_coeff(std::size_t i);

 protected:
  // Appends the next coefficient to cache_, or returns false if the expansion
  // has ended. cache_[0] must become 0 on the first call.
  virtual bool produce() = 0;
  std::vector<Int> cache_;

 private:
  bool ensure(std::size_t i);
  bool exhausted_ = false;
  std::mutex mu_;
};

// A specification of alpha in (0,1): an exact rational, a coefficient stream
// (finite, eventually periodic, or the built-in e pattern), or a quadratic
// surd (p + sqrt(d))/q. Integer parts are reduced away: computations see the
// fractional part, while raw_a0() keeps the original integer part for display.
class AlphaSpec {
 public:
  enum class Kind { rational, stream, surd };

  // Grammar: "p/q" | "cf:[a0;a1,a2,...]" (optional ";periodic:k" suffix,
  // meaning the last k coefficients repeat forever) | "e" |
  // "surd:(p+sqrt(d))/q".
  static AlphaSpec parse(const std::string& text);
  static AlphaSpec from_rational(const Rat& value);
  static AlphaSpec e_stream();
  // Finite or eventually periodic coefficient list; period_len == 0 means
  // finite (a rational value), otherwise the last period_len entries repeat.
  static AlphaSpec from_coefficients(std::vector<Int> coeffs, std::size_t period_len = 0);
  static AlphaSpec surd(const Int& p, const Int& d, const Int& q);

  Kind kind() const { return kind_; }
  bool is_rational() const;
  // Fractional-part value; rational kind only.
  Rat rational_value() const;
  const Int& raw_a0() const { return raw_a0_; }

  // Coefficients of the fractional part (so coeff(0) == 0).
  Int coeff(std::size_t i) const;
  bool has_coeff(std::size_t i) const;

  // Sign of (fractional part of alpha) - r, computed exactly.
  int compare(const Rat& r) const;

  // Round-trippable textual form.
  std::string text() const;

 private:
  AlphaSpec() = default;
  Kind kind_ = Kind::rational;
  Int raw_a0_ = 0;
  Rat rational_value_;  // fractional part; rational kind only
  std::string text_;
  std::shared_ptr<CoefficientSource> source_;
};

struct ConvergentRow {
  Int p, q;
  Rat delta;  // |alpha - p/q| (exact, or vs. the deep proxy for streams/surds)
  int side;   // sign of alpha - p/q: -1 below, +1 above, 0 exact
};

struct IntermediateRow {
  std::size_t i;  // block index
  Int j;          // 1..a_i
  Int p, q;
  Rat delta;
};

struct ConvergentTable {
  std::vector<Int> coefficients;  // a_0..a_k of the fractional part (a_0 == 0)
  std::vector<ConvergentRow> rows;
  std::vector<IntermediateRow> intermediates;
  bool terminated = false;    // rational expansion ended before the predicate held
  bool delta_approx = false;  // deltas measured against a deep proxy convergent
};

// Stopping predicate for convergent_table.
struct TableNeed {
  enum class Kind { q_exceeds, delta_at_most, index_at_least, full };
  Kind kind;
  Int q_bound;
  Rat delta_bound;
  std::size_t index = 0;

  static TableNeed until_q_exceeds(const Int& n);
  static TableNeed until_delta_at_most(const Rat& eps);
  static TableNeed until_index(std::size_t i);
  static TableNeed full();  // rational alpha only: run to termination
};

std::vector<Int> cf_expand(const AlphaSpec& alpha, std::size_t depth);
std::vector<Int> cf_expand(const Int& a, const Int& b, std::size_t depth);

ConvergentTable convergent_table(const AlphaSpec& alpha, const TableNeed& need);

// Deep proxy convergent p_m/q_m with q_m > n; if parity is 0 or 1, m is
// additionally required to have that parity. Exact for rational alpha whose
// denominator already exceeds n (alpha itself is returned).
Rat proxy_convergent(const AlphaSpec& alpha, const Int& n, int parity = -1);

struct SlowEuclidRow {
  long i;  // block index; -1 and 0 are the initialization rows
  Int j;   // step within block (0 for the initialization rows)
  Int r, s, t;
};

struct SlowEuclidTrace {
  std::vector<SlowEuclidRow> rows;
  std::vector<Int> block_sizes;          // equal the cf coefficients a_1..a_k
  std::vector<std::size_t> simple_rows;  // row indices with j == a_i (plus both init rows)
};

SlowEuclidTrace slow_euclid(const Int& a, const Int& b);

}  // namespace sos
