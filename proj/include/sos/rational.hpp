#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sos {

// Exact arithmetic substrate. All core geometry runs on these; floating point
// only ever appears in output layers.
using Int = mpz_class;
using Rat = mpq_class;

// Raised when an input exceeds an explicit resource guard (enumeration caps,
// oracle size limits, ...), as opposed to being mathematically invalid.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int pow10(unsigned digits) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  return p;
}

// Formats v/10^digits as a plain decimal string.
inline std::string scaled_decimal(Int v, unsigned digits) {
  std::string sign;
  if (v < 0) {
    sign = "-";
    v = -v;
  }
  std::string s = v.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits == 0) return sign + s;
  return sign + s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

// Round-to-nearest decimal rendering (ties away from zero).
inline std::string decimal_string(const Rat& r, unsigned digits) {
  Int num = r.get_num() * pow10(digits);
  const Int& den = r.get_den();
  Int q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * abs(rem) >= den) q += (num < 0) ? -1 : 1;
  return scaled_decimal(q, digits);
}

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Correctly rounded decimal expansion of sqrt(r) at the given digit count.
// Used only by reporting layers (Thm-1.4-style normalized extrema).
inline std::string sqrt_decimal(const Rat& r, unsigned digits) {
  if (r < 0) throw std::domain_error("sqrt of negative rational");
  const Int& p = r.get_num();
  const Int& q = r.get_den();
  Int scale = pow10(digits);
  // sqrt(p/q)*10^d = sqrt(A)/q with A = p*q*10^(2d); round sqrt(A)/q to nearest.
  Int A = p * q * scale * scale;
  Int s = isqrt(A);
  Int c = (2 * s + q) / (2 * q);
  auto too_big = [&](const Int& m) {
    if (m == 0) return false;
    Int t = 2 * m - 1;
    return t * t * q * q > 4 * A;
  };
  while (!too_big(c + 1)) ++c;
  while (c > 0 && too_big(c)) --c;
  return scaled_decimal(c, digits);
}

}  // namespace sos
