#include "sos/sosperm.hpp"

#include <algorithm>
#include <numeric>

namespace sos {

std::string FareyInterval::text() const {
  return left.get_num().get_str() + "/" + left.get_den().get_str() + "," +
         right.get_num().get_str() + "/" + right.get_den().get_str();
}

namespace {

Permutation sos_permutation_rational(long n, const Int& a, const Int& N) {
  std::vector<long> idx(n);
  std::iota(idx.begin(), idx.end(), 1L);
  if (N.fits_slong_p() && a.fits_slong_p()) {
    unsigned long long au = a.get_ui(), Nu = N.get_ui();
    std::vector<unsigned long long> vals(n + 1);
    for (long i = 1; i <= n; ++i)
      vals[i] = static_cast<unsigned long long>((static_cast<unsigned __int128>(au) * i) % Nu);
    std::stable_sort(idx.begin(), idx.end(), [&](long i, long j) { return vals[i] < vals[j]; });
  } else {
    std::vector<Int> vals(n + 1);
    for (long i = 1; i <= n; ++i) vals[i] = a * i % N;
    std::stable_sort(idx.begin(), idx.end(), [&](long i, long j) { return vals[i] < vals[j]; });
  }
  return Permutation{std::move(idx)};
}

}  // namespace

Permutation sos_permutation(long n, const AlphaSpec& alpha) {
  if (n < 1) throw std::domain_error("n must be positive");
  Rat proxy = proxy_convergent(alpha, n);
  return sos_permutation_rational(n, proxy.get_num(), proxy.get_den());
}

FareyInterval farey_interval(long n, const AlphaSpec& alpha) {
  if (n < 1) throw std::domain_error("n must be positive");
  if (alpha.is_rational() && alpha.rational_value().get_den() <= n) {
    // alpha is itself an order-n Farey fraction: half-open convention makes it
    // the left endpoint.
    Rat v = alpha.rational_value();
    const Int &a = v.get_num(), &b = v.get_den();
    Int inv;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int d0 = (b - inv) % b;  // d = -a^{-1} mod b
    Int d = d0 + b * ((n - d0) / b);
    if (d == 0) d = b;  // b == 1 cannot happen for alpha in (0,1); belt and braces
    Int c = (1 + a * d) / b;
    FareyInterval iv{v, make_rat(c, d), n, true};
    if (iv.right.get_den() * a - iv.right.get_num() * b != -1)
      throw std::logic_error("farey neighbor construction failed");
    return iv;
  }
  // Walk convergents of the fractional part until the next denominator would
  // exceed n, then take the matching semiconvergent as the other endpoint.
  Int pm1 = 1, qm1 = 0, p = 0, q = 1;
  std::size_t k = 0;
  while (alpha.has_coeff(k + 1)) {
    Int a = alpha.coeff(k + 1);
    if (qm1 + a * q > n) break;
    Int pn = pm1 + a * p, qn = qm1 + a * q;
    pm1 = p;
    qm1 = q;
    p = pn;
    q = qn;
    ++k;
  }
  Int t = (Int(n) - qm1) / q;
  Rat conv = make_rat(p, q);
  Rat semi = make_rat(pm1 + t * p, qm1 + t * q);
  FareyInterval iv;
  iv.order = n;
  iv.endpoint = false;
  if (k % 2 == 0) {  // even convergent sits below alpha
    iv.left = conv;
    iv.right = semi;
  } else {
    iv.left = semi;
    iv.right = conv;
  }
  Int det = iv.left.get_den() * iv.right.get_num() - iv.left.get_num() * iv.right.get_den();
  if (det != 1) throw std::logic_error("farey interval determinant is not 1");
  return iv;
}

ThreeGapReport check_three_gap(const Permutation& w, const FareyInterval& iv) {
  long n = iv.order;
  if (w.size() != n) throw std::domain_error("permutation length does not match interval order");
  long b = iv.left.get_den().get_si();
  long d = iv.right.get_den().get_si();
  ThreeGapReport rep;
  if (w.values[0] != b) {
    rep.ok = false;
    rep.first_violation = 0;
    rep.detail = "w(1) = " + std::to_string(w.values[0]) + ", expected b = " + std::to_string(b);
    return rep;
  }
  for (long i = 0; i + 1 < n; ++i) {
    long cur = w.values[i];
    long expected;
    if (cur <= n - b)
      expected = b;
    else if (cur >= d)
      expected = -d;
    else
      expected = b - d;
    if (w.values[i + 1] - cur != expected) {
      rep.ok = false;
      rep.first_violation = i + 1;
      rep.detail = "step at position " + std::to_string(i + 1) + " is " +
                   std::to_string(w.values[i + 1] - cur) + ", expected " + std::to_string(expected);
      return rep;
    }
  }
  return rep;
}

std::vector<std::pair<FareyInterval, Permutation>> enumerate_sos(long n, long cap) {
  if (n < 1) throw std::domain_error("n must be positive");
  if (n > cap) throw resource_error("enumerate_sos: n exceeds the enumeration cap");
  std::vector<std::pair<FareyInterval, Permutation>> out;
  // Farey neighbor recurrence over F_n, starting from 0/1, 1/n.
  Int a = 0, b = 1, c = 1, d = n;
  while (a < b) {
    FareyInterval iv{make_rat(a, b), make_rat(c, d), n, false};
    Int ma = a + c, mb = b + d;  // mediant: interior representative
    out.emplace_back(iv, sos_permutation_rational(n, ma, mb));
    Int k = (n + b) / d;
    Int na = k * c - a, nb = k * d - b;
    a = c;
    b = d;
    c = na;
    d = nb;
  }
  return out;
}

}  // namespace sos
