#include "sos/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace sos {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool is_square(const Int& d) {
  return mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

// Exact floor((m + sqrt(D))/Q) for nonsquare D > 0, Q != 0.
Int surd_floor(const Int& m, const Int& D, const Int& Q) {
  Int s = isqrt(D);
  if (Q > 0) return floor_div(m + s, Q);
  return floor_div(m + s + 1, Q);
}

}  // namespace

bool CoefficientSource::ensure(std::size_t i) {
  std::lock_guard<std::mutex> lock(mu_);
  while (cache_.size() <= i && !exhausted_) {
    if (!produce()) exhausted_ = true;
  }
  return cache_.size() > i;
}

Int CoefficientSource::coeff(std::size_t i) {
  if (!ensure(i)) throw std::domain_error("continued fraction terminated before requested index");
  return cache_[i];
}

bool CoefficientSource::has_coeff(std::size_t i) { return ensure(i); }

namespace {

class RationalSource : public CoefficientSource {
 public:
  explicit RationalSource(const Rat& frac) : p_(frac.get_num()), q_(frac.get_den()) {}

 protected:
  bool produce() override {
    if (cache_.empty()) {
      cache_.push_back(0);
      return true;
    }
    if (p_ == 0) return false;
    Int a = floor_div(q_, p_);
    cache_.push_back(a);
    Int np = q_ - a * p_;
    q_ = p_;
    p_ = np;
    return true;
  }

 private:
  Int p_, q_;  // remaining tail value p_/q_ in [0,1)
};

class ListSource : public CoefficientSource {
 public:
  ListSource(std::vector<Int> coeffs, std::size_t period) : coeffs_(std::move(coeffs)), period_(period) {}

 protected:
  bool produce() override {
    std::size_t i = cache_.size();
    if (i < coeffs_.size()) {
      cache_.push_back(i == 0 ? Int(0) : coeffs_[i]);
      return true;
    }
    if (period_ == 0) return false;
    cache_.push_back(coeffs_[coeffs_.size() - period_ + (i - coeffs_.size()) % period_]);
    return true;
  }

 private:
  std::vector<Int> coeffs_;  // fractional-part coefficients, coeffs_[0] ignored
  std::size_t period_;
};

// e - 2 = [0; 1,2,1,1,4,1,1,6,...]: a_i = 2(i+1)/3 when i = 2 mod 3, else 1.
class ESource : public CoefficientSource {
 protected:
  bool produce() override {
    std::size_t i = cache_.size();
    if (i == 0)
      cache_.push_back(0);
    else if (i % 3 == 2)
      cache_.push_back(Int(2 * (i + 1) / 3));
    else
      cache_.push_back(1);
    return true;
  }
};

class SurdSource : public CoefficientSource {
 public:
  // Value (m0 + sqrt(D))/Q0 in (0,1), with Q0 | D - m0^2.
  SurdSource(Int m0, Int D, Int Q0) : m_(std::move(m0)), D_(std::move(D)), Q_(std::move(Q0)) {}

 protected:
  bool produce() override {
    if (cache_.empty()) {
      cache_.push_back(0);
      return true;
    }
    // Invert the tail: 1/((m+sqrt(D))/Q) = Q(sqrt(D)-m)/(D-m^2).
    Int m = -m_;
    Int Q = (D_ - m_ * m_) / Q_;
    Int a = surd_floor(m, D_, Q);
    cache_.push_back(a);
    m_ = m - a * Q;
    Q_ = Q;
    return true;
  }

 private:
  Int m_, D_, Q_;  // current tail value (m + sqrt(D))/Q in [0,1)
};

}  // namespace

AlphaSpec AlphaSpec::from_rational(const Rat& value) {
  Int a0 = floor_rat(value);
  Rat frac = value - Rat(a0);
  if (frac == 0) throw std::domain_error("alpha is an integer: fractional part must lie in (0,1)");
  AlphaSpec a;
  a.kind_ = Kind::rational;
  a.raw_a0_ = a0;
  a.rational_value_ = frac;
  a.source_ = std::make_shared<RationalSource>(frac);
  a.text_ = value.get_num().get_str() + "/" + value.get_den().get_str();
  return a;
}

AlphaSpec AlphaSpec::e_stream() {
  AlphaSpec a;
  a.kind_ = Kind::stream;
  a.raw_a0_ = 2;
  a.source_ = std::make_shared<ESource>();
  a.text_ = "e";
  return a;
}

AlphaSpec AlphaSpec::from_coefficients(std::vector<Int> coeffs, std::size_t period_len) {
  if (coeffs.size() < 2) throw std::domain_error("coefficient list needs a_1: value must be non-integer");
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (coeffs[i] <= 0) throw std::domain_error("continued-fraction coefficients a_i (i>=1) must be positive");
  if (period_len >= coeffs.size()) throw std::domain_error("periodic tail cannot include a_0");
  AlphaSpec a;
  a.kind_ = Kind::stream;
  a.raw_a0_ = coeffs[0];
  std::string t = "cf:[" + coeffs[0].get_str() + ";";
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (i > 1) t += ",";
    t += coeffs[i].get_str();
  }
  t += "]";
  if (period_len > 0) t += ";periodic:" + std::to_string(period_len);
  a.text_ = t;
  a.source_ = std::make_shared<ListSource>(std::move(coeffs), period_len);
  return a;
}

AlphaSpec AlphaSpec::surd(const Int& p, const Int& d, const Int& q) {
  if (q <= 0) throw std::domain_error("surd denominator must be positive");
  if (d <= 0 || is_square(d)) throw std::domain_error("surd radicand must be a positive non-square");
  Int a0 = floor_div(p + isqrt(d), q);
  // Scale so Q | D - m^2: ((p-a0*q)*q + sqrt(d*q^2)) / q^2.
  Int m0 = (p - a0 * q) * q;
  Int D = d * q * q;
  Int Q0 = q * q;
  AlphaSpec a;
  a.kind_ = Kind::surd;
  a.raw_a0_ = a0;
  a.source_ = std::make_shared<SurdSource>(m0, D, Q0);
  a.text_ = "surd:(" + p.get_str() + "+sqrt(" + d.get_str() + "))/" + q.get_str();
  return a;
}

AlphaSpec AlphaSpec::parse(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw std::domain_error("empty alpha spec");
  if (text == "e") return e_stream();
  if (text.rfind("cf:[", 0) == 0) {
    auto close = text.find(']');
    if (close == std::string::npos) throw std::domain_error("unterminated cf list");
    std::string body = text.substr(4, close - 4);
    std::string tail = text.substr(close + 1);
    std::size_t period = 0;
    if (!tail.empty()) {
      if (tail.rfind(";periodic:", 0) != 0) throw std::domain_error("bad cf suffix: " + tail);
      period = std::stoul(tail.substr(10));
    }
    auto semi = body.find(';');
    if (semi == std::string::npos) throw std::domain_error("cf list needs 'a0;a1,...'");
    std::vector<Int> coeffs;
    coeffs.emplace_back(body.substr(0, semi));
    std::string rest = body.substr(semi + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      coeffs.emplace_back(rest.substr(pos, comma - pos));
      pos = comma + 1;
    }
    return from_coefficients(std::move(coeffs), period);
  }
  if (text.rfind("surd:(", 0) == 0) {
    // surd:(p+sqrt(d))/q
    auto sq = text.find("+sqrt(", 6);
    if (sq == std::string::npos) throw std::domain_error("bad surd syntax: " + raw);
    Int p(text.substr(6, sq - 6));
    auto close = text.find("))/", sq);
    if (close == std::string::npos) throw std::domain_error("bad surd syntax: " + raw);
    Int d(text.substr(sq + 6, close - sq - 6));
    Int q(text.substr(close + 3));
    return surd(p, d, q);
  }
  auto slash = text.find('/');
  if (slash == std::string::npos) throw std::domain_error("unrecognized alpha spec: " + raw);
  Rat value(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  value.canonicalize();
  return from_rational(value);
}

bool AlphaSpec::is_rational() const { return kind_ == Kind::rational; }

Rat AlphaSpec::rational_value() const {
  if (kind_ != Kind::rational) throw std::domain_error("alpha is not stored as a rational");
  return rational_value_;
}

Int AlphaSpec::coeff(std::size_t i) const { return source_->coeff(i); }

bool AlphaSpec::has_coeff(std::size_t i) const { return source_->has_coeff(i); }

int AlphaSpec::compare(const Rat& r) const {
  if (kind_ == Kind::rational) return cmp(rational_value_, r);
  Int pm1 = 1, qm1 = 0, p = 0, q = 1;  // h_{-1}, h_0 with a_0 = 0
  for (std::size_t i = 0; i < 100000; ++i) {
    if (!source_->has_coeff(i + 1)) return cmp(Rat(p, q), r);  // finite stream: exact value
    Int a = source_->coeff(i + 1);
    Int pn = pm1 + a * p, qn = qm1 + a * q;
    pm1 = p;
    qm1 = q;
    p = pn;
    q = qn;
    if (!source_->has_coeff(i + 2)) return cmp(make_rat(p, q), r);  // expansion ends here
    // alpha lies strictly between consecutive convergents h_i and h_{i+1}.
    Rat lo = make_rat(pm1, qm1), hi = make_rat(p, q);
    if (lo > hi) std::swap(lo, hi);
    if (r <= lo) return 1;
    if (r >= hi) return -1;
  }
  throw std::runtime_error("alpha comparison did not resolve; value too close to the query");
}

std::string AlphaSpec::text() const { return text_; }

TableNeed TableNeed::until_q_exceeds(const Int& n) {
  TableNeed t;
  t.kind = Kind::q_exceeds;
  t.q_bound = n;
  return t;
}
TableNeed TableNeed::until_delta_at_most(const Rat& eps) {
  TableNeed t;
  t.kind = Kind::delta_at_most;
  t.delta_bound = eps;
  return t;
}
TableNeed TableNeed::until_index(std::size_t i) {
  TableNeed t;
  t.kind = Kind::index_at_least;
  t.index = i;
  return t;
}
TableNeed TableNeed::full() {
  TableNeed t;
  t.kind = Kind::full;
  return t;
}

namespace {

// delta_i <= eps, decided exactly from the side of the convergent.
bool delta_within(const AlphaSpec& alpha, const Int& p, const Int& q, std::size_t i, const Rat& eps) {
  Rat conv = make_rat(p, q);
  if (i % 2 == 0) return alpha.compare(conv + eps) <= 0;  // alpha - p/q <= eps
  return alpha.compare(conv - eps) >= 0;                  // p/q - alpha <= eps
}

}  // namespace

ConvergentTable convergent_table(const AlphaSpec& alpha, const TableNeed& need) {
  ConvergentTable table;
  std::vector<Int> ps{1, 0}, qs{0, 1};  // h_{-1} = 1/0, h_0 = 0/1 (a_0 = 0)
  std::vector<Int> coeffs{0};
  bool terminated = false;
  std::size_t k = 0;  // last filled simple index
  auto satisfied = [&](std::size_t i) {
    switch (need.kind) {
      case TableNeed::Kind::q_exceeds:
        return qs[i + 1] > need.q_bound;
      case TableNeed::Kind::delta_at_most:
        return delta_within(alpha, ps[i + 1], qs[i + 1], i, need.delta_bound);
      case TableNeed::Kind::index_at_least:
        return i >= need.index;
      case TableNeed::Kind::full:
        return false;
    }
    return false;
  };
  while (!satisfied(k)) {
    if (!alpha.has_coeff(k + 1)) {
      terminated = true;
      break;
    }
    if (need.kind == TableNeed::Kind::full && k > 1000000)
      throw std::domain_error("full expansion requested for a non-terminating alpha");
    Int a = alpha.coeff(k + 1);
    coeffs.push_back(a);
    ps.push_back(ps[k] + a * ps[k + 1]);
    qs.push_back(qs[k] + a * qs[k + 1]);
    ++k;
  }
  if (need.kind == TableNeed::Kind::full && !terminated && !alpha.has_coeff(k + 1)) terminated = true;

  // Reference value the deltas are measured against.
  Rat ref;
  bool approx = false;
  if (alpha.is_rational()) {
    ref = alpha.rational_value();
  } else {
    Int rp0 = ps[k], rq0 = qs[k], rp1 = ps[k + 1], rq1 = qs[k + 1];
    std::size_t extra = 0;
    std::size_t idx = k;
    while (extra < 8 && alpha.has_coeff(idx + 1)) {
      Int a = alpha.coeff(idx + 1);
      Int pn = rp0 + a * rp1, qn = rq0 + a * rq1;
      rp0 = rp1;
      rq0 = rq1;
      rp1 = pn;
      rq1 = qn;
      ++idx;
      ++extra;
    }
    approx = extra > 0;
    ref = make_rat(rp1, rq1);
  }

  table.coefficients = coeffs;
  table.terminated = terminated;
  table.delta_approx = approx;
  for (std::size_t i = 0; i <= k; ++i) {
    Rat diff = ref - make_rat(ps[i + 1], qs[i + 1]);
    ConvergentRow row{ps[i + 1], qs[i + 1], abs(diff), sgn(diff)};
    table.rows.push_back(row);
  }
  for (std::size_t i = 1; i <= k; ++i) {
    for (Int j = 1; j <= coeffs[i]; ++j) {
      Int pij = ps[i - 1] + j * ps[i];
      Int qij = qs[i - 1] + j * qs[i];
      table.intermediates.push_back({i, j, pij, qij, abs(ref - make_rat(pij, qij))});
    }
  }
  return table;
}

Rat proxy_convergent(const AlphaSpec& alpha, const Int& n, int parity) {
  if (alpha.is_rational() && alpha.rational_value().get_den() > n) return alpha.rational_value();
  Int pm1 = 1, qm1 = 0, p = 0, q = 1;
  std::size_t i = 0;
  while (true) {
    if (q > n && (parity < 0 || i % 2 == static_cast<std::size_t>(parity))) return make_rat(p, q);
    if (!alpha.has_coeff(i + 1)) return make_rat(p, q);  // terminated rational: exact value
    Int a = alpha.coeff(i + 1);
    Int pn = pm1 + a * p, qn = qm1 + a * q;
    pm1 = p;
    qm1 = q;
    p = pn;
    q = qn;
    ++i;
  }
}

std::vector<Int> cf_expand(const AlphaSpec& alpha, std::size_t depth) {
  std::vector<Int> out;
  if (depth == 0) return out;
  out.push_back(alpha.raw_a0());
  for (std::size_t i = 1; i < depth && alpha.has_coeff(i); ++i) out.push_back(alpha.coeff(i));
  return out;
}

std::vector<Int> cf_expand(const Int& a, const Int& b, std::size_t depth) {
  if (a < 1 || a >= b) throw std::domain_error("cf_expand requires 1 <= a < b");
  if (gcd(a, b) != 1) throw std::domain_error("cf_expand requires gcd(a,b) = 1");
  return cf_expand(AlphaSpec::from_rational(make_rat(a, b)), depth);
}

SlowEuclidTrace slow_euclid(const Int& a, const Int& b) {
  if (a < 1 || a >= b) throw std::domain_error("slow_euclid requires 1 <= a < b");
  if (gcd(a, b) != 1) throw std::domain_error("slow_euclid requires gcd(a,b) = 1");
  std::vector<Int> coeffs = cf_expand(a, b, std::size_t(-1));  // [0; a_1..a_k]
  SlowEuclidTrace trace;
  trace.rows.push_back({-1, 0, b, 1, 0});
  trace.rows.push_back({0, 0, a, 0, 1});
  trace.simple_rows = {0, 1};
  SlowEuclidRow prev2 = trace.rows[0], prev = trace.rows[1];
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    trace.block_sizes.push_back(coeffs[i]);
    SlowEuclidRow row;
    for (Int j = 1; j <= coeffs[i]; ++j) {
      row = {static_cast<long>(i), j, prev2.r - j * prev.r, prev2.s - j * prev.s, prev2.t - j * prev.t};
      trace.rows.push_back(row);
    }
    trace.simple_rows.push_back(trace.rows.size() - 1);
    prev2 = prev;
    prev = row;
  }
  return trace;
}

}  // namespace sos
