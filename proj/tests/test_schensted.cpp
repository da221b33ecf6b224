#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "sos/schensted.hpp"
#include "sos/sosperm.hpp"

using namespace sos;

namespace {

Permutation perm(std::initializer_list<long> v) { return Permutation::from_values(std::vector<long>(v)); }

Permutation random_perm(long n, std::mt19937& rng) {
  std::vector<long> v(n);
  std::iota(v.begin(), v.end(), 1L);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation{std::move(v)};
}

}  // namespace

TEST_CASE("permutation basics") {
  auto w = perm({7, 4, 1, 5, 2, 6, 3});
  CHECK(w.inverse().one_line() == "3 5 7 2 4 6 1");
  CHECK(w.inverse().inverse().values == w.values);
  CHECK_THROWS_AS(Permutation::from_values({1, 1, 2}), std::domain_error);
  CHECK_THROWS_AS(Permutation::from_values({0, 1}), std::domain_error);
}

TEST_CASE("rsk of the worked example") {
  auto t = rsk(perm({7, 4, 1, 5, 2, 6, 3}));
  REQUIRE(t.P.size() == 3);
  CHECK(t.P[0] == std::vector<long>{1, 2, 3});
  CHECK(t.P[1] == std::vector<long>{4, 5, 6});
  CHECK(t.P[2] == std::vector<long>{7});
  CHECK(t.Q[0] == std::vector<long>{1, 4, 6});
  CHECK(t.Q[1] == std::vector<long>{2, 5, 7});
  CHECK(t.Q[2] == std::vector<long>{3});
}

TEST_CASE("rsk degenerate shapes") {
  auto id = rsk(perm({1, 2, 3, 4, 5}));
  CHECK(id.P.size() == 1);
  CHECK(id.P[0].size() == 5);
  auto rev = rsk(perm({5, 4, 3, 2, 1}));
  CHECK(rev.P.size() == 5);
  for (const auto& r : rev.P) CHECK(r.size() == 1);
}

TEST_CASE("shape matches rsk and worked example") {
  auto w = perm({7, 4, 1, 5, 2, 6, 3});
  CHECK(shape(w).text() == "3,3,1");
  CHECK(shape(w).rows == std::vector<long>{3, 3, 1});
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_perm(std::uniform_int_distribution<long>(1, 40)(rng), rng);
    auto t = rsk(p);
    Partition from_rsk;
    for (const auto& r : t.P) from_rsk.rows.push_back(static_cast<long>(r.size()));
    CHECK(shape(p).rows == from_rsk.rows);
    CHECK(shape(p).total() == p.size());
  }
}

TEST_CASE("partition conjugate is an involution") {
  Partition l{{3, 3, 1}};
  CHECK(l.conjugate().rows == std::vector<long>{3, 2, 2});
  CHECK(l.conjugate().conjugate().rows == l.rows);
}

TEST_CASE("arm_leg") {
  CHECK(arm_leg(perm({7, 4, 1, 5, 2, 6, 3})) == std::pair<long, long>{3, 3});
  CHECK(arm_leg(perm({1, 2, 3, 4})) == std::pair<long, long>{4, 1});
  // the multiples sequence 51*i mod 71: longest monotone runs 12 / 9; the
  // corner-to-corner lattice walk lengths (13, 9) add the origin step and are
  // covered by the lattice-length tests
  std::vector<long> v;
  for (long i = 1; i <= 71; ++i) v.push_back(51 * i % 71 + 1);
  CHECK(arm_leg(Permutation::from_values(v)) == std::pair<long, long>{12, 9});
}

TEST_CASE("arm_leg equals shape extremes") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_perm(std::uniform_int_distribution<long>(1, 200)(rng), rng);
    auto s = shape(p);
    auto [a, l] = arm_leg(p);
    CHECK(a == s.rows[0]);
    CHECK(l == static_cast<long>(s.rows.size()));
  }
}

TEST_CASE("shape is inverse-invariant") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_perm(std::uniform_int_distribution<long>(1, 300)(rng), rng);
    CHECK(shape(p).rows == shape(p.inverse()).rows);
  }
}

TEST_CASE("greene oracle on the worked example") {
  auto w = perm({7, 4, 1, 5, 2, 6, 3});
  CHECK(greene_oracle(w, 1) == std::pair<long, long>{3, 3});
  CHECK(greene_oracle(w, 2) == std::pair<long, long>{6, 5});
  CHECK(greene_oracle(w, 3) == std::pair<long, long>{7, 7});
  CHECK(greene_oracle(perm({1, 2, 3}), 1).first == 3);
  CHECK(greene_oracle(perm({3, 2, 1}), 1).second == 3);
  std::mt19937 rng(1);
  CHECK_THROWS_AS(greene_oracle(random_perm(13, rng), 1), resource_error);
}

TEST_CASE("greene oracle equals shape prefix sums on random permutations") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_perm(std::uniform_int_distribution<long>(1, 9)(rng), rng);
    auto s = shape(p);
    auto c = s.conjugate();
    for (long k = 1; k <= p.size(); ++k) {
      long ik = 0, dk = 0;
      for (long i = 0; i < std::min<long>(k, s.rows.size()); ++i) ik += s.rows[i];
      for (long i = 0; i < std::min<long>(k, c.rows.size()); ++i) dk += c.rows[i];
      CHECK(greene_oracle(p, k) == std::pair<long, long>{ik, dk});
    }
  }
}

TEST_CASE("french rendering lists top row first") {
  auto t = rsk(perm({7, 4, 1, 5, 2, 6, 3}));
  CHECK(render_french(t.P) == "7\n4 5 6\n1 2 3\n");
}
