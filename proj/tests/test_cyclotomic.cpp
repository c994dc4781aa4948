#include <bincyc/arith.hpp>
#include <bincyc/cyclotomic.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

using namespace bincyc;

TEST_CASE("small cyclotomic polynomials", "[cyclotomic]") {
  CHECK(cyclotomic_coeffs(1).coeffs == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_coeffs(2).coeffs == std::vector<i64>{1, 1});
  CHECK(cyclotomic_coeffs(3).coeffs == std::vector<i64>{1, 1, 1});
  CHECK(cyclotomic_coeffs(6).coeffs == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_coeffs(12).coeffs == std::vector<i64>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_coeffs(15).coeffs ==
        std::vector<i64>{1, -1, 0, 1, -1, 1, 0, -1, 1});
}

TEST_CASE("degree equals the totient", "[cyclotomic]") {
  PrimeTable t = PrimeTable::build(400);
  for (u64 m = 2; m <= 400; ++m)
    REQUIRE(cyclotomic_coeffs(m).degree() == euler_phi(m, t));
}

TEST_CASE("coefficients are palindromic", "[cyclotomic]") {
  for (u64 m = 2; m <= 1000; ++m) {
    std::vector<i64> c = cyclotomic_coeffs(m).coeffs;
    std::vector<i64> r(c.rbegin(), c.rend());
    REQUIRE(c == r);
  }
}

TEST_CASE("the first coefficient outside {-1,0,1} appears at m = 105", "[cyclotomic]") {
  for (u64 m = 1; m < 105; ++m) {
    auto c = cyclotomic_coeffs(m).coeffs;
    REQUIRE(std::all_of(c.begin(), c.end(), [](i64 v) { return v >= -1 && v <= 1; }));
  }
  CHECK(cyclotomic_coeffs(105).coeffs[7] == -2);
}

TEST_CASE("nonzero coefficient counts", "[cyclotomic]") {
  CHECK(theta_direct(1) == 2);
  CHECK(theta_direct(6) == 3);
  CHECK(theta_direct(12) == 3);
  CHECK(theta_direct(15) == 7);
  CHECK(theta_direct(22) == 11);
  CHECK(theta_direct(35) == 17);
}

TEST_CASE("binomial route matches the Moebius route on semiprimes", "[cyclotomic]") {
  PrimeTable t = PrimeTable::build(1500);
  for (std::size_t i = 0; i < t.primes.size(); ++i)
    for (std::size_t j = i + 1; j < t.primes.size(); ++j) {
      u64 m = t.primes[i] * t.primes[j];
      if (m > 3000) break;
      REQUIRE(cyclotomic_coeffs(m).coeffs == cyclotomic_coeffs_mobius(m).coeffs);
    }
}

TEST_CASE("closed form for the pair count", "[cyclotomic]") {
  PrimePair pp = theta_carlitz(3, 5);
  CHECK(pp.inv_q_mod_p == 2);
  CHECK(pp.inv_p_mod_q == 2);
  CHECK(pp.theta == 7);
  CHECK(theta_carlitz(2, 3).theta == 3);
  // arguments commute
  CHECK(theta_carlitz(5, 3).theta == 7);

  // theta(2q) = q
  for (u64 q : {3ull, 11ull, 101ull, 997ull})
    CHECK(theta_carlitz(2, q).theta == q);

  const std::map<u64, u64> expected = {{6, 3},   {10, 5},  {14, 7},  {15, 7},
                                       {21, 9},  {22, 11}, {26, 13}, {33, 15},
                                       {34, 17}, {35, 17}};
  PrimeTable t = PrimeTable::build(40);
  for (std::size_t i = 0; i < t.primes.size(); ++i)
    for (std::size_t j = i + 1; j < t.primes.size(); ++j) {
      u64 p = t.primes[i], q = t.primes[j];
      auto it = expected.find(p * q);
      if (it != expected.end()) REQUIRE(theta_carlitz(p, q).theta == it->second);
    }
}

TEST_CASE("closed form agrees with the expansion", "[cyclotomic]") {
  PrimeTable t = PrimeTable::build(1000);
  for (std::size_t i = 0; i < t.primes.size(); ++i)
    for (std::size_t j = i + 1; j < t.primes.size(); ++j) {
      u64 p = t.primes[i], q = t.primes[j];
      if (p * q > 2000) break;
      REQUIRE(theta_carlitz(p, q).theta == theta_direct(p * q));
    }
}

TEST_CASE("structure check flags", "[cyclotomic]") {
  StructureCheck sc = binary_structure_check(13, 17);
  CHECK(sc.migotti_ok);
  CHECK(sc.bounds_ok);
  CHECK(sc.carlitz_ok);
  CHECK(sc.theta == theta_carlitz(13, 17).theta);
}

TEST_CASE("input validation", "[cyclotomic]") {
  CHECK_THROWS_AS(cyclotomic_coeffs(0), std::invalid_argument);
  CHECK_THROWS_AS(cyclotomic_coeffs(100001), capacity_error);
  CHECK_THROWS_AS(theta_carlitz(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(theta_carlitz(4, 7), std::domain_error);
  CHECK_THROWS_AS(theta_carlitz(7, 9), std::domain_error);
}
