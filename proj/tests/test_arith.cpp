#include <bincyc/arith.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

using namespace bincyc;

namespace {

std::vector<u64> trial_division_primes(u64 limit) {
  std::vector<u64> out;
  for (u64 n = 2; n <= limit; ++n) {
    bool prime = true;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("sieve produces the exact prime list", "[arith]") {
  CHECK(PrimeTable::build(2).primes == std::vector<u64>{2});
  CHECK(PrimeTable::build(10).primes == std::vector<u64>{2, 3, 5, 7});
  CHECK(PrimeTable::build(11).primes == std::vector<u64>{2, 3, 5, 7, 11});

  // exhaustive against trial division, with a segment size small enough to
  // exercise several segment boundaries
  PrimeTable t = PrimeTable::build(100000, 1 << 10);
  CHECK(t.primes == trial_division_primes(100000));
  CHECK(t.primes.size() == 9592);
}

TEST_CASE("prime count at one million", "[arith]") {
  CHECK(PrimeTable::build(1000000).primes.size() == 78498);
}

TEST_CASE("prime table membership and index helpers", "[arith]") {
  PrimeTable t = PrimeTable::build(100);
  CHECK(t.contains(97));
  CHECK_FALSE(t.contains(91));
  CHECK(t.primes[t.lower_index(10)] == 11);
  CHECK(t.primes[t.lower_index(11)] == 11);
  CHECK(t.lower_index(101) == t.primes.size());
}

TEST_CASE("sieve limit guard", "[arith]") {
  CHECK_THROWS_AS(PrimeTable::build((u64(1) << 40) + 1), capacity_error);
  CHECK_THROWS_AS(PrimeTable::build(1), std::invalid_argument);
}

TEST_CASE("primes in a range", "[arith]") {
  CHECK(primes_in_range(90, 100) == std::vector<u64>{97});
  CHECK(primes_in_range(15, 15).empty());
  CHECK(primes_in_range(97, 97) == std::vector<u64>{97});
  CHECK(primes_in_range(0, 10) == std::vector<u64>{2, 3, 5, 7});

  // same set as the sieve, segmented path included
  PrimeTable t = PrimeTable::build(10000);
  CHECK(primes_in_range(2, 10000, 1 << 8) == t.primes);

  CHECK_THROWS_AS(primes_in_range(2, 2 + (u64(1) << 32) + 1), capacity_error);
  CHECK(primes_in_range(50, 40).empty());
}

TEST_CASE("modular inverse on known values", "[arith]") {
  CHECK(mod_inverse(3, 5) == 2);
  CHECK(mod_inverse(10, 17) == 12);
  CHECK(mod_inverse(1, 2) == 1);
  CHECK(mod_inverse(1, 999983) == 1);
  // reduction of k mod ell happens first
  CHECK(mod_inverse(22, 5) == mod_inverse(2, 5));
  CHECK_THROWS_AS(mod_inverse(6, 9), std::domain_error);
  CHECK_THROWS_AS(mod_inverse(0, 7), std::domain_error);
  CHECK_THROWS_AS(mod_inverse(5, 1), std::invalid_argument);
}

TEST_CASE("modular inverse random property", "[arith]") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<u64> ell_dist(2, u64(1) << 61);
  int done = 0;
  while (done < 100000) {
    u64 ell = ell_dist(rng);
    u64 k = rng() % ell;
    if (k == 0 || std::gcd(k, ell) != 1) continue;
    u64 inv = mod_inverse(k, ell);
    REQUIRE(inv >= 1);
    REQUIRE(inv < ell);
    REQUIRE(static_cast<u64>((static_cast<u128>(k) * inv) % ell) == 1);
    ++done;
  }
}

TEST_CASE("complement identity for inverse pairs", "[arith]") {
  // p \bar{p}_q + q \bar{q}_p = pq + 1 for distinct primes
  PrimeTable t = PrimeTable::build(500);
  for (std::size_t i = 0; i < t.primes.size(); ++i)
    for (std::size_t j = i + 1; j < t.primes.size(); ++j) {
      u64 p = t.primes[i], q = t.primes[j];
      u64 ip = mod_inverse(p % q, q);
      u64 iq = mod_inverse(q % p, p);
      REQUIRE(static_cast<u128>(p) * ip + static_cast<u128>(q) * iq ==
              static_cast<u128>(p) * q + 1);
    }
}

TEST_CASE("factorization and certification", "[arith]") {
  PrimeTable t = PrimeTable::build(1000);
  auto fs = factorize(5184, t);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].prime == 2);
  CHECK(fs[0].exponent == 6);
  CHECK(fs[1].prime == 3);
  CHECK(fs[1].exponent == 4);

  // residual cofactor within limit^2 is certified prime
  auto fp = factorize(999983, t);
  REQUIRE(fp.size() == 1);
  CHECK(fp[0].prime == 999983);

  // residual beyond limit^2 cannot be certified
  PrimeTable tiny = PrimeTable::build(100);
  CHECK_THROWS_AS(factorize(u64(10007) * 10009, tiny), capacity_error);
  CHECK_THROWS_AS(factorize(0, t), std::invalid_argument);
}

TEST_CASE("euler phi", "[arith]") {
  PrimeTable t = PrimeTable::build(10000);
  CHECK(euler_phi(1, t) == 1);
  CHECK(euler_phi(15, t) == 8);
  CHECK(euler_phi(5184, t) == 1728);
  CHECK(euler_phi(97, t) == 96);
  CHECK(euler_phi(2 * 3 * 5 * 7, t) == 1 * 2 * 4 * 6);
}

TEST_CASE("primality through the table", "[arith]") {
  PrimeTable t = PrimeTable::build(1000);
  CHECK(is_prime(997, t));
  CHECK_FALSE(is_prime(999, t));
  CHECK(is_prime(999983, t));        // above limit, trial division route
  CHECK_FALSE(is_prime(999985, t));  // 5 * 199997
  CHECK_THROWS_AS(is_prime(u64(2000003) * 2000003, t), capacity_error);
}
