#pragma once

// Integer substrate: prime sieves, modular inverses, Euler phi and
// factorization against a prime table.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bincyc {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Raised when an input exceeds a documented size guard.
class capacity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr u64 sieve_limit_max = u64(1) << 40;
inline constexpr u64 segment_span_max = u64(1) << 32;
inline constexpr std::size_t default_segment_size = std::size_t(1) << 18;

namespace detail {

// Plain Eratosthenes, used for base primes below sqrt(limit).
inline std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  for (u64 n = 2; n <= limit; ++n)
    if (!composite[n]) out.push_back(n);
  return out;
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Sieve [lo, hi] against base primes and append the survivors.
inline void sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base,
                          std::vector<char>& scratch, std::vector<u64>& out) {
  const std::size_t span = static_cast<std::size_t>(hi - lo + 1);
  scratch.assign(span, 1);
  for (u64 p : base) {
    if (p * p > hi) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 j = start; j <= hi; j += p) scratch[static_cast<std::size_t>(j - lo)] = 0;
  }
  for (std::size_t i = 0; i < span; ++i)
    if (scratch[i] && lo + i >= 2) out.push_back(lo + i);
}

}  // namespace detail

// Ascending table of all primes <= limit (segmented sieve).
struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;

  static PrimeTable build(u64 limit, std::size_t segment_size = default_segment_size) {
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
    if (limit > sieve_limit_max)
      throw capacity_error("PrimeTable: limit " + std::to_string(limit) + " exceeds 2^40 guard");
    PrimeTable t;
    t.limit = limit;
    const u64 root = detail::isqrt(limit);
    std::vector<u64> base = detail::simple_sieve(root);
    t.primes = base;
    std::vector<char> scratch;
    for (u64 lo = root + 1; lo <= limit; lo += segment_size) {
      u64 hi = std::min(limit, lo + segment_size - 1);
      detail::sieve_segment(lo, hi, base, scratch, t.primes);
    }
    return t;
  }

  bool contains(u64 n) const {
    return std::binary_search(primes.begin(), primes.end(), n);
  }

  // First index with primes[i] >= lo.
  std::size_t lower_index(u64 lo) const {
    return static_cast<std::size_t>(
        std::lower_bound(primes.begin(), primes.end(), lo) - primes.begin());
  }

  // One past the last index with primes[i] <= hi.
  std::size_t upper_index(u64 hi) const {
    return static_cast<std::size_t>(
        std::upper_bound(primes.begin(), primes.end(), hi) - primes.begin());
  }
};

// Primes in [lo, hi], both ends inclusive. lo is clamped up to 2.
inline std::vector<u64> primes_in_range(u64 lo, u64 hi,
                                        std::size_t segment_size = default_segment_size) {
  std::vector<u64> out;
  lo = std::max<u64>(lo, 2);
  if (lo > hi) return out;
  if (hi - lo > segment_span_max)
    throw capacity_error("primes_in_range: span " + std::to_string(hi - lo) +
                         " exceeds 2^32 guard");
  const u64 root = detail::isqrt(hi);
  std::vector<u64> base = detail::simple_sieve(root);
  std::vector<char> scratch;
  for (u64 s = lo; s <= hi; s += segment_size) {
    u64 e = std::min(hi, s + segment_size - 1);
    detail::sieve_segment(s, e, base, scratch, out);
    if (e == hi) break;
  }
  return out;
}

// Inverse of k modulo ell: the unique representative in [1, ell).
// Extended Euclid with 128-bit coefficient updates.
inline u64 mod_inverse(u64 k, u64 ell) {
  if (ell < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  u64 a = k % ell;
  if (a == 0)
    throw std::domain_error("mod_inverse: gcd(" + std::to_string(k) + ", " +
                            std::to_string(ell) + ") != 1");
  u64 r0 = ell, r1 = a;
  i128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    u64 q = r0 / r1;
    u64 r2 = r0 % r1;
    i128 t2 = t0 - static_cast<i128>(q) * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1)
    throw std::domain_error("mod_inverse: gcd(" + std::to_string(k) + ", " +
                            std::to_string(ell) + ") = " + std::to_string(r0));
  i128 t = t0 % static_cast<i128>(ell);
  if (t < 0) t += static_cast<i128>(ell);
  return static_cast<u64>(t);
}

struct Factor {
  u64 prime;
  u32 exponent;
};

// Trial division by table primes. The residual cofactor is certified prime
// only when it is at most limit^2; beyond that the table cannot decide.
inline std::vector<Factor> factorize(u64 m, const PrimeTable& table) {
  if (m == 0) throw std::invalid_argument("factorize: m must be >= 1");
  std::vector<Factor> fs;
  u64 rem = m;
  for (u64 p : table.primes) {
    if (p > rem / p) break;
    if (rem % p == 0) {
      u32 e = 0;
      while (rem % p == 0) {
        rem /= p;
        ++e;
      }
      fs.push_back({p, e});
    }
  }
  if (rem > 1) {
    if (static_cast<u128>(table.limit) * table.limit < rem)
      throw capacity_error("factorize: residual factor " + std::to_string(rem) +
                           " exceeds table support (limit " +
                           std::to_string(table.limit) + ")");
    fs.push_back({rem, 1});
  }
  return fs;
}

inline u64 euler_phi(u64 m, const PrimeTable& table) {
  u64 phi = 1;
  for (const Factor& f : factorize(m, table)) {
    u64 pe = 1;
    for (u32 i = 1; i < f.exponent; ++i) pe *= f.prime;
    phi *= pe * (f.prime - 1);
  }
  return phi;
}

// Primality via the table, or trial division when n exceeds the table limit.
inline bool is_prime(u64 n, const PrimeTable& table) {
  if (n <= table.limit) return table.contains(n);
  if (static_cast<u128>(table.limit) * table.limit < n)
    throw capacity_error("is_prime: " + std::to_string(n) + " exceeds table support");
  for (u64 p : table.primes) {
    if (p > n / p) break;
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace bincyc
