#pragma once

// Cyclotomic polynomial oracle (exact integer coefficients via the Moebius
// product) and the closed-form coefficient count for binary cyclotomics.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bincyc/arith.hpp"

namespace bincyc {

inline constexpr u64 oracle_limit_max = 100000;

namespace detail {

// Shared table; large enough to factor any m <= oracle_limit_max and to
// certify primality up to 10^10.
inline const PrimeTable& small_table() {
  static const PrimeTable t = PrimeTable::build(oracle_limit_max);
  return t;
}

// f(x^k) from f(x).
inline std::vector<i64> poly_stretch(const std::vector<i64>& f, u64 k) {
  std::vector<i64> out(static_cast<std::size_t>((f.size() - 1) * k + 1), 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i * k] = f[i];
  return out;
}

// Phi_pq as ((x^{pq} - 1)(x - 1)) / ((x^p - 1)(x^q - 1)) by two sparse
// binomial divisions, each a linear-time prefix recurrence.
inline std::vector<i64> binary_cyclotomic(u64 p, u64 q) {
  const std::size_t n = static_cast<std::size_t>(p * q) + 1;  // deg A = pq + 1
  // A = x^{pq+1} - x^{pq} - x + 1
  std::vector<i64> a(n + 1, 0);
  a[0] = 1;
  a[1] = -1;
  a[n - 1] = -1;
  a[n] = 1;
  // B = A / (x^p - 1): b[i] = b[i-p] - a[i]
  std::vector<i64> b(n + 1 - p, 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    b[i] = (i >= p ? b[i - p] : 0) - a[i];
  // C = B / (x^q - 1), truncated at deg phi(pq) with a zero tail check
  const std::size_t deg = static_cast<std::size_t>((p - 1) * (q - 1));
  std::vector<i64> c(b.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = (i >= q ? c[i - q] : 0) - b[i];
    if (i > deg && c[i] != 0)
      throw std::logic_error("binary_cyclotomic: nonzero remainder");
  }
  c.resize(deg + 1);
  if (c[deg] != 1) throw std::logic_error("binary_cyclotomic: not monic");
  return c;
}

// Exact division by a monic divisor; throws if any remainder survives.
inline std::vector<i64> poly_div_exact(std::vector<i64> num, const std::vector<i64>& den) {
  if (den.empty() || den.back() != 1)
    throw std::logic_error("poly_div_exact: divisor must be monic");
  if (num.size() < den.size()) throw std::logic_error("poly_div_exact: degree underflow");
  const std::size_t dq = num.size() - den.size();
  std::vector<i64> quot(dq + 1, 0);
  for (std::size_t i = dq + 1; i-- > 0;) {
    i64 c = num[i + den.size() - 1];
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (i64 r : num)
    if (r != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  return quot;
}

}  // namespace detail

// Coefficients of the m-th cyclotomic polynomial, constant term first.
struct CyclotomicPoly {
  u64 m = 0;
  std::vector<i64> coeffs;

  u64 degree() const { return static_cast<u64>(coeffs.size() - 1); }

  u64 theta() const {
    u64 n = 0;
    for (i64 c : coeffs)
      if (c != 0) ++n;
    return n;
  }
};

// Phi_m by the radical route: Phi_1 = x - 1, then Phi_{np} = Phi_n(x^p)/Phi_n
// for each new prime p, finally Phi_m(x) = Phi_rad(m)(x^{m/rad}).
inline CyclotomicPoly cyclotomic_coeffs(u64 m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_coeffs: m must be >= 1");
  if (m > oracle_limit_max)
    throw capacity_error("cyclotomic_coeffs: m " + std::to_string(m) + " exceeds 10^5 guard");
  CyclotomicPoly out;
  out.m = m;
  if (m == 1) {
    out.coeffs = {-1, 1};
    return out;
  }
  const std::vector<Factor> fs = factorize(m, detail::small_table());
  if (fs.size() == 2 && fs[0].exponent == 1 && fs[1].exponent == 1) {
    out.coeffs = detail::binary_cyclotomic(fs[0].prime, fs[1].prime);
    return out;
  }
  std::vector<i64> f = {-1, 1};
  u64 rad = 1;
  for (const Factor& fac : fs) {
    f = detail::poly_div_exact(detail::poly_stretch(f, fac.prime), f);
    rad *= fac.prime;
  }
  if (m / rad > 1) f = detail::poly_stretch(f, m / rad);
  out.coeffs = std::move(f);
  return out;
}

// The general Moebius-product route, exposed so tests can pin the two
// expansion routes against each other.
inline CyclotomicPoly cyclotomic_coeffs_mobius(u64 m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_coeffs: m must be >= 1");
  if (m > oracle_limit_max)
    throw capacity_error("cyclotomic_coeffs: m " + std::to_string(m) + " exceeds 10^5 guard");
  CyclotomicPoly out;
  out.m = m;
  if (m == 1) {
    out.coeffs = {-1, 1};
    return out;
  }
  std::vector<i64> f = {-1, 1};
  u64 rad = 1;
  for (const Factor& fac : factorize(m, detail::small_table())) {
    f = detail::poly_div_exact(detail::poly_stretch(f, fac.prime), f);
    rad *= fac.prime;
  }
  if (m / rad > 1) f = detail::poly_stretch(f, m / rad);
  out.coeffs = std::move(f);
  return out;
}

inline u64 theta_direct(u64 m) { return cyclotomic_coeffs(m).theta(); }

// Carlitz data for a product of two distinct primes:
// theta(pq) = 2 * inv_q_mod_p * inv_p_mod_q - 1.
struct PrimePair {
  u64 p, q;
  u64 inv_q_mod_p;  // \bar{q}_p in [1, p)
  u64 inv_p_mod_q;  // \bar{p}_q in [1, q)
  u64 theta;
};

inline PrimePair theta_carlitz(u64 p, u64 q) {
  if (p == q) throw std::invalid_argument("theta_carlitz: primes must be distinct");
  const PrimeTable& t = detail::small_table();
  if (!is_prime(p, t)) throw std::domain_error("theta_carlitz: " + std::to_string(p) + " is not prime");
  if (!is_prime(q, t)) throw std::domain_error("theta_carlitz: " + std::to_string(q) + " is not prime");
  PrimePair pp;
  pp.p = p;
  pp.q = q;
  pp.inv_q_mod_p = mod_inverse(q % p, p);
  pp.inv_p_mod_q = mod_inverse(p % q, q);
  // complement identity p * \bar{p}_q + q * \bar{q}_p = pq + 1
  if (static_cast<u128>(p) * pp.inv_p_mod_q + static_cast<u128>(q) * pp.inv_q_mod_p !=
      static_cast<u128>(p) * q + 1)
    throw std::logic_error("theta_carlitz: complement identity failed");
  pp.theta = 2 * pp.inv_q_mod_p * pp.inv_p_mod_q - 1;
  return pp;
}

struct StructureCheck {
  u64 theta = 0;
  bool migotti_ok = false;  // all coefficients in {-1, 0, 1}
  bool bounds_ok = false;   // 1 <= theta <= phi(pq) + 1
  bool carlitz_ok = false;  // oracle theta equals the closed form
};

inline StructureCheck binary_structure_check(u64 p, u64 q) {
  PrimePair pp = theta_carlitz(p, q);
  CyclotomicPoly poly = cyclotomic_coeffs(p * q);
  StructureCheck sc;
  sc.theta = poly.theta();
  sc.migotti_ok = true;
  for (i64 c : poly.coeffs)
    if (c < -1 || c > 1) sc.migotti_ok = false;
  const u64 phi = (p - 1) * (q - 1);
  sc.bounds_ok = sc.theta >= 1 && sc.theta <= phi + 1;
  sc.carlitz_ok = sc.theta == pp.theta;
  return sc;
}

}  // namespace bincyc
