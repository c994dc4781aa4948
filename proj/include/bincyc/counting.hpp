#pragma once

// Exact evaluation of H_gamma(x): the number of semiprime pq <= x whose
// cyclotomic polynomial has at most (pq)^{1/2+gamma} nonzero coefficients,
// computed from the closed form for theta(pq) without expanding polynomials.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bincyc/analytic.hpp"
#include "bincyc/arith.hpp"
#include "bincyc/parallel.hpp"

namespace bincyc {

inline constexpr double count_x_max = 1e10;

namespace detail {

// Little-endian fixed-width integer, wide enough for theta^16 at the 10^10
// scale cap (theta < 2^35, so theta^16 < 2^560).
struct BigN {
  std::array<u64, 10> w{};

  void set(u64 v) {
    w.fill(0);
    w[0] = v;
  }

  void mul(u64 v) {
    u128 carry = 0;
    for (u64& d : w) {
      u128 cur = static_cast<u128>(d) * v + carry;
      d = static_cast<u64>(cur);
      carry = cur >> 64;
    }
    if (carry) throw std::overflow_error("BigN: overflow");
  }

  static int cmp(const BigN& a, const BigN& b) {
    for (std::size_t i = a.w.size(); i-- > 0;)
      if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    return 0;
  }
};

inline BigN big_pow(u64 base, u64 e) {
  BigN r;
  r.set(1);
  for (u64 i = 0; i < e; ++i) r.mul(base);
  return r;
}

}  // namespace detail

struct DecisionStats {
  u64 band_hits = 0;   // comparisons that landed inside the float guard band
  u64 unresolved = 0;  // band hits the extended ladder could not separate
};

// Decides theta <= m^{1/2+gamma}. Fast path is a double comparison with a
// relative guard band of 1e-12; band hits are re-decided in long double, and
// exactly (integer powers) when 1/2+gamma has a small dyadic denominator.
struct ThetaThreshold {
  double c;
  long double cl;
  double band = 1e-12;
  u64 exact_num = 0;
  u64 exact_den = 0;  // nonzero when c = exact_num / exact_den with den <= 16

  explicit ThetaThreshold(double gamma) {
    detail_require(gamma);
    c = 0.5 + gamma;
    cl = static_cast<long double>(c);
    int e2 = 0;
    double f = std::frexp(c, &e2);
    i64 mant = static_cast<i64>(std::ldexp(f, 53));  // exact mantissa
    int pow2 = 53 - e2;
    while (mant % 2 == 0 && pow2 > 0) {
      mant /= 2;
      --pow2;
    }
    if (pow2 <= 4) {
      exact_num = static_cast<u64>(mant);
      exact_den = u64(1) << pow2;
    }
  }

  static void detail_require(double gamma) {
    if (!(gamma > 0.0) || !(gamma < 0.5))
      throw std::domain_error("ThetaThreshold: gamma outside (0, 1/2)");
  }

  bool passes(u64 theta, u64 m, DecisionStats& st) const {
    const double rhs = std::pow(static_cast<double>(m), c);
    const double lhs = static_cast<double>(theta);
    if (std::abs(lhs - rhs) > band * rhs) return lhs <= rhs;
    ++st.band_hits;
    if (exact_den) {
      detail::BigN tp = detail::big_pow(theta, exact_den);
      detail::BigN mp = detail::big_pow(m, exact_num);
      return detail::BigN::cmp(tp, mp) <= 0;
    }
    const long double diff =
        cl * std::log(static_cast<long double>(m)) - std::log(static_cast<long double>(theta));
    if (std::abs(diff) < 1e-16L) ++st.unresolved;
    return diff >= 0.0L;
  }
};

struct CountRecord {
  double x;
  double gamma;
  u64 h_exact;
  double h_predicted;
  double ratio;
  u64 pairs_scanned;
  double elapsed;  // seconds; callers may zero this for byte-stable output
};

// Main term C(gamma) x^{1/2+gamma} / log x.
inline double h_gamma_predicted(double x, double g) {
  if (!(x >= 2.0)) throw std::domain_error("h_gamma_predicted: x must be >= 2");
  return c_gamma(g) * std::pow(x, 0.5 + g) / std::log(x);
}

namespace detail {

struct CountChunk {
  u64 h = 0;
  u64 scanned = 0;
  DecisionStats stats;
};

// theta for one pair from the inverse of q mod p and the complement identity
// p * \bar{p}_q + q * \bar{q}_p = pq + 1.
inline bool count_pair(u64 p, u64 q, const ThetaThreshold& thr, CountChunk& out) {
  const u64 m = p * q;
  const u64 iq = mod_inverse(q % p, p);
  const u64 num = m + 1 - q * iq;
  const u64 ip = num / p;
  if (ip * p != num) throw std::logic_error("count_pair: complement identity failed");
  const u64 theta = 2 * iq * ip - 1;
  ++out.scanned;
  return thr.passes(theta, m, out.stats);
}

}  // namespace detail

// Exact H_gamma(x) by enumerating all pairs p < q with pq <= x. Pairs with
// q <= sqrt(x) come straight from the base table; larger q are generated in
// fixed-size segments. Chunk geometry is independent of the worker count.
inline CountRecord h_gamma_count(double x, double gamma, unsigned workers = 1,
                                 DecisionStats* stats_out = nullptr) {
  if (!(x >= 2.0)) throw std::domain_error("h_gamma_count: x must be >= 2");
  if (x > count_x_max)
    throw capacity_error("h_gamma_count: x exceeds the 10^10 scale cap");
  const ThetaThreshold thr(gamma);
  const auto t0 = std::chrono::steady_clock::now();

  const u64 xf = static_cast<u64>(x);
  const u64 root = detail::isqrt(xf);
  PrimeTable base;
  if (root >= 2) base = PrimeTable::build(root);

  const std::size_t q_block = 128;
  const u64 seg = u64(1) << 18;
  const std::size_t n1 = (base.primes.size() + q_block - 1) / q_block;
  const u64 seg_lo = root + 1, seg_hi = xf / 2;
  const std::size_t n2 =
      seg_hi >= seg_lo ? static_cast<std::size_t>((seg_hi - seg_lo) / seg + 1) : 0;

  auto run_chunk = [&](std::size_t ci) {
    detail::CountChunk out;
    if (ci < n1) {
      const std::size_t ja = ci * q_block;
      const std::size_t jb = std::min(base.primes.size(), ja + q_block);
      for (std::size_t jq = ja; jq < jb; ++jq) {
        const u64 q = base.primes[jq];
        for (std::size_t jp = 0; jp < jq; ++jp)
          if (detail::count_pair(base.primes[jp], q, thr, out)) ++out.h;
      }
    } else {
      const u64 lo = seg_lo + static_cast<u64>(ci - n1) * seg;
      const u64 hi = std::min(seg_hi, lo + seg - 1);
      std::vector<u64> qs;
      std::vector<char> scratch;
      detail::sieve_segment(lo, hi, base.primes, scratch, qs);
      for (u64 q : qs) {
        const u64 pmax = xf / q;
        for (u64 p : base.primes) {
          if (p > pmax) break;
          if (detail::count_pair(p, q, thr, out)) ++out.h;
        }
      }
    }
    return out;
  };

  auto chunks = parallel_map_chunks<detail::CountChunk>(n1 + n2, workers, run_chunk);

  CountRecord rec{};
  rec.x = x;
  rec.gamma = gamma;
  DecisionStats stats;
  for (const auto& c : chunks) {
    rec.h_exact += c.h;
    rec.pairs_scanned += c.scanned;
    stats.band_hits += c.stats.band_hits;
    stats.unresolved += c.stats.unresolved;
  }
  rec.h_predicted = h_gamma_predicted(x, gamma);
  rec.ratio = static_cast<double>(rec.h_exact) * std::log(x) /
              (c_gamma(gamma) * std::pow(x, 0.5 + gamma));
  rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (stats_out) *stats_out = stats;
  return rec;
}

// One record per scale; xs must be strictly increasing.
inline std::vector<CountRecord> convergence_table(const std::vector<double>& xs, double gamma,
                                                  unsigned workers = 1) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw std::invalid_argument("convergence_table: xs must be strictly increasing");
  std::vector<CountRecord> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(h_gamma_count(x, gamma, workers));
  return out;
}

}  // namespace bincyc
