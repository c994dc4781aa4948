#pragma once

// Equidistribution of the inverse fractions \bar{q}_p / p inside xi-adic
// boxes: star discrepancy, the Erdos-Turan bound, and the two independent
// routes to the thresholded pair count R_gamma.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "bincyc/analytic.hpp"
#include "bincyc/arith.hpp"
#include "bincyc/boxes.hpp"
#include "bincyc/parallel.hpp"

namespace bincyc {

// Comparator for k <= bound with a relative guard band; hits inside the band
// are counted so boundary-sensitive results can be flagged.
struct ThresholdCompare {
  double band = 1e-12;
  u64 band_hits = 0;

  bool inside(u64 k, double bound) {
    const double kd = static_cast<double>(k);
    if (std::abs(kd - bound) <= band * std::max(1.0, bound)) ++band_hits;
    return kd <= bound;
  }
};

struct FractionSequence {
  DyadicBox box;
  std::vector<double> points;  // \bar{q}_p / p, ascending (p, q)
  u64 pair_count = 0;
};

namespace detail {

// Visit every pair (p, q) of the box with p < q and pq <= x, ascending.
template <class Fn>
void for_each_box_pair(const DyadicBox& box, const ScaleContext& ctx,
                       const PrimeTable& table, Fn&& fn) {
  const u64 xf = static_cast<u64>(ctx.x);
  const u64 p_first = static_cast<u64>(std::ceil(box.p_lo));
  const u64 q_first = static_cast<u64>(std::ceil(box.q_lo));
  for (std::size_t ip = table.lower_index(p_first); ip < table.primes.size(); ++ip) {
    const u64 p = table.primes[ip];
    if (!(static_cast<double>(p) < box.p_hi)) break;
    for (std::size_t iq = table.lower_index(std::max(q_first, p + 1));
         iq < table.primes.size(); ++iq) {
      const u64 q = table.primes[iq];
      if (!(static_cast<double>(q) < box.q_hi)) break;
      if (static_cast<u128>(p) * q > xf) break;
      fn(p, q);
    }
  }
}

}  // namespace detail

inline FractionSequence inverse_fractions(const DyadicBox& box, const ScaleContext& ctx,
                                          const PrimeTable& table) {
  FractionSequence fs;
  fs.box = box;
  detail::for_each_box_pair(box, ctx, table, [&](u64 p, u64 q) {
    fs.points.push_back(static_cast<double>(mod_inverse(q % p, p)) / static_cast<double>(p));
    ++fs.pair_count;
  });
  return fs;
}

// D*_N by the sorted-points formula.
inline double star_discrepancy(const std::vector<double>& points) {
  if (points.empty()) throw std::invalid_argument("star_discrepancy: empty sequence");
  std::vector<double> xs(points);
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  if (!(xs.front() >= 0.0) || !(xs.back() < 1.0))
    throw std::invalid_argument("star_discrepancy: points must lie in [0, 1)");
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double up = static_cast<double>(i + 1) / n - xs[i];
    const double dn = xs[i] - static_cast<double>(i) / n;
    d = std::max({d, up, dn});
  }
  return d;
}

// 3 ( 1/(A+1) + (1/N) sum_{a<=A} |sum_n e(a x_n)| / a ).
inline double erdos_turan_bound(const std::vector<double>& points, u64 A) {
  if (points.empty()) throw std::invalid_argument("erdos_turan_bound: empty sequence");
  if (A < 1) throw std::invalid_argument("erdos_turan_bound: A must be >= 1");
  const double n = static_cast<double>(points.size());
  double sum = 0.0;
  for (u64 a = 1; a <= A; ++a) {
    std::complex<double> s{0.0, 0.0};
    for (double x : points)
      s += std::polar(1.0, 6.283185307179586476925286766559 * static_cast<double>(a) * x);
    sum += std::abs(s) / static_cast<double>(a);
  }
  return 3.0 * (1.0 / static_cast<double>(A + 1) + sum / n);
}

enum class RhoMode { exact, asymptotic_fallback };

inline const char* rho_mode_name(RhoMode m) {
  return m == RhoMode::exact ? "exact" : "asymptotic-fallback";
}

// Threshold for the box: rho(PQ) when the discriminant allows it, otherwise
// the asymptotic main term.
inline double box_rho_threshold(const DyadicBox& box, double gamma, RhoMode& mode) {
  const double t = box.p_lo * box.q_lo;
  if (t > 1.0 && rho_in_domain(t, gamma)) {
    mode = RhoMode::exact;
    return rho(t, gamma);
  }
  mode = RhoMode::asymptotic_fallback;
  return rho_main_term(std::max(t, 1.0), gamma);
}

struct BoxCheck {
  DyadicBox box;
  u64 r_count = 0;        // pairs in the box
  u64 r_gamma_count = 0;  // pairs with \bar{q}_p <= rho p
  double main_term = 0;   // rho_main_term(PQ) * r_count
  double rel_dev = 0;     // |r_gamma_count - main_term| / max(main_term, 1)
  RhoMode rho_mode = RhoMode::exact;
  bool cond1 = false;
  bool cond2 = false;
  u64 band_hits = 0;
};

inline BoxCheck box_counts(const DyadicBox& box, const ScaleContext& ctx, double gamma,
                           const PrimeTable& table) {
  BoxCheck bc;
  bc.box = box;
  const double thr = box_rho_threshold(box, gamma, bc.rho_mode);
  ThresholdCompare cmp;
  detail::for_each_box_pair(box, ctx, table, [&](u64 p, u64 q) {
    ++bc.r_count;
    if (cmp.inside(mod_inverse(q % p, p), thr * static_cast<double>(p))) ++bc.r_gamma_count;
  });
  bc.band_hits = cmp.band_hits;
  bc.main_term = rho_main_term(std::max(box.p_lo * box.q_lo, 1.0), gamma) *
                 static_cast<double>(bc.r_count);
  bc.rel_dev = std::abs(static_cast<double>(bc.r_gamma_count) - bc.main_term) /
               std::max(bc.main_term, 1.0);
  const ConditionFlags cf = condition_check(std::max(box.p_lo, 1.0), ctx, gamma);
  bc.cond1 = cf.cond1;
  bc.cond2 = cf.cond2;
  return bc;
}

// Second route to r_gamma_count: for each p, count window primes per residue
// class and sum the classes {\bar{v}_p : v <= rho p}. Uses the same
// comparator as box_counts, so the two routes must agree exactly.
inline u64 box_progression_count(const DyadicBox& box, const ScaleContext& ctx, double gamma,
                                 const PrimeTable& table) {
  RhoMode mode;
  const double thr = box_rho_threshold(box, gamma, mode);
  ThresholdCompare cmp;
  const u64 xf = static_cast<u64>(ctx.x);
  u64 total = 0;
  const u64 p_first = static_cast<u64>(std::ceil(box.p_lo));
  const u64 q_first = static_cast<u64>(std::ceil(box.q_lo));
  for (std::size_t ip = table.lower_index(p_first); ip < table.primes.size(); ++ip) {
    const u64 p = table.primes[ip];
    if (!(static_cast<double>(p) < box.p_hi)) break;
    std::vector<u64> residue_count(p, 0);
    for (std::size_t iq = table.lower_index(std::max(q_first, p + 1));
         iq < table.primes.size(); ++iq) {
      const u64 q = table.primes[iq];
      if (!(static_cast<double>(q) < box.q_hi)) break;
      if (static_cast<u128>(p) * q > xf) break;
      ++residue_count[q % p];
    }
    const double bound = thr * static_cast<double>(p);
    for (u64 v = 1; v < p; ++v) {
      if (!cmp.inside(v, bound)) break;
      total += residue_count[mod_inverse(v, p)];
    }
  }
  return total;
}

// box_counts over every admissible box of the grid, in grid order. The
// table must cover all q, i.e. table.limit >= x / 2.
inline std::vector<BoxCheck> box_sweep(const ScaleContext& ctx, const Gamma& gamma,
                                       const PrimeTable& table, unsigned workers = 1) {
  if (static_cast<double>(table.limit) < ctx.x / 2.0)
    throw capacity_error("box_sweep: prime table does not cover x / 2");
  const BoxGrid grid = dyadic_boxes(ctx, gamma);
  const std::size_t block = 16;
  const std::size_t n_chunks = (grid.boxes.size() + block - 1) / block;
  auto chunk = [&](std::size_t ci) {
    std::vector<BoxCheck> out;
    const std::size_t a = ci * block;
    const std::size_t b = std::min(grid.boxes.size(), a + block);
    out.reserve(b - a);
    for (std::size_t i = a; i < b; ++i)
      out.push_back(box_counts(grid.boxes[i], ctx, gamma.value, table));
    return out;
  };
  auto parts = parallel_map_chunks<std::vector<BoxCheck>>(n_chunks, workers, chunk);
  std::vector<BoxCheck> all;
  all.reserve(grid.boxes.size());
  for (auto& part : parts)
    for (auto& bc : part) all.push_back(bc);
  return all;
}

struct DiscrepancyReport {
  DyadicBox box;
  u64 n = 0;
  double d_star = 0;
  u64 a_parameter = 0;
  double et_bound = 0;
};

// One report per non-empty admissible box; A defaults to ceil(P) - 1.
inline std::vector<DiscrepancyReport> discrepancy_sweep(const ScaleContext& ctx,
                                                        const Gamma& gamma,
                                                        const PrimeTable& table,
                                                        unsigned workers = 1,
                                                        u64 a_override = 0) {
  if (static_cast<double>(table.limit) < ctx.x / 2.0)
    throw capacity_error("discrepancy_sweep: prime table does not cover x / 2");
  const BoxGrid grid = dyadic_boxes(ctx, gamma);
  const std::size_t block = 16;
  const std::size_t n_chunks = (grid.boxes.size() + block - 1) / block;
  auto chunk = [&](std::size_t ci) {
    std::vector<DiscrepancyReport> out;
    const std::size_t a = ci * block;
    const std::size_t b = std::min(grid.boxes.size(), a + block);
    for (std::size_t i = a; i < b; ++i) {
      FractionSequence fs = inverse_fractions(grid.boxes[i], ctx, table);
      if (fs.points.empty()) continue;
      DiscrepancyReport r;
      r.box = grid.boxes[i];
      r.n = fs.points.size();
      r.d_star = star_discrepancy(fs.points);
      r.a_parameter = a_override ? a_override
                                 : std::max<u64>(1, static_cast<u64>(std::ceil(r.box.p_lo)) - 1);
      r.et_bound = erdos_turan_bound(fs.points, r.a_parameter);
      out.push_back(r);
    }
    return out;
  };
  auto parts = parallel_map_chunks<std::vector<DiscrepancyReport>>(n_chunks, workers, chunk);
  std::vector<DiscrepancyReport> all;
  for (auto& part : parts)
    for (auto& r : part) all.push_back(r);
  return all;
}

}  // namespace bincyc
