#pragma once

// The acceptance registry: fourteen end-to-end checks, each returning a
// pass/fail verdict with a measured detail string. The CLI `verify`
// subcommand and the acceptance test binary both run this list.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bincyc/analytic.hpp"
#include "bincyc/arith.hpp"
#include "bincyc/boxes.hpp"
#include "bincyc/counting.hpp"
#include "bincyc/cyclotomic.hpp"
#include "bincyc/equidist.hpp"
#include "bincyc/expsums.hpp"
#include "bincyc/io.hpp"
#include "bincyc/oracles.hpp"
#include "bincyc/parallel.hpp"

namespace bincyc {

struct VerifyOptions {
  unsigned workers = 1;
  u64 seed = 1;
};

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<CheckResult(const VerifyOptions&)> run;
};

namespace checks {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// all semiprime pairs with pq <= cap, ascending
inline std::vector<std::pair<u64, u64>> semiprime_pairs(u64 cap) {
  std::vector<std::pair<u64, u64>> out;
  std::vector<u64> ps = primes_in_range(2, cap / 2);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (ps[i] * ps[j] > cap) break;
      out.emplace_back(ps[i], ps[j]);
    }
  return out;
}

inline CheckResult carlitz_oracle_agreement(const VerifyOptions&) {
  const auto t0 = std::chrono::steady_clock::now();
  u64 checked = 0;
  for (auto [p, q] : semiprime_pairs(20000)) {
    if (theta_carlitz(p, q).theta != theta_direct(p * q))
      return {false, "mismatch at p=" + std::to_string(p) + " q=" + std::to_string(q)};
    ++checked;
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << checked << " pairs with pq <= 2e4 agree, " << fmt_double(dt) << " s";
  return {checked > 0 && dt < 60.0, os.str()};
}

inline CheckResult migotti_coefficients(const VerifyOptions&) {
  u64 checked = 0;
  for (auto [p, q] : semiprime_pairs(20000)) {
    for (i64 c : cyclotomic_coeffs(p * q).coeffs)
      if (c < -1 || c > 1)
        return {false, "coefficient " + std::to_string(c) + " at m=" + std::to_string(p * q)};
    ++checked;
  }
  return {checked > 0, std::to_string(checked) + " semiprime polynomials lie in {-1,0,1}"};
}

inline CheckResult complement_identity(const VerifyOptions&) {
  u64 checked = 0;
  std::vector<u64> ps = primes_in_range(2, 2000);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const u64 p = ps[i], q = ps[j];
      const u64 ip = mod_inverse(p % q, q), iq = mod_inverse(q % p, p);
      if (static_cast<u128>(p) * ip + static_cast<u128>(q) * iq !=
          static_cast<u128>(p) * q + 1)
        return {false, "fails at p=" + std::to_string(p) + " q=" + std::to_string(q)};
      ++checked;
    }
  return {checked > 0, std::to_string(checked) + " pairs p < q <= 2000 satisfy the identity"};
}

inline CheckResult rho_quadratic_residual(const VerifyOptions&) {
  // 1000 in-domain (t, gamma) points: gamma sweeps (0.05, 0.45), t sweeps a
  // geometric ladder above the domain threshold for that gamma.
  u64 points = 0;
  double worst = 0.0;
  for (int gi = 0; gi < 40 && points < 1000; ++gi) {
    const double g = 0.05 + 0.40 * gi / 39.0;
    const double t_min = std::pow(2.0, 1.0 / (0.5 - g));
    for (int ti = 0; ti < 40 && points < 1000; ++ti) {
      const double t = std::max(4.0, 2.0 * t_min) * std::pow(1.9, ti);
      if (t > 1e15 || !rho_in_domain(t, g)) continue;
      const double u = rho(t, g);
      const double target = std::pow(t, 0.5 + g);
      const double resid =
          std::abs(2.0 * t * u * (1.0 + 1.0 / t - u) - 1.0 - target) / target;
      worst = std::max(worst, resid);
      ++points;
    }
  }
  bool domain_ok = false;
  double disc_seen = 0.0;
  try {
    rho(1e6, 0.45);
  } catch (const rho_domain_error& e) {
    domain_ok = e.discriminant < 0.0;
    disc_seen = e.discriminant;
  }
  std::ostringstream os;
  os << points << " grid points, max |residual| = " << fmt_double(worst)
     << "; rho(1e6, 0.45) raised with discriminant " << fmt_double(disc_seen);
  return {points == 1000 && worst <= 1e-9 && domain_ok, os.str()};
}

inline CheckResult h_exponent_crossover(const VerifyOptions&) {
  const Rational h = h_exponent_exact(9, 20);
  const bool exact_half = (h.num == 1 && h.den == 2);
  const double g0 = gamma_zero();
  std::ostringstream os;
  os << "H(9/20) = " << h.num << "/" << h.den << ", gamma_zero = " << fmt_double(g0);
  return {exact_half && std::abs(g0 - 0.45) <= 1e-12, os.str()};
}

inline CheckResult small_scale_counts(const VerifyOptions& opt) {
  const u64 h25 = h_gamma_count(35.0, 0.25, opt.workers).h_exact;
  const u64 h49 = h_gamma_count(35.0, 0.49, opt.workers).h_exact;
  if (h25 != 5 || h49 != 10)
    return {false, "H_{0.25}(35) = " + std::to_string(h25) + ", H_{0.49}(35) = " +
                       std::to_string(h49) + " (want 5, 10)"};
  for (double g : {0.25, 0.49})
    for (double x : {35.0, 1000.0, 7919.0, 20000.0}) {
      const u64 fast = h_gamma_count(x, g, opt.workers).h_exact;
      const u64 slow = h_gamma_count_oracle(x, g);
      if (fast != slow)
        return {false, "count mismatch at x=" + fmt_double(x) + " gamma=" + fmt_double(g) +
                           ": " + std::to_string(fast) + " vs oracle " + std::to_string(slow)};
    }
  return {true, "H_{0.25}(35)=5, H_{0.49}(35)=10; oracle agreement at x in {35, 1e3, 7919, 2e4}"};
}

inline CheckResult convergence_ratios(const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> xs = {1e5, 1e6, 1e7};
  const auto recs = convergence_table(xs, 0.47, opt.workers);
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "ratios";
  bool in_window = true;
  for (const auto& r : recs) {
    os << " " << fmt_double(r.ratio);
    if (!(r.ratio >= 0.2 && r.ratio <= 3.0)) in_window = false;
  }
  const bool closer = std::abs(recs[2].ratio - 1.0) <= std::abs(recs[0].ratio - 1.0) + 0.1;
  os << ", " << fmt_double(dt) << " s";
  return {in_window && closer && dt <= 300.0, os.str()};
}

inline CheckResult weil_bound(const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<u64> ps = primes_in_range(2, 500);
  struct Worst {
    double margin = -1.0;  // |K| - 2 sqrt(p), max over pairs
    u64 p = 0;
  };
  auto chunk = [&](std::size_t i) {
    const u64 p = ps[i];
    KloostermanEvaluator ev(p);
    Worst w;
    w.p = p;
    const double cap = 2.0 * std::sqrt(static_cast<double>(p));
    for (u64 a = 1; a < p; ++a)
      for (u64 b = 1; b < p; ++b) {
        const double m = std::abs(ev.complete(static_cast<i64>(a), static_cast<i64>(b))) - cap;
        if (m > w.margin) w.margin = m;
      }
    return w;
  };
  auto parts = parallel_map_chunks<Worst>(ps.size(), opt.workers, chunk);
  Worst worst;
  for (const auto& w : parts)
    if (w.margin > worst.margin) worst = w;
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "max(|K| - 2 sqrt p) = " << fmt_double(worst.margin) << " at p = " << worst.p << ", "
     << fmt_double(dt) << " s";
  return {worst.margin <= 1e-6 && dt < 120.0, os.str()};
}

inline CheckResult completion_identity(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<u64> ps = primes_in_range(5, 1000);
  std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
  std::uniform_real_distribution<double> ydist(20.0, 400.0);
  std::uniform_real_distribution<double> zfac(0.0, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const u64 p = ps[pick(rng)];
    std::uniform_int_distribution<u64> adist(1, p - 1);
    const i64 a = static_cast<i64>(adist(rng));
    const double y = ydist(rng);
    const double z = y * (1.0 + zfac(rng));
    const auto chk = completed_sum_decomposition(p, a, y, z);
    const double tol = 1e-6 * std::max<double>(1.0, static_cast<double>(chk.direct.terms));
    worst = std::max(worst, chk.abs_diff / std::max(tol, 1e-300));
    if (chk.abs_diff > tol)
      return {false, "case p=" + std::to_string(p) + " a=" + std::to_string(a) +
                         " y=" + fmt_double(y) + " z=" + fmt_double(z) +
                         " diff=" + fmt_double(chk.abs_diff)};
  }
  return {true, "50 random cases, worst diff/tolerance = " + fmt_double(worst)};
}

inline CheckResult erdos_turan_holds(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed ^ 0x5851f42d4c957f2dull);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int s = 0; s < 100; ++s) {
    std::vector<double> pts(1000);
    for (double& x : pts) {
      x = u01(rng);
      if (x >= 1.0) x = 0.0;
    }
    if (star_discrepancy(pts) > erdos_turan_bound(pts, 50) + 1e-9)
      return {false, "random sequence " + std::to_string(s) + " violates the bound"};
  }
  const ScaleContext ctx(1e6);
  const PrimeTable table = PrimeTable::build(static_cast<u64>(ctx.x / 2.0));
  const auto reports = discrepancy_sweep(ctx, Gamma(0.45), table, opt.workers);
  double worst = -1.0;
  for (const auto& r : reports) {
    worst = std::max(worst, r.d_star - r.et_bound);
    if (r.d_star > r.et_bound + 1e-9)
      return {false, "box p=" + fmt_double(r.box.p_lo) + " q=" + fmt_double(r.box.q_lo) +
                         " has d_star " + fmt_double(r.d_star) + " > bound " +
                         fmt_double(r.et_bound)};
  }
  std::ostringstream os;
  os << "100 random sequences and " << reports.size()
     << " box sequences at x=1e6; max(d_star - bound) = " << fmt_double(worst);
  return {!reports.empty(), os.str()};
}

inline CheckResult two_route_box_counts(const VerifyOptions&) {
  const ScaleContext ctx(1e5);
  const Gamma g(0.45);
  const PrimeTable table = PrimeTable::build(static_cast<u64>(ctx.x / 2.0));
  const BoxGrid grid = dyadic_boxes(ctx, g);
  u64 used = 0;
  for (const DyadicBox& box : grid.boxes) {
    if (used >= 20) break;
    const BoxCheck bc = box_counts(box, ctx, g.value, table);
    if (bc.r_count == 0) continue;
    const u64 other = box_progression_count(box, ctx, g.value, table);
    if (other != bc.r_gamma_count)
      return {false, "box p=" + fmt_double(box.p_lo) + " q=" + fmt_double(box.q_lo) + ": " +
                         std::to_string(bc.r_gamma_count) + " vs " + std::to_string(other)};
    ++used;
  }
  return {used == 20, std::to_string(used) + " non-empty boxes agree exactly at x=1e5"};
}

inline CheckResult large_box_rel_dev(const VerifyOptions& opt) {
  const ScaleContext ctx(1e7);
  const Gamma g(0.49);
  const PrimeTable table = PrimeTable::build(static_cast<u64>(ctx.x / 2.0));
  const auto sweep = box_sweep(ctx, g, table, opt.workers);
  u64 exact_boxes = 0, fallback_boxes = 0, big = 0;
  double worst = 0.0;
  for (const auto& bc : sweep) {
    if (bc.rho_mode == RhoMode::exact)
      ++exact_boxes;
    else
      ++fallback_boxes;
    if (bc.r_count >= 10000 && bc.rho_mode == RhoMode::exact) {
      ++big;
      worst = std::max(worst, bc.rel_dev);
      if (bc.rel_dev > 0.5)
        return {false, "box p=" + fmt_double(bc.box.p_lo) + " q=" + fmt_double(bc.box.q_lo) +
                           " rel_dev=" + fmt_double(bc.rel_dev)};
    }
  }
  std::ostringstream os;
  os << sweep.size() << " boxes (" << exact_boxes << " exact rho, " << fallback_boxes
     << " asymptotic fallback); " << big << " with r_count >= 1e4 in exact mode";
  if (big) os << ", worst rel_dev = " << fmt_double(worst);
  const std::string csv = to_csv(sweep);
  return {!sweep.empty() && !csv.empty(), os.str()};
}

inline CheckResult bound_reports(const VerifyOptions& opt) {
  const BoundReport kc = kc_bound_report(1009, 600.0, 1200.0, opt.seed);
  const ScaleContext ctx(1e5);
  const BoundReport irv =
      irving_average_report(100.0, 400.0, default_irving_windows(100.0, 400.0, ctx), opt.seed);
  const BoundReport dfi = dfi_bound_report(100.0, 100.0, 1);
  auto ok = [](const BoundReport& r) {
    return std::isfinite(r.ratio) && r.ratio > 0.0 && std::isfinite(r.observed) &&
           r.reference > 0.0 && r.terms > 0;
  };
  std::ostringstream os;
  os << "ratios kc=" << fmt_double(kc.ratio) << " irving=" << fmt_double(irv.ratio)
     << " dfi=" << fmt_double(dfi.ratio);
  return {ok(kc) && ok(irv) && ok(dfi), os.str()};
}

inline CheckResult determinism(const VerifyOptions& opt) {
  // worker-count independence of the counters
  CountRecord r1 = h_gamma_count(1e6, 0.45, 1);
  CountRecord r2 = h_gamma_count(1e6, 0.45, 2);
  CountRecord r8 = h_gamma_count(1e6, 0.45, 8);
  if (r1.h_exact != r2.h_exact || r1.h_exact != r8.h_exact ||
      r1.pairs_scanned != r8.pairs_scanned)
    return {false, "h_gamma_count differs across worker counts"};
  // byte-identical serialization across worker counts and repeated runs
  const ScaleContext ctx(1e5);
  const Gamma g(0.45);
  const PrimeTable table = PrimeTable::build(static_cast<u64>(ctx.x / 2.0));
  const std::string sweep1 = to_csv(box_sweep(ctx, g, table, 1));
  const std::string sweep8 = to_csv(box_sweep(ctx, g, table, 8));
  if (sweep1 != sweep8) return {false, "box_sweep CSV differs across worker counts"};
  auto stable = [&](unsigned w) {
    std::vector<CountRecord> rs = {h_gamma_count(35.0, 0.25, w), h_gamma_count(1e4, 0.45, w)};
    for (auto& r : rs) r.elapsed = 0.0;  // wall time is the one nondeterministic field
    return to_csv(rs) + to_json(rs);
  };
  const std::string a = stable(1), b = stable(8), c = stable(1);
  if (a != b || a != c) return {false, "serialized count records differ between runs"};
  std::ostringstream os;
  os << "h_exact = " << r1.h_exact << " for workers {1,2,8}; sweep and record bytes identical";
  return {true, os.str()};
}

}  // namespace checks

inline const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> cs = {
      {1, "carlitz_oracle_agreement", checks::carlitz_oracle_agreement},
      {2, "migotti_coefficients", checks::migotti_coefficients},
      {3, "complement_identity", checks::complement_identity},
      {4, "rho_quadratic_residual", checks::rho_quadratic_residual},
      {5, "h_exponent_crossover", checks::h_exponent_crossover},
      {6, "small_scale_counts", checks::small_scale_counts},
      {7, "convergence_ratios", checks::convergence_ratios},
      {8, "weil_bound", checks::weil_bound},
      {9, "completion_identity", checks::completion_identity},
      {10, "erdos_turan_bound", checks::erdos_turan_holds},
      {11, "two_route_box_counts", checks::two_route_box_counts},
      {12, "large_box_rel_dev", checks::large_box_rel_dev},
      {13, "bound_reports", checks::bound_reports},
      {14, "determinism", checks::determinism},
  };
  return cs;
}

// Runs every criterion, streaming one line per result to `out`. Returns the
// number of failures.
template <class Stream>
int run_acceptance(Stream& out, const VerifyOptions& opt) {
  int failures = 0;
  for (const Criterion& c : acceptance_criteria()) {
    CheckResult r;
    try {
      r = c.run(opt);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.pass) ++failures;
    out << (r.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << r.detail
        << "\n";
  }
  return failures;
}

}  // namespace bincyc
