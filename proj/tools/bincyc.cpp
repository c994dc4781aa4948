// Command line front end: closed-form evaluation, theta for a prime pair,
// exact H_gamma counts, box sweeps, discrepancy reports, exponential-sum
// bound reports, prime cache management and the acceptance checks.
//
// Exit codes: 0 success, 2 usage or domain errors, 1 runtime failures.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bincyc/analytic.hpp"
#include "bincyc/boxes.hpp"
#include "bincyc/counting.hpp"
#include "bincyc/cyclotomic.hpp"
#include "bincyc/equidist.hpp"
#include "bincyc/expsums.hpp"
#include "bincyc/io.hpp"
#include "bincyc/oracles.hpp"
#include "bincyc/verify.hpp"

namespace {

struct GlobalOpts {
  std::string format = "csv";
  std::string out;
  std::string cache_dir;
  unsigned workers = 1;
  bincyc::u64 seed = 1;
  bool timings = false;
};

std::string resolved_cache_dir(const GlobalOpts& g) {
  if (!g.cache_dir.empty()) return g.cache_dir;
  const char* env = std::getenv("BCP_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file " + g.out);
  f << text;
}

template <class Rec>
std::string render(const GlobalOpts& g, const std::vector<Rec>& rows) {
  return g.format == "json" ? bincyc::to_json(rows) : bincyc::to_csv(rows);
}

bincyc::PrimeTable table_for_x(double x, const GlobalOpts& g) {
  const auto limit = static_cast<bincyc::u64>(x / 2.0);
  return bincyc::load_or_build_primes(std::max<bincyc::u64>(limit, 2), resolved_cache_dir(g));
}

void warn_if_thresholds_collapse(const bincyc::ScaleContext& ctx) {
  if (std::cbrt(ctx.x) * std::pow(ctx.L, -100.0) == 0.0)
    std::cerr << "warning: small/medium cutoff x^{1/3} L^{-100} underflowed to zero; "
                 "no box will classify as small\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary cyclotomic coefficient statistics"};
  app.require_subcommand(0, 1);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--cache-dir", g.cache_dir, "prime cache directory (overrides BCP_CACHE_DIR)");
  app.add_option("--workers", g.workers, "worker thread count")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "seed for sampled reports and checks");
  app.add_flag("--timings", g.timings, "keep wall-clock fields in emitted records");

  std::map<const CLI::App*, std::function<int()>> actions;
  // let global flags (--format, --workers, ...) appear after the subcommand
  app.fallthrough();

  // analytic ---------------------------------------------------------------
  double an_gamma = 0.0, an_eta = 1e-3, an_x = 0.0;
  std::vector<double> an_ts;
  auto* an = app.add_subcommand("analytic", "closed-form quantities for one gamma");
  an->add_option("--gamma", an_gamma, "exponent parameter in (0, 1/2)")->required();
  an->add_option("--eta", an_eta, "margin below 1/2 enforced on gamma");
  an->add_option("--t", an_ts, "scales t at which to evaluate rho(t)");
  an->add_option("--x", an_x, "scale x for L, xi and the P-range cutoffs");
  actions[an] = [&]() {
    const bincyc::Gamma gm(an_gamma, an_eta);
    std::ostringstream os;
    os << "gamma=" << bincyc::fmt_double(gm.value) << "\n";
    os << "c_gamma=" << bincyc::fmt_double(bincyc::c_gamma(gm)) << "\n";
    os << "h_exponent=" << bincyc::fmt_double(bincyc::h_exponent(gm.value)) << "\n";
    os << "gamma_zero=" << bincyc::fmt_double(bincyc::gamma_zero()) << "\n";
    os << "kappa_zero=" << bincyc::fmt_double(bincyc::kappa_zero(gm.value)) << "\n";
    for (double t : an_ts) {
      os << "rho_main_term(" << bincyc::fmt_double(t)
         << ")=" << bincyc::fmt_double(bincyc::rho_main_term(t, gm.value)) << "\n";
      if (bincyc::rho_in_domain(t, gm.value))
        os << "rho(" << bincyc::fmt_double(t)
           << ")=" << bincyc::fmt_double(bincyc::rho(t, gm.value)) << "\n";
      else
        os << "rho(" << bincyc::fmt_double(t) << ")=outside_domain discriminant="
           << bincyc::fmt_double(bincyc::rho_discriminant(t, gm.value)) << "\n";
    }
    if (an_x > 0.0) {
      const bincyc::ScaleContext ctx(an_x);
      os << "L=" << bincyc::fmt_double(ctx.L) << "\n";
      os << "xi=" << bincyc::fmt_double(ctx.xi) << "\n";
    }
    emit(g, os.str());
    return 0;
  };

  // theta ------------------------------------------------------------------
  bincyc::u64 th_p = 0, th_q = 0;
  bool th_oracle = false;
  auto* th = app.add_subcommand("theta", "coefficient count for one prime pair");
  th->add_option("--p", th_p, "first prime")->required();
  th->add_option("--q", th_q, "second prime")->required();
  th->add_flag("--oracle", th_oracle, "cross-check against the polynomial expansion");
  actions[th] = [&]() {
    const bincyc::PrimePair pp = bincyc::theta_carlitz(th_p, th_q);
    emit(g, render(g, std::vector<bincyc::PrimePair>{pp}));
    if (th_oracle) {
      const bincyc::u64 direct = bincyc::theta_direct(th_p * th_q);
      std::cerr << "oracle theta=" << direct << (direct == pp.theta ? " (agrees)" : " (MISMATCH)")
                << "\n";
      if (direct != pp.theta) return 1;
    }
    return 0;
  };

  // hcount -----------------------------------------------------------------
  std::vector<double> hc_xs;
  double hc_gamma = 0.0;
  auto* hc = app.add_subcommand("hcount", "exact H_gamma(x) for one or more scales");
  hc->add_option("--x", hc_xs, "scales, strictly increasing when repeated")->required();
  hc->add_option("--gamma", hc_gamma, "exponent parameter in (0, 1/2)")->required();
  actions[hc] = [&]() {
    auto recs = bincyc::convergence_table(hc_xs, hc_gamma, g.workers);
    if (!g.timings)
      for (auto& r : recs) r.elapsed = 0.0;
    emit(g, render(g, recs));
    return 0;
  };

  // boxes ------------------------------------------------------------------
  double bx_x = 0.0, bx_gamma = 0.0;
  auto* bx = app.add_subcommand("boxes", "per-box threshold counts over the xi-adic grid");
  bx->add_option("--x", bx_x, "scale")->required();
  bx->add_option("--gamma", bx_gamma, "exponent parameter in (0, 1/2)")->required();
  actions[bx] = [&]() {
    const bincyc::ScaleContext ctx(bx_x);
    warn_if_thresholds_collapse(ctx);
    const auto table = table_for_x(bx_x, g);
    emit(g, render(g, bincyc::box_sweep(ctx, bincyc::Gamma(bx_gamma), table, g.workers)));
    return 0;
  };

  // discrepancy ------------------------------------------------------------
  double dc_x = 0.0, dc_gamma = 0.0;
  bincyc::u64 dc_amax = 0;
  auto* dc = app.add_subcommand("discrepancy", "star discrepancy per box with the ET bound");
  dc->add_option("--x", dc_x, "scale")->required();
  dc->add_option("--gamma", dc_gamma, "exponent parameter in (0, 1/2)")->required();
  dc->add_option("--amax", dc_amax, "override the Erdos-Turan cutoff A (default ceil(P)-1)");
  actions[dc] = [&]() {
    const bincyc::ScaleContext ctx(dc_x);
    warn_if_thresholds_collapse(ctx);
    const auto table = table_for_x(dc_x, g);
    emit(g, render(g, bincyc::discrepancy_sweep(ctx, bincyc::Gamma(dc_gamma), table, g.workers,
                                                dc_amax)));
    return 0;
  };

  // expsum -----------------------------------------------------------------
  std::string es_kind;
  bincyc::u64 es_p = 1009;
  double es_y = 600.0, es_z = 1200.0;
  double es_pa = 100.0, es_qa = 400.0, es_x = 1e5;
  bincyc::i64 es_a = 1;
  auto* es = app.add_subcommand("expsum", "recorded bound report for one estimate");
  es->add_option("--kind", es_kind, "kc, irving or dfi")
      ->required()
      ->check(CLI::IsMember({"kc", "irving", "dfi"}));
  es->add_option("--p", es_p, "kc: the prime");
  es->add_option("--y", es_y, "kc: window start");
  es->add_option("--z", es_z, "kc: window end");
  es->add_option("--p-anchor", es_pa, "irving/dfi: P");
  es->add_option("--q-anchor", es_qa, "irving/dfi: Q");
  es->add_option("--x", es_x, "irving: scale for the default windows");
  es->add_option("--a", es_a, "dfi: frequency, 1 <= a <= PQ");
  actions[es] = [&]() {
    bincyc::BoundReport r;
    if (es_kind == "kc") {
      r = bincyc::kc_bound_report(es_p, es_y, es_z, g.seed);
    } else if (es_kind == "irving") {
      const bincyc::ScaleContext ctx(es_x);
      r = bincyc::irving_average_report(
          es_pa, es_qa, bincyc::default_irving_windows(es_pa, es_qa, ctx), g.seed);
    } else {
      r = bincyc::dfi_bound_report(es_pa, es_qa, es_a);
    }
    emit(g, render(g, std::vector<bincyc::BoundReport>{r}));
    return 0;
  };

  // primes -----------------------------------------------------------------
  bincyc::u64 pr_limit = 0;
  auto* pr = app.add_subcommand("primes", "build or load the binary prime cache");
  pr->add_option("--limit", pr_limit, "sieve limit")->required();
  actions[pr] = [&]() {
    const auto table = bincyc::load_or_build_primes(pr_limit, resolved_cache_dir(g));
    if (!g.out.empty()) bincyc::write_prime_cache(g.out, table);
    std::cout << "limit=" << table.limit << " count=" << table.primes.size()
              << " bytes=" << bincyc::prime_cache_bytes(table).size() << "\n";
    return 0;
  };

  // verify -----------------------------------------------------------------
  auto* vf = app.add_subcommand("verify", "run the acceptance checks");
  actions[vf] = [&]() {
    bincyc::VerifyOptions opt;
    opt.workers = g.workers;
    opt.seed = g.seed;
    const int failures = bincyc::run_acceptance(std::cout, opt);
    return failures == 0 ? 0 : 1;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto parsed = app.get_subcommands();
  if (parsed.empty()) {
    std::cerr << app.help();
    return 2;
  }
  try {
    return actions.at(parsed.front())();
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
