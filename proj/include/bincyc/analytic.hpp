#pragma once

// Closed-form analytic quantities: the constant C(gamma), the threshold
// rho(t), the exponent H(gamma) with its crossover gamma0, kappa0, box
// admissibility, the P-range classification and the error-term monomials.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bincyc/arith.hpp"

namespace bincyc {

// Exponent parameter, kept a positive margin eta away from 1/2.
struct Gamma {
  double value;
  double eta;

  explicit Gamma(double v, double margin = 1e-3) : value(v), eta(margin) {
    if (!(eta > 0)) throw std::invalid_argument("Gamma: eta must be > 0");
    if (!(value > 0) || value > 0.5 - eta)
      throw std::domain_error("Gamma: value " + std::to_string(v) +
                              " outside (0, 1/2 - eta]");
  }
};

// Scale-derived quantities: L = log(2x) and the box ratio xi = 1 + 1/L.
struct ScaleContext {
  double x;
  double L;
  double xi;

  explicit ScaleContext(double x_) : x(x_) {
    if (!(x >= 2)) throw std::domain_error("ScaleContext: x must be >= 2");
    L = std::log(2.0 * x);
    xi = 1.0 + 1.0 / L;
  }
};

namespace detail {

inline void require_gamma_open(double g, const char* who) {
  if (!(g > 0.0) || !(g < 0.5))
    throw std::domain_error(std::string(who) + ": gamma " + std::to_string(g) +
                            " outside (0, 1/2)");
}

inline void require_gamma_half_ok(double g, const char* who) {
  if (!(g > 0.0) || !(g <= 0.5))
    throw std::domain_error(std::string(who) + ": gamma " + std::to_string(g) +
                            " outside (0, 1/2]");
}

}  // namespace detail

// C(gamma) = 2/(1+2g) * log((1+2g)/(1-2g)).
inline double c_gamma(double g) {
  detail::require_gamma_open(g, "c_gamma");
  return 2.0 / (1.0 + 2.0 * g) * std::log((1.0 + 2.0 * g) / (1.0 - 2.0 * g));
}

inline double c_gamma(const Gamma& g) { return c_gamma(g.value); }

// Raised when the quadratic under rho has no real root.
class rho_domain_error : public std::domain_error {
public:
  rho_domain_error(double disc, double t)
      : std::domain_error("rho: negative discriminant " + std::to_string(disc) +
                          " at t = " + std::to_string(t)),
        discriminant(disc),
        t(t) {}
  double discriminant;
  double t;
};

inline double rho_discriminant(double t, double g) {
  if (!(t > 1.0)) throw std::domain_error("rho: t must be > 1");
  detail::require_gamma_open(g, "rho");
  const double s = 1.0 + 1.0 / t;
  return s * s - 2.0 / t * (std::pow(t, 0.5 + g) + 1.0);
}

inline bool rho_in_domain(double t, double g) { return rho_discriminant(t, g) >= 0.0; }

// Smaller root of u^2 - (1+1/t) u + (t^{1/2+gamma} + 1)/t = 0.
inline double rho(double t, double g) {
  const double disc = rho_discriminant(t, g);
  if (disc < 0.0) throw rho_domain_error(disc, t);
  return 0.5 * ((1.0 + 1.0 / t) - std::sqrt(disc));
}

inline double rho(double t, const Gamma& g) { return rho(t, g.value); }

// Leading term t^{gamma - 1/2} / 2 of rho.
inline double rho_main_term(double t, double g) {
  if (!(t >= 1.0)) throw std::domain_error("rho_main_term: t must be >= 1");
  detail::require_gamma_open(g, "rho_main_term");
  return 0.5 * std::pow(t, g - 0.5);
}

// Reduced fraction with positive denominator; comparisons in 128 bits.
struct Rational {
  i64 num;
  i64 den;

  Rational(i64 n, i64 d) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline int rational_cmp(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num) * b.den;
  i128 rhs = static_cast<i128>(b.num) * a.den;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

inline Rational rational_min(const Rational& a, const Rational& b) {
  return rational_cmp(a, b) <= 0 ? a : b;
}

inline Rational rational_max(const Rational& a, const Rational& b) {
  return rational_cmp(a, b) >= 0 ? a : b;
}

// H(gamma) at gamma = num/den, exactly:
// max{ (20g-6)/9, min{ (8g-1)/5, 10g-4, (9g-2)/4 } }.
inline Rational h_exponent_exact(i64 num, i64 den) {
  Rational g(num, den);
  if (!(g.num > 0) || rational_cmp(g, Rational(1, 2)) > 0)
    throw std::domain_error("h_exponent: gamma outside (0, 1/2]");
  const i64 n = g.num, d = g.den;
  Rational a(20 * n - 6 * d, 9 * d);
  Rational b(8 * n - d, 5 * d);
  Rational c(10 * n - 4 * d, d);
  Rational e(9 * n - 2 * d, 4 * d);
  return rational_max(a, rational_min(b, rational_min(c, e)));
}

inline double h_exponent(double g) {
  detail::require_gamma_half_ok(g, "h_exponent");
  const double a = (20.0 * g - 6.0) / 9.0;
  const double b = (8.0 * g - 1.0) / 5.0;
  const double c = 10.0 * g - 4.0;
  const double e = (9.0 * g - 2.0) / 4.0;
  return std::max(a, std::min({b, c, e}));
}

// Root of H(gamma) = 1/2 on [2/5, 1/2], located by rational bisection so the
// answer is exact whenever the root has a small denominator.
inline double gamma_zero(double tol = 1e-12) {
  const Rational half(1, 2);
  // endpoints kept over the common denominator 10 * 2^k
  i64 lo = 4, hi = 5, den = 10;
  if (rational_cmp(h_exponent_exact(lo, den), half) >= 0 ||
      rational_cmp(h_exponent_exact(hi, den), half) <= 0)
    throw std::logic_error("gamma_zero: bracket [2/5, 1/2] failed");
  while (1.0 / static_cast<double>(den) > tol) {
    i64 mid = lo + hi;  // over denominator 2 * den
    den *= 2;
    lo *= 2;
    hi *= 2;
    int c = rational_cmp(h_exponent_exact(mid, den), half);
    if (c == 0) return static_cast<double>(mid) / static_cast<double>(den);
    if (c < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (static_cast<double>(lo) + static_cast<double>(hi)) / static_cast<double>(den);
}

// kappa0 = 4^{-2/(1+2 gamma)}.
inline double kappa_zero(double g) {
  detail::require_gamma_half_ok(g, "kappa_zero");
  return std::pow(4.0, -2.0 / (1.0 + 2.0 * g));
}

// A box anchored at (P, Q) is admissible when
//   P <= xi * Q,  kappa0(g) * Q^{(1-2g)/(1+2g)} <= P,  P <= x / Q.
inline bool box_admissible(double P, double Q, const ScaleContext& ctx, double g) {
  if (!(P >= 1.0) || !(Q >= 1.0))
    throw std::invalid_argument("box_admissible: anchors must be >= 1");
  detail::require_gamma_half_ok(g, "box_admissible");
  if (P > ctx.xi * Q) return false;
  if (kappa_zero(g) * std::pow(Q, (1.0 - 2.0 * g) / (1.0 + 2.0 * g)) > P) return false;
  return P <= ctx.x / Q;
}

inline bool box_admissible(double P, double Q, const ScaleContext& ctx, const Gamma& g) {
  return box_admissible(P, Q, ctx, g.value);
}

enum class RangeClass { small, medium, large };

inline const char* range_class_name(RangeClass c) {
  switch (c) {
    case RangeClass::small: return "small";
    case RangeClass::medium: return "medium";
    default: return "large";
  }
}

// Small:  P < x^{1/3} L^{-te};  Large:  P > (2x)^{2/5};  Medium: in between.
inline RangeClass classify_p_range(double P, const ScaleContext& ctx, double te = 100.0) {
  if (!(P >= 1.0)) throw std::invalid_argument("classify_p_range: P must be >= 1");
  if (!(te >= 0.0)) throw std::invalid_argument("classify_p_range: te must be >= 0");
  const double small_cut = std::cbrt(ctx.x) * std::pow(ctx.L, -te);
  const double large_cut = std::pow(2.0 * ctx.x, 0.4);
  if (P < small_cut) return RangeClass::small;
  if (P > large_cut) return RangeClass::large;
  return RangeClass::medium;
}

// Geometric box [P, p_hi) x [Q, q_hi) with its admissibility verdict and
// P-range class attached.
struct DyadicBox {
  double p_lo = 0, p_hi = 0;
  double q_lo = 0, q_hi = 0;
  bool admissible = false;
  RangeClass range_class = RangeClass::medium;

  bool contains(double p, double q) const {
    return p_lo <= p && p < p_hi && q_lo <= q && q < q_hi;
  }
};

// The six second-order error monomials of a box, plus the per-count loss
// R / P of the completion step.
struct ErrorTermBounds {
  double e1;  // P^{1/2} Q
  double e2;  // P^{3/2} Q^{1/2}
  double f;   // P Q^{15/16}
  double g1;  // Q^{5/8} P^{5/4}
  double g2;  // Q^{9/10} P
  double g3;  // Q^{13/18} P^{7/6}
  double e0_per_count;  // 1 / P
};

inline ErrorTermBounds error_bounds(double P, double Q) {
  if (!(P >= 1.0) || !(Q >= 1.0))
    throw std::invalid_argument("error_bounds: anchors must be >= 1");
  ErrorTermBounds b;
  b.e1 = std::sqrt(P) * Q;
  b.e2 = std::pow(P, 1.5) * std::sqrt(Q);
  b.f = P * std::pow(Q, 15.0 / 16.0);
  b.g1 = std::pow(Q, 5.0 / 8.0) * std::pow(P, 1.25);
  b.g2 = std::pow(Q, 9.0 / 10.0) * P;
  b.g3 = std::pow(Q, 13.0 / 18.0) * std::pow(P, 7.0 / 6.0);
  b.e0_per_count = 1.0 / P;
  return b;
}

struct ConditionFlags {
  bool cond1;  // P <= x^{16 gamma - 7 - eps}
  bool cond2;  // P <= x^{min{(8g-1)/5, 10g-4, (9g-2)/4} - eps}
};

inline ConditionFlags condition_check(double P, const ScaleContext& ctx, double g,
                                      double eps = 1e-3) {
  if (!(P >= 1.0)) throw std::invalid_argument("condition_check: P must be >= 1");
  detail::require_gamma_half_ok(g, "condition_check");
  if (!(eps > 0.0)) throw std::invalid_argument("condition_check: eps must be > 0");
  const double m3 = std::min({(8.0 * g - 1.0) / 5.0, 10.0 * g - 4.0, (9.0 * g - 2.0) / 4.0});
  ConditionFlags f;
  f.cond1 = P <= std::pow(ctx.x, 16.0 * g - 7.0 - eps);
  f.cond2 = P <= std::pow(ctx.x, m3 - eps);
  return f;
}

}  // namespace bincyc
