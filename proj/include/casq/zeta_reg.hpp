#pragma once

// Special functions and regularized spectral sums: Riemann/Hurwitz zeta via
// Euler-Maclaurin (N = 20 direct terms, 10 corrections), Bernoulli
// numbers/polynomials, digamma, and the slab sums Z(q), Z_beta(q).
//
// Regularized-constant convention: the divergent fermionic count sum_n 1 is
// assigned 2 zeta_H(0, 1/2) = 0, and the transverse constant bucket uses
// Z(0) = 0 through the trivial zero zeta(-2) = 0. Every RegularizedValue
// carries its scheme so reports can stamp the conventions applied.

#include <cmath>
#include <numbers>
#include <string>

#include "casq/errors.hpp"
#include "casq/kahan.hpp"
#include "casq/modes.hpp"
#include "casq/quadrature.hpp"

namespace casq {

enum class Scheme { closed_form, zeta_continuation, truncated_sum };

struct RegularizedValue {
  double value = 0.0;
  Scheme scheme = Scheme::closed_form;
  double truncation_error = 0.0;  // 0 for closed forms and continuations
};

enum class MatsubaraFamily { fermionic, bosonic };

// ---------------------------------------------------------------------------
// Bernoulli numbers B_n (B_1 = -1/2 convention), n <= 60

namespace detail {

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double zeta_direct_sum(int s) {  // s >= 20: converges in a few terms
  KahanSum acc;
  for (int n = 1; n <= 64; ++n) {
    const double t = std::pow(static_cast<double>(n), -static_cast<double>(s));
    acc += t;
    if (t < 1e-20) break;
  }
  return acc.value();
}

}  // namespace detail

inline double bernoulli_number(int n) {
  if (n < 0 || n > 60) throw OrderTooLarge("bernoulli_number: n out of [0, 60]");
  if (n == 0) return 1.0;
  if (n == 1) return -0.5;
  if (n % 2 == 1) return 0.0;
  static const double small[] = {
      1.0,           // B_0 (unused slot alignment)
      1.0 / 6.0,     // B_2
      -1.0 / 30.0,   // B_4
      1.0 / 42.0,    // B_6
      -1.0 / 30.0,   // B_8
      5.0 / 66.0,    // B_10
      -691.0 / 2730.0,
      7.0 / 6.0,
      -3617.0 / 510.0,
      43867.0 / 798.0,  // B_18
  };
  const int k = n / 2;
  if (k <= 9) return small[k];
  // |B_2k| = 2 (2k)! zeta(2k) / (2 pi)^{2k}
  const double mag = 2.0 * detail::factorial(n) * detail::zeta_direct_sum(n) /
                     std::pow(2.0 * std::numbers::pi, n);
  return (k % 2 == 1) ? mag : -mag;
}

// B_n(x). At x = 1/2 the multiplication theorem B_n(1/2) = (2^{1-n} - 1) B_n
// is used, which keeps the odd-order zeros exact; elsewhere the explicit
// binomial sum with compensated accumulation.
inline double bernoulli_poly(int n, double x) {
  if (n < 0 || n > 60) throw OrderTooLarge("bernoulli_poly: n out of [0, 60]");
  if (x == 0.5) return (std::ldexp(1.0, 1 - n) - 1.0) * bernoulli_number(n);
  KahanSum acc;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    acc += binom * bernoulli_number(k) * std::pow(x, static_cast<double>(n - k));
    binom = binom * (n - k) / (k + 1.0);
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin evaluation of zeta_H(s, a), shared by both zeta functions

namespace detail {

inline double hurwitz_em(double s, double a) {
  constexpr int N = 20;  // direct terms
  constexpr int J = 10;  // correction terms
  KahanSum acc;
  for (int k = 0; k < N; ++k) acc += std::pow(a + k, -s);
  const double A = a + N;
  acc += std::pow(A, 1.0 - s) / (s - 1.0);
  acc += 0.5 * std::pow(A, -s);
  double rising = s;                    // s (s+1) ... (s+2j-2)
  double apow = std::pow(A, -s - 1.0);  // A^{-s-2j+1}
  for (int j = 1; j <= J; ++j) {
    acc += bernoulli_number(2 * j) / factorial(2 * j) * rising * apow;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    apow /= A * A;
  }
  return acc.value();
}

inline bool is_integer(double s) { return s == std::round(s); }

}  // namespace detail

inline double riemann_zeta(double s) {
  if (s == 1.0) throw PoleAtOne("riemann_zeta: pole at s = 1");
  if (detail::is_integer(s) && s <= 0.0) {
    const int n = static_cast<int>(-s);
    if (n == 0) return -0.5;  // -B_1(1), not -B_1, under the B_1 = -1/2 convention
    return -bernoulli_number(n + 1) / (n + 1.0);  // exact trivial zeros included
  }
  if (s > 0.5) return detail::hurwitz_em(s, 1.0);
  // reflection into the convergent half-plane
  const double pi = std::numbers::pi;
  return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(0.5 * pi * s) *
         std::tgamma(1.0 - s) * detail::hurwitz_em(1.0 - s, 1.0);
}

inline double hurwitz_zeta(double s, double a) {
  if (a <= 0.0) throw InvalidA("hurwitz_zeta: requires a > 0");
  if (s == 1.0) throw PoleAtOne("hurwitz_zeta: pole at s = 1");
  if (detail::is_integer(s) && s <= 0.0) {
    const int n = static_cast<int>(-s);
    return -bernoulli_poly(n + 1, a) / (n + 1.0);
  }
  return detail::hurwitz_em(s, a);
}

inline double digamma(double s) {
  if (s <= 0.0 && detail::is_integer(s))
    throw PoleAtNonPositiveInteger("digamma: pole at non-positive integer");
  double acc = 0.0;
  while (s < 10.0) {
    acc -= 1.0 / s;
    s += 1.0;
  }
  const double inv2 = 1.0 / (s * s);
  double result = std::log(s) - 0.5 / s;
  double p = inv2;
  for (int j = 1; j <= 7; ++j) {
    result -= bernoulli_number(2 * j) / (2.0 * j) * p;
    p *= inv2;
  }
  return acc + result;
}

// ---------------------------------------------------------------------------
// Matsubara frequency sums Z_beta(q) = sum_n omega_n^{-q}
//
// fermionic: 2 (2 pi / beta)^{-q} zeta_H(q, 1/2); exactly 0 at q = -2p
// bosonic (n = 0 excluded): 2 (2 pi / beta)^{-q} zeta(q)

inline RegularizedValue z_beta(double q, double beta, MatsubaraFamily family) {
  if (beta <= 0.0) throw InvalidA("z_beta: requires beta > 0");
  if (q == 1.0) throw PoleDetected("z_beta: continuation pole", 1.0);
  const double prefactor = 2.0 * std::pow(2.0 * std::numbers::pi / beta, -q);
  const double z = (family == MatsubaraFamily::fermionic) ? hurwitz_zeta(q, 0.5)
                                                          : riemann_zeta(q);
  return {prefactor * z, Scheme::zeta_continuation, 0.0};
}

inline RegularizedValue z_beta_truncated(double q, double beta, MatsubaraFamily family,
                                         long nmax) {
  if (q <= 1.0) throw NonConvergent("z_beta_truncated: needs q > 1");
  KahanSum acc;
  if (family == MatsubaraFamily::fermionic) {
    for (long n = 0; n <= nmax; ++n) acc += 2.0 * std::pow(fermionic_omega(n, beta), -q);
  } else {
    for (long n = 1; n <= nmax; ++n) acc += 2.0 * std::pow(bosonic_omega(n, beta), -q);
  }
  // integral bound on the dropped tail
  const double wn = (family == MatsubaraFamily::fermionic)
                        ? fermionic_omega(nmax + 1, beta)
                        : bosonic_omega(nmax + 1, beta);
  const double tail = 2.0 * std::pow(wn, 1.0 - q) / ((q - 1.0) * 2.0 * std::numbers::pi / beta);
  return {acc.value(), Scheme::truncated_sum, tail};
}

// ---------------------------------------------------------------------------
// Spatial slab sum Z(q) = sum_k omega_k^{-q} per unit transverse area,
// massless closed form: (pi/L)^{2-q} zeta(q-2) / (2 pi (q-2)).

inline RegularizedValue z_spatial(double q, const SlabGeometry& geom) {
  if (geom.m != 0.0) throw Error("z_spatial: closed form requires m = 0");
  if (q == 2.0) throw PoleDetected("z_spatial: transverse-integral pole", 2.0);
  if (q == 3.0) throw PoleDetected("z_spatial: zeta-argument pole", 3.0);
  const double pi = std::numbers::pi;
  const double value =
      std::pow(pi / geom.L, 2.0 - q) * riemann_zeta(q - 2.0) / (2.0 * pi * (q - 2.0));
  return {value, Scheme::zeta_continuation, 0.0};
}

// Independent convergent route for q > 3: numerical transverse quadrature per
// Dirichlet level plus a truncated l-sum with an integral tail bound.
inline RegularizedValue z_spatial_truncated(double q, const SlabGeometry& geom, int lmax) {
  if (geom.m != 0.0) throw Error("z_spatial_truncated: requires m = 0");
  if (q <= 3.0) throw NonConvergent("z_spatial_truncated: needs q > 3");
  const double pi = std::numbers::pi;
  // J(q) = int_0^inf t (1 + t^2)^{-q/2} dt via u in (0,1), t = u/(1-u)
  const double jq = integrate(
      [q](double u) {
        const double t = u / (1.0 - u);
        return t * std::pow(1.0 + t * t, -0.5 * q) / ((1.0 - u) * (1.0 - u));
      },
      0.0, 1.0, 16);
  KahanSum acc;
  for (int l = 1; l <= lmax; ++l) acc += std::pow(pi * l / geom.L, 2.0 - q);
  const double tail_powers = std::pow(pi / geom.L, 2.0 - q) *
                             std::pow(static_cast<double>(lmax), 3.0 - q) / (q - 3.0);
  const double value = jq / (2.0 * pi) * acc.value();
  return {value, Scheme::truncated_sum, jq / (2.0 * pi) * tail_powers};
}

// ---------------------------------------------------------------------------
// sum_{n in Z} ln(1 + omega^2 / omega_n^2) over fermionic frequencies

inline double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax - std::numbers::ln2 + std::log1p(std::exp(-2.0 * ax));
}

// Truncated sum over |n| <= nmax (n and -n-1 paired) plus the analytic tail
// resummed through zeta_H; the workhorse behind the closed-form asserts.
inline double matsubara_log_sum_truncated(double omega, double beta, long nmax = 100000) {
  if (omega == 0.0) return 0.0;
  const double pi = std::numbers::pi;
  nmax = std::max(nmax, static_cast<long>(beta * omega));
  KahanSum acc;
  for (long n = 0; n <= nmax; ++n) {
    const double x = beta * omega / ((2.0 * n + 1.0) * pi);
    acc += 2.0 * std::log1p(x * x);
  }
  double tail = 0.0;
  const double r = beta * omega / (2.0 * pi);
  double rp = r * r;
  for (int k = 1; k <= 4; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    tail += 2.0 * sign / k * rp * hurwitz_zeta(2.0 * k, nmax + 1.5);
    rp *= r * r;
  }
  return acc.value() + tail;
}

inline double matsubara_log_sum(double omega, double beta) {
  if (omega < 0.0 || beta <= 0.0) throw InvalidA("matsubara_log_sum: omega >= 0, beta > 0");
  if (omega == 0.0) return 0.0;
  const double closed = 2.0 * log_cosh(0.5 * beta * omega);
  const double truncated = matsubara_log_sum_truncated(omega, beta);
  if (std::abs(truncated - closed) > 1e-9 * std::max(1.0, std::abs(closed)))
    throw TailEstimateFailure("matsubara_log_sum: truncated sum disagrees with 2 ln cosh");
  return closed;
}

}  // namespace casq
