#pragma once

// Dirac-representation gamma matrices with signature (+,-,-,-), the slash
// contraction, the pseudo-hermiticity metric B = g1 g2 g3, and the two-qubit
// computational basis |i,j> (first qubit: energy sign, second qubit: spin).

#include <array>
#include <cstdint>

#include "casq/complex_linalg.hpp"
#include "casq/modes.hpp"

namespace casq {

struct GammaBasis {
  Mat4 gamma0, gamma1, gamma2, gamma3;
  Mat4 metric_B;      // gamma1 * gamma2 * gamma3
  Mat4 metric_B_inv;  // equals metric_B (it squares to the identity)

  const Mat4& gamma(int mu) const {
    switch (mu) {
      case 0: return gamma0;
      case 1: return gamma1;
      case 2: return gamma2;
      default: return gamma3;
    }
  }

  // Minkowski metric diag(+1,-1,-1,-1)
  static double eta(int mu, int nu) {
    if (mu != nu) return 0.0;
    return mu == 0 ? 1.0 : -1.0;
  }
};

namespace detail {

inline Mat2 pauli(int i) {
  Mat2 s;
  switch (i) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = Complex(0.0, -1.0);
      s(1, 0) = Complex(0.0, 1.0);
      break;
    default:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
  }
  return s;
}

// gamma^i = [[0, sigma_i], [-sigma_i, 0]]
inline Mat4 gamma_spatial(int i) {
  const Mat2 s = pauli(i);
  Mat4 g;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      g(a, b + 2) = s(a, b);
      g(a + 2, b) = -s(a, b);
    }
  return g;
}

}  // namespace detail

inline GammaBasis dirac_basis() {
  GammaBasis gb;
  gb.gamma0 = Mat4::diagonal({1.0, 1.0, -1.0, -1.0});
  gb.gamma1 = detail::gamma_spatial(1);
  gb.gamma2 = detail::gamma_spatial(2);
  gb.gamma3 = detail::gamma_spatial(3);
  gb.metric_B = gb.gamma1 * gb.gamma2 * gb.gamma3;
  gb.metric_B_inv = gb.metric_B;  // (g1 g2 g3)^2 = I in this representation
  return gb;
}

// k-slash = k^mu gamma_mu = k0 gamma^0 - k_i gamma^i, with k0 = i omega_n
inline Mat4 slash(const FourMomentum& k, const GammaBasis& basis) {
  Mat4 m = k.k0 * basis.gamma0;
  m = m - Complex(k.kvec[0]) * basis.gamma1;
  m = m - Complex(k.kvec[1]) * basis.gamma2;
  m = m - Complex(k.kvec[2]) * basis.gamma3;
  return m;
}

// |i,j> with index 2i + j; |00> = (1,0,0,0)^T ... |11> = (0,0,0,1)^T
inline Vec4 basis_state(int i, int j) {
  Vec4 v{};
  v[static_cast<std::size_t>(2 * i + j)] = 1.0;
  return v;
}

}  // namespace casq
