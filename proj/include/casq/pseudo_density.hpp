#pragma once

// Per-mode two-qubit pseudo-density matrix of a vacuum fluctuation:
//
//   rho_k = (kslash + m) gamma^0 / (4 k^0) = (I + chi_k B) / 4,
//   B     = (m - k_i gamma^i) gamma^0 / (k^0 chi_k),  B^2 = I, tr B = 0,
//
// together with its thermal form exp(-beta_check H) / tr exp(-beta_check H),
// boosted-spinor eigenvectors, entropies, and the separability probes.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "casq/clifford.hpp"
#include "casq/complex_linalg.hpp"
#include "casq/errors.hpp"
#include "casq/modes.hpp"
#include "casq/tolerances.hpp"

namespace casq {

struct PseudoDensity {
  Mat4 rho;
  Complex chi;
  Mode mode;  // provenance of the slab mode (defaulted for off-lattice momenta)
  Complex lambda_plus;   // (1 + chi) / 4, multiplicity 2
  Complex lambda_minus;  // (1 - chi) / 4, multiplicity 2
};

struct ThermalForm {
  Complex A;          // sqrt(1 - chi^2) / 4
  Complex alpha;      // artanh chi (principal branch)
  double beta_check;  // alpha / k0; real for slab modes (sign recorded, not asserted)
  Mat4 H;             // (k_i gamma^i - m) gamma^0 / chi, traceless
};

struct SpinorQuartet {
  // index 2 * lambda_E + lambda_s
  std::array<Vec4, 4> psi;
  std::array<Complex, 4> eigenvalue;  // rho eigenvalue matched per spinor
};

inline Mat4 build_B(const FourMomentum& p, const GammaBasis& basis) {
  if (std::abs(p.chi) < 1e-14) throw ZeroChi("build_B: chi vanishes (omega_k ~ 0)");
  Mat4 num = Complex(p.mass()) * Mat4::identity();
  num = num - Complex(p.kvec[0]) * basis.gamma1 - Complex(p.kvec[1]) * basis.gamma2 -
        Complex(p.kvec[2]) * basis.gamma3;
  const Complex scale = p.k0 * p.chi;  // equals omega_k
  return (num * basis.gamma0) * (Complex(1.0) / scale);
}

inline PseudoDensity build_rho(const FourMomentum& p, const GammaBasis& basis,
                               const Mode& mode = Mode{}) {
  if (p.omega_n == 0.0) throw ZeroChi("build_rho: omega_n must not vanish");
  const Complex quarter(0.25);
  const Mat4 from_momentum =
      ((slash(p, basis) + Complex(p.mass()) * Mat4::identity()) * basis.gamma0) *
      (quarter / p.k0);
  const Mat4 from_B = quarter * (Mat4::identity() + p.chi * build_B(p, basis));
  const double resid = (from_momentum - from_B).max_abs();
  if (resid > tol::herm)
    throw Error("build_rho: construction paths disagree (" + std::to_string(resid) + ")");
  PseudoDensity pd;
  pd.rho = from_momentum;
  pd.chi = p.chi;
  pd.mode = mode;
  pd.lambda_plus = (Complex(1.0) + p.chi) / 4.0;
  pd.lambda_minus = (Complex(1.0) - p.chi) / 4.0;
  return pd;
}

inline PseudoDensity build_rho(const SlabGeometry& geom, const Mode& mode,
                               const GammaBasis& basis) {
  return build_rho(momentum(geom, mode), basis, mode);
}

inline Complex purity(const PseudoDensity& pd) { return (pd.rho * pd.rho).trace(); }

inline ThermalForm thermal_decompose(const PseudoDensity& pd, const FourMomentum& p,
                                     const GammaBasis& basis) {
  if (std::abs(pd.chi - Complex(1.0)) < 1e-12 || std::abs(pd.chi + Complex(1.0)) < 1e-12)
    throw ArtanhPole("thermal_decompose: chi at an artanh pole");
  ThermalForm tf;
  tf.alpha = std::atanh(pd.chi);
  // A * tr exp(alpha B) = A * 4 cosh(alpha) = tr rho = 1 fixes A = sqrt(1-chi^2)/4
  tf.A = std::sqrt(Complex(1.0) - pd.chi * pd.chi) / 4.0;
  const Complex bc = tf.alpha / p.k0;
  if (std::abs(bc.imag()) > tol::herm * (1.0 + std::abs(bc)))
    throw Error("thermal_decompose: beta_check acquired an imaginary part");
  tf.beta_check = bc.real();
  Mat4 num = Complex(p.kvec[0]) * basis.gamma1 + Complex(p.kvec[1]) * basis.gamma2 +
             Complex(p.kvec[2]) * basis.gamma3 - Complex(p.mass()) * Mat4::identity();
  tf.H = (num * basis.gamma0) * (Complex(1.0) / pd.chi);
  return tf;
}

inline SpinorQuartet boosted_spinors(const FourMomentum& p, const GammaBasis& basis) {
  const double w = p.omega_k;
  const double m = p.mass();
  if (m <= 0.0) throw MasslessSpinor("boosted_spinors: massless momentum");
  const Mat4 k_slash_spatial = Complex(p.kvec[0]) * basis.gamma1 +
                               Complex(p.kvec[1]) * basis.gamma2 +
                               Complex(p.kvec[2]) * basis.gamma3;
  const double norm = std::sqrt(2.0 * m * (w + m));
  const double amp = std::sqrt(m / w);
  SpinorQuartet q;
  const Complex lp = (Complex(1.0) + p.chi) / 4.0;
  const Complex lm = (Complex(1.0) - p.chi) / 4.0;
  const Mat4 rho = build_rho(p, basis).rho;
  for (int le = 0; le < 2; ++le) {
    const double sign = (le == 0) ? 1.0 : -1.0;
    const Mat4 boost =
        (Complex(w + m) * Mat4::identity() - Complex(sign) * (k_slash_spatial * basis.gamma0)) *
        Complex(1.0 / norm);
    for (int ls = 0; ls < 2; ++ls) {
      Vec4 psi = boost * basis_state(le, ls);
      for (auto& z : psi) z *= amp;
      const std::size_t idx = static_cast<std::size_t>(2 * le + ls);
      q.psi[idx] = psi;
      const auto rp = vec_norm(vsub(rho * psi, scaled(psi, lp)));
      const auto rm = vec_norm(vsub(rho * psi, scaled(psi, lm)));
      q.eigenvalue[idx] = (rp <= rm) ? lp : lm;
    }
  }
  return q;
}

// Number of operator-Schmidt terms above tol * sigma_1; equals 1 exactly when
// rho is a single tensor product.
inline int realignment_rank(const PseudoDensity& pd, double tolerance) {
  const auto s = svd4(realign(pd.rho));
  int rank = 0;
  for (double sv : s.sigma)
    if (sv > tolerance * s.sigma[0]) ++rank;
  return rank;
}

struct ProductTerm {
  Complex weight;
  Mat2 factor1;  // rank-1
  Mat2 factor2;  // rank-1
  bool trace_normalized;  // false when either factor is traceless
};

struct ProductDecomposition {
  std::vector<ProductTerm> terms;
  Complex weight_sum;  // over trace-normalized terms only
  double residual;     // Frobenius norm of (sum of terms - rho)
};

namespace detail {

inline Mat2 column_to_mat2(const Mat4& cols, std::size_t c) {
  Mat2 m;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) m(a, b) = cols(2 * a + b, c);
  return m;
}

// split a 2x2 matrix into at most two rank-1 pieces via its SVD
inline std::vector<Mat2> rank1_split(const Mat2& m) {
  const auto s = svd<2>(m);
  std::vector<Mat2> out;
  for (std::size_t k = 0; k < 2; ++k) {
    if (s.sigma[k] <= 1e-13 * (s.sigma[0] + 1e-300)) continue;
    Mat2 piece;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        piece(i, j) = s.sigma[k] * s.u(i, k) * std::conj(s.v(j, k));
    out.push_back(piece);
  }
  return out;
}

}  // namespace detail

inline ProductDecomposition product_decomposition(const PseudoDensity& pd) {
  const Mat4 r = realign(pd.rho);
  const auto s = svd4(r);
  ProductDecomposition out;
  out.weight_sum = 0.0;
  Mat4 reconstruction = Mat4::zero();
  for (std::size_t k = 0; k < 4; ++k) {
    if (s.sigma[k] <= 1e-13 * (s.sigma[0] + 1e-300)) continue;
    // Schmidt pair: rho += sigma_k * mat(u_k) (x) mat(conj(v_k))
    Mat2 a = detail::column_to_mat2(s.u, k);
    Mat2 b;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = std::conj(s.v(2 * i + j, k));
    a = Complex(s.sigma[k]) * a;
    for (const Mat2& pa : detail::rank1_split(a)) {
      for (const Mat2& pb : detail::rank1_split(b)) {
        ProductTerm term;
        const Complex ta = pa.trace();
        const Complex tb = pb.trace();
        const double sa = pa.frobenius_norm();
        const double sb = pb.frobenius_norm();
        if (std::abs(ta) > 1e-12 * sa && std::abs(tb) > 1e-12 * sb) {
          term.factor1 = (Complex(1.0) / ta) * pa;
          term.factor2 = (Complex(1.0) / tb) * pb;
          term.weight = ta * tb;
          term.trace_normalized = true;
          out.weight_sum += term.weight;
        } else {
          term.factor1 = (Complex(1.0) / sa) * pa;
          term.factor2 = (Complex(1.0) / sb) * pb;
          term.weight = Complex(sa) * Complex(sb);
          term.trace_normalized = false;
        }
        reconstruction = reconstruction + term.weight * kron(term.factor1, term.factor2);
        out.terms.push_back(term);
      }
    }
  }
  out.residual = (reconstruction - pd.rho).frobenius_norm();
  if (out.residual > tol::spectral * (pd.rho.frobenius_norm() + 1e-300))
    throw DecompositionFailure("product_decomposition: reconstruction failed", out.residual);
  return out;
}

namespace detail {

inline Complex checked_log(const Complex& lambda, const char* who) {
  if (std::abs(lambda) < 1e-14) throw SingularRho(std::string(who) + ": eigenvalue ~ 0");
  if (lambda.real() <= 0.0 && std::abs(lambda.imag()) < 1e-14)
    throw BranchCutEigenvalue(std::string(who) + ": eigenvalue on (-inf, 0]");
  return std::log(lambda);
}

}  // namespace detail

// -tr[rho ln rho] from the cached eigenvalues (each with multiplicity 2)
inline Complex von_neumann_entropy(const PseudoDensity& pd) {
  const Complex lp = detail::checked_log(pd.lambda_plus, "von_neumann_entropy");
  const Complex lm = detail::checked_log(pd.lambda_minus, "von_neumann_entropy");
  return -2.0 * (pd.lambda_plus * lp + pd.lambda_minus * lm);
}

// conditional form: both partial traces equal I/2, whose entropy is log 2
inline Complex conditional_entropy(const PseudoDensity& pd) {
  return von_neumann_entropy(pd) - std::log(2.0);
}

// sum of principal logs of the eigenvalues (branch-stable for conjugate pairs)
inline Complex log_det_rho(const PseudoDensity& pd) {
  const Complex lp = detail::checked_log(pd.lambda_plus, "log_det_rho");
  const Complex lm = detail::checked_log(pd.lambda_minus, "log_det_rho");
  return 2.0 * lp + 2.0 * lm;
}

}  // namespace casq
