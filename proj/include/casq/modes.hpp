#pragma once

// Slab kinematics: Dirichlet plates at z = 0 and z = L, periodic transverse
// directions, plus fermionic (antiperiodic) Matsubara frequencies. The
// bosonic family is provided separately for the second-order scalar checks.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "casq/errors.hpp"

namespace casq {

using Complex = std::complex<double>;

struct SlabGeometry {
  double Lx = 1.0;
  double Ly = 1.0;
  double L = 1.0;     // plate separation (z extent)
  double beta = 1.0;  // inverse temperature, length units
  double m = 0.0;     // mass

  bool valid() const { return Lx > 0 && Ly > 0 && L > 0 && beta > 0 && m >= 0; }
};

struct Mode {
  int j = 0;
  int k = 0;
  int l = 1;  // Dirichlet quantum number, l >= 1
  int n = 0;  // Matsubara index
};

struct FourMomentum {
  Complex k0;                    // i * omega_n
  std::array<double, 3> kvec{};  // (2 pi j / Lx, 2 pi k / Ly, pi l / L)
  double omega_k = 0.0;          // sqrt(|k|^2 + m^2)
  Complex chi;                   // omega_k / k0, purely imaginary on-lattice
  double omega_n = 0.0;          // Im(k0)
  double m = 0.0;                // mass carried from construction

  double kvec_norm2() const {
    return kvec[0] * kvec[0] + kvec[1] * kvec[1] + kvec[2] * kvec[2];
  }

  double mass() const { return m; }
};

struct ModeWindow {
  int jmax = 1;
  int kmax = 1;
  int lmax = 1;
  int nmax = 1;

  bool valid() const { return jmax >= 1 && kmax >= 1 && lmax >= 1 && nmax >= 1; }

  std::size_t count() const {
    return static_cast<std::size_t>(lmax) * (2 * jmax + 1) * (2 * kmax + 1) * (2 * nmax + 1);
  }
};

inline double fermionic_omega(int n, double beta) {
  return (2.0 * n + 1.0) * std::numbers::pi / beta;
}

inline double bosonic_omega(int n, double beta) { return 2.0 * n * std::numbers::pi / beta; }

// Off-lattice factory used by the determinant checks and tests; keeps the
// chi = omega_k / k0 relation in one place.
inline FourMomentum four_momentum(const std::array<double, 3>& kvec, double omega_n, double m) {
  FourMomentum p;
  p.kvec = kvec;
  p.omega_n = omega_n;
  p.m = m;
  p.k0 = Complex(0.0, omega_n);
  p.omega_k = std::sqrt(kvec[0] * kvec[0] + kvec[1] * kvec[1] + kvec[2] * kvec[2] + m * m);
  p.chi = Complex(p.omega_k) / p.k0;
  return p;
}

inline FourMomentum momentum(const SlabGeometry& geom, const Mode& mode) {
  if (mode.l < 1) throw InvalidMode("mode requires l >= 1");
  const double pi = std::numbers::pi;
  const std::array<double, 3> kvec = {2.0 * pi * mode.j / geom.Lx, 2.0 * pi * mode.k / geom.Ly,
                                      pi * mode.l / geom.L};
  return four_momentum(kvec, fermionic_omega(mode.n, geom.beta), geom.m);
}

// Deterministic enumeration order: l ascending, then j, k, n over symmetric
// ranges. mode_at gives random access so parallel consumers can partition by
// index without changing the reduction order.
inline Mode mode_at(const ModeWindow& w, std::size_t index) {
  const std::size_t nj = static_cast<std::size_t>(2 * w.jmax + 1);
  const std::size_t nk = static_cast<std::size_t>(2 * w.kmax + 1);
  const std::size_t nn = static_cast<std::size_t>(2 * w.nmax + 1);
  Mode m;
  m.n = static_cast<int>(index % nn) - w.nmax;
  index /= nn;
  m.k = static_cast<int>(index % nk) - w.kmax;
  index /= nk;
  m.j = static_cast<int>(index % nj) - w.jmax;
  index /= nj;
  m.l = static_cast<int>(index) + 1;
  return m;
}

inline std::vector<Mode> enumerate_modes(const ModeWindow& w) {
  std::vector<Mode> out;
  out.reserve(w.count());
  for (std::size_t i = 0; i < w.count(); ++i) out.push_back(mode_at(w, i));
  return out;
}

}  // namespace casq
