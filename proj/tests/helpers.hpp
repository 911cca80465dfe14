#pragma once

#include <complex>
#include <random>

#include "casq/complex_linalg.hpp"

namespace casq::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline Complex random_complex(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(g), u(g)};
}

template <std::size_t N>
SquareMatrix<N> random_matrix(std::mt19937_64& g) {
  SquareMatrix<N> m;
  for (auto& z : m.e) z = random_complex(g);
  return m;
}

template <std::size_t N>
Vector<N> random_vector(std::mt19937_64& g) {
  Vector<N> v;
  for (auto& z : v) z = random_complex(g);
  return v;
}

template <std::size_t N>
Vector<N> random_unit_vector(std::mt19937_64& g) {
  auto v = random_vector<N>(g);
  const double n = vec_norm(v);
  for (auto& z : v) z /= n;
  return v;
}

// random matrix with prescribed eigenvalues (well-conditioned eigenbasis)
inline Mat4 with_spectrum(std::mt19937_64& g, const Vec4& lambda) {
  for (;;) {
    Mat4 v = random_matrix<4>(g);
    const auto sv = svd<4>(v);
    if (sv.sigma[3] < 0.2 * sv.sigma[0]) continue;  // keep the basis tame
    Mat4 d = Mat4::diagonal(lambda);
    return v * d * inverse(v);
  }
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace casq::testing
