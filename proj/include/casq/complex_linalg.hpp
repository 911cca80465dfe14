#pragma once

// Dense complex linear algebra for the fixed small sizes (2x2, 4x4) used by
// the gamma-matrix / pseudo-density machinery. Everything is value-semantic
// and allocation-free except EigenSystem cluster views.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "casq/errors.hpp"
#include "casq/tolerances.hpp"

namespace casq {

using Complex = std::complex<double>;

template <std::size_t N>
using Vector = std::array<Complex, N>;

using Vec2 = Vector<2>;
using Vec4 = Vector<4>;

template <std::size_t N>
struct SquareMatrix {
  // row-major
  std::array<Complex, N * N> e{};

  static constexpr std::size_t size = N;

  Complex& operator()(std::size_t i, std::size_t j) { return e[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return e[i * N + j]; }

  static SquareMatrix zero() { return SquareMatrix{}; }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(const Vector<N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : e) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const auto& z : e) s = std::max(s, std::abs(z));
    return s;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = a.e[i] + b.e[i];
    return m;
  }

  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = a.e[i] - b.e[i];
    return m;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend SquareMatrix operator*(const Complex& s, const SquareMatrix& a) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = s * a.e[i];
    return m;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const Complex& s) { return s * a; }

  friend Vector<N> operator*(const SquareMatrix& a, const Vector<N>& v) {
    Vector<N> r{};
    for (std::size_t i = 0; i < N; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < N; ++j) acc += a(i, j) * v[j];
      r[i] = acc;
    }
    return r;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) { return a.e == b.e; }
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> mat_mul(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b;
}

// ---------------------------------------------------------------------------
// vector helpers

template <std::size_t N>
Complex dot(const Vector<N>& a, const Vector<N>& b) {  // conjugate-linear in a
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double vec_norm(const Vector<N>& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

template <std::size_t N>
Vector<N> scaled(const Vector<N>& a, const Complex& s) {
  Vector<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t N>
Vector<N> vsub(const Vector<N>& a, const Vector<N>& b) {
  Vector<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting: determinant, solve, inverse

namespace detail {

template <std::size_t N>
struct Lu {
  SquareMatrix<N> lu;
  std::array<std::size_t, N> perm;
  int sign = 1;
  bool singular = false;
};

template <std::size_t N>
Lu<N> lu_factor(const SquareMatrix<N>& m) {
  Lu<N> f;
  f.lu = m;
  for (std::size_t i = 0; i < N; ++i) f.perm[i] = i;
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t p = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < N; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < N; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      f.lu(i, k) /= f.lu(k, k);
      const Complex lik = f.lu(i, k);
      for (std::size_t j = k + 1; j < N; ++j) f.lu(i, j) -= lik * f.lu(k, j);
    }
  }
  return f;
}

template <std::size_t N>
Vector<N> lu_solve(const Lu<N>& f, const Vector<N>& b) {
  Vector<N> x;
  for (std::size_t i = 0; i < N; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < N; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t ii = N; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < N; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

}  // namespace detail

template <std::size_t N>
Complex det(const SquareMatrix<N>& m) {
  auto f = detail::lu_factor(m);
  if (f.singular) return 0.0;
  Complex d = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < N; ++i) d *= f.lu(i, i);
  return d;
}

template <std::size_t N>
SquareMatrix<N> inverse(const SquareMatrix<N>& m) {
  auto f = detail::lu_factor(m);
  if (f.singular) throw LogOfSingular("inverse of singular matrix");
  SquareMatrix<N> inv;
  for (std::size_t j = 0; j < N; ++j) {
    Vector<N> ej{};
    ej[j] = 1.0;
    auto col = detail::lu_solve(f, ej);
    for (std::size_t i = 0; i < N; ++i) inv(i, j) = col[i];
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Eigendecomposition (Hessenberg reduction + shifted complex QR iteration).
//
// Eigenvalues of the structurally degenerate pseudo-density matrices come in
// semisimple pairs; a backward-stable QR sweep keeps them accurate to
// O(eps * ||M||), which a characteristic-polynomial route would not.
// Eigenvectors are taken from the null space of (M - lambda I) via
// column-pivoted QR with tolerance 1e-10 * ||M||.

struct EigenSystem {
  std::array<Complex, 4> values;  // sorted by (Re, Im); multiples adjacent
  std::array<Vec4, 4> vectors;    // vectors[i] belongs to values[i], unit norm

  std::vector<std::pair<Complex, int>> clusters() const {
    std::vector<std::pair<Complex, int>> out;
    const double scale = std::max({std::abs(values[0]), std::abs(values[1]),
                                   std::abs(values[2]), std::abs(values[3]), 1e-300});
    for (const auto& v : values) {
      if (!out.empty() && std::abs(v - out.back().first) <= 1e-9 * scale)
        out.back().second += 1;
      else
        out.emplace_back(v, 1);
    }
    return out;
  }
};

namespace detail {

inline void eig2(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                 Complex& l1, Complex& l2) {
  const Complex mid = 0.5 * (a + d);
  const Complex disc = std::sqrt(mid * mid - (a * d - b * c));
  l1 = mid + disc;
  l2 = mid - disc;
  if (std::abs(l1) > std::abs(l2) && std::abs(l1) > 0.0) l2 = (a * d - b * c) / l1;
}

// complex Givens zeroing b: [c, s; -conj(s), c] * [a; b] = [r; 0], c real
inline void givens(const Complex& a, const Complex& b, double& c, Complex& s) {
  const double aa = std::abs(a), bb = std::abs(b);
  if (bb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  const double r = std::hypot(aa, bb);
  if (aa == 0.0) {
    c = 0.0;
    s = std::conj(b) / bb;
    return;
  }
  c = aa / r;
  s = (a / aa) * std::conj(b) / r;
}

template <std::size_t N>
std::array<Complex, N> qr_eigenvalues(SquareMatrix<N> h, double scale) {
  // h is assumed upper Hessenberg
  const double eps = 2.22e-16;
  std::array<Complex, N> lam{};
  int hi = static_cast<int>(N) - 1;
  int iter = 0, total_iter = 0;
  while (hi >= 0) {
    if (++total_iter > 400) throw NonDiagonalizable("QR iteration failed to converge", scale);
    // deflate negligible subdiagonals
    int lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (diag == 0.0) diag = scale;
      if (sub <= eps * diag) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      lam[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (lo == hi - 1) {
      eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), lam[lo], lam[hi]);
      hi -= 2;
      iter = 0;
      continue;
    }
    // Wilkinson shift from the trailing 2x2 of the active window
    Complex l1, l2;
    eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
    Complex mu = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
    if (++iter % 12 == 0) mu += Complex(std::abs(h(hi, hi - 1)), 0.0);  // exceptional shift
    // explicit shifted QR step on the window [lo, hi]
    const int m = hi - lo + 1;
    for (int i = 0; i < m; ++i) h(lo + i, lo + i) -= mu;
    std::array<double, N> cs{};
    std::array<Complex, N> sn{};
    for (int k = 0; k < m - 1; ++k) {
      givens(h(lo + k, lo + k), h(lo + k + 1, lo + k), cs[k], sn[k]);
      for (int j = k; j < m; ++j) {
        const Complex t1 = h(lo + k, lo + j), t2 = h(lo + k + 1, lo + j);
        h(lo + k, lo + j) = cs[k] * t1 + sn[k] * t2;
        h(lo + k + 1, lo + j) = -std::conj(sn[k]) * t1 + cs[k] * t2;
      }
    }
    for (int k = 0; k < m - 1; ++k) {  // R * Q^H accumulation
      for (int i = 0; i <= std::min(k + 1, m - 1); ++i) {
        const Complex t1 = h(lo + i, lo + k), t2 = h(lo + i, lo + k + 1);
        h(lo + i, lo + k) = cs[k] * t1 + std::conj(sn[k]) * t2;
        h(lo + i, lo + k + 1) = -sn[k] * t1 + cs[k] * t2;
      }
    }
    for (int i = 0; i < m; ++i) h(lo + i, lo + i) += mu;
  }
  return lam;
}

template <std::size_t N>
SquareMatrix<N> hessenberg(SquareMatrix<N> a) {
  for (std::size_t k = 0; k + 2 < N; ++k) {
    // Householder vector for column k below the subdiagonal
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < N; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    Complex alpha = a(k + 1, k);
    const double aa = std::abs(alpha);
    const Complex phase = (aa == 0.0) ? Complex(1.0, 0.0) : alpha / aa;
    Vector<N> v{};
    for (std::size_t i = k + 1; i < N; ++i) v[i] = a(i, k);
    v[k + 1] += phase * xnorm;
    double vn = 0.0;
    for (std::size_t i = k + 1; i < N; ++i) vn += std::norm(v[i]);
    if (vn == 0.0) continue;
    // a <- (I - 2 v v^H / vn) a (I - 2 v v^H / vn)
    for (std::size_t j = 0; j < N; ++j) {  // left
      Complex w = 0.0;
      for (std::size_t i = k + 1; i < N; ++i) w += std::conj(v[i]) * a(i, j);
      w *= 2.0 / vn;
      for (std::size_t i = k + 1; i < N; ++i) a(i, j) -= v[i] * w;
    }
    for (std::size_t i = 0; i < N; ++i) {  // right
      Complex w = 0.0;
      for (std::size_t j = k + 1; j < N; ++j) w += a(i, j) * v[j];
      w *= 2.0 / vn;
      for (std::size_t j = k + 1; j < N; ++j) a(i, j) -= w * std::conj(v[j]);
    }
  }
  return a;
}

// Column-pivoted Householder QR; returns rank and an orthonormal null-space
// basis of a at the given absolute tolerance on |R_kk|.
template <std::size_t N>
std::vector<Vector<N>> null_space(const SquareMatrix<N>& a_in, double tolerance) {
  SquareMatrix<N> r = a_in;
  std::array<std::size_t, N> piv;
  for (std::size_t i = 0; i < N; ++i) piv[i] = i;
  for (std::size_t k = 0; k < N; ++k) {
    // pivot: column with largest remaining norm
    double best = -1.0;
    std::size_t pb = k;
    for (std::size_t j = k; j < N; ++j) {
      double cn = 0.0;
      for (std::size_t i = k; i < N; ++i) cn += std::norm(r(i, j));
      if (cn > best) {
        best = cn;
        pb = j;
      }
    }
    if (pb != k) {
      for (std::size_t i = 0; i < N; ++i) std::swap(r(i, k), r(i, pb));
      std::swap(piv[k], piv[pb]);
    }
    double xnorm = 0.0;
    for (std::size_t i = k; i < N; ++i) xnorm += std::norm(r(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    Complex alpha = r(k, k);
    const double aa = std::abs(alpha);
    const Complex phase = (aa == 0.0) ? Complex(1.0, 0.0) : alpha / aa;
    Vector<N> v{};
    for (std::size_t i = k; i < N; ++i) v[i] = r(i, k);
    v[k] += phase * xnorm;
    double vn = 0.0;
    for (std::size_t i = k; i < N; ++i) vn += std::norm(v[i]);
    if (vn == 0.0) continue;
    for (std::size_t j = k; j < N; ++j) {
      Complex w = 0.0;
      for (std::size_t i = k; i < N; ++i) w += std::conj(v[i]) * r(i, j);
      w *= 2.0 / vn;
      for (std::size_t i = k; i < N; ++i) r(i, j) -= v[i] * w;
    }
  }
  std::size_t rank = 0;
  for (std::size_t k = 0; k < N; ++k)
    if (std::abs(r(k, k)) > tolerance) ++rank;
  std::vector<Vector<N>> basis;
  for (std::size_t f = rank; f < N; ++f) {
    // solve R[0:rank,0:rank] z = -R[0:rank, f]
    Vector<N> y{};
    y[f] = 1.0;
    for (std::size_t ii = rank; ii-- > 0;) {
      Complex s = -r(ii, f);
      for (std::size_t j = ii + 1; j < rank; ++j) s -= r(ii, j) * y[j];
      y[ii] = s / r(ii, ii);
    }
    Vector<N> x{};
    for (std::size_t i = 0; i < N; ++i) x[piv[i]] = y[i];
    basis.push_back(x);
  }
  // modified Gram-Schmidt
  std::vector<Vector<N>> out;
  for (auto& x : basis) {
    for (const auto& q : out) {
      const Complex c = dot(q, x);
      for (std::size_t i = 0; i < N; ++i) x[i] -= c * q[i];
    }
    const double n = vec_norm(x);
    if (n > 1e-12) {
      for (auto& z : x) z /= n;
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace detail

inline EigenSystem eigen(const Mat4& m) {
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  auto h = detail::hessenberg(m);
  auto lam = detail::qr_eigenvalues(h, scale);
  // Transitive clustering of nearly equal eigenvalues (semisimple multiples
  // land within O(eps) of each other but may interleave under sorting).
  const double ctol = 1e-9 * scale;
  std::array<int, 4> cluster_of{0, 1, 2, 3};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      if (std::abs(lam[a] - lam[b]) <= ctol) {
        const int from = cluster_of[b], to = cluster_of[a];
        for (auto& c : cluster_of)
          if (c == from) c = to;
      }
  struct Cluster {
    Complex mean;
    std::size_t mult;
  };
  std::vector<Cluster> clusters;
  for (int id = 0; id < 4; ++id) {
    Complex sum = 0.0;
    std::size_t mult = 0;
    for (std::size_t a = 0; a < 4; ++a)
      if (cluster_of[a] == id) {
        sum += lam[a];
        ++mult;
      }
    if (mult > 0) clusters.push_back({sum / static_cast<double>(mult), mult});
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
    return a.mean.imag() < b.mean.imag();
  });
  EigenSystem es;
  std::size_t filled = 0;
  for (const auto& cl : clusters) {
    const Complex mu = cl.mean;
    const std::size_t mult = cl.mult;
    Mat4 shifted = m;
    for (std::size_t d = 0; d < 4; ++d) shifted(d, d) -= mu;
    auto basis = detail::null_space(shifted, 1e-10 * scale);
    if (basis.size() < mult) {
      // fall back to inverse iteration off a slightly perturbed shift
      Mat4 pert = m;
      const Complex jitter(1e-13 * scale, 1e-13 * scale);
      for (std::size_t d = 0; d < 4; ++d) pert(d, d) -= (mu + jitter);
      auto f = detail::lu_factor(pert);
      basis.clear();
      for (std::size_t t = 0; t < mult; ++t) {
        Vec4 v{};
        v[t] = 1.0;
        for (int it = 0; it < 3 && !f.singular; ++it) {
          v = detail::lu_solve(f, v);
          for (const auto& q : basis) {
            const Complex c = dot(q, v);
            for (std::size_t d = 0; d < 4; ++d) v[d] -= c * q[d];
          }
          const double n = vec_norm(v);
          if (n == 0.0) break;
          for (auto& z : v) z /= n;
        }
        basis.push_back(v);
      }
    }
    for (std::size_t t = 0; t < mult; ++t) {
      es.values[filled] = mu;
      es.vectors[filled] = basis[t];
      ++filled;
    }
  }
  // postcondition: eigenbasis reconstructs m
  Mat4 v, dm;
  for (std::size_t c = 0; c < 4; ++c) {
    dm(c, c) = es.values[c];
    for (std::size_t rr = 0; rr < 4; ++rr) v(rr, c) = es.vectors[c][rr];
  }
  Mat4 vinv;
  try {
    vinv = inverse(v);
  } catch (const LogOfSingular&) {
    throw NonDiagonalizable("eigenbasis is singular", 1.0);
  }
  const double resid = (v * dm * vinv - m).frobenius_norm() / scale;
  if (resid > tol::spectral)
    throw NonDiagonalizable("eigenbasis reconstruction failed", resid);
  return es;
}

namespace detail {

template <typename F>
Mat4 eigen_apply(const Mat4& m, F&& f) {
  const auto es = eigen(m);
  Mat4 v, dm;
  for (std::size_t c = 0; c < 4; ++c) {
    dm(c, c) = f(es.values[c]);
    for (std::size_t r = 0; r < 4; ++r) v(r, c) = es.vectors[c][r];
  }
  return v * dm * inverse(v);
}

}  // namespace detail

// Principal-branch matrix logarithm via eigendecomposition.
inline Mat4 mat_log(const Mat4& m) {
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  const auto es = eigen(m);
  for (const auto& l : es.values) {
    if (std::abs(l) < 1e-14 * scale) throw LogOfSingular("mat_log: eigenvalue below tolerance");
    if (l.real() <= 0.0 && std::abs(l.imag()) <= 1e-14 * scale)
      throw BranchCutEigenvalue("mat_log: eigenvalue on (-inf, 0]");
  }
  Mat4 v, dm;
  for (std::size_t c = 0; c < 4; ++c) {
    dm(c, c) = std::log(es.values[c]);
    for (std::size_t r = 0; r < 4; ++r) v(r, c) = es.vectors[c][r];
  }
  return v * dm * inverse(v);
}

inline Mat4 mat_exp(const Mat4& m) {
  return detail::eigen_apply(m, [](const Complex& l) { return std::exp(l); });
}

// ---------------------------------------------------------------------------
// SVD by one-sided Jacobi (high relative accuracy at this size)

template <std::size_t N>
struct Svd {
  std::array<double, N> sigma;  // descending
  SquareMatrix<N> u;
  SquareMatrix<N> v;  // m = u * diag(sigma) * v^H
};

template <std::size_t N>
Svd<N> svd(const SquareMatrix<N>& m) {
  SquareMatrix<N> a = m;
  SquareMatrix<N> v = SquareMatrix<N>::identity();
  const double eps = 2.22e-16;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          app += std::norm(a(i, p));
          aqq += std::norm(a(i, q));
          apq += std::conj(a(i, p)) * a(i, q);
        }
        const double r = std::abs(apq);
        if (r <= eps * std::sqrt(app * aqq) + 1e-300) continue;
        rotated = true;
        const Complex phase = apq / r;  // apq = r * phase
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // columns (p, q) <- (p, q) * diag(1, conj(phase)) * [[c, s], [-s, c]]
        for (std::size_t i = 0; i < N; ++i) {
          const Complex ap = a(i, p), aq = std::conj(phase) * a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
          const Complex vp = v(i, p), vq = std::conj(phase) * v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  Svd<N> out;
  std::array<std::size_t, N> order;
  std::array<double, N> norms;
  for (std::size_t j = 0; j < N; ++j) {
    double n = 0.0;
    for (std::size_t i = 0; i < N; ++i) n += std::norm(a(i, j));
    norms[j] = std::sqrt(n);
    order[j] = j;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
  const double smax = norms[order[0]];
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j];
    for (std::size_t i = 0; i < N; ++i) out.v(i, k) = v(i, j);
    if (norms[j] > 1e-3 * eps * (smax + 1e-300) && norms[j] > 0.0) {
      for (std::size_t i = 0; i < N; ++i) out.u(i, k) = a(i, j) / norms[j];
    } else {
      out.sigma[k] = 0.0;
      // complete U to a unitary basis deterministically
      for (std::size_t cand = 0; cand < N; ++cand) {
        Vector<N> e{};
        e[cand] = 1.0;
        for (std::size_t prev = 0; prev < k; ++prev) {
          Complex c = 0.0;
          for (std::size_t i = 0; i < N; ++i) c += std::conj(out.u(i, prev)) * e[i];
          for (std::size_t i = 0; i < N; ++i) e[i] -= c * out.u(i, prev);
        }
        const double n = vec_norm(e);
        if (n > 0.5) {
          for (std::size_t i = 0; i < N; ++i) out.u(i, k) = e[i] / n;
          break;
        }
      }
    }
  }
  return out;
}

inline Svd<4> svd4(const Mat4& m) { return svd<4>(m); }

// ---------------------------------------------------------------------------
// two-qubit index algebra: |i,j> ordered |00>,|01>,|10>,|11>

enum class Subsystem { first, second };

inline Mat2 partial_trace(const Mat4& m, Subsystem which) {
  Mat2 r;
  if (which == Subsystem::first) {
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < 2; ++l) r(j, l) = m(0 + j, 0 + l) + m(2 + j, 2 + l);
  } else {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) r(i, k) = m(2 * i + 0, 2 * k + 0) + m(2 * i + 1, 2 * k + 1);
  }
  return r;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return m;
}

// realignment R[(i,k),(j,l)] = <i,j| m |k,l>; rank 1 iff m is a single A (x) B
inline Mat4 realign(const Mat4& m) {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = m(2 * i + j, 2 * k + l);
  return r;
}

}  // namespace casq
