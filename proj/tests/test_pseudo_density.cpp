#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "casq/pseudo_density.hpp"
#include "helpers.hpp"

using namespace casq;
using casq::testing::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

struct SampleMode {
  SlabGeometry geom;
  Mode mode;
  FourMomentum p;
};

std::vector<SampleMode> random_slab_modes(std::uint64_t seed, int count, bool massive_mix = true) {
  auto g = casq::testing::rng(seed);
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::uniform_int_distribution<int> idx(-4, 4);
  std::uniform_int_distribution<int> lpos(1, 5);
  std::uniform_int_distribution<int> nidx(-3, 3);
  std::vector<SampleMode> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    SampleMode s;
    s.geom = SlabGeometry{len(g), len(g), len(g), len(g), 0.0};
    if (massive_mix && i % 3 == 0) s.geom.m = len(g);
    s.mode = Mode{idx(g), idx(g), lpos(g), nidx(g)};
    s.p = momentum(s.geom, s.mode);
    out.push_back(s);
  }
  return out;
}

PseudoDensity chi_zero_density() {
  // hypothetical off-slab point chi = 0: rho = I/4, both eigenvalues 1/4
  PseudoDensity pd;
  pd.rho = Complex(0.25) * Mat4::identity();
  pd.chi = 0.0;
  pd.lambda_plus = 0.25;
  pd.lambda_minus = 0.25;
  return pd;
}

}  // namespace

TEST_CASE("B collapses to gamma0 for a rest-frame massive momentum") {
  const auto gb = dirac_basis();
  const auto p = four_momentum({0.0, 0.0, 0.0}, pi, 1.5);
  const Mat4 b = build_B(p, gb);
  REQUIRE((b - gb.gamma0).max_abs() < 1e-14);
}

TEST_CASE("B is involutory, traceless, and hermitian on slab modes") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(41, 60)) {
    const Mat4 b = build_B(s.p, gb);
    REQUIRE((b * b - Mat4::identity()).max_abs() < tol::herm);
    REQUIRE(std::abs(b.trace()) < tol::herm);
    REQUIRE((b.adjoint() - b).max_abs() < tol::herm);
  }
}

TEST_CASE("B requires nonzero chi") {
  const auto gb = dirac_basis();
  const auto p = four_momentum({0.0, 0.0, 0.0}, pi, 0.0);  // omega_k = 0
  REQUIRE_THROWS_AS(build_B(p, gb), ZeroChi);
}

TEST_CASE("rho has unit trace and the advertised spectrum") {
  const auto gb = dirac_basis();
  const SlabGeometry geom{1.0, 1.0, 1.0, 1.0, 0.0};
  const auto pd = build_rho(geom, Mode{0, 0, 1, 0}, gb);
  REQUIRE(std::abs(pd.rho.trace() - Complex(1.0)) < 1e-14);
  REQUIRE(std::abs(pd.chi - Complex(0.0, -1.0)) < 1e-14);

  // eigenvalues (1 -+ i)/4, each twice, from the dense solver
  const auto es = eigen(pd.rho);
  const auto clusters = es.clusters();
  REQUIRE(clusters.size() == 2);
  for (const auto& [value, mult] : clusters) {
    REQUIRE(mult == 2);
    const bool is_plus = std::abs(value - Complex(0.25, -0.25)) < 1e-12;
    const bool is_minus = std::abs(value - Complex(0.25, 0.25)) < 1e-12;
    REQUIRE((is_plus || is_minus));
  }
}

TEST_CASE("spectrum matches (1 +- chi)/4 with multiplicity two on random modes") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(42, 100)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const auto es = eigen(pd.rho);
    const auto clusters = es.clusters();
    REQUIRE(clusters.size() == 2);
    for (const auto& [value, mult] : clusters) {
      REQUIRE(mult == 2);
      const double d = std::min(std::abs(value - pd.lambda_plus),
                                std::abs(value - pd.lambda_minus));
      REQUIRE(d < 1e-12);
    }
  }
}

TEST_CASE("purity equals (1 - omega_k^2/omega_n^2)/4 and never reaches a projector") {
  const auto gb = dirac_basis();
  const SlabGeometry geom{1.0, 1.0, 1.0, 1.0, 0.0};

  // omega_k = omega_n = pi
  const auto pd0 = build_rho(geom, Mode{0, 0, 1, 0}, gb);
  REQUIRE(std::abs(purity(pd0)) < 1e-14);

  // omega_k = pi, omega_n = 3 pi
  const auto pd1 = build_rho(geom, Mode{0, 0, 1, 1}, gb);
  REQUIRE(std::abs(purity(pd1) - Complex(2.0 / 9.0)) < tol::herm);

  for (const auto& s : random_slab_modes(43, 80)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const Complex tr2 = purity(pd);
    const double want = (1.0 - (s.p.omega_k * s.p.omega_k) / (s.p.omega_n * s.p.omega_n)) / 4.0;
    REQUIRE(std::abs(tr2 - Complex(want)) < tol::herm);
    REQUIRE(std::abs(tr2.imag()) < tol::herm);
    REQUIRE(tr2.real() < 1.0);  // not a projector
  }
}

TEST_CASE("pseudo-hermiticity with respect to the spatial-gamma metric") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(44, 80)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const Mat4 lhs = gb.metric_B * pd.rho.adjoint();
    const Mat4 rhs = pd.rho * gb.metric_B;
    REQUIRE((lhs - rhs).max_abs() < tol::herm);
  }
}

TEST_CASE("hermitian plus anti-hermitian split reconstructs rho") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(45, 40)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const Mat4 hplus = Complex(0.5) * (pd.rho + pd.rho.adjoint());
    const Mat4 hminus = Complex(0.5) * (pd.rho - pd.rho.adjoint());
    REQUIRE((hplus.adjoint() - hplus).max_abs() < 1e-15);
    REQUIRE((hminus.adjoint() + hminus).max_abs() < 1e-15);
    REQUIRE(((hplus + hminus) - pd.rho).max_abs() == 0.0);
    // chi is purely imaginary on-lattice, so the hermitian part is I/4
    REQUIRE((hplus - Complex(0.25) * Mat4::identity()).max_abs() < 1e-14);
  }
}

TEST_CASE("spectrum is invariant under spatial rotations of kvec") {
  const auto gb = dirac_basis();
  auto g = casq::testing::rng(46);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& s : random_slab_modes(47, 20)) {
    // random rotation via Gram-Schmidt on random 3-vectors
    std::array<std::array<double, 3>, 3> r{};
    for (;;) {
      std::array<double, 3> a{u(g), u(g), u(g)}, b{u(g), u(g), u(g)};
      const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
      if (na < 0.1) continue;
      for (auto& x : a) x /= na;
      double d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      for (int i = 0; i < 3; ++i) b[i] -= d * a[i];
      const double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
      if (nb < 0.1) continue;
      for (auto& x : b) x /= nb;
      r[0] = a;
      r[1] = b;
      r[2] = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
      break;
    }
    std::array<double, 3> kr{};
    for (int i = 0; i < 3; ++i)
      kr[i] = r[i][0] * s.p.kvec[0] + r[i][1] * s.p.kvec[1] + r[i][2] * s.p.kvec[2];
    const auto p_rot = four_momentum(kr, s.p.omega_n, s.geom.m);
    const auto pd = build_rho(s.p, gb, s.mode);
    const auto pd_rot = build_rho(p_rot, gb);
    REQUIRE(std::abs(pd.lambda_plus - pd_rot.lambda_plus) < 1e-12);
    const auto es = eigen(pd_rot.rho);
    for (const auto& [value, mult] : es.clusters()) {
      const double d = std::min(std::abs(value - pd.lambda_plus),
                                std::abs(value - pd.lambda_minus));
      REQUIRE(d < 1e-12);
      REQUIRE(mult == 2);
    }
  }
}

TEST_CASE("thermal form of the chi = -i mode") {
  const auto gb = dirac_basis();
  const SlabGeometry geom{1.0, 1.0, 1.0, 1.0, 0.0};
  const auto p = momentum(geom, Mode{0, 0, 1, 0});
  const auto pd = build_rho(p, gb, Mode{0, 0, 1, 0});
  const auto tf = thermal_decompose(pd, p, gb);
  REQUIRE(std::abs(tf.alpha - Complex(0.0, -pi / 4.0)) < 1e-14);
  REQUIRE(rel_err(tf.beta_check, -0.25) < 1e-13);
  REQUIRE(std::abs(tf.H.trace()) == 0.0);
  REQUIRE(std::abs(Complex(tf.beta_check) * tf.H.trace()) == 0.0);
}

TEST_CASE("thermal decomposition reconstructs rho on random modes") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(48, 60)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const auto tf = thermal_decompose(pd, s.p, gb);
    REQUIRE(std::abs(tf.A * std::cosh(tf.alpha) - Complex(0.25)) < tol::herm);
    REQUIRE(std::abs(tf.A * std::sinh(tf.alpha) - pd.chi / 4.0) < tol::herm);
    REQUIRE(std::abs(tf.H.trace()) < tol::herm);
    const Mat4 expm = mat_exp(Complex(-tf.beta_check) * tf.H);
    const Mat4 rec = expm * (Complex(1.0) / expm.trace());
    REQUIRE((rec - pd.rho).max_abs() < tol::spectral);
  }
}

TEST_CASE("artanh pole is guarded") {
  const auto gb = dirac_basis();
  PseudoDensity pd = chi_zero_density();
  pd.chi = 1.0;  // synthetic off-slab value
  const auto p = four_momentum({0.0, 0.0, 1.0}, 1.0, 0.0);
  REQUIRE_THROWS_AS(thermal_decompose(pd, p, gb), ArtanhPole);
}

TEST_CASE("boosted spinors reduce to basis states at rest") {
  const auto gb = dirac_basis();
  const auto p = four_momentum({0.0, 0.0, 0.0}, pi, 1.0);
  const auto q = boosted_spinors(p, gb);
  for (int le = 0; le < 2; ++le)
    for (int ls = 0; ls < 2; ++ls) {
      const auto want = basis_state(le, ls);
      const auto& got = q.psi[2 * le + ls];
      REQUIRE(vec_norm(vsub(got, want)) < 1e-14);
    }
}

TEST_CASE("boosted spinors are eigenvectors with consistent energy pairing") {
  const auto gb = dirac_basis();
  const auto p = four_momentum({0.0, 0.0, 1.0}, pi, 1.0);
  const auto pd = build_rho(p, gb);
  const auto q = boosted_spinors(p, gb);
  for (int i = 0; i < 4; ++i) {
    const auto resid = vec_norm(vsub(pd.rho * q.psi[i], scaled(q.psi[i], q.eigenvalue[i])));
    REQUIRE(resid <= tol::spectral);
  }
  // pairs with equal lambda_E share the eigenvalue; opposite pairs differ
  REQUIRE(q.eigenvalue[0] == q.eigenvalue[1]);
  REQUIRE(q.eigenvalue[2] == q.eigenvalue[3]);
  REQUIRE(q.eigenvalue[0] != q.eigenvalue[2]);
}

TEST_CASE("lambda_E = 0 maps to the (1 + chi)/4 branch across modes") {
  const auto gb = dirac_basis();
  auto samples = random_slab_modes(49, 50, false);
  for (auto& s : samples) {
    s.geom.m = 0.7;
    s.p = momentum(s.geom, s.mode);
    const auto pd = build_rho(s.p, gb, s.mode);
    const auto q = boosted_spinors(s.p, gb);
    for (int i = 0; i < 4; ++i) {
      const auto resid = vec_norm(vsub(pd.rho * q.psi[i], scaled(q.psi[i], q.eigenvalue[i])));
      REQUIRE(resid <= tol::spectral);
    }
    REQUIRE(std::abs(q.eigenvalue[0] - pd.lambda_plus) < 1e-13);
    REQUIRE(std::abs(q.eigenvalue[2] - pd.lambda_minus) < 1e-13);
  }
}

TEST_CASE("spin pairs span the eigen-decomposition subspaces") {
  const auto gb = dirac_basis();
  auto samples = random_slab_modes(50, 25, false);
  for (auto& s : samples) {
    s.geom.m = 1.1;
    s.p = momentum(s.geom, s.mode);
    const auto pd = build_rho(s.p, gb, s.mode);
    const auto q = boosted_spinors(s.p, gb);
    const auto es = eigen(pd.rho);
    for (int le = 0; le < 2; ++le) {
      const Complex lambda = (le == 0) ? pd.lambda_plus : pd.lambda_minus;
      // orthonormalize the spinor pair
      Vec4 a = q.psi[2 * le + 0];
      const double na = vec_norm(a);
      for (auto& z : a) z /= na;
      Vec4 b = q.psi[2 * le + 1];
      const Complex c = dot(a, b);
      for (int i = 0; i < 4; ++i) b[i] -= c * a[i];
      const double nb = vec_norm(b);
      for (auto& z : b) z /= nb;
      // gather the matching eigenvectors
      std::vector<Vec4> evs;
      for (int i = 0; i < 4; ++i)
        if (std::abs(es.values[i] - lambda) < 1e-10) evs.push_back(es.vectors[i]);
      REQUIRE(evs.size() == 2);
      // sine of the largest principal angle via the projector residual,
      // accurate near zero where acos(sigma_min) saturates at sqrt(eps)
      double angle = 0.0;
      for (const auto& ev : evs) {
        Vec4 res = ev;
        const Complex ca = dot(a, ev);
        const Complex cb = dot(b, ev);
        for (int i = 0; i < 4; ++i) res[i] -= ca * a[i] + cb * b[i];
        angle = std::max(angle, vec_norm(res));
      }
      REQUIRE(angle <= 1e-8);
    }
  }
}

TEST_CASE("massless spinors are rejected") {
  const auto gb = dirac_basis();
  const auto p = four_momentum({0.0, 0.0, pi}, pi, 0.0);
  REQUIRE_THROWS_AS(boosted_spinors(p, gb), MasslessSpinor);
}

TEST_CASE("realignment rank distinguishes product operators from rho") {
  const auto gb = dirac_basis();
  auto g = casq::testing::rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2 a = casq::testing::random_matrix<2>(g);
    const Mat2 b = casq::testing::random_matrix<2>(g);
    PseudoDensity prod;
    prod.rho = kron(a, b);
    prod.chi = 0.0;
    REQUIRE(realignment_rank(prod, 1e-10) == 1);
  }
  PseudoDensity maximally_mixed = chi_zero_density();
  REQUIRE(realignment_rank(maximally_mixed, 1e-10) == 1);
  for (const auto& s : random_slab_modes(52, 60)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    REQUIRE(realignment_rank(pd, 1e-10) >= 2);
  }
}

TEST_CASE("non-separability obstruction pattern in components") {
  // rho_{0,1} = 0 while the realigned operator keeps a second Schmidt channel:
  // the (0,1) component of any product A (x) B is A_00 B_01, forcing A_00 B_01 = 0,
  // which then contradicts the remaining components.
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(53, 20)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    REQUIRE(std::abs(pd.rho(0, 1)) < 1e-14);
    const auto sv = svd4(realign(pd.rho));
    REQUIRE(sv.sigma[1] > 1e-3 * sv.sigma[0]);
  }
}

TEST_CASE("product decomposition of the maximally mixed point") {
  const auto pd = chi_zero_density();
  const auto dec = product_decomposition(pd);
  REQUIRE(dec.residual <= 1e-12);
  REQUIRE(std::abs(dec.weight_sum - Complex(1.0)) < 1e-10);
  for (const auto& t : dec.terms) {
    const auto s1 = svd<2>(t.factor1);
    const auto s2 = svd<2>(t.factor2);
    REQUIRE(s1.sigma[1] <= 1e-12 * s1.sigma[0]);
    REQUIRE(s2.sigma[1] <= 1e-12 * s2.sigma[0]);
  }
}

TEST_CASE("product decomposition reconstructs rho with unit weight sum") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(54, 40)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const auto dec = product_decomposition(pd);
    REQUIRE(dec.terms.size() <= 8);
    REQUIRE(dec.residual <= tol::spectral);
    REQUIRE(std::abs(dec.weight_sum - Complex(1.0)) < 1e-10);
    for (const auto& t : dec.terms) {
      const auto s1 = svd<2>(t.factor1);
      const auto s2 = svd<2>(t.factor2);
      REQUIRE(s1.sigma[1] <= 1e-12 * s1.sigma[0]);
      REQUIRE(s2.sigma[1] <= 1e-12 * s2.sigma[0]);
      if (t.trace_normalized) {
        REQUIRE(std::abs(t.factor1.trace() - Complex(1.0)) < 1e-12);
        REQUIRE(std::abs(t.factor2.trace() - Complex(1.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("partial traces of rho give I/2 over either qubit at m = 0") {
  const auto gb = dirac_basis();
  const Mat2 half_id = Complex(0.5) * Mat2::identity();
  for (const auto& s : random_slab_modes(55, 60, false)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    REQUIRE((partial_trace(pd.rho, Subsystem::first) - half_id).max_abs() < tol::herm);
    REQUIRE((partial_trace(pd.rho, Subsystem::second) - half_id).max_abs() < tol::herm);
  }
}

TEST_CASE("massive modes keep I/2 only for the energy-qubit trace") {
  // tracing out the spin qubit leaves I/2 + (chi m / 2 omega_k) sigma_3; the
  // extra term vanishes only at m = 0
  const auto gb = dirac_basis();
  const Mat2 half_id = Complex(0.5) * Mat2::identity();
  Mat2 sigma3;
  sigma3(0, 0) = 1.0;
  sigma3(1, 1) = -1.0;
  for (auto s : random_slab_modes(58, 30, false)) {
    s.geom.m = 0.9;
    s.p = momentum(s.geom, s.mode);
    const auto pd = build_rho(s.p, gb, s.mode);
    REQUIRE((partial_trace(pd.rho, Subsystem::first) - half_id).max_abs() < tol::herm);
    const Mat2 want = half_id + (pd.chi * Complex(s.geom.m / (2.0 * s.p.omega_k))) * sigma3;
    REQUIRE((partial_trace(pd.rho, Subsystem::second) - want).max_abs() < tol::herm);
    REQUIRE(std::abs(partial_trace(pd.rho, Subsystem::second).trace() - Complex(1.0)) < 1e-14);
  }
}

TEST_CASE("entropies at the chi = 0 reference point") {
  const auto pd = chi_zero_density();
  REQUIRE(std::abs(von_neumann_entropy(pd) - Complex(std::log(4.0))) < 1e-14);
  REQUIRE(std::abs(conditional_entropy(pd) - Complex(std::log(2.0))) < 1e-14);
  REQUIRE(std::abs(log_det_rho(pd) - Complex(-std::log(256.0))) < 1e-13);
}

TEST_CASE("entropy and log det of the chi = -i mode") {
  const auto gb = dirac_basis();
  const SlabGeometry geom{1.0, 1.0, 1.0, 1.0, 0.0};
  const auto pd = build_rho(geom, Mode{0, 0, 1, 0}, gb);
  const double want_entropy = std::log(4.0 / std::sqrt(2.0)) + pi / 4.0;
  REQUIRE(std::abs(von_neumann_entropy(pd) - Complex(want_entropy)) < 1e-14);
  REQUIRE(std::abs(log_det_rho(pd) - Complex(-std::log(64.0))) < 1e-13);
}

TEST_CASE("entropy is real and consistent with the matrix-path computation") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(56, 40)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const Complex s_eig = von_neumann_entropy(pd);
    REQUIRE(std::abs(s_eig.imag()) < tol::herm);
    const Mat4 lr = mat_log(pd.rho);
    const Complex s_mat = -(pd.rho * lr).trace();
    REQUIRE(std::abs(s_eig - s_mat) < tol::alg);
    // conditional entropy is exactly the entropy shifted by log 2
    REQUIRE(conditional_entropy(pd) == s_eig - std::log(2.0));
  }
}

TEST_CASE("log det matches the closed form in omega ratios") {
  const auto gb = dirac_basis();
  for (const auto& s : random_slab_modes(57, 100)) {
    const auto pd = build_rho(s.p, gb, s.mode);
    const double ratio2 = (s.p.omega_k * s.p.omega_k) / (s.p.omega_n * s.p.omega_n);
    const Complex want = 2.0 * std::log((1.0 + ratio2) / 16.0);
    REQUIRE(std::abs(log_det_rho(pd) - want) < 1e-12);
  }
}
