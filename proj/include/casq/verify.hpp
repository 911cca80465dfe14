#pragma once

// The machine-checkable identity suite: every algebraic statement about the
// pseudo-density matrix, the special-function scaffolding, both Casimir
// pipelines, and the entropy-energy limit, evaluated over deterministic
// samples and reported with residual/tolerance pairs.
//
// Sampling is seeded from the config, evaluation parallelism only enters
// through order-independent reductions (max) or fixed-order compensated
// sums, so a report is a pure function of its config.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "casq/casimir.hpp"
#include "casq/entropy_energy.hpp"
#include "casq/kahan.hpp"
#include "casq/pseudo_density.hpp"
#include "casq/report.hpp"
#include "casq/zeta_reg.hpp"

namespace casq {

struct VerifyConfig {
  SlabGeometry geom;            // default: unit box, beta = 1, m = 0
  ModeWindow window{3, 3, 3, 3};
  std::vector<double> beta_grid;   // empty: {1, 2, 4, 8, 16} x L
  std::vector<double> delta_grid;  // empty: {0.2, 0.1, 0.05, 0.025} x L
  int pmax = 4;
  unsigned threads = 1;
  std::uint64_t seed = 1906;  // sampling seed; part of the config identity
  std::map<std::string, double> tol_overrides;

  std::vector<double> resolved_beta_grid() const {
    if (!beta_grid.empty()) return beta_grid;
    return {geom.L, 2.0 * geom.L, 4.0 * geom.L, 8.0 * geom.L, 16.0 * geom.L};
  }
  CutoffConfig resolved_cutoff() const {
    if (delta_grid.empty()) return CutoffConfig::for_separation(geom.L);
    CutoffConfig cfg;
    cfg.delta_list = delta_grid;
    return cfg;
  }
};

namespace detail {

struct SampledMode {
  SlabGeometry geom;
  Mode mode;
  FourMomentum p;
};

// deterministic sample of slab modes around the configured geometry
inline std::vector<SampledMode> sample_modes(const VerifyConfig& cfg, std::size_t count,
                                             bool force_massless, double mass_floor = 0.0) {
  std::mt19937_64 g(cfg.seed);
  std::uniform_real_distribution<double> jitter(0.75, 1.5);
  std::uniform_int_distribution<int> jidx(-cfg.window.jmax, cfg.window.jmax);
  std::uniform_int_distribution<int> kidx(-cfg.window.kmax, cfg.window.kmax);
  std::uniform_int_distribution<int> lidx(1, cfg.window.lmax);
  std::uniform_int_distribution<int> nidx(-cfg.window.nmax, cfg.window.nmax);
  std::vector<SampledMode> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SampledMode s;
    s.geom = cfg.geom;
    s.geom.Lx *= jitter(g);
    s.geom.Ly *= jitter(g);
    const double scale = jitter(g);
    s.geom.L *= scale;
    s.geom.beta = s.geom.L;  // beta = L keeps |chi| >= 1/(2 nmax + 1)
    if (force_massless)
      s.geom.m = 0.0;
    else if (mass_floor > 0.0)
      s.geom.m = mass_floor * jitter(g);
    s.mode = Mode{jidx(g), kidx(g), lidx(g), nidx(g)};
    s.p = momentum(s.geom, s.mode);
    out.push_back(s);
  }
  return out;
}

// max of f(i) over [0, n): order-independent, chunked across threads
inline double parallel_max(std::size_t n, unsigned threads,
                           const std::function<double(std::size_t)>& f) {
  if (n == 0) return 0.0;
  const unsigned nw = std::max(1u, std::min<unsigned>(threads, 16));
  std::vector<double> partial(nw, 0.0);
  auto run = [&](unsigned w) {
    double m = 0.0;
    for (std::size_t i = w; i < n; i += nw) m = std::max(m, f(i));
    partial[w] = m;
  };
  if (nw == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

class Recorder {
 public:
  Recorder(VerificationReport& report, const std::map<std::string, double>& overrides)
      : report_(report), overrides_(overrides) {}

  void check(const std::string& id, const std::string& statement, double residual,
             double tolerance, std::vector<std::string> stamps = {},
             const std::string& note = "") {
    if (auto it = overrides_.find(id); it != overrides_.end()) tolerance = it->second;
    CheckEntry e;
    e.id = id;
    e.statement = statement;
    e.residual = residual;
    e.tolerance = tolerance;
    e.status = (std::isfinite(residual) && residual <= tolerance) ? CheckStatus::pass
                                                                  : CheckStatus::fail;
    e.stamps = std::move(stamps);
    e.note = note;
    report_.checks.push_back(std::move(e));
  }

  void info(const std::string& id, const std::string& statement, const std::string& note) {
    CheckEntry e;
    e.id = id;
    e.statement = statement;
    e.status = CheckStatus::info;
    e.note = note;
    report_.checks.push_back(std::move(e));
  }

  void skip(const std::string& id, const std::string& statement, const std::string& reason) {
    CheckEntry e;
    e.id = id;
    e.statement = statement;
    e.status = CheckStatus::skip;
    e.note = reason;
    report_.checks.push_back(std::move(e));
  }

  void fail(const std::string& id, const std::string& statement, const std::string& note) {
    CheckEntry e;
    e.id = id;
    e.statement = statement;
    e.status = CheckStatus::fail;
    e.residual = std::numeric_limits<double>::infinity();
    e.note = note;
    report_.checks.push_back(std::move(e));
  }

 private:
  VerificationReport& report_;
  const std::map<std::string, double>& overrides_;
};

}  // namespace detail

inline VerificationReport run_verification(const VerifyConfig& cfg) {
  using detail::parallel_max;
  VerificationReport report;
  detail::Recorder rec(report, cfg.tol_overrides);
  const auto gb = dirac_basis();
  const double pi = std::numbers::pi;

  // ---- gamma-matrix algebra -------------------------------------------------
  {
    double r = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const Mat4 anti = gb.gamma(mu) * gb.gamma(nu) + gb.gamma(nu) * gb.gamma(mu);
        const Mat4 want = Complex(2.0 * GammaBasis::eta(mu, nu)) * Mat4::identity();
        r = std::max(r, (anti - want).max_abs());
      }
    rec.check("clifford.anticommutation", "{gamma^mu, gamma^nu} = 2 eta^{mu nu} I", r, 1e-14);
  }
  {
    double r = (gb.gamma0.adjoint() - gb.gamma0).max_abs();
    for (int i = 1; i < 4; ++i) r = std::max(r, (gb.gamma(i).adjoint() + gb.gamma(i)).max_abs());
    rec.check("clifford.hermiticity", "gamma0 hermitian, gamma_i anti-hermitian", r, 1e-14);
  }
  {
    double r = 0.0;
    for (int mu = 0; mu < 4; ++mu) r = std::max(r, std::abs(gb.gamma(mu).trace()));
    for (int i = 1; i < 4; ++i) r = std::max(r, std::abs((gb.gamma(i) * gb.gamma0).trace()));
    rec.check("clifford.traces", "tr gamma^mu = 0 and tr gamma_i gamma^0 = 0", r, 1e-14);
  }
  {
    double r = 0.0;
    for (int mu = 0; mu < 4; ++mu) r = std::max(r, std::abs(det(gb.gamma(mu)) - Complex(1.0)));
    rec.check("clifford.determinants", "det gamma^mu = 1", r, 1e-13);
  }
  {
    const Mat4& b = gb.metric_B;
    double r = (b * b - Mat4::identity()).max_abs();
    r = std::max(r, std::abs(b.trace()));
    r = std::max(r, (b * gb.metric_B_inv - Mat4::identity()).max_abs());
    rec.check("clifford.metric", "B = g1 g2 g3 squares to I, traceless, self-inverse", r,
              1e-14);
  }

  // ---- pseudo-density algebra over randomized slab modes --------------------
  const auto massless = detail::sample_modes(cfg, 1000, true);
  const auto n_modes = massless.size();

  rec.check("density.trace_one", "tr rho = 1",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto pd = build_rho(massless[i].p, gb, massless[i].mode);
                           return std::abs(pd.rho.trace() - Complex(1.0));
                         }),
            1e-14);
  rec.check("density.involution", "B^2 = I and tr B = 0",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const Mat4 b = build_B(massless[i].p, gb);
                           return std::max((b * b - Mat4::identity()).max_abs(),
                                           std::abs(b.trace()));
                         }),
            1e-13);
  rec.check("density.dual_construction",
            "(kslash + m) gamma^0 / 4k^0 agrees with (I + chi B)/4 entrywise",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto& s = massless[i];
                           const Complex quarter(0.25);
                           const Mat4 a =
                               ((slash(s.p, gb) + Complex(s.p.mass()) * Mat4::identity()) *
                                gb.gamma0) *
                               (quarter / s.p.k0);
                           const Mat4 b = quarter * (Mat4::identity() + s.p.chi * build_B(s.p, gb));
                           return (a - b).max_abs();
                         }),
            1e-13);
  rec.check("density.spectrum", "eigenvalues (1 +- chi)/4, each with multiplicity 2",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto pd = build_rho(massless[i].p, gb, massless[i].mode);
                           const auto es = eigen(pd.rho);
                           double r = 0.0;
                           for (const auto& [v, mult] : es.clusters()) {
                             if (mult != 2) return 1.0;
                             r = std::max(r, std::min(std::abs(v - pd.lambda_plus),
                                                      std::abs(v - pd.lambda_minus)));
                           }
                           return r;
                         }),
            1e-12);
  rec.check("density.purity", "tr rho^2 = (1 - omega_k^2/omega_n^2)/4 < 1",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto& s = massless[i];
                           const auto pd = build_rho(s.p, gb, s.mode);
                           const double want =
                               (1.0 - s.p.omega_k * s.p.omega_k / (s.p.omega_n * s.p.omega_n)) /
                               4.0;
                           const Complex got = purity(pd);
                           if (got.real() >= 1.0) return 1.0;
                           return std::abs(got - Complex(want));
                         }),
            1e-13);
  rec.check("density.pseudo_hermiticity", "B rho^dagger = rho B for B = g1 g2 g3",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto pd = build_rho(massless[i].p, gb, massless[i].mode);
                           return (gb.metric_B * pd.rho.adjoint() - pd.rho * gb.metric_B)
                               .max_abs();
                         }),
            1e-13);
  rec.check("density.partial_trace", "partial trace over either qubit is I/2 (m = 0)",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto pd = build_rho(massless[i].p, gb, massless[i].mode);
                           const Mat2 half = Complex(0.5) * Mat2::identity();
                           return std::max(
                               (partial_trace(pd.rho, Subsystem::first) - half).max_abs(),
                               (partial_trace(pd.rho, Subsystem::second) - half).max_abs());
                         }),
            1e-13);
  rec.check("density.thermal_reconstruction",
            "exp(-beta_check H)/tr exp(-beta_check H) reproduces rho",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto& s = massless[i];
                           const auto pd = build_rho(s.p, gb, s.mode);
                           const auto tf = thermal_decompose(pd, s.p, gb);
                           double r = std::abs(tf.A * std::cosh(tf.alpha) - Complex(0.25));
                           r = std::max(r, std::abs(tf.A * std::sinh(tf.alpha) - pd.chi / 4.0));
                           const Mat4 e = mat_exp(Complex(-tf.beta_check) * tf.H);
                           r = std::max(r, ((e * (Complex(1.0) / e.trace())) - pd.rho).max_abs());
                           return r;
                         }),
            1e-10);
  rec.check("density.herm_split",
            "rho = hermitian + anti-hermitian parts, hermitian part I/4 on-lattice",
            parallel_max(n_modes, cfg.threads,
                         [&](std::size_t i) {
                           const auto pd = build_rho(massless[i].p, gb, massless[i].mode);
                           const Mat4 hp = Complex(0.5) * (pd.rho + pd.rho.adjoint());
                           const Mat4 hm = Complex(0.5) * (pd.rho - pd.rho.adjoint());
                           double r = ((hp + hm) - pd.rho).max_abs();
                           r = std::max(r, (hp - Complex(0.25) * Mat4::identity()).max_abs());
                           return r;
                         }),
            1e-13);

  // spinor checks need a massive configuration
  if (cfg.geom.m > 0.0) {
    const auto massive = detail::sample_modes(cfg, 200, false, cfg.geom.m);
    rec.check("density.spinor_eigenvectors",
              "boosted spinors are eigenvectors of rho (residual norm)",
              parallel_max(massive.size(), cfg.threads,
                           [&](std::size_t i) {
                             const auto& s = massive[i];
                             const auto pd = build_rho(s.p, gb, s.mode);
                             const auto q = boosted_spinors(s.p, gb);
                             double r = 0.0;
                             for (int k = 0; k < 4; ++k)
                               r = std::max(r, vec_norm(vsub(pd.rho * q.psi[k],
                                                             scaled(q.psi[k], q.eigenvalue[k]))));
                             return r;
                           }),
              1e-10);
    rec.check("density.spinor_subspaces",
              "spin pairs span the eigen-decomposition subspaces (sine of angle)",
              parallel_max(massive.size(), cfg.threads,
                           [&](std::size_t i) {
                             const auto& s = massive[i];
                             const auto pd = build_rho(s.p, gb, s.mode);
                             const auto q = boosted_spinors(s.p, gb);
                             const auto es = eigen(pd.rho);
                             double worst = 0.0;
                             for (int le = 0; le < 2; ++le) {
                               Vec4 a = q.psi[2 * le];
                               const double na = vec_norm(a);
                               for (auto& z : a) z /= na;
                               Vec4 b = q.psi[2 * le + 1];
                               const Complex c = dot(a, b);
                               for (int t = 0; t < 4; ++t) b[t] -= c * a[t];
                               const double nb = vec_norm(b);
                               for (auto& z : b) z /= nb;
                               const Complex lambda =
                                   (le == 0) ? pd.lambda_plus : pd.lambda_minus;
                               for (int t = 0; t < 4; ++t) {
                                 if (std::abs(es.values[t] - lambda) > 1e-10) continue;
                                 Vec4 res = es.vectors[t];
                                 const Complex ca = dot(a, es.vectors[t]);
                                 const Complex cb = dot(b, es.vectors[t]);
                                 for (int u = 0; u < 4; ++u) res[u] -= ca * a[u] + cb * b[u];
                                 worst = std::max(worst, vec_norm(res));
                               }
                             }
                             return worst;
                           }),
              1e-8);
  } else {
    rec.skip("density.spinor_eigenvectors", "boosted spinors are eigenvectors of rho",
             "MasslessSpinor: spinor checks require m > 0");
    rec.skip("density.spinor_subspaces", "spin pairs span the eigen-decomposition subspaces",
             "MasslessSpinor: spinor checks require m > 0");
  }

  // separability probes; for massless modes sigma2/sigma1 = min(|chi|, 1/|chi|),
  // so the sampled window pins |chi| inside (1/7, 5) to make the 0.1 bound a
  // theorem rather than an accident
  {
    SlabGeometry box;
    box.Lx = box.Ly = box.L = box.beta = cfg.geom.L;
    double min_ratio = 1.0;
    for (const auto& mode : enumerate_modes(ModeWindow{1, 1, 3, 3})) {
      const auto pd = build_rho(momentum(box, mode), gb, mode);
      const auto sv = svd4(realign(pd.rho));
      min_ratio = std::min(min_ratio, sv.sigma[1] / sv.sigma[0]);
      if (realignment_rank(pd, 1e-10) < 2) min_ratio = 0.0;
    }
    // control: explicit product states must collapse to rank 1
    std::mt19937_64 g(cfg.seed + 7);
    double control = 0.0;
    for (int t = 0; t < 16; ++t) {
      Mat2 a, b;
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (auto& z : a.e) z = Complex(u(g), u(g));
      for (auto& z : b.e) z = Complex(u(g), u(g));
      PseudoDensity prod;
      prod.rho = kron(a, b);
      prod.chi = 0.0;
      control = std::max(control, realignment_rank(prod, 1e-10) == 1 ? 0.0 : 1.0);
    }
    rec.check("density.realignment_rank",
              "operator-Schmidt rank of rho >= 2 with sigma2/sigma1 > 0.1; product controls rank 1",
              (min_ratio > 0.1 ? 0.0 : 1.0) + control, 0.5,
              {"1x1x3 transverse window with nmax = 3 and beta = L keeps |chi| in (1/7, 5)"},
              "min sigma2/sigma1 = " + json_number(min_ratio));
  }
  rec.check("density.product_decomposition",
            "constructive rank-1 (x) rank-1 decomposition: residual and weight sum",
            parallel_max(std::min<std::size_t>(n_modes, 200), cfg.threads,
                         [&](std::size_t i) {
                           const auto pd = build_rho(massless[i].p, gb, massless[i].mode);
                           const auto dec = product_decomposition(pd);
                           return std::max(dec.residual,
                                           std::abs(dec.weight_sum - Complex(1.0)));
                         }),
            1e-10);
  rec.check("density.rotation_invariance",
            "spectrum depends on kvec only through |kvec|",
            [&] {
              std::mt19937_64 g(cfg.seed + 12);
              std::uniform_real_distribution<double> u(-1.0, 1.0);
              double worst = 0.0;
              for (std::size_t i = 0; i < n_modes; i += 50) {
                const auto& s = massless[i];
                std::array<double, 3> a{u(g), u(g), u(g)};
                const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
                if (na < 0.2) continue;
                for (auto& x : a) x /= na;
                // Householder reflection keeps |k| fixed
                std::array<double, 3> kr{};
                double ak = a[0] * s.p.kvec[0] + a[1] * s.p.kvec[1] + a[2] * s.p.kvec[2];
                for (int t = 0; t < 3; ++t) kr[t] = s.p.kvec[t] - 2.0 * ak * a[t];
                const auto rot = four_momentum(kr, s.p.omega_n, s.geom.m);
                const auto pd = build_rho(s.p, gb, s.mode);
                const auto pd_rot = build_rho(rot, gb);
                worst = std::max(worst, std::abs(pd.lambda_plus - pd_rot.lambda_plus));
              }
              return worst;
            }(),
            1e-12);

  // ---- per-mode determinant identity ----------------------------------------
  {
    std::mt19937_64 g(cfg.seed + 3);
    std::uniform_real_distribution<double> comp(-5.0, 5.0);
    std::uniform_real_distribution<double> wn(0.3, 6.0);
    std::uniform_real_distribution<double> mass(0.0, 2.0);
    struct P {
      FourMomentum p;
      double m;
    };
    std::vector<P> ps;
    for (int t = 0; t < 500; ++t) {
      const double m = (t % 2 == 0) ? mass(g) : 0.0;
      ps.push_back({four_momentum({comp(g), comp(g), comp(g)},
                                  wn(g) * (t % 3 ? 1.0 : -1.0), m),
                    m});
    }
    rec.check("slp.mode_identity",
              "(omega_n^2 + omega_k^2)^4 = [det4(kslash + m)]^2 per mode",
              parallel_max(ps.size(), cfg.threads,
                           [&](std::size_t i) {
                             const auto [lhs, rhs] = slp_mode_check(ps[i].p, gb, ps[i].m);
                             return std::abs(lhs - rhs) / std::abs(lhs);
                           }),
              1e-12);
  }

  // ---- special functions ------------------------------------------------------
  {
    double r = 0.0;
    for (int p = 1; p <= 10; ++p) r = std::max(r, std::abs(hurwitz_zeta(-2.0 * p, 0.5)));
    rec.check("zeta.hurwitz_half_zeros", "zeta_H(-2p, 1/2) = 0 for p = 1..10", r, 1e-14);
  }
  {
    double r = 0.0;
    for (int p = 1; p <= 5; ++p)
      r = std::max(r, std::abs(z_beta(-2.0 * p, cfg.geom.beta, MatsubaraFamily::fermionic).value));
    rec.check("zeta.zbeta_zeros", "fermionic Z_beta(-2p) = 0 for p = 1..5", r, 1e-14);
  }
  {
    double r = std::abs(hurwitz_zeta(3.0, 1.0) - riemann_zeta(3.0));
    r = std::max(r, std::abs(hurwitz_zeta(4.0, 0.5) - 15.0 * riemann_zeta(4.0)));
    r = std::max(r, std::abs(riemann_zeta(2.0) - pi * pi / 6.0));
    r = std::max(r, std::abs(riemann_zeta(-3.0) - 1.0 / 120.0));
    rec.check("zeta.consistency",
              "zeta_H(s,1) = zeta(s); zeta_H(s,1/2) = (2^s - 1) zeta(s); zeta(2), zeta(-3)", r,
              1e-12);
  }
  {
    const double s = 3.7;
    double r = std::abs(digamma(s + 1.0) - digamma(s) - 1.0 / s);
    r = std::max(r, std::abs(digamma(0.75) - digamma(0.25) - pi / std::tan(pi * 0.25)));
    r = std::max(r, std::abs(digamma(1.0) + 0.5772156649015328606));
    rec.check("digamma.identities", "recurrence, reflection at 1/4, psi(1) = -gamma", r, 1e-10);
  }
  try {
    z_spatial(2.0, SlabGeometry{1, 1, cfg.geom.L, 1, 0.0});
    rec.fail("zeta.zspatial_pole_p1", "Z(2) continuation pole must be detected",
             "no pole raised at q = 2");
  } catch (const PoleDetected&) {
    rec.info("zeta.zspatial_pole_p1", "Z(2) continuation pole at q = 2",
             "pole detected; the p = 1 footnote product is evaluated factor-wise and "
             "reported, not asserted");
  }

  // ---- Matsubara closed forms -------------------------------------------------
  {
    double r = 0.0;
    for (double beta : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      for (double omega : {0.5, 1.0, pi, 10.0}) {
        const double closed = 2.0 * log_cosh(0.5 * beta * omega);
        const double truncated = matsubara_log_sum_truncated(omega, beta);
        r = std::max(r, std::abs(truncated - closed) / std::max(1.0, std::abs(closed)));
      }
    }
    rec.check("matsubara.closed_form",
              "sum_n ln(1 + omega^2/omega_n^2) = 2 ln cosh(beta omega / 2) on a 20-point grid",
              r, 1e-9);
  }
  {
    const double omega = pi / cfg.geom.L;
    const double beta = 50.0 / omega;
    const auto r = matsubara_entropy_sum(SlabGeometry{1, 1, cfg.geom.L, beta, 0.0},
                                         Mode{0, 0, 1, 0});
    const double asymptote = 2.0 * omega - 4.0 * std::numbers::ln2 / beta;
    rec.check("matsubara.zero_temperature",
              "beta^{-1} x Matsubara-summed log det -> 2 omega at beta omega = 50",
              std::abs(r.closed_form / beta - asymptote) / (2.0 * omega), 1e-9,
              {"the beta^{-1} ln 16 constant sits in the regularized-zero bucket"});
  }

  // ---- footnote ladder ----------------------------------------------------------
  {
    const auto fr = footnote_identity_check(cfg.geom, std::max(2, cfg.pmax));
    double r = 0.0;
    std::string values;
    for (const auto& e : fr.entries) {
      r = std::max(r, std::abs(e.z_beta_value));
      values += "p=" + std::to_string(e.p) + ": Z_beta=" + json_number(e.z_beta_value) +
                (e.z_spatial_pole ? " Z(2p)=pole; " : " Z(2p)=" + json_number(e.z_spatial_value) + "; ");
    }
    rec.check("footnote.ladder", "tr(beta rho H) ladder: Z_beta(-2p) = 0 for all p", r, 1e-14,
              {"p = 1 factor Z(2) reported as a pole, see zeta.zspatial_pole_p1"}, values);
    rec.check("footnote.series",
              "(chi/2) ln((1+chi)/(1-chi)) equals its Taylor resummation at chi = -0.3i",
              fr.series_residual, 1e-12);
  }

  // ---- Casimir pipelines ----------------------------------------------------------
  {
    double r = 0.0;
    for (double L : {0.5, 1.0, 2.0}) {
      const double want_s = -pi * pi / (1440.0 * L * L * L);
      const double want_f = -pi * pi / (720.0 * L * L * L);
      const auto s = casimir_zeta(L, FieldKind::scalar_per_dof);
      const auto f = casimir_zeta(L, FieldKind::dirac_fermion);
      r = std::max(r, std::abs(s.energy_per_area / want_s - 1.0));
      r = std::max(r, std::abs(f.energy_per_area / want_f - 1.0));
      r = std::max(r, std::abs(f.energy_per_area - 2.0 * s.energy_per_area) / std::abs(want_f));
    }
    rec.check("casimir.zeta_closed",
              "E/S = -pi^2/1440 L^3 per scalar dof and -pi^2/720 L^3 for the Dirac field "
              "through the zeta(-3) = 1/120 chain",
              r, 1e-14);
  }
  {
    double r = 0.0;
    for (double L : {0.5, 1.0, 2.0}) {
      const auto oracle = casimir_cutoff_oracle(
          L, cfg.delta_grid.empty() ? CutoffConfig::for_separation(L) : cfg.resolved_cutoff());
      const auto closed = casimir_zeta(L, FieldKind::scalar_per_dof);
      r = std::max(r, std::abs(oracle.energy_per_area / closed.energy_per_area - 1.0));
    }
    rec.check("casimir.oracle_agreement",
              "exponential-cutoff extrapolation matches the zeta pipeline", r, 1e-3);
  }
  {
    const auto ec = casimir_zeta(cfg.geom.L, FieldKind::scalar_per_dof);
    double r = std::abs(effective_energy(ec, 0.0, 1.0) - ec.energy_per_area);
    const double corr = effective_energy(ec, 32.0 * pi * pi, 1.0) - ec.energy_per_area;
    r = std::max(r, std::abs(corr - (2.0 * std::numbers::ln2 - 2.0)));
    rec.check("casimir.effective_energy",
              "E_eff = E_c + C2 (psi(1) - psi(-1/2))/(32 pi^2 ell); identity at C2 = 0", r,
              1e-12);
  }

  // ---- entropy-energy pipeline ---------------------------------------------------
  {
    SlabGeometry geom = cfg.geom;
    geom.m = 0.0;
    const auto result = entropy_energy_pipeline(geom, cfg.resolved_beta_grid());
    rec.check("entropy.headline",
              "|beta^{-1} S| -> pi^2/(720 L^3), the Dirac Casimir magnitude",
              result.magnitude_rel_err, 1e-3, result.stamps,
              "extrapolated " + json_number(result.extrapolated) + " vs target " +
                  json_number(result.casimir_target));
    rec.check("entropy.monotone", "beta^{-1} S increases monotonically towards its limit",
              result.monotone ? 0.0 : 1.0, 0.5);
  }
  {
    double base = 0.0;
    double r = 0.0;
    for (double L : {0.5, 1.0, 2.0}) {
      SlabGeometry geom;
      geom.L = L;
      const auto res = entropy_energy_pipeline(
          geom, {1.0 * L, 2.0 * L, 4.0 * L, 8.0 * L, 16.0 * L});
      const double scaled = res.extrapolated * L * L * L;
      if (base == 0.0) base = scaled;
      r = std::max(r, std::abs(scaled / base - 1.0));
    }
    rec.check("entropy.l_scaling", "extrapolated beta^{-1} S scales as 1/L^3", r, 1e-3);
  }
  {
    const double omega = pi / cfg.geom.L;
    double prev = thermodynamic_entropy_per_mode(omega, cfg.geom.beta);
    bool monotone = true;
    double last = prev;
    for (double beta : cfg.resolved_beta_grid()) {
      last = thermodynamic_entropy_per_mode(omega, beta);
      if (last > prev) monotone = false;
      prev = last;
    }
    // drive beta far enough that the Nernst limit is visible
    last = thermodynamic_entropy_per_mode(omega, 20.0 * cfg.geom.L);
    rec.check("entropy.thermo_nernst",
              "thermodynamic S_T per mode decreases to < 1e-6 as beta grows",
              monotone ? last : 1.0, 1e-6);
  }
  {
    std::vector<Mode> sample;
    for (int l = 1; l <= std::min(3, cfg.window.lmax); ++l)
      for (int j = 0; j <= std::min(2, cfg.window.jmax); ++j) sample.push_back(Mode{j, 0, l, 0});
    SlabGeometry geom = cfg.geom;
    geom.m = 0.0;
    const auto entries = gamma_equals_minus_entropy_check(geom, sample);
    double r_tr = 0.0, r_id = 0.0, r_bk = 0.0;
    double beta_sign = 0.0;
    for (const auto& e : entries) {
      r_tr = std::max(r_tr, e.max_beta_H_trace);
      r_id = std::max(r_id, e.identity_residual);
      r_bk = std::max(r_bk, e.bucket_residual);
      beta_sign = e.beta_check_first;
    }
    rec.check("entropy.beta_H_trace", "tr(beta_check H) = 0 per mode, exactly", r_tr, 1e-15);
    rec.check("entropy.gamma_chain",
              "Matsubara-summed conditional entropy + log det matches the eigenvalue "
              "reconstruction",
              r_id, 1e-10);
    rec.check("entropy.constant_bucket",
              "per-window constant bucket = count x (-2 ln 16), regularized to 0 by the "
              "count-sum convention",
              r_bk, 1e-10, {"count_sum = 0 via 2 zeta_H(0, 1/2) = 0"});
    rec.info("entropy.pseudo_temperature_sign",
             "observed sign of beta_check under principal branches",
             beta_sign < 0 ? "negative for omega_k/omega_n > 0 (recorded, not asserted)"
                           : "non-negative (recorded)");
  }

  return report;
}

}  // namespace casq
