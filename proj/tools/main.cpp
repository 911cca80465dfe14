// casimir-qubit: verification engine and calculator for the two-qubit
// pseudo-density description of parallel-plate vacuum fluctuations.
//
// Subcommands: verify | energy | mode | entropy-energy | zeta.
// Exit codes: 0 success, 1 failed verification checks, 2 configuration or
// usage errors, 3 numeric-domain errors (poles, unstable extrapolations,
// massless spinors, invalid modes).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "casq/casimir.hpp"
#include "casq/config.hpp"
#include "casq/entropy_energy.hpp"
#include "casq/pseudo_density.hpp"
#include "casq/report.hpp"
#include "casq/verify.hpp"
#include "casq/version.hpp"
#include "casq/zeta_reg.hpp"

namespace {

using namespace casq;

void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + cfg.out_path);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

int cmd_verify(const RunConfig& cfg) {
  auto report = run_verification(cfg.verify_config());
  report.config_echo = cfg.echo();
  std::string payload =
      (cfg.format == "json") ? report_to_json(report) + "\n" : report_to_csv(report);
  write_output(cfg, payload);
  return report.failed() > 0 ? 1 : 0;
}

int cmd_energy(const RunConfig& cfg, const std::string& field, const std::string& method) {
  const FieldKind kind =
      (field == "fermion") ? FieldKind::dirac_fermion : FieldKind::scalar_per_dof;
  CasimirResult result;
  if (method == "cutoff") {
    result = casimir_cutoff_oracle(cfg.geom.L, cfg.delta_grid.empty()
                                                   ? CutoffConfig::for_separation(cfg.geom.L)
                                                   : [&] {
                                                       CutoffConfig c;
                                                       c.delta_list = cfg.delta_grid;
                                                       return c;
                                                     }());
    if (kind == FieldKind::dirac_fermion) {
      result.energy_per_area *= 2.0;
      result.uncertainty *= 2.0;
      result.field = FieldKind::dirac_fermion;
    }
  } else {
    result = casimir_zeta(cfg.geom.L, kind);
  }
  if (cfg.format == "csv") {
    std::string payload = "field,method,L,energy_per_area,uncertainty\n";
    payload += std::string(field) + ',' + method + ',' + json_number(cfg.geom.L) + ',' +
               json_number(result.energy_per_area) + ',' + json_number(result.uncertainty) +
               '\n';
    write_output(cfg, payload);
  } else {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(kReportSchema);
    w.key("command");
    w.value("energy");
    w.key("field");
    w.value(field);
    w.key("method");
    w.value(method);
    w.key("L");
    w.value(cfg.geom.L);
    w.key("energy_per_area");
    w.value(result.energy_per_area);
    w.key("uncertainty");
    w.value(result.uncertainty);
    w.end_object();
    write_output(cfg, w.str() + "\n");
  }
  return 0;
}

int cmd_mode(const RunConfig& cfg, const Mode& mode, const std::string& what) {
  const auto gb = dirac_basis();
  const auto p = momentum(cfg.geom, mode);
  const auto pd = build_rho(p, gb, mode);
  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(kReportSchema);
  w.key("command");
  w.value("mode");
  w.key("mode");
  w.begin_object();
  w.key("j");
  w.value(mode.j);
  w.key("k");
  w.value(mode.k);
  w.key("l");
  w.value(mode.l);
  w.key("n");
  w.value(mode.n);
  w.end_object();
  w.key("omega_k");
  w.value(p.omega_k);
  w.key("omega_n");
  w.value(p.omega_n);
  w.key("chi");
  w.value(p.chi);
  w.key("what");
  w.value(what);
  if (what == "rho") {
    w.key("trace");
    w.value(pd.rho.trace());
    w.key("rho");
    w.value(pd.rho);
  } else if (what == "thermal") {
    const auto tf = thermal_decompose(pd, p, gb);
    w.key("A");
    w.value(tf.A);
    w.key("alpha");
    w.value(tf.alpha);
    w.key("beta_check");
    w.value(tf.beta_check);
    w.key("H");
    w.value(tf.H);
  } else if (what == "spectrum") {
    const auto es = eigen(pd.rho);
    w.key("eigenvalues");
    w.begin_array();
    for (const auto& [value, mult] : es.clusters()) {
      w.begin_object();
      w.key("value");
      w.value(value);
      w.key("multiplicity");
      w.value(mult);
      w.end_object();
    }
    w.end_array();
  } else if (what == "entropy") {
    w.key("entropy");
    w.value(von_neumann_entropy(pd).real());
    w.key("conditional_entropy");
    w.value(conditional_entropy(pd).real());
    w.key("log_det");
    w.value(log_det_rho(pd));
  } else if (what == "spinors") {
    const auto q = boosted_spinors(p, gb);
    w.key("spinors");
    w.begin_array();
    for (int le = 0; le < 2; ++le)
      for (int ls = 0; ls < 2; ++ls) {
        w.begin_object();
        w.key("lambda_E");
        w.value(le);
        w.key("lambda_s");
        w.value(ls);
        w.key("eigenvalue");
        w.value(q.eigenvalue[2 * le + ls]);
        w.key("components");
        w.value(q.psi[2 * le + ls]);
        w.end_object();
      }
    w.end_array();
  } else {
    throw ConfigError("mode: --what must be rho|thermal|spectrum|entropy|spinors");
  }
  w.end_object();
  write_output(cfg, w.str() + "\n");
  return 0;
}

int cmd_entropy_energy(const RunConfig& cfg) {
  SlabGeometry geom = cfg.geom;
  geom.m = 0.0;  // the regularized assembly is massless by construction
  const auto grid = cfg.verify_config().resolved_beta_grid();
  const auto result = entropy_energy_pipeline(geom, grid);
  if (cfg.format == "csv") {
    std::string payload = "beta,entropy_per_area,beta_inv_entropy\n";
    for (const auto& row : result.rows)
      payload += json_number(row.beta) + ',' + json_number(row.entropy_per_area) + ',' +
                 json_number(row.beta_inv_entropy) + '\n';
    payload += "inf,," + json_number(result.extrapolated) + '\n';  // summary row
    write_output(cfg, payload);
  } else {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(kReportSchema);
    w.key("command");
    w.value("entropy-energy");
    w.key("L");
    w.value(geom.L);
    w.key("rows");
    w.begin_array();
    for (const auto& row : result.rows) {
      w.begin_object();
      w.key("beta");
      w.value(row.beta);
      w.key("entropy_per_area");
      w.value(row.entropy_per_area);
      w.key("beta_inv_entropy");
      w.value(row.beta_inv_entropy);
      w.end_object();
    }
    w.end_array();
    w.key("extrapolated");
    w.value(result.extrapolated);
    w.key("casimir_target");
    w.value(result.casimir_target);
    w.key("magnitude_rel_err");
    w.value(result.magnitude_rel_err);
    w.key("monotone");
    w.value(result.monotone);
    w.key("stamps");
    w.begin_array();
    for (const auto& s : result.stamps) w.value(s);
    w.end_array();
    w.end_object();
    write_output(cfg, w.str() + "\n");
  }
  return 0;
}

int cmd_zeta(const RunConfig& cfg, const std::string& fn, double s, double a, int n, double x,
             const std::string& family) {
  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(kReportSchema);
  w.key("command");
  w.value("zeta");
  w.key("fn");
  w.value(fn);
  if (fn == "riemann") {
    w.key("s");
    w.value(s);
    w.key("value");
    w.value(riemann_zeta(s));
  } else if (fn == "hurwitz") {
    w.key("s");
    w.value(s);
    w.key("a");
    w.value(a);
    w.key("value");
    w.value(hurwitz_zeta(s, a));
  } else if (fn == "digamma") {
    w.key("x");
    w.value(x);
    w.key("value");
    w.value(digamma(x));
  } else if (fn == "bernoulli") {
    w.key("n");
    w.value(n);
    w.key("x");
    w.value(x);
    w.key("value");
    w.value(bernoulli_poly(n, x));
  } else if (fn == "zbeta") {
    const auto r = z_beta(s, cfg.geom.beta, family == "bosonic" ? MatsubaraFamily::bosonic
                                                                : MatsubaraFamily::fermionic);
    w.key("q");
    w.value(s);
    w.key("beta");
    w.value(cfg.geom.beta);
    w.key("family");
    w.value(family);
    w.key("value");
    w.value(r.value);
  } else if (fn == "zspatial") {
    SlabGeometry geom = cfg.geom;
    geom.m = 0.0;
    const auto r = z_spatial(s, geom);
    w.key("q");
    w.value(s);
    w.key("L");
    w.value(geom.L);
    w.key("value_per_area");
    w.value(r.value);
  } else {
    throw ConfigError("zeta: --fn must be riemann|hurwitz|digamma|bernoulli|zbeta|zspatial");
  }
  w.end_object();
  write_output(cfg, w.str() + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"casimir-qubit: pseudo-density verification engine for the parallel-plate "
               "Casimir setup"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string config_path;
  double L = 0, Lx = 0, Ly = 0, beta = 0, mass = 0;
  std::string window_spec, format, out_path, field = "scalar", method = "zeta";
  std::string mode_spec = "0,0,1,0", what = "rho";
  std::vector<std::string> tol_specs;
  std::string delta_spec, beta_grid_spec;
  int pmax = 0;
  unsigned threads = 0;
  std::string fn = "riemann", family = "fermionic";
  double s_arg = 2.0, a_arg = 1.0, x_arg = 1.0;
  int n_arg = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--L", L, "plate separation");
    sub->add_option("--Lx", Lx, "transverse extent x");
    sub->add_option("--Ly", Ly, "transverse extent y");
    sub->add_option("--beta", beta, "inverse temperature (length units)");
    sub->add_option("--mass", mass, "field mass");
    sub->add_option("--window", window_spec, "mode window j,k,l,n");
    sub->add_option("--pmax", pmax, "footnote ladder depth");
    sub->add_option("--threads", threads, "worker threads (deterministic reductions)");
    sub->add_option("--format", format, "output format: json or csv");
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--tol", tol_specs, "tolerance override CHECKID=VALUE")->take_all();
    sub->add_option("--delta-grid", delta_spec, "cutoff regulator grid, comma separated");
    sub->add_option("--beta-grid", beta_grid_spec, "entropy pipeline beta grid, comma separated");
  };

  auto* verify = app.add_subcommand("verify", "run the full identity suite");
  add_common(verify);
  auto* energy = app.add_subcommand("energy", "Casimir energy per unit area");
  add_common(energy);
  energy->add_option("--field", field, "scalar | fermion");
  energy->add_option("--method", method, "zeta | cutoff");
  auto* mode_cmd = app.add_subcommand("mode", "inspect a single slab mode");
  add_common(mode_cmd);
  mode_cmd->add_option("--mode", mode_spec, "mode indices j,k,l,n");
  mode_cmd->add_option("--what", what, "rho | thermal | spectrum | entropy | spinors");
  auto* ee = app.add_subcommand("entropy-energy", "entropy functional versus the Casimir energy");
  add_common(ee);
  auto* zeta_cmd = app.add_subcommand("zeta", "direct special-function evaluation");
  add_common(zeta_cmd);
  zeta_cmd->add_option("--fn", fn, "riemann|hurwitz|digamma|bernoulli|zbeta|zspatial");
  zeta_cmd->add_option("--s", s_arg, "argument s (or q for zbeta/zspatial)");
  zeta_cmd->add_option("--a", a_arg, "Hurwitz offset a");
  zeta_cmd->add_option("--x", x_arg, "evaluation point for digamma/bernoulli");
  zeta_cmd->add_option("--n", n_arg, "polynomial order for bernoulli");
  zeta_cmd->add_option("--family", family, "fermionic | bosonic (zbeta)");

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  try {
    RunConfig cfg;
    if (sub->count("--config")) apply_config_file(cfg, config_path);
    apply_environment(cfg);
    if (sub->count("--L")) cfg.geom.L = L;
    if (sub->count("--Lx")) cfg.geom.Lx = Lx;
    if (sub->count("--Ly")) cfg.geom.Ly = Ly;
    if (sub->count("--beta")) cfg.geom.beta = beta;
    if (sub->count("--mass")) cfg.geom.m = mass;
    if (sub->count("--window")) cfg.window = casq::detail::parse_window(window_spec);
    if (sub->count("--pmax")) cfg.pmax = pmax;
    if (sub->count("--threads")) cfg.threads = threads;
    if (sub->count("--format")) cfg.format = format;
    if (sub->count("--out")) cfg.out_path = out_path;
    if (sub->count("--delta-grid"))
      cfg.delta_grid = casq::detail::parse_double_list(delta_spec, "delta-grid");
    if (sub->count("--beta-grid"))
      cfg.beta_grid = casq::detail::parse_double_list(beta_grid_spec, "beta-grid");
    for (const auto& spec : tol_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects CHECKID=VALUE");
      cfg.tol_overrides[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    }
    cfg.validate();

    if (sub == verify) return cmd_verify(cfg);
    if (sub == energy) {
      if (field != "scalar" && field != "fermion")
        throw ConfigError("--field must be scalar or fermion");
      if (method != "zeta" && method != "cutoff")
        throw ConfigError("--method must be zeta or cutoff");
      return cmd_energy(cfg, field, method);
    }
    if (sub == mode_cmd) {
      const auto v = casq::detail::parse_double_list(mode_spec, "mode");
      if (v.size() != 4) throw ConfigError("--mode expects j,k,l,n");
      const Mode mode{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                      static_cast<int>(v[3])};
      return cmd_mode(cfg, mode, what);
    }
    if (sub == ee) return cmd_entropy_energy(cfg);
    if (sub == zeta_cmd) return cmd_zeta(cfg, fn, s_arg, a_arg, n_arg, x_arg, family);
    throw ConfigError("unknown subcommand");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
