#include "mbd/cli_ops.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include "mbd/closedforms.hpp"
#include "mbd/perturbation.hpp"
#include "parallel.hpp"

namespace mbd {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  out << content;
}

void append_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw ConfigError("cannot open ledger file '" + path + "'");
  }
  out << content;
}

Vector3c parse_constants(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(path + ": expected three complex constants");
  }
  Vector3c c;
  for (int k = 0; k < 3; ++k) {
    c(k) = parse_complex(j.at(k), path + "[" + std::to_string(k) + "]");
  }
  return c;
}

DressableState build_state(const ScenarioConfig& cfg) {
  DressingChain chain{cfg.seed, cfg.steps};
  DressableState state = evaluate_chain(chain);
  if (cfg.verify.inject_corruption) {
    const double factor = cfg.verify.corruption_factor;
    const FieldEvaluator original = state.fields.e_plus;
    state.fields.e_plus = [original, factor](double tau, double zeta) {
      return factor * original(tau, zeta);
    };
  }
  return state;
}

}  // namespace

int cmd_generate(const ScenarioConfig& cfg, const std::string& out_path) {
  const DressableState state = build_state(cfg);
  const Grid2D& grid = cfg.grid;
  const std::size_t n_nodes = state.fields.detuning.n_nodes();

  std::string header = "tau,zeta,re_em,im_em,re_ep,im_ep";
  if (cfg.output.include_bloch) {
    for (std::size_t n = 0; n < n_nodes; ++n) {
      const std::string s = "_" + std::to_string(n);
      header += ",n_am" + s + ",n_ap" + s + ",n_b" + s + ",re_nup" + s +
                ",im_nup" + s + ",re_num" + s + ",im_num" + s + ",re_nua" + s +
                ",im_nua" + s;
    }
  }

  std::vector<std::string> rows(
      static_cast<std::size_t>(grid.n_tau) * grid.n_zeta);
  detail::parallel_for(grid.n_tau, [&](int i) {
    const double tau = grid.tau(i);
    for (int j = 0; j < grid.n_zeta; ++j) {
      const double zeta = grid.zeta(j);
      const Complex em = state.fields.e_minus(tau, zeta);
      const Complex ep = state.fields.e_plus(tau, zeta);
      std::string row = fmt(tau) + "," + fmt(zeta) + "," + fmt(em.real()) +
                        "," + fmt(em.imag()) + "," + fmt(ep.real()) + "," +
                        fmt(ep.imag());
      if (cfg.output.include_bloch) {
        for (std::size_t n = 0; n < n_nodes; ++n) {
          const BlochComponents c = state.fields.bloch(n, tau, zeta);
          row += "," + fmt(c.n_am) + "," + fmt(c.n_ap) + "," + fmt(c.n_b) +
                 "," + fmt(c.nu_p.real()) + "," + fmt(c.nu_p.imag()) + "," +
                 fmt(c.nu_m.real()) + "," + fmt(c.nu_m.imag()) + "," +
                 fmt(c.nu_a.real()) + "," + fmt(c.nu_a.imag());
        }
      }
      rows[static_cast<std::size_t>(i) * grid.n_zeta + j] = std::move(row);
    }
  });

  std::string content = header + "\n";
  for (const auto& row : rows) {
    content += row;
    content += "\n";
  }
  write_file(out_path, content);
  return kExitOk;
}

int cmd_verify(const ScenarioConfig& cfg, const std::string& out_path) {
  const DressableState state = build_state(cfg);
  const VerifySpec& v = cfg.verify;
  bool pass = true;
  std::string report;

  auto record = [&](const std::string& name, double value, double tolerance) {
    report += "check." + name + " = " + fmt(value) + "\n";
    report += "tolerance." + name + " = " + fmt(tolerance) + "\n";
    const bool ok = value <= tolerance;
    report += std::string("pass.") + name + " = " + (ok ? "1" : "0") + "\n";
    pass = pass && ok;
  };

  for (const std::string& check : v.checks) {
    if (check == "mb") {
      const ResidualReport r = residual_mb(state.fields, cfg.grid, v.h, v.order);
      report += r.to_text();
      record("mb", r.max_residual(), v.tolerance("mb", 1e-5));
    } else if (check == "pure") {
      if (!state.fields.pure_state) {
        throw MissingPureState(
            "verify.checks: 'pure' requested but the state carries no "
            "pure-state evaluator");
      }
      const ResidualReport r =
          residual_pure(state.fields, cfg.grid, v.h, v.order);
      report += r.to_text();
      record("pure", r.max_residual(), v.tolerance("pure", 1e-5));
    } else if (check == "zcr") {
      const MBFieldState& f = state.fields;
      const ResidualReport r = residual_zcr(
          [&f](double tau, double zeta) { return f.U(tau, zeta); },
          [&f](std::size_t n, double tau, double zeta) {
            return f.A(n, tau, zeta);
          },
          f.detuning, cfg.grid, v.h, v.order);
      report += r.to_text();
      record("zcr", r.max_residual(), v.tolerance("zcr", 1e-5));
    } else if (check == "linearized") {
      const Json& p = cfg.perturb;
      if (!p.is_object()) {
        throw ConfigError(
            "verify.checks: 'linearized' needs a perturb config section");
      }
      const auto pert = infinitesimal_dt(
          state, parse_complex(p.at("mu"), "perturb.mu"),
          parse_constants(p.at("C_right"), "perturb.C_right"),
          parse_constants(p.at("C_left"), "perturb.C_left"));
      const ResidualReport r =
          linearized_residual(state, pert, cfg.grid, v.h, v.order);
      report += r.to_text();
      record("linearized", r.max_residual(), v.tolerance("linearized", 1e-5));
    } else if (check == "conservation") {
      const ConservationReport c = conservation_report(state.fields, cfg.grid);
      report += c.to_text();
      record("hermiticity", c.hermiticity_dev,
             v.tolerance("hermiticity", 1e-10));
      record("trace_drift", c.trace_drift, v.tolerance("trace_drift", 1e-9));
      record("trace_sq_drift", c.trace_sq_drift,
             v.tolerance("trace_sq_drift", 1e-9));
      if (c.has_pure) {
        record("purity_norm_drift", c.purity_norm_drift,
               v.tolerance("purity_norm_drift", 1e-10));
      }
    }
  }
  report += std::string("verify.pass = ") + (pass ? "1" : "0") + "\n";
  write_file(out_path, report);
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_reconcile(const ScenarioConfig& cfg, const std::string& out_path) {
  const Json& r = cfg.reconcile;
  if (!r.is_object()) {
    throw ConfigError("reconcile: missing config section");
  }
  if (!r.contains("family") || !r.at("family").is_string()) {
    throw ConfigError("reconcile.family: expected a string");
  }
  const std::string family = r.at("family").get<std::string>();
  const bool uncorrected =
      r.contains("mode") && r.at("mode").is_string() &&
      r.at("mode").get<std::string>() == "uncorrected";

  ErrataEntry entry;
  if (family == "two_soliton") {
    TwoSolitonParams p;
    p.mu = parse_complex(r.at("mu"), "reconcile.mu");
    const Vector3c c1 = parse_constants(r.at("C1"), "reconcile.C1");
    const Vector3c c2 = parse_constants(r.at("C2"), "reconcile.C2");
    p.a1 = c1(0);
    p.b1 = c1(1);
    p.c1 = c1(2);
    p.a2 = c2(0);
    p.b2 = c2(1);
    p.c2 = c2(2);
    entry = reconcile_two_soliton(p, cfg.seed.detuning, cfg.grid, uncorrected);
  } else if (family == "dressed_periodic") {
    DressedPeriodicParams p;
    p.E = parse_complex(r.at("E"), "reconcile.E");
    p.branch = r.contains("branch") ? r.at("branch").get<int>() : 1;
    p.gamma = parse_complex(r.at("gamma"), "reconcile.gamma");
    const Vector3c c = parse_constants(r.at("C"), "reconcile.C");
    p.C1 = c(0);
    p.C_plus = c(1);
    p.C_minus = c(2);
    entry =
        reconcile_dressed_periodic(p, cfg.seed.detuning, cfg.grid, uncorrected);
  } else {
    throw ConfigError("reconcile.family: unknown family '" + family + "'");
  }

  write_file(out_path, entry.csv_header() + "\n" + entry.to_csv_row() + "\n");
  if (r.contains("ledger") && r.at("ledger").is_string()) {
    append_file(r.at("ledger").get<std::string>(), entry.to_markdown());
  }
  std::cout << "reconcile." << entry.family << "." << entry.mode
            << ".max_deviation = " << fmt(entry.max_deviation) << "\n";
  return kExitOk;
}

int cmd_perturb(const ScenarioConfig& cfg, const std::string& out_path) {
  const Json& p = cfg.perturb;
  if (!p.is_object()) {
    throw ConfigError("perturb: missing config section");
  }
  const DressableState base = build_state(cfg);

  const Complex mu = parse_complex(p.at("mu"), "perturb.mu");
  const Vector3c c_right = parse_constants(p.at("C_right"), "perturb.C_right");
  const Vector3c c_left = parse_constants(p.at("C_left"), "perturb.C_left");
  const Complex direction =
      p.contains("direction")
          ? parse_complex(p.at("direction"), "perturb.direction")
          : Complex{1.0, 0.0};

  std::vector<double> deltas = {1e-4, 5e-5, 2.5e-5};
  if (p.contains("deltas")) {
    if (!p.at("deltas").is_array()) {
      throw ConfigError("perturb.deltas: expected an array of numbers");
    }
    deltas.clear();
    for (const auto& d : p.at("deltas")) deltas.push_back(d.get<double>());
  }

  Grid2D sample;
  sample.tau_min = -2.0;
  sample.tau_max = 2.0;
  sample.n_tau = 5;
  sample.zeta_min = -2.0;
  sample.zeta_max = 2.0;
  sample.n_zeta = 5;
  if (p.contains("sample_grid")) {
    sample = parse_grid(p.at("sample_grid"), "perturb.sample_grid");
  }

  const PerturbationField pert = infinitesimal_dt(base, mu, c_right, c_left);
  const ResidualReport lin =
      linearized_residual(base, pert, cfg.grid, cfg.verify.h, cfg.verify.order);
  std::cout << lin.to_text();

  const auto rows = finite_difference_validation(base, mu, c_right, c_left,
                                                 deltas, direction, sample);
  std::string csv = "delta,err_U,err_A\n";
  for (const auto& row : rows) {
    csv += fmt(row.delta) + "," + fmt(row.err_U) + "," + fmt(row.err_A) + "\n";
  }
  write_file(out_path, csv);

  bool pass = lin.max_residual() <= cfg.verify.tolerance("linearized", 1e-5);

  if (p.contains("contour")) {
    const Json& c = p.at("contour");
    ContourSpec spec;
    if (c.contains("hermitian_pairing")) {
      spec.hermitian_pairing = c.at("hermitian_pairing").get<bool>();
    }
    const Json& terms = c.at("terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tpath = "perturb.contour.terms[" + std::to_string(i) + "]";
      ContourTerm t;
      t.mu = parse_complex(terms.at(i).at("mu"), tpath + ".mu");
      t.beta = parse_complex(terms.at(i).at("beta"), tpath + ".beta");
      t.right_constants =
          parse_constants(terms.at(i).at("C_right"), tpath + ".C_right");
      t.left_constants =
          parse_constants(terms.at(i).at("C_left"), tpath + ".C_left");
      spec.terms.push_back(t);
    }
    const PerturbationField super = superpose_symmetries(base, spec);
    const ResidualReport sup_res = linearized_residual(
        base, super, cfg.grid, cfg.verify.h, cfg.verify.order);
    std::cout << "superposition.U1_zeta = " << fmt(sup_res.residual("U1_zeta"))
              << "\n";
    std::cout << "superposition.A1_tau = " << fmt(sup_res.residual("A1_tau"))
              << "\n";
    pass = pass &&
           sup_res.max_residual() <= cfg.verify.tolerance("linearized", 1e-5);
  }
  return pass ? kExitOk : kExitVerifyFailed;
}

int run_command(const std::string& command, const Json& config,
                const std::string& out_path, std::optional<double> h_override,
                std::optional<int> order_override) {
  try {
    ScenarioConfig cfg = parse_scenario(config);
    if (h_override) {
      if (!(*h_override > 0.0)) throw ConfigError("--h must be > 0");
      cfg.verify.h = *h_override;
    }
    if (order_override) {
      if (*order_override != 2 && *order_override != 4) {
        throw ConfigError("--order must be 2 or 4");
      }
      cfg.verify.order = *order_override;
    }
    if (command == "generate") return cmd_generate(cfg, out_path);
    if (command == "verify") return cmd_verify(cfg, out_path);
    if (command == "reconcile") return cmd_reconcile(cfg, out_path);
    if (command == "perturb") return cmd_perturb(cfg, out_path);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitEvaluationError;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEvaluationError;
  }
}

}  // namespace mbd
