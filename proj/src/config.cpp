#include "mbd/config.hpp"

namespace mbd {

namespace {

const Json& require(const Json& j, const std::string& key,
                    const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(path + "." + key + ": missing required field");
  }
  return j.at(key);
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) {
    throw ConfigError(path + ": expected a number");
  }
  return j.get<double>();
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw ConfigError(path + ": expected an integer");
  }
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    throw ConfigError(path + ": expected a string");
  }
  return j.get<std::string>();
}

double get_double(const Json& j, const std::string& key, double fallback,
                  const std::string& path) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return as_double(j.at(key), path + "." + key);
}

int get_int(const Json& j, const std::string& key, int fallback,
            const std::string& path) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return as_int(j.at(key), path + "." + key);
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw ConfigError(path + ": complex values are {\"re\": ..., \"im\": ...}");
  }
  return Complex(as_double(j.at("re"), path + ".re"),
                 as_double(j.at("im"), path + ".im"));
}

DetuningModel parse_detuning(const Json& j, const std::string& path) {
  DetuningModel det;
  det.resonance_shift = get_double(j, "delta", 0.0, path);
  if (!j.contains("broadening")) {
    det.broadening = BroadeningModel::sharp_line(det.resonance_shift);
    return det;
  }
  const Json& b = j.at("broadening");
  const std::string bpath = path + ".broadening";
  const std::string kind = as_string(require(b, "kind", bpath), bpath + ".kind");
  try {
    if (kind == "sharp") {
      det.broadening = BroadeningModel::sharp_line(
          get_double(b, "eta0", det.resonance_shift, bpath));
    } else if (kind == "discrete") {
      const Json& nodes = require(b, "nodes", bpath);
      if (!nodes.is_array()) {
        throw ConfigError(bpath + ".nodes: expected an array of [eta, w]");
      }
      std::vector<std::pair<double, double>> pairs;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Json& n = nodes.at(i);
        const std::string npath =
            bpath + ".nodes[" + std::to_string(i) + "]";
        if (!n.is_array() || n.size() != 2) {
          throw ConfigError(npath + ": expected [eta, weight]");
        }
        pairs.emplace_back(as_double(n.at(0), npath + "[0]"),
                           as_double(n.at(1), npath + "[1]"));
      }
      det.broadening = BroadeningModel::discrete(std::move(pairs));
    } else if (kind == "gaussian") {
      det.broadening = BroadeningModel::gaussian(
          get_double(b, "center", det.resonance_shift, bpath),
          as_double(require(b, "width", bpath), bpath + ".width"),
          as_int(require(b, "n_nodes", bpath), bpath + ".n_nodes"));
    } else if (kind == "lorentzian") {
      det.broadening = BroadeningModel::lorentzian(
          get_double(b, "center", det.resonance_shift, bpath),
          as_double(require(b, "width", bpath), bpath + ".width"),
          as_int(require(b, "n_nodes", bpath), bpath + ".n_nodes"),
          as_double(require(b, "cutoff", bpath), bpath + ".cutoff"));
    } else {
      throw ConfigError(bpath + ".kind: unknown value '" + kind + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(bpath + ": " + e.what());
  }
  return det;
}

SeedBackground parse_seed(const Json& j, const DetuningModel& det,
                          const std::string& path) {
  const std::string kind = as_string(require(j, "kind", path), path + ".kind");
  try {
    if (kind == "zero") {
      return SeedBackground::zero(det);
    }
    if (kind == "populations") {
      return SeedBackground::populations(
          as_double(require(j, "n_am", path), path + ".n_am"),
          as_double(require(j, "n_ap", path), path + ".n_ap"),
          as_double(require(j, "n_b", path), path + ".n_b"), det);
    }
    if (kind == "periodic_pump") {
      return SeedBackground::periodic_pump(
          parse_complex(require(j, "E", path), path + ".E"),
          get_int(j, "branch", 1, path), det);
    }
    if (kind == "nls_periodic") {
      return SeedBackground::nls_periodic(
          parse_complex(require(j, "E", path), path + ".E"),
          get_double(j, "omega", 0.0, path), det);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".kind: unknown value '" + kind + "'");
}

Grid2D parse_grid(const Json& j, const std::string& path) {
  Grid2D g;
  g.tau_min = get_double(j, "tau_min", g.tau_min, path);
  g.tau_max = get_double(j, "tau_max", g.tau_max, path);
  g.n_tau = get_int(j, "n_tau", g.n_tau, path);
  g.zeta_min = get_double(j, "zeta_min", g.zeta_min, path);
  g.zeta_max = get_double(j, "zeta_max", g.zeta_max, path);
  g.n_zeta = get_int(j, "n_zeta", g.n_zeta, path);
  if (g.n_tau < 1 || g.n_zeta < 1) {
    throw ConfigError(path + ": grid sizes must be >= 1");
  }
  if (!(g.tau_max >= g.tau_min) || !(g.zeta_max >= g.zeta_min)) {
    throw ConfigError(path + ": grid bounds are reversed");
  }
  return g;
}

ScenarioConfig parse_scenario(const Json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: top level must be a JSON object");
  }
  ScenarioConfig cfg;
  const DetuningModel det =
      parse_detuning(j.contains("detuning") ? j.at("detuning") : Json::object(),
                     "detuning");
  cfg.seed = parse_seed(require(j, "seed", "config"), det, "seed");

  if (j.contains("chain")) {
    const Json& chain = j.at("chain");
    if (!chain.is_array()) {
      throw ConfigError("chain: expected an array of steps");
    }
    for (std::size_t q = 0; q < chain.size(); ++q) {
      const Json& s = chain.at(q);
      const std::string spath = "chain[" + std::to_string(q) + "]";
      DressingStep step;
      step.mu = parse_complex(require(s, "mu", spath), spath + ".mu");
      const Json& c = require(s, "C", spath);
      if (!c.is_array() || c.size() != 3) {
        throw ConfigError(spath + ".C: expected three complex constants");
      }
      for (int k = 0; k < 3; ++k) {
        step.constants(k) =
            parse_complex(c.at(k), spath + ".C[" + std::to_string(k) + "]");
      }
      cfg.steps.push_back(step);
    }
  }

  cfg.grid = parse_grid(j.contains("grid") ? j.at("grid") : Json::object(),
                        "grid");

  if (j.contains("verify")) {
    const Json& v = j.at("verify");
    cfg.verify.h = get_double(v, "h", cfg.verify.h, "verify");
    cfg.verify.order = get_int(v, "order", cfg.verify.order, "verify");
    if (cfg.verify.order != 2 && cfg.verify.order != 4) {
      throw ConfigError("verify.order: must be 2 or 4");
    }
    if (!(cfg.verify.h > 0.0)) {
      throw ConfigError("verify.h: must be > 0");
    }
    if (v.contains("checks")) {
      if (!v.at("checks").is_array()) {
        throw ConfigError("verify.checks: expected an array of names");
      }
      cfg.verify.checks.clear();
      for (std::size_t i = 0; i < v.at("checks").size(); ++i) {
        const std::string name = as_string(
            v.at("checks").at(i), "verify.checks[" + std::to_string(i) + "]");
        if (name != "mb" && name != "pure" && name != "zcr" &&
            name != "conservation" && name != "linearized") {
          throw ConfigError("verify.checks: unknown check '" + name + "'");
        }
        cfg.verify.checks.push_back(name);
      }
    }
    if (v.contains("tolerances")) {
      const Json& t = v.at("tolerances");
      if (!t.is_object()) {
        throw ConfigError("verify.tolerances: expected an object");
      }
      for (auto it = t.begin(); it != t.end(); ++it) {
        cfg.verify.tolerances[it.key()] =
            as_double(it.value(), "verify.tolerances." + it.key());
      }
    }
    if (v.contains("inject_corruption")) {
      if (!v.at("inject_corruption").is_boolean()) {
        throw ConfigError("verify.inject_corruption: expected a boolean");
      }
      cfg.verify.inject_corruption = v.at("inject_corruption").get<bool>();
    }
    cfg.verify.corruption_factor =
        get_double(v, "corruption_factor", cfg.verify.corruption_factor,
                   "verify");
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    if (o.contains("include_bloch")) {
      if (!o.at("include_bloch").is_boolean()) {
        throw ConfigError("output.include_bloch: expected a boolean");
      }
      cfg.output.include_bloch = o.at("include_bloch").get<bool>();
    }
  }

  if (j.contains("reconcile")) cfg.reconcile = j.at("reconcile");
  if (j.contains("perturb")) cfg.perturb = j.at("perturb");
  return cfg;
}

}  // namespace mbd
