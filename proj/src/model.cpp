#include "mbd/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mbd/linalg.hpp"
#include "parallel.hpp"

namespace mbd {

Matrix3c build_U(Complex e_minus, Complex e_plus) {
  Matrix3c u = Matrix3c::Zero();
  u(0, 2) = -std::conj(e_minus);
  u(1, 2) = -std::conj(e_plus);
  u(2, 0) = e_minus;
  u(2, 1) = e_plus;
  return u;
}

Matrix3c build_A(const BlochComponents& c) {
  Matrix3c a;
  a(0, 0) = c.n_am;
  a(0, 1) = c.nu_a;
  a(0, 2) = std::conj(c.nu_m);
  a(1, 0) = std::conj(c.nu_a);
  a(1, 1) = c.n_ap;
  a(1, 2) = std::conj(c.nu_p);
  a(2, 0) = c.nu_m;
  a(2, 1) = c.nu_p;
  a(2, 2) = c.n_b;
  return a;
}

BlochComponents components_from_A(const Matrix3c& a) {
  BlochComponents c;
  c.n_am = a(0, 0).real();
  c.n_ap = a(1, 1).real();
  c.n_b = a(2, 2).real();
  c.nu_m = a(2, 0);
  c.nu_p = a(2, 1);
  c.nu_a = a(0, 1);
  return c;
}

Complex alpha(Complex lambda, double eta, double delta, double pole_floor) {
  const Complex den = 2.0 * lambda + kI * (eta - delta);
  if (std::abs(den) <= pole_floor) {
    throw SpectralPole("alpha: 2*lambda + i(eta - delta) below pole floor");
  }
  return 1.0 / den;
}

double ResidualReport::max_residual() const {
  double r = 0.0;
  for (const auto& [name, v] : entries) r = std::max(r, v);
  return r;
}

double ResidualReport::residual(const std::string& name) const {
  for (const auto& [key, v] : entries) {
    if (key == name) return v;
  }
  throw Error("ResidualReport: unknown entry '" + name + "'");
}

std::string ResidualReport::to_text() const {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "grid = %d x %d\n", grid.n_tau, grid.n_zeta);
  out += buf;
  std::snprintf(buf, sizeof(buf), "h = %.17g\norder = %d\n", h, order);
  out += buf;
  for (const auto& [name, v] : entries) {
    std::snprintf(buf, sizeof(buf), "residual.%s = %.17g\n", name.c_str(), v);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "residual.max = %.17g\n", max_residual());
  out += buf;
  return out;
}

namespace {

template <class F>
Complex central_diff(F&& f, double x, double h, int order) {
  if (order == 4) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) /
           (12.0 * h);
  }
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct MaxTracker {
  std::vector<double> values;
  explicit MaxTracker(std::size_t n) : values(n, 0.0) {}
  void absorb(const MaxTracker& other) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = std::max(values[i], other.values[i]);
    }
  }
};

}  // namespace

ResidualReport residual_mb(const MBFieldState& state, const Grid2D& grid,
                           double h, int order) {
  if (!(h > 0.0)) throw ConfigError("residual_mb: h must be > 0");
  const std::size_t n_nodes = state.detuning.n_nodes();
  const char* names[] = {"e_minus_zeta", "e_plus_zeta", "n_am_tau",
                         "n_ap_tau",     "n_b_tau",     "nu_m_tau",
                         "nu_p_tau",     "nu_a_tau"};
  constexpr std::size_t kEq = 8;

  std::vector<MaxTracker> row_max(grid.n_tau, MaxTracker(kEq));
  detail::parallel_for(grid.n_tau, [&](int i) {
    MaxTracker& local = row_max[i];
    const double tau = grid.tau(i);
    for (int j = 0; j < grid.n_zeta; ++j) {
      const double zeta = grid.zeta(j);
      const Complex em = state.e_minus(tau, zeta);
      const Complex ep = state.e_plus(tau, zeta);
      const Complex dem_dz = central_diff(
          [&](double z) { return state.e_minus(tau, z); }, zeta, h, order);
      const Complex dep_dz = central_diff(
          [&](double z) { return state.e_plus(tau, z); }, zeta, h, order);

      Complex avg_num{0, 0}, avg_nup{0, 0};
      for (std::size_t n = 0; n < n_nodes; ++n) {
        const double w = state.detuning.weight(n);
        const double x = state.detuning.effective(n);
        const BlochComponents c = state.bloch(n, tau, zeta);
        avg_num += w * c.nu_m;
        avg_nup += w * c.nu_p;

        // one stencil evaluation per point, shared by all six equations
        const BlochComponents cp = state.bloch(n, tau + h, zeta);
        const BlochComponents cm = state.bloch(n, tau - h, zeta);
        BlochComponents cp2, cm2;
        if (order == 4) {
          cp2 = state.bloch(n, tau + 2 * h, zeta);
          cm2 = state.bloch(n, tau - 2 * h, zeta);
        }
        const auto diff = [&](auto proj) -> Complex {
          if (order == 4) {
            return (-proj(cp2) + 8.0 * proj(cp) - 8.0 * proj(cm) + proj(cm2)) /
                   (12.0 * h);
          }
          return (proj(cp) - proj(cm)) / (2.0 * h);
        };
        const double dnam =
            diff([](const BlochComponents& b) { return Complex(b.n_am, 0); })
                .real();
        const double dnap =
            diff([](const BlochComponents& b) { return Complex(b.n_ap, 0); })
                .real();
        const double dnb =
            diff([](const BlochComponents& b) { return Complex(b.n_b, 0); })
                .real();
        const Complex dnum =
            diff([](const BlochComponents& b) { return b.nu_m; });
        const Complex dnup =
            diff([](const BlochComponents& b) { return b.nu_p; });
        const Complex dnua =
            diff([](const BlochComponents& b) { return b.nu_a; });

        const double pump_m = 2.0 * (c.nu_m * std::conj(em)).real();
        const double pump_p = 2.0 * (c.nu_p * std::conj(ep)).real();
        local.values[2] = std::max(local.values[2], std::abs(dnam + pump_m));
        local.values[3] = std::max(local.values[3], std::abs(dnap + pump_p));
        local.values[4] =
            std::max(local.values[4], std::abs(dnb - pump_m - pump_p));
        local.values[5] = std::max(
            local.values[5],
            std::abs(dnum + kI * x * c.nu_m - (c.n_am - c.n_b) * em -
                     std::conj(c.nu_a) * ep));
        local.values[6] = std::max(
            local.values[6], std::abs(dnup + kI * x * c.nu_p -
                                      (c.n_ap - c.n_b) * ep - c.nu_a * em));
        local.values[7] = std::max(
            local.values[7],
            std::abs(dnua + c.nu_p * std::conj(em) + std::conj(c.nu_m) * ep));
      }
      local.values[0] = std::max(local.values[0], std::abs(dem_dz + avg_num));
      local.values[1] = std::max(local.values[1], std::abs(dep_dz + avg_nup));
    }
  });

  MaxTracker total(kEq);
  for (const auto& r : row_max) total.absorb(r);
  ResidualReport report;
  report.grid = grid;
  report.h = h;
  report.order = order;
  for (std::size_t e = 0; e < kEq; ++e) {
    report.entries.emplace_back(names[e], total.values[e]);
  }
  return report;
}

ResidualReport residual_pure(const MBFieldState& state, const Grid2D& grid,
                             double h, int order) {
  if (!state.pure_state) {
    throw MissingPureState("residual_pure: state has no pure_state evaluator");
  }
  if (!(h > 0.0)) throw ConfigError("residual_pure: h must be > 0");
  const PureEvaluator& pure = *state.pure_state;
  const std::size_t n_nodes = state.detuning.n_nodes();
  const char* names[] = {"e_minus_zeta", "e_plus_zeta", "a1_tau", "a2_tau",
                         "a3_tau"};
  constexpr std::size_t kEq = 5;

  std::vector<MaxTracker> row_max(grid.n_tau, MaxTracker(kEq));
  detail::parallel_for(grid.n_tau, [&](int i) {
    MaxTracker& local = row_max[i];
    const double tau = grid.tau(i);
    for (int j = 0; j < grid.n_zeta; ++j) {
      const double zeta = grid.zeta(j);
      const Complex em = state.e_minus(tau, zeta);
      const Complex ep = state.e_plus(tau, zeta);
      const Complex dem_dz = central_diff(
          [&](double z) { return state.e_minus(tau, z); }, zeta, h, order);
      const Complex dep_dz = central_diff(
          [&](double z) { return state.e_plus(tau, z); }, zeta, h, order);

      Complex avg31{0, 0}, avg32{0, 0};
      for (std::size_t n = 0; n < n_nodes; ++n) {
        const double w = state.detuning.weight(n);
        const double x = state.detuning.effective(n);
        const Vector3c a = pure(n, tau, zeta);
        avg31 += w * a(2) * std::conj(a(0));
        avg32 += w * a(2) * std::conj(a(1));

        Vector3c da;
        if (order == 4) {
          da = (-pure(n, tau + 2 * h, zeta) + 8.0 * pure(n, tau + h, zeta) -
                8.0 * pure(n, tau - h, zeta) + pure(n, tau - 2 * h, zeta)) /
               (12.0 * h);
        } else {
          da = (pure(n, tau + h, zeta) - pure(n, tau - h, zeta)) / (2.0 * h);
        }
        const Complex rhs[3] = {
            kI * x * a(0) * 0.5 - a(2) * std::conj(em),
            kI * x * a(1) * 0.5 - a(2) * std::conj(ep),
            -kI * x * a(2) * 0.5 + a(0) * em + a(1) * ep,
        };
        for (int k = 0; k < 3; ++k) {
          local.values[2 + k] =
              std::max(local.values[2 + k], std::abs(da(k) - rhs[k]));
        }
      }
      local.values[0] = std::max(local.values[0], std::abs(dem_dz + avg31));
      local.values[1] = std::max(local.values[1], std::abs(dep_dz + avg32));
    }
  });

  MaxTracker total(kEq);
  for (const auto& r : row_max) total.absorb(r);
  ResidualReport report;
  report.grid = grid;
  report.h = h;
  report.order = order;
  for (std::size_t e = 0; e < kEq; ++e) {
    report.entries.emplace_back(names[e], total.values[e]);
  }
  return report;
}

ResidualReport residual_zcr(const MatrixEvaluator& U_field,
                            const NodeMatrixEvaluator& A_field,
                            const DetuningModel& detuning, const Grid2D& grid,
                            double h, int order) {
  if (!(h > 0.0)) throw ConfigError("residual_zcr: h must be > 0");
  const std::size_t n_nodes = detuning.n_nodes();
  constexpr std::size_t kEq = 2;

  std::vector<MaxTracker> row_max(grid.n_tau, MaxTracker(kEq));
  detail::parallel_for(grid.n_tau, [&](int i) {
    MaxTracker& local = row_max[i];
    const double tau = grid.tau(i);
    for (int j = 0; j < grid.n_zeta; ++j) {
      const double zeta = grid.zeta(j);
      const Matrix3c u = U_field(tau, zeta);

      auto diff_matrix = [order, h](auto&& f, double x0) -> Matrix3c {
        if (order == 4) {
          return (-f(x0 + 2 * h) + 8.0 * f(x0 + h) - 8.0 * f(x0 - h) +
                  f(x0 - 2 * h)) /
                 (12.0 * h);
        }
        return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
      };

      const Matrix3c du_dz =
          diff_matrix([&](double z) { return U_field(tau, z); }, zeta);
      Matrix3c avg_A = Matrix3c::Zero();
      for (std::size_t n = 0; n < n_nodes; ++n) {
        const double w = detuning.weight(n);
        const double x = detuning.effective(n);
        const Matrix3c a = A_field(n, tau, zeta);
        avg_A += w * a;

        const Matrix3c da_dt =
            diff_matrix([&](double t) { return A_field(n, t, zeta); }, tau);
        const Matrix3c rhs =
            commutator(u, a) - kI * x * 0.5 * commutator(a, j_matrix());
        local.values[1] =
            std::max(local.values[1], max_abs(Matrix3c(da_dt - rhs)));
      }
      const Matrix3c rhs_u = 0.5 * commutator(j_matrix(), avg_A);
      local.values[0] =
          std::max(local.values[0], max_abs(Matrix3c(du_dz - rhs_u)));
    }
  });

  MaxTracker total(kEq);
  for (const auto& r : row_max) total.absorb(r);
  ResidualReport report;
  report.grid = grid;
  report.h = h;
  report.order = order;
  report.entries.emplace_back("U_zeta", total.values[0]);
  report.entries.emplace_back("A_tau", total.values[1]);
  return report;
}

std::string ConservationReport::to_text() const {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "conservation.hermiticity_dev = %.17g\n",
                hermiticity_dev);
  out += buf;
  std::snprintf(buf, sizeof(buf), "conservation.trace_drift = %.17g\n",
                trace_drift);
  out += buf;
  std::snprintf(buf, sizeof(buf), "conservation.trace_sq_drift = %.17g\n",
                trace_sq_drift);
  out += buf;
  if (has_pure) {
    std::snprintf(buf, sizeof(buf), "conservation.purity_norm_drift = %.17g\n",
                  purity_norm_drift);
    out += buf;
  }
  return out;
}

ConservationReport conservation_report(const MBFieldState& state,
                                       const Grid2D& grid) {
  const std::size_t n_nodes = state.detuning.n_nodes();
  ConservationReport report;
  report.has_pure = state.pure_state.has_value();

  struct ColumnExtrema {
    double herm = 0.0;
    double drift = 0.0;
    double drift_sq = 0.0;
    double drift_norm = 0.0;
  };
  std::vector<ColumnExtrema> per_col(grid.n_zeta);

  detail::parallel_for(grid.n_zeta, [&](int j) {
    const double zeta = grid.zeta(j);
    ColumnExtrema ext;
    for (std::size_t n = 0; n < n_nodes; ++n) {
      double tr_min = std::numeric_limits<double>::infinity();
      double tr_max = -tr_min;
      double tr2_min = tr_min, tr2_max = tr_max;
      double nrm_min = tr_min, nrm_max = tr_max;
      for (int i = 0; i < grid.n_tau; ++i) {
        const double tau = grid.tau(i);
        const Matrix3c a = state.A(n, tau, zeta);
        ext.herm = std::max(ext.herm, hermitian_deviation(a));
        const double tr = a.trace().real();
        const double tr2 = (a * a).trace().real();
        tr_min = std::min(tr_min, tr);
        tr_max = std::max(tr_max, tr);
        tr2_min = std::min(tr2_min, tr2);
        tr2_max = std::max(tr2_max, tr2);
        if (state.pure_state) {
          const double nrm = (*state.pure_state)(n, tau, zeta).squaredNorm();
          nrm_min = std::min(nrm_min, nrm);
          nrm_max = std::max(nrm_max, nrm);
        }
      }
      ext.drift = std::max(ext.drift, tr_max - tr_min);
      ext.drift_sq = std::max(ext.drift_sq, tr2_max - tr2_min);
      if (state.pure_state) {
        ext.drift_norm = std::max(ext.drift_norm, nrm_max - nrm_min);
      }
    }
    per_col[j] = ext;
  });

  for (const auto& ext : per_col) {
    report.hermiticity_dev = std::max(report.hermiticity_dev, ext.herm);
    report.trace_drift = std::max(report.trace_drift, ext.drift);
    report.trace_sq_drift = std::max(report.trace_sq_drift, ext.drift_sq);
    report.purity_norm_drift =
        std::max(report.purity_norm_drift, ext.drift_norm);
  }
  return report;
}

}  // namespace mbd
