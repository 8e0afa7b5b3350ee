#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mbd/broadening.hpp"
#include "mbd/errors.hpp"
#include "mbd/types.hpp"

namespace mbd {

/// Resonance shift Delta plus the detuning distribution; the effective
/// detuning of node i is eta_i - Delta.
struct DetuningModel {
  double resonance_shift = 0.0;
  BroadeningModel broadening = BroadeningModel::sharp_line(0.0);

  std::size_t n_nodes() const { return broadening.size(); }
  double effective(std::size_t node) const {
    return broadening.eta(node) - resonance_shift;
  }
  double weight(std::size_t node) const { return broadening.weight(node); }
};

/// Medium state at one detuning node: populations n_{a-}, n_{a+}, n_b and
/// coherences nu_-, nu_+, nu_a.
struct BlochComponents {
  double n_am = 0.0;
  double n_ap = 0.0;
  double n_b = 0.0;
  Complex nu_m{0.0, 0.0};
  Complex nu_p{0.0, 0.0};
  Complex nu_a{0.0, 0.0};
};

inline const Matrix3c& j_matrix() {
  static const Matrix3c j = [] {
    Matrix3c m = Matrix3c::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = -1.0;
    return m;
  }();
  return j;
}

/// U = [[0, 0, -e_-^*], [0, 0, -e_+^*], [e_-, e_+, 0]]; anti-Hermitian by
/// placement.
Matrix3c build_U(Complex e_minus, Complex e_plus);

/// A = [[n_{a-}, nu_a, nu_-^*], [nu_a^*, n_{a+}, nu_+^*],
///      [nu_-, nu_+, n_b]]; Hermitian by placement.
Matrix3c build_A(const BlochComponents& c);

BlochComponents components_from_A(const Matrix3c& a);

inline constexpr double kPoleFloor = 1e-12;

/// alpha(lambda) = 1 / (2 lambda + i (eta - delta)).
Complex alpha(Complex lambda, double eta, double delta,
              double pole_floor = kPoleFloor);

/// Inclusive-endpoint rectangular sampling grid in (tau, zeta).
struct Grid2D {
  double tau_min = -10.0;
  double tau_max = 10.0;
  int n_tau = 201;
  double zeta_min = -10.0;
  double zeta_max = 10.0;
  int n_zeta = 201;

  double tau(int i) const {
    return n_tau > 1 ? tau_min + (tau_max - tau_min) * i / (n_tau - 1)
                     : tau_min;
  }
  double zeta(int j) const {
    return n_zeta > 1 ? zeta_min + (zeta_max - zeta_min) * j / (n_zeta - 1)
                      : zeta_min;
  }
};

using FieldEvaluator = std::function<Complex(double tau, double zeta)>;
using BlochEvaluator =
    std::function<BlochComponents(std::size_t node, double tau, double zeta)>;
using PureEvaluator =
    std::function<Vector3c(std::size_t node, double tau, double zeta)>;
using MatrixEvaluator = std::function<Matrix3c(double tau, double zeta)>;
using NodeMatrixEvaluator =
    std::function<Matrix3c(std::size_t node, double tau, double zeta)>;

/// A candidate solution: field evaluators e_-/e_+, the per-node Bloch
/// state, and optionally the probability-amplitude vector of a pure state.
struct MBFieldState {
  FieldEvaluator e_minus;
  FieldEvaluator e_plus;
  BlochEvaluator bloch;
  DetuningModel detuning;
  std::optional<PureEvaluator> pure_state;

  Matrix3c U(double tau, double zeta) const {
    return build_U(e_minus(tau, zeta), e_plus(tau, zeta));
  }
  Matrix3c A(std::size_t node, double tau, double zeta) const {
    return build_A(bloch(node, tau, zeta));
  }
};

/// Per-equation max-abs finite-difference residuals over a grid.
struct ResidualReport {
  std::vector<std::pair<std::string, double>> entries;
  Grid2D grid;
  double h = 1e-3;
  int order = 2;

  double max_residual() const;
  double residual(const std::string& name) const;
  std::string to_text() const;
};

/// Residuals of the reduced field/medium system: field equations
/// e_{-+,zeta} + <nu_-+>, the three population equations, and the three
/// coherence equations, per node, reported as max over nodes and grid.
ResidualReport residual_mb(const MBFieldState& state, const Grid2D& grid,
                           double h, int order = 2);

/// Residuals of the five pure-state equations (two field, three amplitude).
ResidualReport residual_pure(const MBFieldState& state, const Grid2D& grid,
                             double h, int order = 2);

/// Matrix residuals of the zero-curvature system
///   U_zeta = [J, <A>]/2,  A_tau = [U, A] - i(eta - delta)[A, J]/2.
ResidualReport residual_zcr(const MatrixEvaluator& U_field,
                            const NodeMatrixEvaluator& A_field,
                            const DetuningModel& detuning, const Grid2D& grid,
                            double h, int order = 2);

struct ConservationReport {
  double hermiticity_dev = 0.0;
  double trace_drift = 0.0;
  double trace_sq_drift = 0.0;
  double purity_norm_drift = 0.0;
  bool has_pure = false;

  std::string to_text() const;
};

/// Max over the grid of ||A - A+||, the tau-variation of tr A and tr A^2
/// per node at fixed zeta, and (when pure) the tau-variation of ||a||^2.
ConservationReport conservation_report(const MBFieldState& state,
                                       const Grid2D& grid);

}  // namespace mbd
