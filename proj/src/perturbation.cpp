#include "mbd/perturbation.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "parallel.hpp"

namespace mbd {

namespace {

constexpr double kPairingFloor = 1e-14;

struct RankOneTerm {
  Complex mu;
  Complex beta;
  Vector3c right_constants;
  Vector3c left_constants;
  bool adjoint = false;  // partner term chi+ (x) phi+ at -mu^*
};

Matrix3c normalized_projector(const DressableState& base, const RankOneTerm& t,
                              double tau, double zeta) {
  const Vector3c phi = base.psi(t.mu, t.right_constants, tau, zeta);
  const RowVector3c chi = base.xi(t.mu, t.left_constants, tau, zeta);
  const Complex pairing = chi * phi;
  if (std::abs(pairing) <= kPairingFloor * phi.norm() * chi.norm()) {
    throw DegenerateInnerProduct("symmetry term: (chi, phi) vanished");
  }
  const Matrix3c p0 = (phi * chi) / pairing;
  return t.adjoint ? Matrix3c(p0.adjoint()) : p0;
}

/// Spectral parameter the term contributes at: -mu^* for adjoint partners.
Complex term_parameter(const RankOneTerm& t) {
  return t.adjoint ? -std::conj(t.mu) : t.mu;
}

PerturbationField build_superposition(const DressableState& base,
                                      std::vector<RankOneTerm> terms) {
  const auto state = std::make_shared<const DressableState>(base);
  const auto shared_terms =
      std::make_shared<const std::vector<RankOneTerm>>(std::move(terms));
  const DetuningModel det = base.fields.detuning;

  PerturbationField out;
  out.U1 = [state, shared_terms](double tau, double zeta) {
    Matrix3c sum = Matrix3c::Zero();
    for (const auto& t : *shared_terms) {
      sum += t.beta * normalized_projector(*state, t, tau, zeta);
    }
    return commutator(j_matrix(), sum);
  };
  out.A1 = [state, shared_terms, det](std::size_t node, double tau,
                                      double zeta) {
    Matrix3c sum = Matrix3c::Zero();
    for (const auto& t : *shared_terms) {
      const Complex al = alpha(term_parameter(t), det.broadening.eta(node),
                               det.resonance_shift);
      sum += al * t.beta * normalized_projector(*state, t, tau, zeta);
    }
    return Matrix3c(2.0 * commutator(state->fields.A(node, tau, zeta), sum));
  };
  return out;
}

}  // namespace

PerturbationField infinitesimal_dt(const DressableState& base, Complex mu,
                                   const Vector3c& right_constants,
                                   const Vector3c& left_constants) {
  RankOneTerm term;
  term.mu = mu;
  term.beta = Complex{1.0, 0.0};
  term.right_constants = right_constants;
  term.left_constants = left_constants;
  return build_superposition(base, {term});
}

double pairing_variation(const DressableState& base, Complex mu,
                         const Vector3c& right_constants,
                         const Vector3c& left_constants, const Grid2D& grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double lo_im = lo, hi_im = hi;
  for (int i = 0; i < grid.n_tau; ++i) {
    for (int j = 0; j < grid.n_zeta; ++j) {
      const double tau = grid.tau(i);
      const double zeta = grid.zeta(j);
      const Vector3c phi = base.psi(mu, right_constants, tau, zeta);
      const RowVector3c chi = base.xi(mu, left_constants, tau, zeta);
      const Complex pairing = chi * phi;
      lo = std::min(lo, pairing.real());
      hi = std::max(hi, pairing.real());
      lo_im = std::min(lo_im, pairing.imag());
      hi_im = std::max(hi_im, pairing.imag());
    }
  }
  return std::max(hi - lo, hi_im - lo_im);
}

ResidualReport linearized_residual(const DressableState& base,
                                   const PerturbationField& pert,
                                   const Grid2D& grid, double h, int order) {
  if (!(h > 0.0)) throw ConfigError("linearized_residual: h must be > 0");
  const DetuningModel& det = base.fields.detuning;
  const std::size_t n_nodes = det.n_nodes();

  auto diff_matrix = [order, h](auto&& f, double x) -> Matrix3c {
    if (order == 4) {
      return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) +
              f(x - 2 * h)) /
             (12.0 * h);
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };

  std::vector<double> row_u(grid.n_tau, 0.0), row_a(grid.n_tau, 0.0);
  detail::parallel_for(grid.n_tau, [&](int i) {
    const double tau = grid.tau(i);
    for (int j = 0; j < grid.n_zeta; ++j) {
      const double zeta = grid.zeta(j);

      const Matrix3c du1_dz =
          diff_matrix([&](double z) { return pert.U1(tau, z); }, zeta);
      Matrix3c avg_a1 = Matrix3c::Zero();
      for (std::size_t n = 0; n < n_nodes; ++n) {
        avg_a1 += det.weight(n) * pert.A1(n, tau, zeta);
      }
      row_u[i] = std::max(
          row_u[i],
          max_abs(Matrix3c(du1_dz - 0.5 * commutator(j_matrix(), avg_a1))));

      const Matrix3c u = base.fields.U(tau, zeta);
      const Matrix3c u1 = pert.U1(tau, zeta);
      for (std::size_t n = 0; n < n_nodes; ++n) {
        const double x = det.effective(n);
        const Matrix3c da1_dt = diff_matrix(
            [&](double t) { return pert.A1(n, t, zeta); }, tau);
        const Matrix3c a = base.fields.A(n, tau, zeta);
        const Matrix3c a1 = pert.A1(n, tau, zeta);
        const Matrix3c rhs =
            commutator(Matrix3c(kI * (0.5 * x) * j_matrix() + u), a1) +
            commutator(u1, a);
        row_a[i] = std::max(row_a[i], max_abs(Matrix3c(da1_dt - rhs)));
      }
    }
  });

  ResidualReport report;
  report.grid = grid;
  report.h = h;
  report.order = order;
  double max_u = 0.0, max_a = 0.0;
  for (int i = 0; i < grid.n_tau; ++i) {
    max_u = std::max(max_u, row_u[i]);
    max_a = std::max(max_a, row_a[i]);
  }
  report.entries.emplace_back("U1_zeta", max_u);
  report.entries.emplace_back("A1_tau", max_a);
  return report;
}

std::vector<ConvergenceRow> finite_difference_validation(
    const DressableState& base, Complex mu, const Vector3c& right_constants,
    const Vector3c& left_constants, const std::vector<double>& deltas,
    Complex direction, const Grid2D& sample_grid) {
  if (std::abs(direction) == 0.0) {
    throw TrivialStep("finite_difference_validation: zero delta direction");
  }
  const PerturbationField pert =
      infinitesimal_dt(base, mu, right_constants, left_constants);
  const DetuningModel& det = base.fields.detuning;

  std::vector<ConvergenceRow> rows;
  rows.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta > 0.0)) {
      throw TrivialStep("finite_difference_validation: delta must be > 0");
    }
    const Complex shift = delta * direction;
    const ZcrFields stepped = dress_once_general(
        base, mu, mu + shift, right_constants, left_constants);
    ConvergenceRow row{delta, 0.0, 0.0};
    for (int i = 0; i < sample_grid.n_tau; ++i) {
      for (int j = 0; j < sample_grid.n_zeta; ++j) {
        const double tau = sample_grid.tau(i);
        const double zeta = sample_grid.zeta(j);
        const Matrix3c du =
            (stepped.U(tau, zeta) - base.fields.U(tau, zeta)) / shift;
        row.err_U = std::max(
            row.err_U, max_abs(Matrix3c(du - pert.U1(tau, zeta))));
        for (std::size_t n = 0; n < det.n_nodes(); ++n) {
          const Matrix3c da =
              (stepped.A(n, tau, zeta) - base.fields.A(n, tau, zeta)) / shift;
          row.err_A = std::max(
              row.err_A, max_abs(Matrix3c(da - pert.A1(n, tau, zeta))));
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

PerturbationField superpose_symmetries(const DressableState& base,
                                       const ContourSpec& spec) {
  std::vector<RankOneTerm> terms;
  terms.reserve(spec.terms.size() * (spec.hermitian_pairing ? 2 : 1));
  for (const ContourTerm& t : spec.terms) {
    RankOneTerm rt;
    rt.mu = t.mu;
    rt.beta = t.beta;
    rt.right_constants = t.right_constants;
    rt.left_constants = t.left_constants;
    terms.push_back(rt);
    if (spec.hermitian_pairing) {
      RankOneTerm partner = rt;
      partner.beta = std::conj(t.beta);
      partner.adjoint = true;
      terms.push_back(partner);
    }
  }
  if (terms.empty()) {
    throw ConfigError("superpose_symmetries: no terms given");
  }
  return build_superposition(base, std::move(terms));
}

}  // namespace mbd
