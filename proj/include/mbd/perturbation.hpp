#pragma once

#include <vector>

#include "mbd/darboux.hpp"

namespace mbd {

/// Solution (U1, A1) of the system linearized about a base solution:
///   U1_zeta = [J, <A1>]/2,
///   A1_tau  = [i(eta - delta) J/2 + U, A1] + [U1, A].
struct PerturbationField {
  MatrixEvaluator U1;
  NodeMatrixEvaluator A1;
};

/// The degenerate dressing direction at coincident spectral parameters:
///   P0 = phi (x) chi / (chi, phi),  U1 = [J, P0],
///   A1 = 2 alpha(mu, eta) [A, P0] per node.
/// chi is the left solution at kappa = mu; (chi, phi) is constant in
/// (tau, zeta), so the pointwise normalization is global.
PerturbationField infinitesimal_dt(const DressableState& base, Complex mu,
                                   const Vector3c& right_constants,
                                   const Vector3c& left_constants);

/// Max variation of (chi, phi) over the grid; a Lax-conjugacy diagnostic.
double pairing_variation(const DressableState& base, Complex mu,
                         const Vector3c& right_constants,
                         const Vector3c& left_constants, const Grid2D& grid);

ResidualReport linearized_residual(const DressableState& base,
                                   const PerturbationField& pert,
                                   const Grid2D& grid, double h, int order = 2);

struct ConvergenceRow {
  double delta;
  double err_U;
  double err_A;
};

/// For each delta dresses with nu = mu + delta*direction and compares the
/// divided difference against the infinitesimal fields over sample points.
std::vector<ConvergenceRow> finite_difference_validation(
    const DressableState& base, Complex mu, const Vector3c& right_constants,
    const Vector3c& left_constants, const std::vector<double>& deltas,
    Complex direction, const Grid2D& sample_grid);

struct ContourTerm {
  Complex mu;
  Complex beta;
  Vector3c right_constants;
  Vector3c left_constants;
};

/// Discrete contour sum of rank-one symmetry terms.  With
/// hermitian_pairing each term is accompanied by its adjoint partner at
/// -mu^*, which restores the reduction (U1 anti-Hermitian, A1 Hermitian).
struct ContourSpec {
  std::vector<ContourTerm> terms;
  bool hermitian_pairing = false;
};

PerturbationField superpose_symmetries(const DressableState& base,
                                       const ContourSpec& spec);

}  // namespace mbd
