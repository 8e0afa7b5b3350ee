#pragma once

#include "mbd/model.hpp"

namespace mbd {

enum class SeedKind { Zero, Populations, PeriodicPump, NlsPeriodic };

/// Exact background solution over which dressing is performed.  Each seed
/// carries closed-form right and left Lax wavefunction factories.
///
/// Constants convention: for Zero/Populations seeds the three components
/// are (C_1, C_2, C_3); for PeriodicPump/NlsPeriodic they are
/// (C_1, C_plus, C_minus).
struct SeedBackground {
  SeedKind kind = SeedKind::Zero;
  double n_am = 0.0;
  double n_ap = 0.0;
  double n_b = 1.0;
  Complex E{0.0, 0.0};
  int branch = +1;
  double omega = 0.0;
  DetuningModel detuning;

  static SeedBackground zero(DetuningModel det);
  static SeedBackground populations(double n_am, double n_ap, double n_b,
                                    DetuningModel det);
  static SeedBackground periodic_pump(Complex E, int branch, DetuningModel det);
  static SeedBackground nls_periodic(Complex E, double omega,
                                     DetuningModel det);
};

/// sigma = principal sqrt(lambda^2 - |E|^2); throws at the branch points.
Complex pump_sigma(Complex lambda, Complex E);

/// Pole-free value of (2 n_b - 1)/(eta - delta) for the pump background.
double pump_population_ratio(Complex E, int branch, double x);

/// Wavenumber k = -<(2 n_b - 1)/(eta - delta)> of the pump background.
double pump_wavenumber(const SeedBackground& seed);

/// Fields plus per-node Bloch state of the background; includes a pure-state
/// evaluator whenever the background is rank one per node.
MBFieldState seed_state(const SeedBackground& seed);

/// Right wavefunction psi(lambda; tau, zeta) solving
///   psi_tau = (U - lambda J) psi,  psi_zeta = <alpha(lambda) A> psi.
/// For NlsPeriodic only the tau equation is honoured; the zeta dependence
/// follows the plane-wave closed form and is not certified.
Vector3c seed_wavefunction(const SeedBackground& seed, const Vector3c& constants,
                           Complex lambda, double tau, double zeta);

/// Left wavefunction xi(kappa) = psi(-kappa^*)^+ via the automorphism;
/// solves xi_tau = -xi W, xi_zeta = -xi <alpha(kappa) A>.
RowVector3c seed_wavefunction_left(const SeedBackground& seed,
                                   const Vector3c& constants, Complex kappa,
                                   double tau, double zeta);

}  // namespace mbd
