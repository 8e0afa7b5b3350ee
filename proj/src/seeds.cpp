#include "mbd/seeds.hpp"

#include <cmath>
#include <memory>
#include <vector>

namespace mbd {

namespace {

constexpr double kBranchFloor = 1e-12;
constexpr double kPopulationTol = 1e-12;

struct PumpNode {
  double x = 0.0;       // eta - delta
  double g = 0.0;       // (2 n_b - 1)/x through the pole-free form
  double n_b = 0.5;
  double n_ap = 0.5;
};

struct PumpData {
  Complex E;
  std::vector<PumpNode> nodes;
  double k = 0.0;
};

PumpData pump_data(const SeedBackground& seed) {
  PumpData data;
  data.E = seed.E;
  const std::size_t n = seed.detuning.n_nodes();
  data.nodes.resize(n);
  double k = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    PumpNode& node = data.nodes[i];
    node.x = seed.detuning.effective(i);
    node.g = pump_population_ratio(seed.E, seed.branch, node.x);
    node.n_b = 0.5 * (1.0 + node.x * node.g);
    node.n_ap = 1.0 - node.n_b;
    k -= seed.detuning.weight(i) * node.g;
  }
  data.k = k;
  return data;
}

}  // namespace

SeedBackground SeedBackground::zero(DetuningModel det) {
  SeedBackground s;
  s.kind = SeedKind::Zero;
  s.n_am = 0.0;
  s.n_ap = 0.0;
  s.n_b = 1.0;
  s.detuning = std::move(det);
  return s;
}

SeedBackground SeedBackground::populations(double n_am, double n_ap, double n_b,
                                           DetuningModel det) {
  const bool in_range = n_am >= -kPopulationTol && n_am <= 1.0 + kPopulationTol &&
                        n_ap >= -kPopulationTol && n_ap <= 1.0 + kPopulationTol &&
                        n_b >= -kPopulationTol && n_b <= 1.0 + kPopulationTol;
  if (!in_range || std::abs(n_am + n_ap + n_b - 1.0) > 1e-9) {
    throw PopulationsOutOfRange(
        "populations seed: levels must lie in [0,1] and sum to 1");
  }
  SeedBackground s;
  s.kind = SeedKind::Populations;
  s.n_am = n_am;
  s.n_ap = n_ap;
  s.n_b = n_b;
  s.detuning = std::move(det);
  return s;
}

SeedBackground SeedBackground::periodic_pump(Complex E, int branch,
                                             DetuningModel det) {
  if (!(std::abs(E) > 0.0)) {
    throw ConfigError("periodic pump seed: |E| must be > 0");
  }
  if (branch != 1 && branch != -1) {
    throw ConfigError("periodic pump seed: branch must be +1 or -1");
  }
  SeedBackground s;
  s.kind = SeedKind::PeriodicPump;
  s.E = E;
  s.branch = branch;
  s.detuning = std::move(det);
  return s;
}

SeedBackground SeedBackground::nls_periodic(Complex E, double omega,
                                            DetuningModel det) {
  if (!(std::abs(E) > 0.0)) {
    throw ConfigError("nls periodic seed: |E| must be > 0");
  }
  SeedBackground s;
  s.kind = SeedKind::NlsPeriodic;
  s.E = E;
  s.omega = omega;
  s.detuning = std::move(det);
  return s;
}

Complex pump_sigma(Complex lambda, Complex E) {
  const Complex arg = lambda * lambda - Complex(std::norm(E), 0.0);
  if (std::abs(arg) < kBranchFloor) {
    throw BranchPointAtE("wavefunction branch point: lambda^2 = |E|^2");
  }
  return std::sqrt(arg);
}

double pump_population_ratio(Complex E, int branch, double x) {
  return branch / std::sqrt(4.0 * std::norm(E) + x * x);
}

double pump_wavenumber(const SeedBackground& seed) {
  if (seed.kind != SeedKind::PeriodicPump) {
    throw ConfigError("pump_wavenumber: seed is not a periodic pump");
  }
  return pump_data(seed).k;
}

MBFieldState seed_state(const SeedBackground& seed) {
  MBFieldState state;
  state.detuning = seed.detuning;

  switch (seed.kind) {
    case SeedKind::Zero:
    case SeedKind::Populations: {
      const double n_am = seed.n_am, n_ap = seed.n_ap, n_b = seed.n_b;
      state.e_minus = [](double, double) { return Complex{0.0, 0.0}; };
      state.e_plus = [](double, double) { return Complex{0.0, 0.0}; };
      state.bloch = [n_am, n_ap, n_b](std::size_t, double, double) {
        BlochComponents c;
        c.n_am = n_am;
        c.n_ap = n_ap;
        c.n_b = n_b;
        return c;
      };
      // Rank-one background: the amplitude vector is a basis vector with
      // the lambda = -i(eta - delta)/2 phase.
      int level = -1;
      if (std::abs(n_b - 1.0) < kPopulationTol) level = 2;
      if (std::abs(n_ap - 1.0) < kPopulationTol) level = 1;
      if (std::abs(n_am - 1.0) < kPopulationTol) level = 0;
      if (level >= 0) {
        const DetuningModel det = seed.detuning;
        state.pure_state = [det, level](std::size_t node, double tau, double) {
          const double x = det.effective(node);
          const double sign = level == 2 ? -1.0 : 1.0;
          Vector3c a = Vector3c::Zero();
          a(level) = std::exp(kI * (sign * 0.5 * x * tau));
          return a;
        };
      }
      return state;
    }
    case SeedKind::PeriodicPump: {
      const auto data = std::make_shared<const PumpData>(pump_data(seed));
      state.e_minus = [](double, double) { return Complex{0.0, 0.0}; };
      state.e_plus = [data](double, double zeta) {
        return data->E * std::exp(kI * (data->k * zeta));
      };
      state.bloch = [data](std::size_t node, double, double zeta) {
        const PumpNode& pn = data->nodes[node];
        BlochComponents c;
        c.n_am = 0.0;
        c.n_ap = pn.n_ap;
        c.n_b = pn.n_b;
        c.nu_p = kI * pn.g * data->E * std::exp(kI * (data->k * zeta));
        return c;
      };
      state.pure_state = [data](std::size_t node, double tau, double zeta) {
        const PumpNode& pn = data->nodes[node];
        const double root_nb = std::sqrt(pn.n_b);
        const Complex nu_p =
            kI * pn.g * data->E * std::exp(kI * (data->k * zeta));
        const Complex q_hat =
            -kI * (0.5 * pn.x + pn.g * std::norm(data->E) / pn.n_b);
        Vector3c a;
        a(0) = Complex{0.0, 0.0};
        a(1) = std::conj(nu_p) / root_nb;
        a(2) = Complex(root_nb, 0.0);
        return Vector3c(std::exp(q_hat * tau) * a);
      };
      return state;
    }
    case SeedKind::NlsPeriodic:
      throw ConfigError(
          "nls periodic seed provides Lax wavefunctions only; it has no "
          "field/medium background state");
  }
  throw ConfigError("seed_state: unknown seed kind");
}

Vector3c seed_wavefunction(const SeedBackground& seed, const Vector3c& constants,
                           Complex lambda, double tau, double zeta) {
  const DetuningModel& det = seed.detuning;
  switch (seed.kind) {
    case SeedKind::Zero:
    case SeedKind::Populations: {
      Complex avg_am{0, 0}, avg_ap{0, 0}, avg_b{0, 0};
      for (std::size_t i = 0; i < det.n_nodes(); ++i) {
        const Complex al =
            alpha(lambda, det.broadening.eta(i), det.resonance_shift);
        avg_am += det.weight(i) * al * seed.n_am;
        avg_ap += det.weight(i) * al * seed.n_ap;
        avg_b += det.weight(i) * al * seed.n_b;
      }
      Vector3c psi;
      psi(0) = constants(0) * std::exp(-lambda * tau + avg_am * zeta);
      psi(1) = constants(1) * std::exp(-lambda * tau + avg_ap * zeta);
      psi(2) = constants(2) * std::exp(lambda * tau + avg_b * zeta);
      return psi;
    }
    case SeedKind::PeriodicPump: {
      const PumpData data = pump_data(seed);
      const Complex sigma = pump_sigma(lambda, seed.E);
      Complex avg_alpha{0, 0}, avg_alpha_g{0, 0};
      for (std::size_t i = 0; i < det.n_nodes(); ++i) {
        const Complex al =
            alpha(lambda, det.broadening.eta(i), det.resonance_shift);
        avg_alpha += det.weight(i) * al;
        avg_alpha_g += det.weight(i) * al * data.nodes[i].g;
      }
      const Complex theta = sigma * (tau + kI * avg_alpha_g * zeta);
      const Complex f_minus =
          std::exp((avg_alpha - kI * data.k) * zeta * 0.5);
      const Complex f_plus = std::exp((avg_alpha + kI * data.k) * zeta * 0.5);
      const Complex ep = std::exp(theta);
      const Complex em = std::exp(-theta);
      Vector3c psi;
      psi(0) = constants(0) * std::exp(-lambda * tau);
      psi(1) = (constants(1) * ep + constants(2) * em) * f_minus;
      psi(2) = -(constants(1) * (lambda + sigma) * ep +
                 constants(2) * (lambda - sigma) * em) *
               f_plus / std::conj(seed.E);
      return psi;
    }
    case SeedKind::NlsPeriodic: {
      const double k = seed.omega * seed.omega - std::norm(seed.E);
      const Complex shifted = lambda - kI * (0.5 * seed.omega);
      const Complex sigma = pump_sigma(shifted, seed.E);
      const Complex theta =
          sigma * (tau + kI * (lambda + kI * (0.5 * k)) * zeta);
      const Complex carrier = kI * (k * zeta + seed.omega * tau);
      const Complex ep = std::exp(theta);
      const Complex em = std::exp(-theta);
      Vector3c psi;
      psi(0) =
          constants(0) * std::exp(-lambda * tau + kI * lambda * lambda * zeta);
      psi(1) = (constants(1) * ep + constants(2) * em) * std::exp(-carrier * 0.5);
      psi(2) = -(constants(1) * (shifted + sigma) * ep +
                 constants(2) * (shifted - sigma) * em) *
               std::exp(carrier * 0.5) / std::conj(seed.E);
      return psi;
    }
  }
  throw ConfigError("seed_wavefunction: unknown seed kind");
}

RowVector3c seed_wavefunction_left(const SeedBackground& seed,
                                   const Vector3c& constants, Complex kappa,
                                   double tau, double zeta) {
  const Vector3c psi =
      seed_wavefunction(seed, constants, -std::conj(kappa), tau, zeta);
  return psi.adjoint();
}

}  // namespace mbd
