#include "mbd/darboux.hpp"

#include <cmath>
#include <string>

namespace mbd {

namespace {

constexpr double kInnerProductFloor = 1e-14;
constexpr double kParameterFloor = 1e-12;

std::string point_label(double tau, double zeta) {
  return "(tau=" + std::to_string(tau) + ", zeta=" + std::to_string(zeta) + ")";
}

}  // namespace

DressableState seed_dressable(const SeedBackground& seed) {
  DressableState state;
  state.fields = seed_state(seed);
  state.psi = [seed](Complex lambda, const Vector3c& constants, double tau,
                     double zeta) {
    return seed_wavefunction(seed, constants, lambda, tau, zeta);
  };
  return state;
}

DressableState dress_once(const DressableState& base, Complex mu,
                          const Vector3c& constants) {
  if (std::abs(mu.real()) < kParameterFloor) {
    throw TrivialStep("dress_once: Re(mu) = 0 leaves the potentials fixed");
  }
  const auto prev = std::make_shared<const DressableState>(base);
  const double four_mu_r = 2.0 * (mu + std::conj(mu)).real();
  const DetuningModel det = base.fields.detuning;
  const int step_index = base.depth;

  auto phi_at = [prev, mu, constants, step_index](double tau, double zeta) {
    const Vector3c phi = prev->psi(mu, constants, tau, zeta);
    if (!(phi.squaredNorm() > kProjectorFloor)) {
      throw DegenerateVector("step " + std::to_string(step_index) +
                             ": dressing vector vanished at " +
                             point_label(tau, zeta));
    }
    return phi;
  };

  DressableState next;
  next.depth = base.depth + 1;
  next.fields.detuning = det;
  next.fields.e_minus = [prev, phi_at, four_mu_r](double tau, double zeta) {
    const Vector3c phi = phi_at(tau, zeta);
    return prev->fields.e_minus(tau, zeta) +
           four_mu_r * phi(2) * std::conj(phi(0)) / phi.squaredNorm();
  };
  next.fields.e_plus = [prev, phi_at, four_mu_r](double tau, double zeta) {
    const Vector3c phi = phi_at(tau, zeta);
    return prev->fields.e_plus(tau, zeta) +
           four_mu_r * phi(2) * std::conj(phi(1)) / phi.squaredNorm();
  };
  // TODO: cache phi at fixed (tau, zeta) across detuning nodes; deep
  // broadened chains re-derive it once per node.
  next.fields.bloch = [prev, phi_at, mu, four_mu_r, det](
                          std::size_t node, double tau, double zeta) {
    const Matrix3c a = prev->fields.A(node, tau, zeta);
    const Vector3c phi = phi_at(tau, zeta);
    const Matrix3c p = (phi * phi.adjoint()) / phi.squaredNorm();
    const Complex al =
        alpha(mu, det.broadening.eta(node), det.resonance_shift);
    const Matrix3c ap = a * p;
    const Matrix3c pa = p * a;
    const Matrix3c pap = p * ap;
    const Matrix3c dressed =
        a - four_mu_r * (al * ap + std::conj(al) * pa -
                         (al + std::conj(al)) * pap);
    return components_from_A(dressed);
  };
  if (base.fields.pure_state) {
    next.fields.pure_state = [prev, phi_at, mu, four_mu_r, det](
                                 std::size_t node, double tau, double zeta) {
      const Vector3c a = (*prev->fields.pure_state)(node, tau, zeta);
      const Vector3c phi = phi_at(tau, zeta);
      const Complex al =
          alpha(mu, det.broadening.eta(node), det.resonance_shift);
      const Complex coef = four_mu_r * std::conj(al);
      const Vector3c dressed =
          a - coef * phi * (phi.dot(a) / phi.squaredNorm());
      const double drift =
          std::abs(dressed.squaredNorm() - a.squaredNorm());
      if (drift > 1e-10 * std::max(1.0, a.squaredNorm())) {
        throw NormDriftExceeded("dress_once: pure-state norm drift " +
                                std::to_string(drift) + " at " +
                                point_label(tau, zeta));
      }
      return dressed;
    };
  }
  next.psi = [prev, phi_at, mu, four_mu_r](Complex lambda,
                                           const Vector3c& constants_next,
                                           double tau, double zeta) {
    const Complex denom = lambda + std::conj(mu);
    if (std::abs(denom) < kParameterFloor) {
      throw SpectralPole("dressed wavefunction pole at lambda = -mu^*");
    }
    const Vector3c psi0 = prev->psi(lambda, constants_next, tau, zeta);
    const Vector3c phi = phi_at(tau, zeta);
    const Complex coef = (0.5 * four_mu_r) / denom;
    return Vector3c(psi0 -
                    coef * phi * (phi.dot(psi0) / phi.squaredNorm()));
  };
  return next;
}

std::vector<Vector3c> dress_pure(const std::vector<Vector3c>& a_nodes,
                                 Complex mu, const Projector& p,
                                 const DetuningModel& detuning) {
  if (a_nodes.size() != detuning.n_nodes()) {
    throw ConfigError("dress_pure: one amplitude vector per detuning node");
  }
  const double coef = 2.0 * (mu + std::conj(mu)).real();
  std::vector<Vector3c> dressed;
  dressed.reserve(a_nodes.size());
  for (std::size_t i = 0; i < a_nodes.size(); ++i) {
    const Complex al =
        alpha(mu, detuning.broadening.eta(i), detuning.resonance_shift);
    const Vector3c a1 =
        a_nodes[i] - coef * std::conj(al) * (p.m() * a_nodes[i]);
    const double drift = std::abs(a1.squaredNorm() - a_nodes[i].squaredNorm());
    if (drift > 1e-10 * std::max(1.0, a_nodes[i].squaredNorm())) {
      throw NormDriftExceeded("dress_pure: norm drift " +
                              std::to_string(drift) + " at node " +
                              std::to_string(i));
    }
    dressed.push_back(a1);
  }
  return dressed;
}

ZcrFields dress_once_general(const DressableState& base, Complex mu, Complex nu,
                             const Vector3c& right_constants,
                             const Vector3c& left_constants) {
  const auto prev = std::make_shared<const DressableState>(base);
  const DetuningModel det = base.fields.detuning;
  const Complex diff = mu - nu;

  auto projector_at = [prev, mu, nu, right_constants, left_constants](
                          double tau, double zeta) {
    const Vector3c phi = prev->psi(mu, right_constants, tau, zeta);
    const RowVector3c chi = prev->xi(nu, left_constants, tau, zeta);
    const Complex pairing = chi * phi;
    if (std::abs(pairing) <=
        kInnerProductFloor * phi.norm() * chi.norm()) {
      throw DegenerateInnerProduct("dress_once_general: (chi, phi) = 0 at " +
                                   point_label(tau, zeta));
    }
    return Matrix3c((phi * chi) / pairing);
  };

  ZcrFields out;
  out.detuning = det;
  out.U = [prev, projector_at, diff](double tau, double zeta) {
    const Matrix3c u = prev->fields.U(tau, zeta);
    return Matrix3c(u - diff * commutator(j_matrix(), projector_at(tau, zeta)));
  };
  out.A = [prev, projector_at, mu, nu, diff, det](std::size_t node, double tau,
                                                  double zeta) {
    const Matrix3c a = prev->fields.A(node, tau, zeta);
    const Matrix3c p = projector_at(tau, zeta);
    const Complex al_mu =
        alpha(mu, det.broadening.eta(node), det.resonance_shift);
    const Complex al_nu =
        alpha(nu, det.broadening.eta(node), det.resonance_shift);
    const Matrix3c ap = a * p;
    const Matrix3c pa = p * a;
    const Matrix3c pap = p * ap;
    return Matrix3c(a - 2.0 * diff *
                            (al_mu * ap - al_nu * pa - (al_mu - al_nu) * pap));
  };
  return out;
}

DressableState evaluate_chain(const DressingChain& chain) {
  for (std::size_t q = 0; q < chain.steps.size(); ++q) {
    const Complex mu = chain.steps[q].mu;
    if (std::abs(mu.real()) < kParameterFloor) {
      throw TrivialStep("chain step " + std::to_string(q) +
                        ": Re(mu) must be nonzero");
    }
    if ((chain.seed.kind == SeedKind::PeriodicPump ||
         chain.seed.kind == SeedKind::NlsPeriodic) &&
        std::abs(mu * mu - Complex(std::norm(chain.seed.E), 0.0)) <
            kParameterFloor) {
      throw BranchPointAtE("chain step " + std::to_string(q) +
                           ": mu sits at the branch point +-|E|");
    }
    for (std::size_t p = 0; p < q; ++p) {
      const Complex mu_p = chain.steps[p].mu;
      if (std::abs(mu - mu_p) < kParameterFloor) {
        throw ConfigError("chain step " + std::to_string(q) +
                          ": repeated spectral parameter (confluent dressing "
                          "is not supported)");
      }
      if (std::abs(mu + std::conj(mu_p)) < kParameterFloor) {
        throw ConfigError("chain step " + std::to_string(q) +
                          ": mu coincides with the dressed-factory pole -mu^* "
                          "of step " + std::to_string(p));
      }
    }
  }
  DressableState state = seed_dressable(chain.seed);
  for (const DressingStep& step : chain.steps) {
    state = dress_once(state, step.mu, step.constants);
  }
  return state;
}

}  // namespace mbd
