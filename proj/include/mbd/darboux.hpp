#pragma once

#include <memory>
#include <vector>

#include "mbd/linalg.hpp"
#include "mbd/model.hpp"
#include "mbd/seeds.hpp"

namespace mbd {

using RightFactory = std::function<Vector3c(Complex lambda,
                                            const Vector3c& constants,
                                            double tau, double zeta)>;

/// One reduction-preserving dressing step: spectral parameter mu plus the
/// constants selecting phi = Psi(mu) C.
struct DressingStep {
  Complex mu;
  Vector3c constants;
};

struct DressingChain {
  SeedBackground seed;
  std::vector<DressingStep> steps;
};

/// A solution together with its dressed wavefunction factory.  The left
/// factory is the adjoint of the right one at the reflected spectral
/// parameter, which the reduction makes exact at every chain depth.
struct DressableState {
  MBFieldState fields;
  RightFactory psi;
  int depth = 0;  // number of dressing steps applied so far

  RowVector3c xi(Complex kappa, const Vector3c& constants, double tau,
                 double zeta) const {
    return psi(-std::conj(kappa), constants, tau, zeta).adjoint();
  }
};

/// Seed as a zero-step chain.
DressableState seed_dressable(const SeedBackground& seed);

/// One binary dressing step with the automorphism pairing nu = -mu^*:
///   e_-+[1] = e_-+ + 2(mu + mu^*) phi_3 phi_{1,2}^* / (phi+, phi),
///   A[1] = A - 2(mu+mu^*)[a AP + a^* PA - (a + a^*) PAP], a = alpha(mu,eta),
///   psi[1](lambda) = [1 - (mu+mu^*) P / (lambda + mu^*)] psi(lambda).
/// Preserves the reduction, traces of A and A^2, and purity.
DressableState dress_once(const DressableState& base, Complex mu,
                          const Vector3c& constants);

/// Pure-state transform a[1] = a - 2(mu+mu^*) alpha(mu)^* P a per node.
/// Asserts norm conservation and escalates NormDriftExceeded on failure.
std::vector<Vector3c> dress_pure(const std::vector<Vector3c>& a_nodes,
                                 Complex mu, const Projector& p,
                                 const DetuningModel& detuning);

/// General two-parameter dressing output: a zero-curvature solution that
/// need not satisfy the reduction, so it is carried as raw U/A evaluators.
struct ZcrFields {
  MatrixEvaluator U;
  NodeMatrixEvaluator A;
  DetuningModel detuning;
};

/// Two-parameter step with independent right/left data:
///   P = phi (x) chi / (chi, phi),
///   U[1] = U - (mu - nu) [J, P],
///   A[1] = A - 2(mu-nu)[a(mu) AP - a(nu) PA - (a(mu) - a(nu)) PAP].
/// At nu = -mu^*, chi = phi+ this reduces to dress_once.
ZcrFields dress_once_general(const DressableState& base, Complex mu, Complex nu,
                             const Vector3c& right_constants,
                             const Vector3c& left_constants);

/// Folds dress_once over the steps; validates spectral-parameter placement
/// (nonzero real part, no exact repeats, no dressed-factory poles).
DressableState evaluate_chain(const DressingChain& chain);

}  // namespace mbd
