#include <cmath>
#include <random>

#include <doctest.h>

#include "mbd/darboux.hpp"

using namespace mbd;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(271828);
  return gen;
}

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

DressableState zero_base() {
  return seed_dressable(SeedBackground::zero(DetuningModel{}));
}

/// Analytic peak of a single dressed pulse over a diagonal background:
/// |phi_1|, |phi_2| share exp(-Re mu tau) while |phi_3| grows, so the
/// the amplitude maximum is 2 Re(mu) A / sqrt(A^2 + B^2) for the e_-
/// channel with A = |phi_1|, B = |phi_2| stripped of the common factor.
double scan_peak(const FieldEvaluator& field, double zeta, double lo,
                 double hi) {
  double best = 0.0, at = lo;
  for (double tau = lo; tau <= hi; tau += 0.01) {
    const double v = std::abs(field(tau, zeta));
    if (v > best) {
      best = v;
      at = tau;
    }
  }
  for (double tau = at - 0.02; tau <= at + 0.02; tau += 1e-5) {
    best = std::max(best, std::abs(field(tau, zeta)));
  }
  return best;
}

}  // namespace

TEST_CASE("dress_once single-channel soliton amplitude") {
  const auto s =
      dress_once(zero_base(), Complex(0.5, 0.0), Vector3c(1, 0, 1));
  CHECK(std::abs(scan_peak(s.fields.e_minus, 0.7, -10, 10) - 1.0) < 1e-9);
  for (double tau : {-3.0, 0.0, 2.5}) {
    CHECK(std::abs(s.fields.e_plus(tau, 0.7)) == 0.0);
  }

  // swapping the first two constants swaps the channels exactly
  const auto swapped =
      dress_once(zero_base(), Complex(0.5, 0.0), Vector3c(0, 1, 1));
  for (double tau : {-1.0, 0.4, 3.2}) {
    CHECK(s.fields.e_minus(tau, 0.7) == swapped.fields.e_plus(tau, 0.7));
    CHECK(std::abs(swapped.fields.e_minus(tau, 0.7)) == 0.0);
  }
}

TEST_CASE("dress_once validation") {
  CHECK_THROWS_AS(dress_once(zero_base(), Complex(0.0, 0.5), Vector3c(1, 1, 1)),
                  TrivialStep);
  const auto s = dress_once(zero_base(), Complex(0.5, 0.2), Vector3c(0, 0, 0));
  CHECK_THROWS_AS(s.fields.e_minus(0.0, 0.0), DegenerateVector);
}

TEST_CASE("chain validation") {
  DressingChain chain{SeedBackground::zero(DetuningModel{}), {}};
  chain.steps.push_back({Complex(0.5, 0.2), Vector3c(1, 1, 1)});
  chain.steps.push_back({Complex(0.5, 0.2), Vector3c(1, 0, 1)});
  CHECK_THROWS_AS(evaluate_chain(chain), ConfigError);

  chain.steps[1].mu = Complex(-0.5, 0.2);  // pole -mu^* of step 0
  CHECK_THROWS_AS(evaluate_chain(chain), ConfigError);

  chain.steps[1].mu = Complex(0.5, -0.2);  // the conjugate pairing is fine
  CHECK_NOTHROW(evaluate_chain(chain));

  DressingChain pump{SeedBackground::periodic_pump(Complex(1.0, 0.0), +1,
                                                   DetuningModel{}),
                     {{Complex(1.0, 0.0), Vector3c(1, 1, 1)}}};
  CHECK_THROWS_AS(evaluate_chain(pump), BranchPointAtE);
}

TEST_CASE("empty chain returns the seed") {
  DressingChain chain{SeedBackground::populations(0.1, 0.3, 0.6,
                                                  DetuningModel{}),
                      {}};
  const auto state = evaluate_chain(chain);
  CHECK(std::abs(state.fields.e_minus(1.2, -0.4)) == 0.0);
  CHECK(state.fields.A(0, 1.2, -0.4)(1, 1) == Complex(0.3, 0));
}

TEST_CASE("reduction and trace preservation at random points") {
  DetuningModel det{0.1, BroadeningModel::gaussian(0.1, 0.4, 5)};
  auto state = seed_dressable(SeedBackground::periodic_pump(
      Complex(0.9, 0.2), +1, det));
  state = dress_once(state, Complex(1.4, 0.3), Vector3c(1, 0.4, 0.7));
  for (int trial = 0; trial < 100; ++trial) {
    const double tau = uniform(-4, 4);
    const double zeta = uniform(-4, 4);
    CHECK(anti_hermitian_deviation(state.fields.U(tau, zeta)) <= 1e-11);
    const std::size_t node = trial % det.n_nodes();
    const Matrix3c a1 = state.fields.A(node, tau, zeta);
    CHECK(hermitian_deviation(a1) <= 1e-11);

    const auto seed_a =
        seed_state(SeedBackground::periodic_pump(Complex(0.9, 0.2), +1, det));
    const Matrix3c a0 = seed_a.A(node, tau, zeta);
    CHECK(std::abs(a1.trace() - a0.trace()) <= 1e-10);
    CHECK(std::abs((a1 * a1).trace() - (a0 * a0).trace()) <= 1e-10);
  }
}

TEST_CASE("dressed wavefunction solves the dressed Lax pair") {
  const Complex mu(0.5, 0.3);
  const auto s = dress_once(zero_base(), mu, Vector3c(1, 1, 1));
  const Complex lambda(0.7, -0.4);
  const Vector3c C(Complex(0.6, 0.1), Complex(-0.3, 0.8), 1);
  const double h = 1e-4;
  const DetuningModel& det = s.fields.detuning;

  for (int trial = 0; trial < 10; ++trial) {
    const double tau = uniform(-2, 2);
    const double zeta = uniform(-2, 2);
    const auto psi = [&](double t, double z) {
      return s.psi(lambda, C, t, z);
    };
    const Vector3c dtau = (-psi(tau + 2 * h, zeta) + 8.0 * psi(tau + h, zeta) -
                           8.0 * psi(tau - h, zeta) + psi(tau - 2 * h, zeta)) /
                          (12.0 * h);
    const Matrix3c v = s.fields.U(tau, zeta) - lambda * j_matrix();
    CHECK(max_abs(Vector3c(dtau - v * psi(tau, zeta))) < 1e-7);

    const Vector3c dz = (-psi(tau, zeta + 2 * h) + 8.0 * psi(tau, zeta + h) -
                         8.0 * psi(tau, zeta - h) + psi(tau, zeta - 2 * h)) /
                        (12.0 * h);
    Matrix3c m = Matrix3c::Zero();
    for (std::size_t n = 0; n < det.n_nodes(); ++n) {
      m += det.weight(n) *
           alpha(lambda, det.broadening.eta(n), det.resonance_shift) *
           s.fields.A(n, tau, zeta);
    }
    CHECK(max_abs(Vector3c(dz - m * psi(tau, zeta))) < 1e-7);
  }

  // the dressed factory has a pole at lambda = -mu^*
  CHECK_THROWS_AS(s.psi(-std::conj(mu), C, 0.0, 0.0), SpectralPole);
}

TEST_CASE("gauge invariance of dressed fields") {
  const Complex mu(0.4, 0.6);
  const Vector3c C(1, Complex(0.3, -0.4), Complex(0.8, 0.2));
  const Complex scale(1.7, -2.3);
  const auto a = dress_once(zero_base(), mu, C);
  const auto b = dress_once(zero_base(), mu, Vector3c(scale * C));
  for (int trial = 0; trial < 10; ++trial) {
    const double tau = uniform(-3, 3);
    const double zeta = uniform(-3, 3);
    CHECK(std::abs(a.fields.e_minus(tau, zeta) -
                   b.fields.e_minus(tau, zeta)) < 1e-12);
    CHECK(std::abs(a.fields.e_plus(tau, zeta) - b.fields.e_plus(tau, zeta)) <
          1e-12);
  }
}

TEST_CASE("dress_once_general specializes to dress_once") {
  const Complex mu(0.5, 0.3);
  const Vector3c C(1, 1, 1);
  const auto reduced = dress_once(zero_base(), mu, C);
  const auto general =
      dress_once_general(zero_base(), mu, -std::conj(mu), C, C);
  for (int trial = 0; trial < 10; ++trial) {
    const double tau = uniform(-2, 2);
    const double zeta = uniform(-2, 2);
    CHECK(max_abs(Matrix3c(general.U(tau, zeta) -
                           reduced.fields.U(tau, zeta))) < 1e-14);
    CHECK(max_abs(Matrix3c(general.A(0, tau, zeta) -
                           reduced.fields.A(0, tau, zeta))) < 1e-14);
  }
}

TEST_CASE("dress_once_general first-order expansion") {
  const Complex mu(0.5, 0.3);
  const Vector3c CR(1, 0.5, 1);
  const Vector3c CL(0.3, 1.0, 0.8);
  const auto base = zero_base();
  const double delta = 1e-6;
  const auto stepped =
      dress_once_general(base, mu, mu + Complex(delta, 0), CR, CL);

  for (double tau : {-0.8, 0.0, 0.9}) {
    for (double zeta : {-0.7, 0.2, 1.0}) {
      const Vector3c phi = base.psi(mu, CR, tau, zeta);
      const RowVector3c chi = base.xi(mu, CL, tau, zeta);
      const Matrix3c p0 = (phi * chi) / Complex(chi * phi);
      const Matrix3c du =
          (stepped.U(tau, zeta) - base.fields.U(tau, zeta)) / delta;
      CHECK(max_abs(Matrix3c(du - commutator(j_matrix(), p0))) < 1e-5);
    }
  }
}

TEST_CASE("dress_once_general output satisfies the zero-curvature system") {
  // nu close to mu keeps (chi, phi) near its conserved value, so the
  // dressed pair stays regular on the whole test window.
  const auto zg = dress_once_general(zero_base(), Complex(0.5, 0.3),
                                     Complex(0.55, 0.3), Vector3c(1, 0.5, 1),
                                     Vector3c(0.3, 1, 0.8));
  const Grid2D grid{-3, 3, 13, -3, 3, 13};
  const auto r = residual_zcr(zg.U, zg.A, zg.detuning, grid, 1e-3);
  CHECK(r.max_residual() <= 5e-6);
}

TEST_CASE("dress_once_general degenerate pairing") {
  // C_left chosen orthogonal to C_right at the origin of the zero seed:
  // (chi, phi)(0,0) = sum conj(CL_k) CR_k = 0 for these constants.
  const auto zg = dress_once_general(zero_base(), Complex(0.5, 0.0),
                                     Complex(0.5, 0.0), Vector3c(1, 1, 0),
                                     Vector3c(1, -1, 0));
  CHECK_THROWS_AS(zg.U(0.0, 0.0), DegenerateInnerProduct);
}

TEST_CASE("dress_pure operation") {
  DetuningModel det;
  const auto base = zero_base();
  const Complex mu(0.5, 0.2);
  const Vector3c C(1, 0.5, 1);
  const Vector3c phi = base.psi(mu, C, 0.4, -0.3);
  const Projector p = projector_from_vector(phi);

  // a in the kernel of P is a fixed point
  Vector3c kernel_vec = Vector3c(1, 0, 0) - phi * (phi.dot(Vector3c(1, 0, 0)) /
                                                   phi.squaredNorm());
  const auto fixed = dress_pure({kernel_vec}, mu, p, det);
  CHECK(max_abs(Vector3c(fixed[0] - kernel_vec)) < 1e-14);

  // ground-state amplitude keeps unit norm
  const auto dressed = dress_pure({Vector3c(0, 0, 1)}, mu, p, det);
  CHECK(std::abs(dressed[0].norm() - 1.0) < 1e-10);

  CHECK_THROWS_AS(dress_pure({Vector3c(0, 0, 1), Vector3c(1, 0, 0)}, mu, p,
                             det),
                  ConfigError);
}

TEST_CASE("dress_pure agrees with the matrix transform") {
  const Complex mu(0.5, 0.3);
  const auto base = zero_base();
  const auto s = dress_once(base, mu, Vector3c(1, 1, 1));
  const DetuningModel det = base.fields.detuning;
  for (double tau : {-1.5, 0.0, 2.0}) {
    for (double zeta : {-1.0, 0.5}) {
      const Vector3c phi = base.psi(mu, Vector3c(1, 1, 1), tau, zeta);
      const Projector p = projector_from_vector(phi);
      const Vector3c a0 = (*base.fields.pure_state)(0, tau, zeta);
      const auto a1 = dress_pure({a0}, mu, p, det);
      const Matrix3c from_vector = a1[0] * a1[0].adjoint();
      CHECK(max_abs(Matrix3c(from_vector - s.fields.A(0, tau, zeta))) < 1e-9);
      CHECK(max_abs(Vector3c(a1[0] - (*s.fields.pure_state)(0, tau, zeta))) <
            1e-12);
    }
  }
}

TEST_CASE("two-step chain separates into two solitons") {
  DressingChain chain{SeedBackground::zero(DetuningModel{}), {}};
  chain.steps.push_back({Complex(0.4, 0.2), Vector3c(1, 1, 1)});
  chain.steps.push_back({Complex(0.6, -0.3), Vector3c(1, 1, 1)});
  const auto state = evaluate_chain(chain);

  const Grid2D grid{-5, 5, 21, -5, 5, 21};
  CHECK(residual_mb(state.fields, grid, 1e-3).max_residual() <= 1e-5);

  // pulse drift speeds are <|alpha|^2> = 1/(4|mu|^2) on the sharp line;
  // at zeta = -30 the pulses sit near 37.5 and 16.7.
  const double zeta = -30.0;
  const auto amplitude = [&state](double tau, double z) {
    return std::hypot(std::abs(state.fields.e_minus(tau, z)),
                      std::abs(state.fields.e_plus(tau, z)));
  };
  const FieldEvaluator amp = [&](double tau, double z) {
    return Complex(amplitude(tau, z), 0.0);
  };
  const double peak1 = scan_peak(amp, zeta, 30.0, 45.0);
  const double peak2 = scan_peak(amp, zeta, 10.0, 24.0);
  CHECK(std::abs(peak1 - 0.8) < 1e-3);
  CHECK(std::abs(peak2 - 1.2) < 1e-3);
}

TEST_CASE("dressed pump residual is second order in h") {
  DetuningModel det;
  auto state = seed_dressable(
      SeedBackground::periodic_pump(Complex(1.0, 0.0), +1, det));
  state = dress_once(state, Complex(1.4, 0.3), Vector3c(0.8, 1.0, 0.5));
  const Grid2D grid{-3, 3, 13, -3, 3, 13};
  const double r_h = residual_mb(state.fields, grid, 1e-3).max_residual();
  const double r_half = residual_mb(state.fields, grid, 5e-4).max_residual();
  CHECK(std::log2(r_h / r_half) >= 1.9);
  CHECK(r_h <= 1e-4);
}

TEST_CASE("populations seed converts pulse polarization") {
  const auto seed =
      SeedBackground::populations(0.1, 0.3, 0.6, DetuningModel{});
  const auto state = dress_once(seed_dressable(seed), Complex(0.5, 0.0),
                                Vector3c(1, 1, 1));
  const auto ratio_at = [&](double zeta) {
    double best_p = 0, best_m = 0;
    for (double tau = -30; tau <= 30; tau += 0.005) {
      best_p = std::max(best_p, std::abs(state.fields.e_plus(tau, zeta)));
      best_m = std::max(best_m, std::abs(state.fields.e_minus(tau, zeta)));
    }
    return best_p / best_m;
  };
  // rate from the wavefunction exponents: Re<alpha(mu)(n_ap - n_am)>
  const double rate = (0.3 - 0.1) * 1.0;  // alpha(0.5) = 1 on resonance
  const double r0 = ratio_at(0.0);
  for (double zeta : {4.0, 8.0}) {
    const double expected = r0 * std::exp(rate * zeta);
    CHECK(std::abs(ratio_at(zeta) / expected - 1.0) < 0.01);
  }
}
