#include <random>

#include <doctest.h>

#include "mbd/linalg.hpp"

using namespace mbd;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(20240817);
  return gen;
}

Complex random_complex(double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return scale * Complex(dist(rng()), dist(rng()));
}

Matrix3c random_matrix(double scale = 1.0) {
  Matrix3c m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = random_complex(scale);
  return m;
}

Vector3c random_vector(double scale = 1.0) {
  return Vector3c(random_complex(scale), random_complex(scale),
                  random_complex(scale));
}

}  // namespace

TEST_CASE("commutator basics") {
  const Matrix3c a = random_matrix();
  CHECK(max_abs(commutator(a, a)) == 0.0);
  CHECK(max_abs(commutator(Matrix3c::Identity(), random_matrix())) == 0.0);

  // [diag(1,1,-1), M] with only M_13 = 1 doubles that entry:
  // (J M)_13 = 1, (M J)_13 = -1.
  Matrix3c m = Matrix3c::Zero();
  m(0, 2) = 1.0;
  Matrix3c j = Matrix3c::Zero();
  j(0, 0) = 1.0;
  j(1, 1) = 1.0;
  j(2, 2) = -1.0;
  const Matrix3c c = commutator(j, m);
  CHECK(c(0, 2) == Complex(2.0, 0.0));
  Matrix3c expected = Matrix3c::Zero();
  expected(0, 2) = 2.0;
  CHECK(max_abs(Matrix3c(c - expected)) == 0.0);
}

TEST_CASE("commutator is antisymmetric and traceless") {
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix3c a = random_matrix();
    const Matrix3c b = random_matrix();
    CHECK(max_abs(Matrix3c(commutator(a, b) + commutator(b, a))) == 0.0);
    CHECK(std::abs(commutator(a, b).trace()) < 1e-12);
  }
}

TEST_CASE("commutator is bilinear") {
  const Matrix3c a = random_matrix();
  const Matrix3c b = random_matrix();
  const Matrix3c c = random_matrix();
  const Complex s = random_complex();
  const Matrix3c lhs = commutator(Matrix3c(s * a + b), c);
  const Matrix3c rhs = s * commutator(a, c) + commutator(b, c);
  CHECK(max_abs(Matrix3c(lhs - rhs)) < 1e-13);
}

TEST_CASE("projector examples") {
  {
    const Projector p = projector_from_vector(Vector3c(1, 0, 0));
    Matrix3c expected = Matrix3c::Zero();
    expected(0, 0) = 1.0;
    CHECK(max_abs(Matrix3c(p.m() - expected)) == 0.0);
  }
  {
    const Projector p = projector_from_vector(Vector3c(1, 1, 0));
    CHECK(p.m()(0, 0) == Complex(0.5, 0.0));
    CHECK(p.m()(0, 1) == Complex(0.5, 0.0));
    CHECK(p.m()(1, 0) == Complex(0.5, 0.0));
    CHECK(p.m()(1, 1) == Complex(0.5, 0.0));
    CHECK(max_abs(Vector3c(p.m().col(2))) == 0.0);
  }
  {
    // phi = (1, i, 0): off-diagonals -i/2 and i/2 by the direct formula.
    const Projector p = projector_from_vector(Vector3c(1, Complex(0, 1), 0));
    CHECK(std::abs(p.m()(0, 0) - Complex(0.5, 0.0)) < 1e-16);
    CHECK(std::abs(p.m()(1, 1) - Complex(0.5, 0.0)) < 1e-16);
    CHECK(std::abs(p.m()(0, 1) - Complex(0.0, -0.5)) < 1e-16);
    CHECK(std::abs(p.m()(1, 0) - Complex(0.0, 0.5)) < 1e-16);
  }
}

TEST_CASE("projector rejects degenerate vectors") {
  CHECK_THROWS_AS(projector_from_vector(Vector3c(0, 0, 0)), DegenerateVector);
}

TEST_CASE("projector invariants over wide norm range") {
  std::uniform_real_distribution<double> log_scale(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double scale = std::pow(10.0, log_scale(rng()));
    Vector3c phi = random_vector(scale);
    if (phi.norm() == 0.0) continue;
    const Matrix3c p = projector_from_vector(phi).m();
    CHECK(max_abs(Matrix3c(p * p - p)) < 1e-12);
    CHECK(hermitian_deviation(p) < 1e-12);
    CHECK(std::abs(p.trace() - Complex(1.0, 0.0)) < 1e-12);
  }
}
