#pragma once

#include "mbd/errors.hpp"
#include "mbd/types.hpp"

namespace mbd {

/// [a, b] = ab - ba.
inline Matrix3c commutator(const Matrix3c& a, const Matrix3c& b) {
  return a * b - b * a;
}

/// Rank-one Hermitian projector built from a column vector.
///
/// P_{kj} = phi_k phi_j^* / (phi+, phi).  Satisfies P^2 = P, P+ = P,
/// tr P = 1 by construction.
struct Projector {
  Matrix3c matrix;

  const Matrix3c& m() const { return matrix; }
};

inline constexpr double kProjectorFloor = 1e-300;

inline Projector projector_from_vector(const Vector3c& phi,
                                       double floor = kProjectorFloor) {
  const double norm_sq = phi.squaredNorm();
  if (!(norm_sq > floor)) {
    throw DegenerateVector("projector_from_vector: (phi+,phi) <= floor, "
                           "singular dressing point");
  }
  Projector p;
  p.matrix = (phi * phi.adjoint()) / norm_sq;
  return p;
}

}  // namespace mbd
