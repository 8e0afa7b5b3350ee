#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mbd {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using RowVector3c = Eigen::Matrix<Complex, 1, 3>;

inline constexpr Complex kI{0.0, 1.0};

/// Max-entry norm, the default norm for all tolerance checks.
inline double max_abs(const Matrix3c& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vector3c& v) { return v.cwiseAbs().maxCoeff(); }

inline double hermitian_deviation(const Matrix3c& m) {
  return max_abs(Matrix3c(m - m.adjoint()));
}

inline double anti_hermitian_deviation(const Matrix3c& m) {
  return max_abs(Matrix3c(m + m.adjoint()));
}

}  // namespace mbd
