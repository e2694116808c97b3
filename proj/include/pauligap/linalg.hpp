#pragma once

#include <complex>

#include <Eigen/Core>

namespace pauligap {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat2c = Eigen::Matrix2cd;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using MatXc = Eigen::MatrixXcd;
using VecXc = Eigen::VectorXcd;
using VecX = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Pauli matrix sigma_{i+1}, i in {0,1,2}.
Mat2c pauli(int i);

// sigma . v for real or complex coefficient vectors.
Mat2c sigma_dot(const Vec3& v);
Mat2c sigma_dot(const CVec3& c);

// Largest singular value.
double spectral_norm(const MatXc& m);

// Smallest singular value (square or rectangular).
double min_singular_value(const MatXc& m);

// max |m - m^*| / max |m|; 0 for the zero matrix.
double hermitian_defect(const MatXc& m);

}  // namespace pauligap
