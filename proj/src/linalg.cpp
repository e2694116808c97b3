#include "pauligap/linalg.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pauligap {

Mat2c pauli(int i) {
  Mat2c s;
  switch (i) {
    case 0: s << 0.0, 1.0, 1.0, 0.0; break;
    case 1: s << 0.0, -kI, kI, 0.0; break;
    default: s << 1.0, 0.0, 0.0, -1.0; break;
  }
  return s;
}

Mat2c sigma_dot(const Vec3& v) {
  Mat2c s;
  s << v(2), cplx(v(0), -v(1)), cplx(v(0), v(1)), -v(2);
  return s;
}

Mat2c sigma_dot(const CVec3& c) {
  Mat2c s;
  s << c(2), c(0) - kI * c(1), c(0) + kI * c(1), -c(2);
  return s;
}

namespace {

// Eigenvalues of the smaller Gram matrix; cheaper than an SVD for the
// dense sizes used here and accurate enough for norms.
VecX gram_eigenvalues(const MatXc& m) {
  MatXc g = (m.rows() >= m.cols()) ? MatXc(m.adjoint() * m) : MatXc(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatXc> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double spectral_norm(const MatXc& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= 16) {
    Eigen::JacobiSVD<MatXc> svd(m);
    return svd.singularValues()(0);
  }
  VecX ev = gram_eigenvalues(m);
  return std::sqrt(std::max(ev(ev.size() - 1), 0.0));
}

double min_singular_value(const MatXc& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatXc> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double hermitian_defect(const MatXc& m) {
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace pauligap
