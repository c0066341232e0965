#pragma once

#include <Eigen/Dense>

#include "kslat/matrix.hpp"

namespace kslat::internal {

inline Eigen::MatrixXcd to_eigen(const CMat& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

inline CMat from_eigen(const Eigen::MatrixXcd& m) {
  CMat a(int(m.rows()), int(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

// Largest singular value.
inline double operator_norm(const CMat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

}  // namespace kslat::internal
