#pragma once

#include <Eigen/Dense>

namespace pubtrend {

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RowMatrixXd = RowMatrix<double>;

}  // namespace pubtrend
