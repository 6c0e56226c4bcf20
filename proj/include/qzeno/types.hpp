// types.hpp — scalar/matrix aliases and error types shared across qzeno

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qzeno {

using Index = Eigen::Index;

template <typename Scalar> using VectorX  = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using MatrixX  = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using VectorXC = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar> using MatrixXC = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

// Numeric kernel failures (eigensolver non-convergence, ill-posed fits).
// Input validation throws std::invalid_argument instead.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qzeno
