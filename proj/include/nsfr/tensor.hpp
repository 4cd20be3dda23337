#ifndef NSFR_TENSOR_HPP
#define NSFR_TENSOR_HPP

#include <Eigen/Dense>

namespace nsfr {

/// Applies the same 1D matrix A (m x n) along every axis of a d-dimensional
/// tensor-product array stored flat with the first axis fastest.
/// Equivalent to kron(A,...,A) * x but in O(d * m * n^d) operations.
Eigen::VectorXd tensor_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                             int dim);

/// Column-wise tensor_apply: each column of x is one field.
Eigen::MatrixXd tensor_apply_cols(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& x, int dim);

/// Kronecker product with the first factor varying fastest, matching the
/// flat node ordering used across the library: index = i0 + n0*(i1 + n1*i2).
Eigen::MatrixXd kron_fastest_first(const std::vector<Eigen::MatrixXd>& factors);

} // namespace nsfr

#endif
