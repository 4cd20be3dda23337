#ifndef NSFR_LEGENDRE_HPP
#define NSFR_LEGENDRE_HPP

#include <Eigen/Dense>
#include <vector>

namespace nsfr {

/// Evaluation matrix of the p+1 L2-orthonormal Legendre polynomials on [-1,1].
/// Row k holds the basis values at points[k]; column j is mode j.
Eigen::MatrixXd legendre_modal_basis(int p, const std::vector<double>& points);

/// Same layout for the first derivatives of the orthonormal basis.
Eigen::MatrixXd legendre_modal_basis_derivative(int p,
                                                const std::vector<double>& points);

} // namespace nsfr

#endif
