#include "nsfr/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace nsfr {

Eigen::MatrixXd legendre_modal_basis(int p, const std::vector<double>& points)
{
    if (p < 0) throw std::invalid_argument("legendre_modal_basis: p >= 0 required");
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd chi(n, p + 1);
    for (int k = 0; k < n; ++k) {
        const double x = points[k];
        if (x < -1.0 - 1e-12 || x > 1.0 + 1e-12)
            throw std::invalid_argument("legendre_modal_basis: point outside [-1,1]");
        double p0 = 1.0, p1 = x;
        chi(k, 0) = p0;
        if (p >= 1) chi(k, 1) = p1;
        for (int j = 2; j <= p; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            chi(k, j) = p2;
            p0 = p1;
            p1 = p2;
        }
    }
    for (int j = 0; j <= p; ++j)
        chi.col(j) *= std::sqrt((2.0 * j + 1.0) / 2.0);
    return chi;
}

Eigen::MatrixXd legendre_modal_basis_derivative(int p,
                                                const std::vector<double>& points)
{
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd dchi(n, p + 1);
    for (int k = 0; k < n; ++k) {
        const double x = points[k];
        double p0 = 1.0, p1 = x;
        double d0 = 0.0, d1 = 1.0;
        dchi(k, 0) = d0;
        if (p >= 1) dchi(k, 1) = d1;
        for (int j = 2; j <= p; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            const double d2 = ((2.0 * j - 1.0) * (p1 + x * d1) - (j - 1.0) * d0) / j;
            dchi(k, j) = d2;
            p0 = p1; p1 = p2;
            d0 = d1; d1 = d2;
        }
    }
    for (int j = 0; j <= p; ++j)
        dchi.col(j) *= std::sqrt((2.0 * j + 1.0) / 2.0);
    return dchi;
}

} // namespace nsfr
