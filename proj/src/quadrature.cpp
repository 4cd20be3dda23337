#include "nsfr/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nsfr {

namespace {

// Legendre polynomial P_n and derivative at x by three-term recurrence.
void legendre_and_derivative(int n, double x, double& pn, double& dpn)
{
    double p0 = 1.0, p1 = x;
    if (n == 0) { pn = p0; dpn = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    dpn = n * (x * p1 - p0) / (x * x - 1.0);
}

Quadrature1D gauss_legendre(int p)
{
    const int n = p + 1;
    Quadrature1D q{QuadratureKind::GaussLegendre, p,
                   std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess for the i-th root of P_n.
        double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pn = 0.0, dpn = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre_and_derivative(n, x, pn, dpn);
            const double dx = pn / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_and_derivative(n, x, pn, dpn);
        q.nodes[i] = x;
        q.weights[i] = 2.0 / ((1.0 - x * x) * dpn * dpn);
    }
    return q;
}

Quadrature1D gauss_lobatto(int p)
{
    const int n = p + 1; // n >= 2
    Quadrature1D q{QuadratureKind::GaussLobattoLegendre, p,
                   std::vector<double>(n), std::vector<double>(n)};
    q.nodes.front() = -1.0;
    q.nodes.back() = 1.0;
    // Interior nodes are roots of P'_{n-1}; Newton on dP using
    // d/dx[P'_{n-1}] expressed through the Legendre ODE.
    const int m = n - 1;
    for (int i = 1; i < m; ++i) {
        double x = -std::cos(M_PI * i / m);
        for (int it = 0; it < 100; ++it) {
            double pm = 0.0, dpm = 0.0;
            legendre_and_derivative(m, x, pm, dpm);
            // (1-x^2) P'' = 2x P' - m(m+1) P
            const double d2pm = (2.0 * x * dpm - m * (m + 1.0) * pm) / (1.0 - x * x);
            const double dx = dpm / d2pm;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = x;
    }
    for (int i = 0; i < n; ++i) {
        double pm = 0.0, dpm = 0.0;
        legendre_and_derivative(m, q.nodes[i], pm, dpm);
        q.weights[i] = 2.0 / (m * (m + 1.0) * pm * pm);
    }
    return q;
}

} // namespace

Quadrature1D gauss_quadrature(QuadratureKind kind, int p)
{
    if (p < 1)
        throw std::invalid_argument("gauss_quadrature: degree must be >= 1");
    return kind == QuadratureKind::GaussLegendre ? gauss_legendre(p)
                                                 : gauss_lobatto(p);
}

} // namespace nsfr
