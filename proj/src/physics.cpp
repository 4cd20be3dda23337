#include "nsfr/physics.hpp"

#include <cmath>

namespace nsfr {

double logarithmic_mean(double a, double b)
{
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("logarithmic_mean: positive inputs required");
    return logarithmic_mean_pre(a, b, std::log(a), std::log(b));
}

double logarithmic_mean_pre(double a, double b, double log_a, double log_b)
{
    const double zeta = a / b;
    if (std::abs(zeta - 1.0) < 1e-4) {
        const double f = (zeta - 1.0) / (zeta + 1.0);
        const double u = f * f;
        const double series = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u / 7.0));
        return 0.5 * (a + b) / series;
    }
    return (a - b) / (log_a - log_b);
}

double burgers_two_point_flux(double um, double up)
{
    // Grouped so the evaluation is bitwise symmetric in its arguments.
    return ((um * um + up * up) + um * up) / 6.0;
}

EulerPrimitive euler_primitive(const double* u, int dim, double gamma)
{
    EulerPrimitive pr;
    pr.rho = u[0];
    if (!(pr.rho > 0.0))
        throw AdmissibilityError("non-positive density " + std::to_string(pr.rho));
    double ke = 0.0;
    for (int i = 0; i < 3; ++i) {
        pr.q[i] = i < dim ? u[1 + i] / pr.rho : 0.0;
        ke += pr.q[i] * pr.q[i];
    }
    pr.p = (gamma - 1.0) * (u[dim + 1] - 0.5 * pr.rho * ke);
    if (!(pr.p > 0.0))
        throw AdmissibilityError("non-positive pressure " + std::to_string(pr.p));
    return pr;
}

double euler_entropy_function(const Eigen::VectorXd& u, int dim, double gamma)
{
    auto pr = euler_primitive(u.data(), dim, gamma);
    const double s = std::log(pr.p) - gamma * std::log(pr.rho);
    return -pr.rho * s;
}

Eigen::VectorXd euler_entropy_variables(const Eigen::VectorXd& u, int dim,
                                        double gamma)
{
    auto pr = euler_primitive(u.data(), dim, gamma);
    const double s = std::log(pr.p) - gamma * std::log(pr.rho);
    const double k = gamma - 1.0;
    Eigen::VectorXd v(dim + 2);
    v[0] = (gamma + 1.0 - s) - k * u[dim + 1] / pr.p;
    for (int i = 0; i < dim; ++i) v[1 + i] = k * pr.rho * pr.q[i] / pr.p;
    v[dim + 1] = -k * pr.rho / pr.p;
    return v;
}

Eigen::VectorXd entropy_to_conservative(const Eigen::VectorXd& v, int dim,
                                        double gamma)
{
    const double k = gamma - 1.0;
    const double ve = v[dim + 1];
    if (!(ve < 0.0))
        throw AdmissibilityError("entropy variables: last component must be negative");
    const double z = -ve / k; // rho / p
    double q2 = 0.0;
    Eigen::VectorXd q(dim);
    for (int i = 0; i < dim; ++i) {
        q[i] = v[1 + i] / (-ve);
        q2 += q[i] * q[i];
    }
    const double s = gamma - v[0] + 0.5 * ve * q2;
    const double p = std::exp((s + gamma * std::log(z)) / (1.0 - gamma));
    const double rho = z * p;
    Eigen::VectorXd u(dim + 2);
    u[0] = rho;
    for (int i = 0; i < dim; ++i) u[1 + i] = rho * q[i];
    u[dim + 1] = p / k + 0.5 * rho * q2;
    return u;
}

Eigen::VectorXd euler_convective_flux(const Eigen::VectorXd& u, int dim,
                                      int dir, double gamma)
{
    auto pr = euler_primitive(u.data(), dim, gamma);
    Eigen::VectorXd f(dim + 2);
    f[0] = u[1 + dir];
    for (int i = 0; i < dim; ++i)
        f[1 + i] = u[1 + i] * pr.q[dir] + (i == dir ? pr.p : 0.0);
    f[dim + 1] = (u[dim + 1] + pr.p) * pr.q[dir];
    return f;
}

Eigen::MatrixXd ranocha_two_point_flux(const Eigen::VectorXd& um,
                                       const Eigen::VectorXd& up, int dim,
                                       double gamma)
{
    EulerModel model;
    model.dim = dim;
    model.gas.gamma = gamma;
    EulerModel::NodePre a, b;
    model.precompute(um.data(), a);
    model.precompute(up.data(), b);
    Eigen::MatrixXd f(dim + 2, dim);
    Eigen::VectorXd col(dim + 2);
    for (int dir = 0; dir < dim; ++dir) {
        model.two_point_flux(a, b, dir, col.data());
        f.col(dir) = col;
    }
    return f;
}

double euler_max_wavespeed_dir(const Eigen::VectorXd& u, int dim, int dir,
                               double gamma)
{
    auto pr = euler_primitive(u.data(), dim, gamma);
    return std::abs(pr.q[dir]) + std::sqrt(gamma * pr.p / pr.rho);
}

double euler_max_wavespeed(const Eigen::VectorXd& u, int dim, double gamma)
{
    auto pr = euler_primitive(u.data(), dim, gamma);
    double q2 = 0.0;
    for (int i = 0; i < dim; ++i) q2 += pr.q[i] * pr.q[i];
    return std::sqrt(q2) + std::sqrt(gamma * pr.p / pr.rho);
}

Eigen::VectorXd lax_friedrichs_dissipation(const Eigen::VectorXd& um,
                                           const Eigen::VectorXd& up, int dim,
                                           int dir, double gamma)
{
    const double lam = std::max(euler_max_wavespeed_dir(um, dim, dir, gamma),
                                euler_max_wavespeed_dir(up, dim, dir, gamma));
    return -0.5 * lam * (up - um);
}

double sutherland_viscosity(double t, const GasConstants& gas)
{
    if (!(t > 0.0))
        throw std::invalid_argument("sutherland_viscosity: T > 0 required");
    const double tr = t / gas.t_ref;
    const double s = gas.sutherland_ratio * gas.t_ref;
    return gas.mu_ref * tr * std::sqrt(tr) * (gas.t_ref + s) / (t + s);
}

double effective_viscosity(double rho, double p, const GasConstants& gas)
{
    if (gas.constant_viscosity) return gas.mu_ref;
    const double t = gas.gamma * gas.mach * gas.mach * p / rho;
    return sutherland_viscosity(t, gas);
}

Eigen::MatrixXd navier_stokes_viscous_flux(const Eigen::VectorXd& u,
                                           const Eigen::MatrixXd& grad_u,
                                           int dim, const GasConstants& gas)
{
    const int n = dim + 2;
    EulerModel model;
    model.dim = dim;
    model.gas = gas;
    model.viscous_terms = true;
    Eigen::VectorXd grad_flat(dim * n), fv_flat(dim * n);
    for (int a = 0; a < dim; ++a)
        for (int s = 0; s < n; ++s) grad_flat[a * n + s] = grad_u(a, s);
    model.viscous_flux(u.data(), grad_flat.data(), fv_flat.data());
    Eigen::MatrixXd fv(n, dim);
    for (int a = 0; a < dim; ++a)
        for (int s = 0; s < n; ++s) fv(s, a) = fv_flat[a * n + s];
    return fv;
}

void BurgersModel::dissipation_increment(const double* um, const double* up,
                                         int /*dir*/, double* d) const
{
    const double lam = std::max(std::abs(um[0]), std::abs(up[0]));
    d[0] = -0.5 * lam * (up[0] - um[0]);
}

void EulerModel::precompute(const double* u, NodePre& pre) const
{
    auto pr = euler_primitive(u, dim, gas.gamma);
    pre.rho = pr.rho;
    double q2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        pre.q[i] = pr.q[i];
        q2 += pr.q[i] * pr.q[i];
    }
    pre.p = pr.p;
    pre.z = pr.rho / pr.p;
    pre.log_rho = std::log(pr.rho);
    pre.log_z = std::log(pre.z);
    pre.e_kin = 0.5 * q2;
}

void EulerModel::two_point_flux(const NodePre& a, const NodePre& b, int dir,
                                double* f) const
{
    const double rho_ln = logarithmic_mean_pre(a.rho, b.rho, a.log_rho, b.log_rho);
    const double z_ln = logarithmic_mean_pre(a.z, b.z, a.log_z, b.log_z);
    const double pm = 0.5 * (a.p + b.p);
    double qm[3] = {0.0, 0.0, 0.0};
    double qdot = 0.0;
    for (int i = 0; i < dim; ++i) {
        qm[i] = 0.5 * (a.q[i] + b.q[i]);
        qdot += a.q[i] * b.q[i];
    }
    const double fm = rho_ln * qm[dir];
    f[0] = fm;
    for (int i = 0; i < dim; ++i)
        f[1 + i] = fm * qm[i] + (i == dir ? pm : 0.0);
    f[dim + 1] = fm * (1.0 / ((gas.gamma - 1.0) * z_ln) + 0.5 * qdot)
               + 0.5 * (a.p * b.q[dir] + b.p * a.q[dir]);
}

void EulerModel::convective_flux(const double* u, int dir, double* f) const
{
    auto pr = euler_primitive(u, dim, gas.gamma);
    f[0] = u[1 + dir];
    for (int i = 0; i < dim; ++i)
        f[1 + i] = u[1 + i] * pr.q[dir] + (i == dir ? pr.p : 0.0);
    f[dim + 1] = (u[dim + 1] + pr.p) * pr.q[dir];
}

void EulerModel::entropy_variables_node(const double* u, double* v) const
{
    Eigen::Map<const Eigen::VectorXd> um(u, dim + 2);
    Eigen::VectorXd vv = euler_entropy_variables(um, dim, gas.gamma);
    for (int s = 0; s < dim + 2; ++s) v[s] = vv[s];
}

void EulerModel::entropy_to_conservative_node(const double* v, double* u) const
{
    Eigen::Map<const Eigen::VectorXd> vm(v, dim + 2);
    Eigen::VectorXd uu = entropy_to_conservative(vm, dim, gas.gamma);
    for (int s = 0; s < dim + 2; ++s) u[s] = uu[s];
}

double EulerModel::entropy_function(const double* u) const
{
    Eigen::Map<const Eigen::VectorXd> um(u, dim + 2);
    return euler_entropy_function(um, dim, gas.gamma);
}

double EulerModel::max_wavespeed_dir(const double* u, int dir) const
{
    Eigen::Map<const Eigen::VectorXd> um(u, dim + 2);
    return euler_max_wavespeed_dir(um, dim, dir, gas.gamma);
}

double EulerModel::max_wavespeed(const double* u) const
{
    Eigen::Map<const Eigen::VectorXd> um(u, dim + 2);
    return euler_max_wavespeed(um, dim, gas.gamma);
}

void EulerModel::dissipation_increment(const double* um, const double* up,
                                       int dir, double* d) const
{
    const double lam = std::max(max_wavespeed_dir(um, dir),
                                max_wavespeed_dir(up, dir));
    for (int s = 0; s < dim + 2; ++s) d[s] = -0.5 * lam * (up[s] - um[s]);
}

void EulerModel::viscous_flux(const double* u, const double* grad,
                              double* fv) const
{
    const int n = dim + 2;
    auto pr = euler_primitive(u, dim, gas.gamma);
    const double mu = effective_viscosity(pr.rho, pr.p, gas);

    // Primitive gradients: dq[a][i] = d q_i / d x_a, dpr[a] = d(p/rho)/d x_a.
    double dq[3][3] = {};
    double dpr[3] = {};
    double q2 = 0.0;
    for (int i = 0; i < dim; ++i) q2 += pr.q[i] * pr.q[i];
    for (int a = 0; a < dim; ++a) {
        const double drho = grad[a * n + 0];
        double qdq = 0.0;
        for (int i = 0; i < dim; ++i) {
            dq[a][i] = (grad[a * n + 1 + i] - pr.q[i] * drho) / pr.rho;
            qdq += pr.q[i] * dq[a][i];
        }
        const double de = grad[a * n + dim + 1];
        const double dp = (gas.gamma - 1.0)
                        * (de - 0.5 * q2 * drho - pr.rho * qdq);
        dpr[a] = (dp * pr.rho - pr.p * drho) / (pr.rho * pr.rho);
    }
    double divq = 0.0;
    for (int a = 0; a < dim; ++a) divq += dq[a][a];

    const double heat_coeff = mu * gas.gamma / (gas.prandtl * (gas.gamma - 1.0));
    for (int a = 0; a < dim; ++a) {
        fv[a * n + 0] = 0.0;
        double work = 0.0;
        for (int i = 0; i < dim; ++i) {
            double tau = mu * (dq[a][i] + dq[i][a]);
            if (i == a) tau -= (2.0 / 3.0) * mu * divq;
            fv[a * n + 1 + i] = tau;
            work += tau * pr.q[i];
        }
        fv[a * n + dim + 1] = work + heat_coeff * dpr[a];
    }
}

} // namespace nsfr
