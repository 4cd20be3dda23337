#ifndef NSFR_DIAGNOSTICS_HPP
#define NSFR_DIAGNOSTICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nsfr/legendre.hpp"
#include "nsfr/semidiscretization.hpp"
#include "nsfr/tensor.hpp"

namespace nsfr {

struct ErrorNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

/// Degree p+10 Gauss-Legendre quadrature used for error norms and the
/// integrated turbulence quantities ("overintegrating by 10").
class OverIntegrator {
public:
    OverIntegrator(int p, int dim, int extra = 10)
        : p_(p), dim_(dim),
          quad_(gauss_quadrature(QuadratureKind::GaussLegendre, p + extra))
    {
        basis_1d_ = legendre_modal_basis(p, quad_.nodes);
        const int nq = static_cast<int>(quad_.nodes.size());
        n_points_ = 1;
        for (int a = 0; a < dim; ++a) n_points_ *= nq;
        w_ = Eigen::VectorXd::Ones(1);
        for (int a = 0; a < dim; ++a) {
            Eigen::VectorXd nw(w_.size() * nq);
            for (int k = 0; k < nq; ++k)
                nw.segment(k * w_.size(), w_.size()) = quad_.weights[k] * w_;
            w_ = nw;
        }
    }

    int n_points() const { return n_points_; }
    const Eigen::VectorXd& weights() const { return w_; }

    /// Evaluates per-element modal coefficients at the quadrature points.
    Eigen::MatrixXd evaluate(const Eigen::MatrixXd& modal) const
    {
        return tensor_apply_cols(basis_1d_, modal, dim_);
    }

    /// Reference coordinates of quadrature point k (x fastest).
    std::array<double, 3> ref_coord(int k) const
    {
        const int nq = static_cast<int>(quad_.nodes.size());
        std::array<double, 3> x = {0.0, 0.0, 0.0};
        for (int a = 0; a < dim_; ++a) {
            x[a] = quad_.nodes[k % nq];
            k /= nq;
        }
        return x;
    }

private:
    int p_, dim_, n_points_;
    Quadrature1D quad_;
    Eigen::MatrixXd basis_1d_;
    Eigen::VectorXd w_;
};

/// Finite-difference rate -d(values)/dt on a possibly non-uniform time grid;
/// centered interior stencils, one-sided at the ends. Requires >= 2 samples.
std::vector<double> negative_time_derivative(const std::vector<double>& t,
                                             const std::vector<double>& values);

/// Pairwise convergence rates log(e_{i-1}/e_i)/log(h_{i-1}/h_i).
std::vector<double> convergence_rates(const std::vector<double>& h,
                                      const std::vector<double>& err);

struct DissipationSeries {
    std::vector<double> t;
    std::vector<double> eps_ke;    // -d(KE)/dt
    std::vector<double> eps_omega; // 2 * enstrophy / Re
    std::vector<double> eps_num;   // eps_ke - eps_omega
};

DissipationSeries dissipation_decomposition(const std::vector<double>& t,
                                            const std::vector<double>& ke,
                                            const std::vector<double>& enstrophy,
                                            double reynolds);

template <class Model>
double domain_volume(const Semidiscretization<Model>& sd)
{
    double v = 1.0;
    for (int a = 0; a < sd.mesh().dim; ++a)
        v *= sd.mesh().hi[a] - sd.mesh().lo[a];
    return v;
}

/// Entropy integral on the solution-node quadrature (the time integrator's
/// working definition).
template <class Model>
double integrated_entropy_L2(const Semidiscretization<Model>& sd,
                             const GlobalState& state)
{
    return sd.entropy(state);
}

/// (1/2 uᵀMu, 1/2 uᵀ(M+K)u) summed over elements and states.
template <class Model>
std::pair<double, double> energy_norms(const Semidiscretization<Model>& sd,
                                       const GlobalState& state)
{
    double em = 0.0, ew = 0.0;
    for (const auto& ue : state.u) {
        em += (ue.array() * (sd.ops().mass() * ue).array()).sum();
        ew += sd.ops().broken_inner_product(ue, ue);
    }
    return {0.5 * em, 0.5 * ew};
}

/// Over-integrated L1/L2/Linf error of a derived scalar field against an
/// exact solution evaluated at time t.
template <class Model>
ErrorNorms error_norms(
    const Semidiscretization<Model>& sd, const GlobalState& state,
    const std::function<void(const std::array<double, 3>&, double, double*)>&
        exact_fn,
    double t,
    const std::function<double(const double*)>& field)
{
    OverIntegrator oi(sd.ops().p(), sd.mesh().dim);
    const int ns = sd.n_states();
    ErrorNorms norms;
    Eigen::VectorXd u(ns), ue(ns);
    for (int e = 0; e < sd.mesh().n_elements(); ++e) {
        Eigen::MatrixXd vals = oi.evaluate(state.u[e]);
        auto origin = sd.mesh().element_origin(e);
        for (int k = 0; k < oi.n_points(); ++k) {
            auto xi = oi.ref_coord(k);
            std::array<double, 3> x = {0.0, 0.0, 0.0};
            for (int a = 0; a < sd.mesh().dim; ++a)
                x[a] = origin[a] + 0.5 * (xi[a] + 1.0) * sd.mesh().dx(a);
            for (int s = 0; s < ns; ++s) u[s] = vals(k, s);
            exact_fn(x, t, ue.data());
            const double diff = field(u.data()) - field(ue.data());
            const double wj = oi.weights()[k] * sd.ops().jacobian();
            norms.l1 += wj * std::abs(diff);
            norms.l2 += wj * diff * diff;
            norms.linf = std::max(norms.linf, std::abs(diff));
        }
    }
    norms.l2 = std::sqrt(norms.l2);
    return norms;
}

/// Volume-averaged kinetic energy (1/Ω) ∫ ρ|q|²/2 via over-integration.
template <class Model>
double kinetic_energy(const Semidiscretization<Model>& sd,
                      const GlobalState& state)
{
    OverIntegrator oi(sd.ops().p(), sd.mesh().dim);
    const int d = sd.mesh().dim;
    double ke = 0.0;
    for (int e = 0; e < sd.mesh().n_elements(); ++e) {
        Eigen::MatrixXd vals = oi.evaluate(state.u[e]);
        for (int k = 0; k < oi.n_points(); ++k) {
            double q2 = 0.0;
            for (int i = 0; i < d; ++i)
                q2 += vals(k, 1 + i) * vals(k, 1 + i);
            ke += oi.weights()[k] * sd.ops().jacobian()
                * 0.5 * q2 / vals(k, 0);
        }
    }
    return ke / domain_volume(sd);
}

/// Volume-averaged enstrophy (1/Ω) ∫ ρ|ω|²/2 with ω = ∇×q. Gradients come
/// from the auxiliary variable when use_aux is set (viscous models), else
/// from direct modal differentiation.
template <class Model>
double enstrophy(const Semidiscretization<Model>& sd, const GlobalState& state,
                 bool use_aux = false)
{
    OverIntegrator oi(sd.ops().p(), sd.mesh().dim);
    const int d = sd.mesh().dim;
    const int ns = sd.n_states();
    std::vector<Rates> aux;
    if (use_aux) aux = sd.aux_gradients(state);
    double ens = 0.0;
    for (int e = 0; e < sd.mesh().n_elements(); ++e) {
        Eigen::MatrixXd vals = oi.evaluate(state.u[e]);
        std::vector<Eigen::MatrixXd> grad(d);
        for (int a = 0; a < d; ++a) {
            Eigen::MatrixXd g_modal =
                use_aux ? aux[e][a]
                        : Eigen::MatrixXd((2.0 / sd.mesh().dx(a))
                                          * (sd.ops().diff_modal(a)
                                             * state.u[e]));
            grad[a] = oi.evaluate(g_modal);
        }
        for (int k = 0; k < oi.n_points(); ++k) {
            const double rho = vals(k, 0);
            // dq[a][i] = d q_i / d x_a from conservative gradients
            double dq[3][3] = {};
            for (int a = 0; a < d; ++a)
                for (int i = 0; i < d; ++i)
                    dq[a][i] = (grad[a](k, 1 + i)
                                - (vals(k, 1 + i) / rho) * grad[a](k, 0))
                             / rho;
            double w2 = 0.0;
            if (d == 2) {
                const double wz = dq[0][1] - dq[1][0];
                w2 = wz * wz;
            } else if (d == 3) {
                const double wx = dq[1][2] - dq[2][1];
                const double wy = dq[2][0] - dq[0][2];
                const double wz = dq[0][1] - dq[1][0];
                w2 = wx * wx + wy * wy + wz * wz;
            }
            ens += oi.weights()[k] * sd.ops().jacobian() * 0.5 * rho * w2;
        }
    }
    (void)ns;
    return ens / domain_volume(sd);
}

} // namespace nsfr

#endif
