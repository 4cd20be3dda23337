#ifndef NSFR_SEMIDISCRETIZATION_HPP
#define NSFR_SEMIDISCRETIZATION_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "nsfr/mesh.hpp"
#include "nsfr/operator_set.hpp"
#include "nsfr/physics.hpp"

namespace nsfr {

/// Per-element modal coefficients (n_modes x n_states each) plus time.
struct GlobalState {
    std::vector<Eigen::MatrixXd> u;
    double t = 0.0;
};

using Rates = std::vector<Eigen::MatrixXd>;

struct SemidiscConfig {
    int p = 3;
    QuadratureKind solution_nodes = QuadratureKind::GaussLobattoLegendre;
    QuadratureKind flux_nodes = QuadratureKind::GaussLobattoLegendre;
    double c = 0.0;
    double kappa = 0.0;
    double sip_multiplier = 1.0;
};

struct EntropyRate {
    double total = 0.0;
    double m_part = 0.0;
    double k_part = 0.0;
};

template <class Model>
class Semidiscretization {
public:
    Semidiscretization(const CartesianMesh& mesh, const SemidiscConfig& cfg,
                       const Model& model)
        : mesh_(mesh), model_(model), cfg_(cfg),
          ops_(make_request(mesh, cfg))
    {
        scratch_.resize(mesh_.n_elements());
    }

    const CartesianMesh& mesh() const { return mesh_; }
    const OperatorSet& ops() const { return ops_; }
    const Model& model() const { return model_; }
    int n_states() const { return model_.n_states(); }

    std::array<double, 3> sol_node_position(int e, int i) const
    {
        auto origin = mesh_.element_origin(e);
        auto xi = ops_.sol_node_coord(i);
        std::array<double, 3> x = {0.0, 0.0, 0.0};
        for (int a = 0; a < mesh_.dim; ++a)
            x[a] = origin[a] + 0.5 * (xi[a] + 1.0) * mesh_.dx(a);
        return x;
    }

    /// Initializes by interpolation at the solution nodes.
    GlobalState init(
        const std::function<void(const std::array<double, 3>&, double*)>& ic) const
    {
        GlobalState s;
        const int ns = n_states();
        s.u.resize(mesh_.n_elements());
        Eigen::MatrixXd nodal(ops_.n_modes(), ns);
        Eigen::VectorXd row(ns);
        for (int e = 0; e < mesh_.n_elements(); ++e) {
            for (int i = 0; i < ops_.n_modes(); ++i) {
                ic(sol_node_position(e, i), row.data());
                for (int s2 = 0; s2 < ns; ++s2) nodal(i, s2) = row[s2];
            }
            s.u[e] = ops_.sol_to_modal(nodal);
        }
        return s;
    }

    /// Full NSFR right-hand side dû/dt.
    void rhs(const GlobalState& state, Rates& out) const
    {
        prepare(state);
        const int ne = mesh_.n_elements();
        out.resize(ne);
        for (int e = 0; e < ne; ++e) out[e] = element_rhs(state, e);
    }

    /// Auxiliary-variable (corrected gradient) coefficients, one matrix per
    /// direction per element; requires a viscous model.
    std::vector<Rates> aux_gradients(const GlobalState& state) const
    {
        prepare(state);
        std::vector<Rates> out(mesh_.n_elements());
        for (int e = 0; e < mesh_.n_elements(); ++e)
            out[e] = scratch_[e].sigma_modal;
        return out;
    }

    /// Entropy-projected modal coefficients v̂ for every element.
    Rates entropy_coeffs(const GlobalState& state) const
    {
        prepare(state);
        Rates v(mesh_.n_elements());
        for (int e = 0; e < mesh_.n_elements(); ++e) v[e] = scratch_[e].vhat;
        return v;
    }

    /// Σ_e v̂ᵀ (M + K) dû/dt with the M/K split exposed.
    EntropyRate entropy_rate(const GlobalState& state, const Rates& rates) const
    {
        Rates v = entropy_coeffs(state);
        EntropyRate r;
        for (int e = 0; e < mesh_.n_elements(); ++e) {
            r.m_part += (v[e].array() * (ops_.mass() * rates[e]).array()).sum();
            if (ops_.c() != 0.0)
                r.k_part +=
                    (v[e].array() * (ops_.k_primary() * rates[e]).array()).sum();
        }
        r.total = r.m_part + r.k_part;
        return r;
    }

    /// Broken Sobolev inner product Σ_e aᵀ (M + K) b, fixed element order.
    double broken_inner(const Rates& a, const Rates& b) const
    {
        double s = 0.0;
        for (int e = 0; e < mesh_.n_elements(); ++e)
            s += ops_.broken_inner_product(a[e], b[e]);
        return s;
    }

    /// Total entropy via the solution-node quadrature.
    double entropy(const GlobalState& state) const
    {
        double eta = 0.0;
        const int ns = n_states();
        Eigen::VectorXd u(ns);
        for (int e = 0; e < mesh_.n_elements(); ++e) {
            Eigen::MatrixXd nodal = ops_.modal_to_sol(state.u[e]);
            for (int i = 0; i < ops_.n_modes(); ++i) {
                for (int s = 0; s < ns; ++s) u[s] = nodal(i, s);
                eta += ops_.w_sol()[i] * ops_.jacobian()
                     * model_.entropy_function(u.data());
            }
        }
        return eta;
    }

    /// ∫ u dx per state variable (conservation diagnostics).
    Eigen::VectorXd total_integrals(const GlobalState& state) const
    {
        return total_integrals_rates(state.u);
    }

    Eigen::VectorXd total_integrals_rates(const Rates& r) const
    {
        Eigen::VectorXd tot = Eigen::VectorXd::Zero(n_states());
        for (int e = 0; e < mesh_.n_elements(); ++e) {
            Eigen::MatrixXd nodal = ops_.modal_to_vol(r[e]);
            tot += ops_.jacobian() * (nodal.transpose() * ops_.w_vol());
        }
        return tot;
    }

    /// max over solution nodes of the model wavespeed (CFL estimates).
    double max_wavespeed(const GlobalState& state) const
    {
        double lam = 0.0;
        const int ns = n_states();
        Eigen::VectorXd u(ns);
        for (int e = 0; e < mesh_.n_elements(); ++e) {
            Eigen::MatrixXd nodal = ops_.modal_to_sol(state.u[e]);
            for (int i = 0; i < ops_.n_modes(); ++i) {
                for (int s = 0; s < ns; ++s) u[s] = nodal(i, s);
                lam = std::max(lam, model_.max_wavespeed(u.data()));
            }
        }
        return lam;
    }

private:
    struct ElemScratch {
        Eigen::MatrixXd vhat;        // n_modes x ns
        Eigen::MatrixXd u_tilde_vol; // n_vol x ns
        std::vector<Eigen::MatrixXd> u_tilde_face; // per face, n_face x ns
        std::vector<typename Model::NodePre> pre;  // n_tot
        // viscous pipeline
        std::vector<Eigen::MatrixXd> sigma_modal;  // per dir, n_modes x ns
        std::vector<Eigen::MatrixXd> fv_modal;     // per dir, n_modes x ns
        std::vector<Eigen::MatrixXd> fv_trace;     // per face, n_face x ns
        std::vector<Eigen::MatrixXd> u_trace;      // per face (raw), n_face x ns
    };

    static OperatorRequest make_request(const CartesianMesh& mesh,
                                        const SemidiscConfig& cfg)
    {
        OperatorRequest req;
        req.p = cfg.p;
        req.dim = mesh.dim;
        req.solution_nodes = cfg.solution_nodes;
        req.flux_nodes = cfg.flux_nodes;
        req.c = cfg.c;
        req.kappa = cfg.kappa;
        for (int a = 0; a < mesh.dim; ++a) req.dx[a] = mesh.dx(a);
        return req;
    }

    // Phase 1: entropy projection at all flux evaluation points, then (for
    // viscous models) auxiliary gradients and viscous flux polynomials.
    void prepare(const GlobalState& state) const
    {
        const int ne = mesh_.n_elements();
        for (int e = 0; e < ne; ++e) {
            try {
                project_element(state.u[e], scratch_[e]);
            } catch (const AdmissibilityError& err) {
                throw AdmissibilityError("element " + std::to_string(e) + ": "
                                         + err.what());
            }
        }
        if (model_.viscous()) {
            for (int e = 0; e < ne; ++e) auxiliary_solve(state, e);
            for (int e = 0; e < ne; ++e) viscous_fluxes(e);
        }
    }

    void project_element(const Eigen::MatrixXd& uhat, ElemScratch& sc) const
    {
        const int ns = n_states();
        const int nv = ops_.n_vol();
        const int nf = ops_.n_face_nodes();

        Eigen::MatrixXd u_vol = ops_.modal_to_vol(uhat);
        Eigen::MatrixXd v_vol(nv, ns);
        Eigen::VectorXd urow(ns), vrow(ns);
        for (int i = 0; i < nv; ++i) {
            for (int s = 0; s < ns; ++s) urow[s] = u_vol(i, s);
            model_.entropy_variables_node(urow.data(), vrow.data());
            for (int s = 0; s < ns; ++s) v_vol(i, s) = vrow[s];
        }
        sc.vhat = ops_.project_vol(v_vol);

        sc.pre.resize(ops_.n_tot());
        sc.u_tilde_vol.resize(nv, ns);
        Eigen::MatrixXd v_proj_vol = ops_.modal_to_vol(sc.vhat);
        for (int i = 0; i < nv; ++i) {
            for (int s = 0; s < ns; ++s) vrow[s] = v_proj_vol(i, s);
            model_.entropy_to_conservative_node(vrow.data(), urow.data());
            for (int s = 0; s < ns; ++s) sc.u_tilde_vol(i, s) = urow[s];
            model_.precompute(urow.data(), sc.pre[i]);
        }

        sc.u_tilde_face.resize(ops_.n_faces());
        for (int f = 0; f < ops_.n_faces(); ++f) {
            Eigen::MatrixXd v_face = ops_.chi_face(f) * sc.vhat;
            sc.u_tilde_face[f].resize(nf, ns);
            for (int k = 0; k < nf; ++k) {
                for (int s = 0; s < ns; ++s) vrow[s] = v_face(k, s);
                model_.entropy_to_conservative_node(vrow.data(), urow.data());
                for (int s = 0; s < ns; ++s) sc.u_tilde_face[f](k, s) = urow[s];
                model_.precompute(urow.data(), sc.pre[nv + f * nf + k]);
            }
        }
    }

    // sigma_a = M̃_a^{-1} C_a [ M_ref D_a û + Σ_{f ⟂ a} sgn χ_fᵀ W_f (u* - tr u) ]
    // with u* = {{ũ}} from the entropy-projected face states.
    void auxiliary_solve(const GlobalState& state, int e) const
    {
        ElemScratch& sc = scratch_[e];
        const Eigen::MatrixXd& uhat = state.u[e];
        sc.u_trace.resize(ops_.n_faces());
        for (int f = 0; f < ops_.n_faces(); ++f)
            sc.u_trace[f] = ops_.chi_face(f) * uhat;
        sc.sigma_modal.resize(mesh_.dim);
        for (int a = 0; a < mesh_.dim; ++a) {
            Eigen::MatrixXd b = ops_.mass_ref() * (ops_.diff_modal(a) * uhat);
            for (int side = 0; side < 2; ++side) {
                const int f = 2 * a + side;
                const double sgn = OperatorSet::face_sign(f);
                const ElemScratch& nb = scratch_[mesh_.neighbor(e, f)];
                const Eigen::MatrixXd& ext =
                    nb.u_tilde_face[CartesianMesh::opposite_face(f)];
                Eigen::MatrixXd jump =
                    0.5 * (sc.u_tilde_face[f] + ext) - sc.u_trace[f];
                b += sgn * ops_.chi_face(f).transpose()
                   * (ops_.w_face().asDiagonal() * jump);
            }
            sc.sigma_modal[a] =
                ops_.cofactor(a) * (ops_.mtilde_aux_inv() * b);
        }
    }

    void viscous_fluxes(int e) const
    {
        ElemScratch& sc = scratch_[e];
        const int ns = n_states();
        const int nv = ops_.n_vol();
        const int d = mesh_.dim;

        std::vector<Eigen::MatrixXd> sigma_vol(d);
        for (int a = 0; a < d; ++a)
            sigma_vol[a] = ops_.modal_to_vol(sc.sigma_modal[a]);

        Eigen::VectorXd u(ns), grad(d * ns), fv(d * ns);
        std::vector<Eigen::MatrixXd> fv_vol(d, Eigen::MatrixXd(nv, ns));
        for (int i = 0; i < nv; ++i) {
            for (int s = 0; s < ns; ++s) u[s] = sc.u_tilde_vol(i, s);
            for (int a = 0; a < d; ++a)
                for (int s = 0; s < ns; ++s) grad[a * ns + s] = sigma_vol[a](i, s);
            model_.viscous_flux(u.data(), grad.data(), fv.data());
            for (int a = 0; a < d; ++a)
                for (int s = 0; s < ns; ++s) fv_vol[a](i, s) = fv[a * ns + s];
        }
        sc.fv_modal.resize(d);
        for (int a = 0; a < d; ++a) sc.fv_modal[a] = ops_.project_vol(fv_vol[a]);
        sc.fv_trace.resize(ops_.n_faces());
        for (int f = 0; f < ops_.n_faces(); ++f)
            sc.fv_trace[f] = ops_.vol_to_face(fv_vol[OperatorSet::face_dir(f)], f);
    }

    Eigen::MatrixXd element_rhs(const GlobalState&, int e) const
    {
        const int ns = n_states();
        const int nv = ops_.n_vol();
        const int nf = ops_.n_face_nodes();
        const ElemScratch& sc = scratch_[e];

        // Hadamard split-form term over the skew operator.
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(ops_.n_tot(), ns);
        Eigen::VectorXd f(ns);
        for (int dir = 0; dir < mesh_.dim; ++dir) {
            const double cd = ops_.cofactor(dir);
            for (const SkewEntry& en : ops_.skew_entries(dir)) {
                model_.two_point_flux(sc.pre[en.i], sc.pre[en.j], dir, f.data());
                const double wc = en.weight * cd;
                for (int s = 0; s < ns; ++s) {
                    const double val = wc * f[s];
                    b(en.i, s) += val;
                    b(en.j, s) -= val;
                }
            }
        }
        Eigen::MatrixXd r = -ops_.chi_vol_transpose_apply(b.topRows(nv));
        for (int fc = 0; fc < ops_.n_faces(); ++fc)
            r -= ops_.chi_face(fc).transpose()
               * b.middleRows(nv + fc * nf, nf);

        // Interface numerical fluxes.
        Eigen::VectorXd dvec(ns);
        Eigen::MatrixXd g(nf, ns);
        for (int fc = 0; fc < ops_.n_faces(); ++fc) {
            const int dir = OperatorSet::face_dir(fc);
            const double sgn = OperatorSet::face_sign(fc);
            const double cd = ops_.cofactor(dir);
            const int nb_e = mesh_.neighbor(e, fc);
            const int nb_f = CartesianMesh::opposite_face(fc);
            const ElemScratch& nb = scratch_[nb_e];
            for (int k = 0; k < nf; ++k) {
                model_.two_point_flux(sc.pre[nv + fc * nf + k],
                                      nb.pre[nv + nb_f * nf + k], dir, f.data());
                if (model_.lf_dissipation) {
                    Eigen::VectorXd ui = sc.u_tilde_face[fc].row(k).transpose();
                    Eigen::VectorXd ue = nb.u_tilde_face[nb_f].row(k).transpose();
                    model_.dissipation_increment(ui.data(), ue.data(), dir,
                                                 dvec.data());
                } else {
                    dvec.setZero();
                }
                for (int s = 0; s < ns; ++s)
                    g(k, s) = ops_.w_face()[k] * cd * (sgn * f[s] + dvec[s]);
            }
            r -= ops_.chi_face(fc).transpose() * g;
        }

        if (model_.viscous()) viscous_residual(e, r);
        return ops_.mtilde_primary_inv() * r;
    }

    void viscous_residual(int e, Eigen::MatrixXd& r) const
    {
        const int ns = n_states();
        const int nf = ops_.n_face_nodes();
        const ElemScratch& sc = scratch_[e];
        const double pen_scale = cfg_.sip_multiplier * (cfg_.p + 1) * (cfg_.p + 1);

        for (int a = 0; a < mesh_.dim; ++a) {
            const double ca = ops_.cofactor(a);
            r += ca * (ops_.mass_ref() * (ops_.diff_modal(a) * sc.fv_modal[a]));
            for (int side = 0; side < 2; ++side) {
                const int fc = 2 * a + side;
                const double sgn = OperatorSet::face_sign(fc);
                const int nb_e = mesh_.neighbor(e, fc);
                const int nb_f = CartesianMesh::opposite_face(fc);
                const ElemScratch& nb = scratch_[nb_e];
                Eigen::MatrixXd g(nf, ns);
                for (int k = 0; k < nf; ++k) {
                    for (int s = 0; s < ns; ++s) {
                        const double avg = 0.5 * (sc.fv_trace[fc](k, s)
                                                  + nb.fv_trace[nb_f](k, s));
                        double star = sgn * avg;
                        if (model_.sip_viscous_flux()) {
                            const double mu_face =
                                0.5 * (model_.node_viscosity(
                                           sc.pre[ops_.n_vol() + fc * nf + k])
                                       + model_.node_viscosity(
                                           nb.pre[ops_.n_vol() + nb_f * nf + k]));
                            const double tau =
                                pen_scale * mu_face / mesh_.dx(a);
                            star -= tau * (sc.u_tilde_face[fc](k, s)
                                           - nb.u_tilde_face[nb_f](k, s));
                        }
                        g(k, s) = ops_.w_face()[k] * ca
                                * (star - sgn * sc.fv_trace[fc](k, s));
                    }
                }
                r += ops_.chi_face(fc).transpose() * g;
            }
        }
    }

    CartesianMesh mesh_;
    Model model_;
    SemidiscConfig cfg_;
    OperatorSet ops_;
    mutable std::vector<ElemScratch> scratch_;
};

} // namespace nsfr

#endif
