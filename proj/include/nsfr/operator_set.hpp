#ifndef NSFR_OPERATOR_SET_HPP
#define NSFR_OPERATOR_SET_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "nsfr/quadrature.hpp"

namespace nsfr {

/// Selector for the FR correction parameter c in the normalized Legendre
/// reference basis.
enum class CorrectionScheme { Dg, Hu, Plus, Numeric };

/// c_Hu(p) from the ESFR closed form, normalized Legendre basis.
double correction_c_hu(int p);

/// Literature-tabulated c_+(p); available for p in [2,5] only.
double correction_c_plus(int p);

/// Resolves a scheme to a numeric value (numeric_value used for Numeric).
double resolve_correction(CorrectionScheme scheme, int p, double numeric_value = 0.0);

/// One nonzero above-diagonal entry of a skew-symmetric operator:
/// A(i,j) = weight, A(j,i) = -weight.
struct SkewEntry {
    int i;
    int j;
    double weight;
};

struct OperatorRequest {
    int p = 3;
    int dim = 1;
    QuadratureKind solution_nodes = QuadratureKind::GaussLobattoLegendre;
    QuadratureKind flux_nodes = QuadratureKind::GaussLobattoLegendre;
    double c = 0.0;     // primary FR correction parameter
    double kappa = 0.0; // auxiliary FR correction parameter
    std::array<double, 3> dx = {2.0, 2.0, 2.0}; // element widths (affine)
};

/// All reference-element matrices for one (p, d, node choice, c) combination.
/// Immutable after construction and safe to share across threads.
class OperatorSet {
public:
    explicit OperatorSet(const OperatorRequest& req);

    int p() const { return p_; }
    int dim() const { return dim_; }
    double c() const { return c_; }
    double kappa() const { return kappa_; }
    double jacobian() const { return jacobian_; }
    double cofactor(int dir) const { return cofactor_[dir]; }
    double dx(int dir) const { return dx_[dir]; }

    int n_modes() const { return n_modes_; }        // (p+1)^d
    int n_vol() const { return n_vol_; }            // flux volume nodes
    int n_face_nodes() const { return n_face_nodes_; }
    int n_faces() const { return n_faces_; }        // 2d
    int n_tot() const { return n_tot_; }            // n_vol + n_faces*n_face_nodes

    const Quadrature1D& solution_quadrature() const { return quad_sol_; }
    const Quadrature1D& flux_quadrature() const { return quad_flux_; }

    /// Element-local mass matrix including the constant Jacobian.
    const Eigen::MatrixXd& mass() const { return mass_; }
    const Eigen::MatrixXd& mass_ref() const { return mass_ref_; } // without J
    const Eigen::MatrixXd& k_primary() const { return k_primary_; }
    const Eigen::MatrixXd& k_aux() const { return k_aux_; }
    const Eigen::MatrixXd& mtilde_primary() const { return mtilde_p_; }
    const Eigen::MatrixXd& mtilde_aux() const { return mtilde_a_; }
    const Eigen::MatrixXd& mtilde_primary_inv() const { return mtilde_p_inv_; }
    const Eigen::MatrixXd& mtilde_aux_inv() const { return mtilde_a_inv_; }

    /// Modal differentiation operator in reference direction dir.
    const Eigen::MatrixXd& diff_modal(int dir) const { return diff_modal_[dir]; }

    /// Basis evaluations (rows = nodes, cols = modes).
    const Eigen::MatrixXd& chi_vol() const { return chi_vol_; }
    const Eigen::MatrixXd& chi_sol() const { return chi_sol_; }
    const Eigen::MatrixXd& chi_face(int face) const { return chi_face_[face]; }

    /// Tensor-product quadrature weights (reference measure, no Jacobian).
    const Eigen::VectorXd& w_vol() const { return w_vol_; }
    const Eigen::VectorXd& w_sol() const { return w_sol_; }
    const Eigen::VectorXd& w_face() const { return w_face_; }

    /// Above-diagonal nonzeros of the skew-symmetric stiffness operator for
    /// direction dir, over the n_tot volume+face node set.
    const std::vector<SkewEntry>& skew_entries(int dir) const { return skew_[dir]; }
    /// Dense assembly of the same operator (tests, dumps).
    Eigen::MatrixXd skew_dense(int dir) const;

    /// 1D factors for fast tensor-product transforms.
    const Eigen::MatrixXd& basis_1d_flux() const { return basis_1d_flux_; }
    const Eigen::MatrixXd& basis_1d_sol() const { return basis_1d_sol_; }
    const Eigen::MatrixXd& sol_nodal_to_modal_1d() const { return sol_nodal_to_modal_1d_; }
    const Eigen::MatrixXd& proj_1d() const { return proj_1d_; }

    // --- transforms (per-column fields) ---
    Eigen::MatrixXd modal_to_vol(const Eigen::MatrixXd& modal) const;
    Eigen::MatrixXd modal_to_sol(const Eigen::MatrixXd& modal) const;
    Eigen::MatrixXd sol_to_modal(const Eigen::MatrixXd& nodal) const;
    /// L2 projection of volume-nodal data onto the modal space.
    Eigen::MatrixXd project_vol(const Eigen::MatrixXd& nodal) const;
    /// chi_vol^T applied to volume-nodal data (tensor-factorized).
    Eigen::MatrixXd chi_vol_transpose_apply(const Eigen::MatrixXd& nodal) const;
    /// Interpolates volume-nodal data to the nodes of one face.
    Eigen::MatrixXd vol_to_face(const Eigen::MatrixXd& nodal, int face) const;

    /// Broken Sobolev inner product a^T (M + K_p) b of per-element modal
    /// coefficient blocks (columns are states; summed over states).
    double broken_inner_product(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b) const;

    /// Reference coordinates of flux volume node i.
    std::array<double, 3> vol_node_coord(int i) const;
    /// Reference coordinates of node k on the given face.
    std::array<double, 3> face_node_coord(int face, int k) const;
    /// Reference coordinates of solution node i.
    std::array<double, 3> sol_node_coord(int i) const;

    /// Outward reference normal direction and sign of a face: face = 2*dir+side.
    static int face_dir(int face) { return face / 2; }
    static double face_sign(int face) { return face % 2 == 0 ? -1.0 : 1.0; }

    bool mtilde_is_tensor() const { return mtilde_is_tensor_; }
    const Eigen::MatrixXd& mass_1d_inv() const { return mass_1d_inv_; }

private:
    int p_, dim_;
    double c_, kappa_;
    std::array<double, 3> dx_;
    double jacobian_;
    std::array<double, 3> cofactor_;
    int n_modes_, n_vol_, n_face_nodes_, n_faces_, n_tot_;
    bool mtilde_is_tensor_;

    Quadrature1D quad_sol_, quad_flux_;

    Eigen::MatrixXd basis_1d_flux_, basis_1d_sol_, dbasis_1d_flux_;
    Eigen::MatrixXd mass_1d_, mass_1d_inv_, proj_1d_, sol_nodal_to_modal_1d_;
    Eigen::MatrixXd nodal_diff_1d_;
    Eigen::VectorXd face_eval_1d_[2]; // Lagrange values at xi = -1, +1

    Eigen::MatrixXd mass_, mass_ref_, k_primary_, k_aux_;
    Eigen::MatrixXd mtilde_p_, mtilde_a_, mtilde_p_inv_, mtilde_a_inv_;
    std::array<Eigen::MatrixXd, 3> diff_modal_;
    Eigen::MatrixXd chi_vol_, chi_sol_;
    std::vector<Eigen::MatrixXd> chi_face_;
    Eigen::VectorXd w_vol_, w_sol_, w_face_;
    std::array<std::vector<SkewEntry>, 3> skew_;

    int vol_index_from_face(int dir, int a, int k) const;
};

/// K matrix of the FR correction for given c; exposed for direct testing.
/// M and per-direction modal differentiation operators must share a basis.
Eigen::MatrixXd fr_correction_matrix(double c, int p, int dim,
                                     const Eigen::MatrixXd& mass,
                                     const std::array<Eigen::MatrixXd, 3>& diff);

} // namespace nsfr

#endif
