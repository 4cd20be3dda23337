#ifndef NSFR_PHYSICS_HPP
#define NSFR_PHYSICS_HPP

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

namespace nsfr {

/// Raised when a state leaves the admissible set (rho <= 0 or p <= 0).
/// Distinct from configuration or layout errors so drivers can map it to a
/// dedicated exit path.
struct AdmissibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GasConstants {
    double gamma = 1.4;
    double prandtl = 0.71;
    double reynolds = 1600.0;
    double mach = 0.1;
    // Sutherland's law: mu/mu_ref = (T/T_ref)^{3/2} (T_ref + S)/(T + S) with
    // all temperatures in units of the free-stream temperature (T_ref = 1,
    // where T = gamma M^2 p/rho) and S the air ratio 110.4 K / 273.15 K.
    double sutherland_ratio = 110.4 / 273.15;
    double t_ref = 1.0;
    // Reference dynamic viscosity; the constant-viscosity path (default)
    // returns exactly this value, typically 1/Re in nondimensional runs.
    double mu_ref = 1.0 / 1600.0;
    bool constant_viscosity = true;
};

double logarithmic_mean(double a, double b);
/// Same with caller-supplied logarithms (hot-loop path, no checks).
double logarithmic_mean_pre(double a, double b, double log_a, double log_b);

double burgers_two_point_flux(double um, double up);

// --- Euler / Navier-Stokes state maps (n_states = dim + 2) ---

struct EulerPrimitive {
    double rho;
    std::array<double, 3> q;
    double p;
};

EulerPrimitive euler_primitive(const double* u, int dim, double gamma);

double euler_entropy_function(const Eigen::VectorXd& u, int dim, double gamma);
Eigen::VectorXd euler_entropy_variables(const Eigen::VectorXd& u, int dim,
                                        double gamma);
Eigen::VectorXd entropy_to_conservative(const Eigen::VectorXd& v, int dim,
                                        double gamma);

/// Physical convective flux in one coordinate direction.
Eigen::VectorXd euler_convective_flux(const Eigen::VectorXd& u, int dim,
                                      int dir, double gamma);

/// Entropy-conserving two-point flux (Chandrashekar form with the Ranocha
/// pressure-equilibrium energy correction); returns n_states x dim.
Eigen::MatrixXd ranocha_two_point_flux(const Eigen::VectorXd& um,
                                       const Eigen::VectorXd& up, int dim,
                                       double gamma);

/// Directional wavespeed |q.n| + c with c = sqrt(gamma p / rho).
double euler_max_wavespeed_dir(const Eigen::VectorXd& u, int dim, int dir,
                               double gamma);
/// |q| + c, used for CFL estimates.
double euler_max_wavespeed(const Eigen::VectorXd& u, int dim, double gamma);

/// Local Lax-Friedrichs increment -1/2 max(lam-, lam+) (u+ - u-) to be added
/// to the normal entropy-conserving flux (normal points from - to +).
Eigen::VectorXd lax_friedrichs_dissipation(const Eigen::VectorXd& um,
                                           const Eigen::VectorXd& up, int dim,
                                           int dir, double gamma);

/// Viscous flux tensor, n_states x dim: zero mass row, viscous stresses, and
/// energy row tau . q + heat conduction. grad_u(a, s) = d u_s / d x_a.
Eigen::MatrixXd navier_stokes_viscous_flux(const Eigen::VectorXd& u,
                                           const Eigen::MatrixXd& grad_u,
                                           int dim, const GasConstants& gas);

double sutherland_viscosity(double t, const GasConstants& gas);
/// Viscosity used by the flux: mu_ref when constant_viscosity, else Sutherland
/// evaluated at T = gamma M^2 p / rho.
double effective_viscosity(double rho, double p, const GasConstants& gas);

// --- model bundles used by the semidiscretization kernels ---

/// Scalar Burgers in d directions: f = u^2/2 in every direction, energy
/// entropy S = u^2/2 (identity entropy map).
struct BurgersModel {
    int dim = 1;
    double nu = 0.0; // 0 = inviscid
    bool lf_dissipation = false;

    struct NodePre {
        double u;
    };

    int n_states() const { return 1; }
    bool viscous() const { return nu > 0.0; }

    void precompute(const double* u, NodePre& pre) const { pre.u = u[0]; }
    void two_point_flux(const NodePre& a, const NodePre& b, int /*dir*/,
                        double* f) const
    {
        f[0] = burgers_two_point_flux(a.u, b.u);
    }
    void convective_flux(const double* u, int /*dir*/, double* f) const
    {
        f[0] = 0.5 * u[0] * u[0];
    }
    void entropy_variables_node(const double* u, double* v) const { v[0] = u[0]; }
    void entropy_to_conservative_node(const double* v, double* u) const
    {
        u[0] = v[0];
    }
    double entropy_function(const double* u) const { return 0.5 * u[0] * u[0]; }
    double max_wavespeed_dir(const double* u, int /*dir*/) const
    {
        return std::abs(u[0]);
    }
    double max_wavespeed(const double* u) const { return std::abs(u[0]); }
    void dissipation_increment(const double* um, const double* up, int dir,
                               double* d) const;
    void viscous_flux(const double* /*u*/, const double* grad, double* fv) const
    {
        for (int a = 0; a < dim; ++a) fv[a] = nu * grad[a];
    }
    bool sip_viscous_flux() const { return false; } // central for Burgers
    double node_viscosity(const NodePre&) const { return nu; }
};

/// Compressible Euler / Navier-Stokes, n_states = dim + 2.
struct EulerModel {
    int dim = 3;
    GasConstants gas;
    bool viscous_terms = false;
    bool lf_dissipation = false;

    struct NodePre {
        double rho;
        double q[3];
        double p;
        double z;       // rho / p
        double log_rho;
        double log_z;
        double e_kin;   // 1/2 |q|^2
    };

    int n_states() const { return dim + 2; }
    bool viscous() const { return viscous_terms; }

    void precompute(const double* u, NodePre& pre) const;
    void two_point_flux(const NodePre& a, const NodePre& b, int dir,
                        double* f) const;
    void convective_flux(const double* u, int dir, double* f) const;
    void entropy_variables_node(const double* u, double* v) const;
    void entropy_to_conservative_node(const double* v, double* u) const;
    double entropy_function(const double* u) const;
    double max_wavespeed_dir(const double* u, int dir) const;
    double max_wavespeed(const double* u) const;
    void dissipation_increment(const double* um, const double* up, int dir,
                               double* d) const;
    /// grad layout: grad[a * n_states + s] = d u_s / d x_a; fv same layout.
    void viscous_flux(const double* u, const double* grad, double* fv) const;
    bool sip_viscous_flux() const { return true; }
    double node_viscosity(const NodePre& pre) const
    {
        return effective_viscosity(pre.rho, pre.p, gas);
    }
};

} // namespace nsfr

#endif
