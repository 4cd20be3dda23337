#ifndef NSFR_CASES_HPP
#define NSFR_CASES_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nsfr/mesh.hpp"
#include "nsfr/operator_set.hpp"
#include "nsfr/physics.hpp"
#include "nsfr/semidiscretization.hpp"

namespace nsfr {

/// A test case: model selection, domain, initial/exact solutions, and the
/// default numerical parameters used by the batch driver.
struct CaseDefinition {
    std::string name;
    std::string model;     // "burgers" | "euler"
    int dim = 1;
    double nu = 0.0;       // Burgers viscosity (0 = inviscid)
    bool viscous = false;  // Navier-Stokes terms for the Euler model
    bool es_flux = false;  // Lax-Friedrichs interface dissipation
    GasConstants gas;
    CartesianMesh mesh;
    double t_f = 1.0;
    SemidiscConfig semi;      // c and kappa are filled from `correction`
    std::string correction = "c_dg"; // c_dg | c_hu | c_plus | numeric literal
    std::string tableau = "ssprk3";
    std::string relaxation = "none"; // none | algebraic | root
    double dt = 0.0;  // fixed step; exclusive with cfl
    double cfl = 0.0; // adaptive rule; exclusive with dt
    std::function<void(const std::array<double, 3>&, double*)> initial;
    /// Exact solution at arbitrary time, or empty when unavailable.
    std::function<void(const std::array<double, 3>&, double, double*)> exact;

    bool has_exact() const { return static_cast<bool>(exact); }
};

/// sin(pi x) on the periodic interval [0,2] up to t = 0.3; algebraic
/// relaxation with collocated GLL nodes at p = 4 on 32 elements.
CaseDefinition case_inviscid_burgers();

/// Gaussian pulse with viscosity 1e-4 on [0,2] up to t = 0.2; 64 elements at
/// p = 1 with GLL flux and GL solution nodes, central viscous flux.
CaseDefinition case_viscous_burgers();

/// Vortex advection with closed-form solution on [-10,10]^2; one advective
/// cycle, fixed dt = dx / (10 M (p+1)), collocated GLL.
CaseDefinition case_isentropic_vortex();

/// Triply periodic vortex lattice, inviscid, t_f = 14, 8^3 elements at
/// p = 3, adaptive CFL (0.48 default), root relaxation.
CaseDefinition case_inviscid_tgv();

/// Same lattice with Re = 1600, Pr = 0.71, t_f = 10, SIP viscous fluxes,
/// GLL solution and GL flux nodes. Defaults to 8 elements per direction at
/// p = 3; pass overrides for larger studies.
CaseDefinition case_viscous_tgv(int n_per_dir = 8, int p = 3);

/// Density-stratified shear layer on [-1,1]^2 with Atwood number A; 16^2
/// elements at p = 7, RK4 at CFL = 0.01, dissipative flux. Requires |A| < 1.
CaseDefinition case_khi(double atwood = 1.0 / 3.0);

std::vector<std::string> case_names();
CaseDefinition case_by_name(const std::string& name);

/// Resolves the correction selector of a case to a numeric c for its p.
double case_correction_value(const CaseDefinition& def);

struct ExperimentRun {
    std::string label;
    std::map<std::string, std::string> overrides; // includes "case"
};

struct ExperimentPlan {
    std::string name;
    std::string postprocess; // "rate-table" | "scan-summary" | "series"
    std::vector<ExperimentRun> runs;
};

/// Ordered run plans: "burgers-dt-refinement", "tgv-cfl-scan",
/// "vortex-convergence". Unknown names are rejected.
ExperimentPlan experiment_scripts(const std::string& name);

std::vector<std::string> experiment_names();

} // namespace nsfr

#endif
