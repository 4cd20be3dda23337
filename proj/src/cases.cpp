#include "nsfr/cases.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nsfr {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

CaseDefinition case_inviscid_burgers()
{
    CaseDefinition d;
    d.name = "inviscid_burgers";
    d.model = "burgers";
    d.dim = 1;
    d.mesh = CartesianMesh(1, {32, 1, 1}, {0.0, 0.0, 0.0}, {2.0, 1.0, 1.0});
    d.t_f = 0.3;
    d.semi.p = 4;
    d.semi.solution_nodes = QuadratureKind::GaussLobattoLegendre;
    d.semi.flux_nodes = QuadratureKind::GaussLobattoLegendre;
    d.tableau = "ssprk3";
    d.relaxation = "algebraic";
    d.dt = 0.005;
    d.initial = [](const std::array<double, 3>& x, double* u) {
        u[0] = std::sin(pi * x[0]);
    };
    return d;
}

CaseDefinition case_viscous_burgers()
{
    CaseDefinition d;
    d.name = "viscous_burgers";
    d.model = "burgers";
    d.dim = 1;
    d.nu = 1e-4;
    d.mesh = CartesianMesh(1, {64, 1, 1}, {0.0, 0.0, 0.0}, {2.0, 1.0, 1.0});
    d.t_f = 0.2;
    d.semi.p = 1;
    d.semi.solution_nodes = QuadratureKind::GaussLegendre;
    d.semi.flux_nodes = QuadratureKind::GaussLobattoLegendre;
    d.tableau = "ssprk3";
    d.relaxation = "algebraic";
    d.dt = 0.004;
    d.initial = [](const std::array<double, 3>& x, double* u) {
        // Gaussian centered on the periodic seam so the profile is
        // continuous across it; xb is the wrapped coordinate in [-1,1).
        const double xb = x[0] < 1.0 ? x[0] : x[0] - 2.0;
        u[0] = std::exp(-30.0 * xb * xb);
    };
    return d;
}

CaseDefinition case_isentropic_vortex()
{
    CaseDefinition d;
    d.name = "isentropic_vortex";
    d.model = "euler";
    d.dim = 2;
    const double L = 10.0;
    const int n = 32;
    d.mesh = CartesianMesh(2, {n, n, 1}, {-L, -L, 0.0}, {L, L, 1.0});
    d.semi.p = 2;
    d.semi.solution_nodes = QuadratureKind::GaussLobattoLegendre;
    d.semi.flux_nodes = QuadratureKind::GaussLobattoLegendre;
    d.tableau = "ssprk3";
    d.relaxation = "root";

    const double gamma = d.gas.gamma;
    const double mach = std::sqrt(2.0 / gamma);
    const double alpha = pi / 4.0;
    d.t_f = 2.0 * L / (mach * std::cos(alpha)); // one advective cycle
    d.dt = d.mesh.dx(0) / (10.0 * mach * (d.semi.p + 1));

    auto exact = [gamma, mach, alpha, L](const std::array<double, 3>& x,
                                         double t, double* u) {
        auto wrap = [L](double v) {
            double m = std::fmod(v + L, 2.0 * L);
            if (m < 0.0) m += 2.0 * L;
            return m - L;
        };
        const double xb = wrap(x[0] - mach * std::cos(alpha) * t);
        const double yb = wrap(x[1] - mach * std::sin(alpha) * t);
        const double phi = mach * (5.0 * std::sqrt(2.0) / (4.0 * pi))
                         * std::exp(-0.25 * (xb * xb + yb * yb));
        const double base = 1.0 - 0.5 * (gamma - 1.0) * phi * phi;
        const double rho = std::pow(base, 1.0 / (gamma - 1.0));
        const double p = std::pow(base, gamma / (gamma - 1.0)) / gamma;
        const double q1 = mach * std::cos(alpha) - yb * phi;
        const double q2 = mach * std::sin(alpha) + xb * phi;
        u[0] = rho;
        u[1] = rho * q1;
        u[2] = rho * q2;
        u[3] = p / (gamma - 1.0) + 0.5 * rho * (q1 * q1 + q2 * q2);
    };
    d.exact = exact;
    d.initial = [exact](const std::array<double, 3>& x, double* u) {
        exact(x, 0.0, u);
    };
    return d;
}

namespace {

void vortex_lattice_state(const std::array<double, 3>& x, double gamma,
                          double mach, double* u)
{
    const double p = 1.0 / (gamma * mach * mach)
        + (std::cos(2.0 * x[0]) + std::cos(2.0 * x[1]))
          * (std::cos(2.0 * x[2]) + 2.0) / 16.0;
    const double rho = p * gamma * mach * mach; // isothermal
    const double q1 = std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]);
    const double q2 = -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]);
    u[0] = rho;
    u[1] = rho * q1;
    u[2] = rho * q2;
    u[3] = 0.0;
    u[4] = p / (gamma - 1.0) + 0.5 * rho * (q1 * q1 + q2 * q2);
}

} // namespace

CaseDefinition case_inviscid_tgv()
{
    CaseDefinition d;
    d.name = "inviscid_tgv";
    d.model = "euler";
    d.dim = 3;
    d.mesh = CartesianMesh(3, {8, 8, 8}, {0.0, 0.0, 0.0},
                           {2.0 * pi, 2.0 * pi, 2.0 * pi});
    d.t_f = 14.0;
    d.semi.p = 3;
    d.semi.solution_nodes = QuadratureKind::GaussLobattoLegendre;
    d.semi.flux_nodes = QuadratureKind::GaussLobattoLegendre;
    d.tableau = "ssprk3";
    d.relaxation = "root";
    d.cfl = 0.48;
    const double gamma = d.gas.gamma;
    const double mach = d.gas.mach;
    d.initial = [gamma, mach](const std::array<double, 3>& x, double* u) {
        vortex_lattice_state(x, gamma, mach, u);
    };
    return d;
}

CaseDefinition case_viscous_tgv(int n_per_dir, int p)
{
    CaseDefinition d = case_inviscid_tgv();
    d.name = "viscous_tgv";
    d.viscous = true;
    d.mesh = CartesianMesh(3, {n_per_dir, n_per_dir, n_per_dir},
                           {0.0, 0.0, 0.0}, {2.0 * pi, 2.0 * pi, 2.0 * pi});
    d.t_f = 10.0;
    d.semi.p = p;
    d.semi.solution_nodes = QuadratureKind::GaussLobattoLegendre;
    d.semi.flux_nodes = QuadratureKind::GaussLegendre;
    d.correction = "c_plus";
    d.cfl = 0.3;
    d.gas.reynolds = 1600.0;
    d.gas.prandtl = 0.71;
    d.gas.mu_ref = 1.0 / 1600.0;
    return d;
}

CaseDefinition case_khi(double atwood)
{
    if (!(std::abs(atwood) < 1.0))
        throw std::invalid_argument("case_khi: |A| must be < 1");
    CaseDefinition d;
    d.name = "khi";
    d.model = "euler";
    d.dim = 2;
    d.es_flux = true;
    d.mesh = CartesianMesh(2, {16, 16, 1}, {-1.0, -1.0, 0.0}, {1.0, 1.0, 1.0});
    d.t_f = 10.0;
    d.semi.p = 7;
    d.semi.solution_nodes = QuadratureKind::GaussLobattoLegendre;
    d.semi.flux_nodes = QuadratureKind::GaussLobattoLegendre;
    d.tableau = "rk4";
    d.relaxation = "root";
    d.cfl = 0.01;
    const double gamma = d.gas.gamma;
    const double rho1 = 0.5;
    const double rho2 = rho1 * (1.0 + atwood) / (1.0 - atwood);
    d.initial = [gamma, rho1, rho2](const std::array<double, 3>& x, double* u) {
        const double b = 0.5 * (std::tanh(15.0 * x[1] + 7.5)
                                - std::tanh(15.0 * x[1] - 7.5));
        const double rho = rho1 + b * (rho2 - rho1);
        const double v1 = b - 0.5;
        const double v2 = 0.1 * std::sin(2.0 * pi * x[0]);
        const double p = 1.0;
        u[0] = rho;
        u[1] = rho * v1;
        u[2] = rho * v2;
        u[3] = p / (gamma - 1.0) + 0.5 * rho * (v1 * v1 + v2 * v2);
    };
    return d;
}

std::vector<std::string> case_names()
{
    return {"inviscid_burgers", "viscous_burgers", "isentropic_vortex",
            "inviscid_tgv", "viscous_tgv", "khi"};
}

CaseDefinition case_by_name(const std::string& name)
{
    if (name == "inviscid_burgers") return case_inviscid_burgers();
    if (name == "viscous_burgers") return case_viscous_burgers();
    if (name == "isentropic_vortex") return case_isentropic_vortex();
    if (name == "inviscid_tgv") return case_inviscid_tgv();
    if (name == "viscous_tgv") return case_viscous_tgv();
    if (name == "khi") return case_khi();
    throw std::invalid_argument("unknown case: " + name);
}

double case_correction_value(const CaseDefinition& def)
{
    const std::string& c = def.correction;
    if (c == "c_dg") return 0.0;
    if (c == "c_hu") return correction_c_hu(def.semi.p);
    if (c == "c_plus") return correction_c_plus(def.semi.p);
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(c, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("unknown correction selector: " + c);
    }
    if (pos != c.size())
        throw std::invalid_argument("unknown correction selector: " + c);
    if (v < 0.0) throw std::invalid_argument("correction must be >= 0");
    return v;
}

ExperimentPlan experiment_scripts(const std::string& name)
{
    ExperimentPlan plan;
    plan.name = name;
    if (name == "burgers-dt-refinement") {
        plan.postprocess = "rate-table";
        double dt = 0.3 / 32.0; // largest step in the asymptotic range
        for (int k = 0; k < 7; ++k) {
            ExperimentRun r;
            r.label = "dt-" + std::to_string(k);
            r.overrides["case"] = "inviscid_burgers";
            r.overrides["dt"] = fmt(dt);
            plan.runs.push_back(r);
            dt *= 0.5;
        }
    } else if (name == "tgv-cfl-scan") {
        plan.postprocess = "scan-summary";
        for (const char* mode_c : {"root", "none"}) {
            const std::string mode(mode_c);
            for (int i = 0; i <= 4; ++i) {
                ExperimentRun r;
                r.label = mode + "-cfl-" + std::to_string(i);
                r.overrides["case"] = "inviscid_tgv";
                r.overrides["relaxation"] = mode;
                r.overrides["cfl"] = fmt(0.48 + 0.01 * i);
                plan.runs.push_back(r);
            }
        }
    } else if (name == "vortex-convergence") {
        plan.postprocess = "rate-table";
        for (int n : {8, 16, 32, 64, 128}) {
            ExperimentRun r;
            r.label = "n-" + std::to_string(n);
            r.overrides["case"] = "isentropic_vortex";
            r.overrides["n_elements"] = std::to_string(n);
            plan.runs.push_back(r);
        }
    } else {
        throw std::invalid_argument("unknown experiment: " + name);
    }
    return plan;
}

std::vector<std::string> experiment_names()
{
    return {"burgers-dt-refinement", "tgv-cfl-scan", "vortex-convergence"};
}

} // namespace nsfr
