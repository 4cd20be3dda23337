#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsfr/cases.hpp"
#include "nsfr/diagnostics.hpp"

using namespace nsfr;

namespace {

constexpr double pi = std::numbers::pi;

// Admissibility of a case's initial condition at every solution node of its
// default grid.
void check_admissible(const CaseDefinition& d)
{
    SemidiscConfig cfg = d.semi;
    cfg.c = case_correction_value(d);
    cfg.kappa = cfg.c;
    if (d.model == "burgers") {
        BurgersModel m;
        m.dim = d.dim;
        m.nu = d.nu;
        Semidiscretization<BurgersModel> sd(d.mesh, cfg, m);
        GlobalState s = sd.init(d.initial);
        CHECK(std::isfinite(s.u[0](0, 0)));
        return;
    }
    EulerModel m;
    m.dim = d.dim;
    m.gas = d.gas;
    m.viscous_terms = d.viscous;
    m.lf_dissipation = d.es_flux;
    Semidiscretization<EulerModel> sd(d.mesh, cfg, m);
    GlobalState s = sd.init(d.initial);
    Eigen::VectorXd u(sd.n_states());
    for (int e = 0; e < d.mesh.n_elements(); ++e) {
        Eigen::MatrixXd nodal = sd.ops().modal_to_sol(s.u[e]);
        for (int i = 0; i < sd.ops().n_modes(); ++i) {
            for (int st = 0; st < sd.n_states(); ++st) u[st] = nodal(i, st);
            EulerPrimitive prim = euler_primitive(u.data(), d.dim, d.gas.gamma);
            REQUIRE(prim.rho > 0.0);
            REQUIRE(prim.p > 0.0);
        }
    }
}

} // namespace

TEST_CASE("registry: names resolve and unknown names are rejected")
{
    for (const auto& n : case_names()) {
        CaseDefinition d = case_by_name(n);
        CHECK(d.name == n);
        CHECK(static_cast<bool>(d.initial));
        CHECK((d.dt > 0.0) != (d.cfl > 0.0)); // exactly one step rule
    }
    CHECK_THROWS_AS(case_by_name("mystery"), std::invalid_argument);
}

TEST_CASE("initial conditions: pointwise values from the definitions")
{
    CaseDefinition b = case_inviscid_burgers();
    double u = 0.0;
    b.initial({0.5, 0.0, 0.0}, &u);
    CHECK(u == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.t_f == 0.3);
    CHECK(b.mesh.n[0] == 32);
    CHECK(b.semi.p == 4);

    CaseDefinition vb = case_viscous_burgers();
    vb.initial({0.0, 0.0, 0.0}, &u);
    CHECK(u == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(vb.nu == 1e-4);
    CHECK(vb.semi.p == 1);
    CHECK(vb.semi.solution_nodes == QuadratureKind::GaussLegendre);
    CHECK(vb.semi.flux_nodes == QuadratureKind::GaussLobattoLegendre);
    // continuity across the periodic seam
    double left = 0.0, right = 0.0;
    vb.initial({1.0 - 1e-9, 0.0, 0.0}, &left);
    vb.initial({1.0 + 1e-9, 0.0, 0.0}, &right);
    CHECK(left == doctest::Approx(right).epsilon(1e-6));

    CaseDefinition tgv = case_inviscid_tgv();
    double ue[5];
    tgv.initial({1.1, 0.7, 2.9}, ue);
    CHECK(ue[3] == 0.0); // q3 = 0 everywhere
    CHECK(tgv.t_f == 14.0);
    CHECK(tgv.cfl == 0.48);

    CaseDefinition k = case_khi(1.0 / 3.0);
    // far field: B ~ 0, v1 ~ -1/2, rho ~ rho1
    k.initial({0.25, -1.0, 0.0}, ue);
    CHECK(ue[0] == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(ue[1] / ue[0] == doctest::Approx(-0.5).epsilon(1e-5));
    // center: rho2 = rho1 (1+A)/(1-A) = 1
    k.initial({0.25, 0.0, 0.0}, ue);
    CHECK(ue[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(case_khi(1.0), std::invalid_argument);
    CHECK_THROWS_AS(case_khi(-1.5), std::invalid_argument);
}

TEST_CASE("initial conditions are admissible on the default grids")
{
    for (const auto& n : case_names()) check_admissible(case_by_name(n));
}

TEST_CASE("initial energy of the burgers case is one half")
{
    CaseDefinition d = case_inviscid_burgers();
    BurgersModel m;
    SemidiscConfig cfg = d.semi;
    Semidiscretization<BurgersModel> sd(d.mesh, cfg, m);
    GlobalState s = sd.init(d.initial);
    auto [el2, ew] = energy_norms(sd, s);
    CHECK(el2 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ew == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("isentropic vortex: exact solution properties")
{
    CaseDefinition d = case_isentropic_vortex();
    REQUIRE(d.has_exact());
    const double gamma = d.gas.gamma;
    const double mach = std::sqrt(2.0 / gamma);
    CHECK(d.t_f == doctest::Approx(20.0 / (mach * std::cos(pi / 4))));
    CHECK(d.dt
          == doctest::Approx(d.mesh.dx(0) / (10.0 * mach * (d.semi.p + 1))));

    double ui[4], ue[4];
    // exact(t=0) reproduces the initial condition pointwise
    for (double x : {-9.0, -2.5, 0.0, 1.0, 7.3}) {
        for (double y : {-8.1, 0.0, 4.2}) {
            d.initial({x, y, 0.0}, ui);
            d.exact({x, y, 0.0}, 0.0, ue);
            for (int s = 0; s < 4; ++s) CHECK(ui[s] == ue[s]);
        }
    }

    // far from the core: rho -> 1, p -> 1/gamma
    d.exact({-10.0, 10.0, 0.0}, 0.0, ue);
    CHECK(ue[0] == doctest::Approx(1.0).epsilon(1e-8));
    EulerPrimitive prim = euler_primitive(ue, 2, gamma);
    CHECK(prim.p == doctest::Approx(1.0 / gamma).epsilon(1e-8));

    // one full cycle returns the field (mod 2L)
    for (double x : {-4.0, 0.5, 6.0}) {
        d.exact({x, 1.5, 0.0}, 0.0, ui);
        d.exact({x, 1.5, 0.0}, d.t_f, ue);
        for (int s = 0; s < 4; ++s)
            CHECK(ui[s] == doctest::Approx(ue[s]).epsilon(1e-10));
    }

    // translated-coordinate periodicity: shifting x by 2L changes nothing
    d.exact({-7.0, 2.0, 0.0}, 3.3, ui);
    d.exact({13.0, 2.0, 0.0}, 3.3, ue);
    for (int s = 0; s < 4; ++s)
        CHECK(ui[s] == doctest::Approx(ue[s]).epsilon(1e-12));
}

TEST_CASE("viscous tgv: defaults and overrides")
{
    CaseDefinition d = case_viscous_tgv();
    CHECK(d.viscous);
    CHECK(d.gas.reynolds == 1600.0);
    CHECK(d.gas.prandtl == 0.71);
    CHECK(d.gas.mach == 0.1);
    CHECK(d.t_f == 10.0);
    CHECK(d.mesh.n[0] == 8);
    CHECK(d.semi.p == 3);
    CHECK(d.semi.solution_nodes == QuadratureKind::GaussLobattoLegendre);
    CHECK(d.semi.flux_nodes == QuadratureKind::GaussLegendre);
    CHECK(d.cfl == 0.3);
    CHECK(d.correction == "c_plus");

    CaseDefinition big = case_viscous_tgv(16, 5);
    CHECK(big.mesh.n[0] == 16);
    CHECK(big.semi.p == 5);
}

TEST_CASE("correction selector resolution")
{
    CaseDefinition d = case_inviscid_tgv();
    CHECK(case_correction_value(d) == 0.0);
    d.correction = "c_hu";
    CHECK(case_correction_value(d) == doctest::Approx(correction_c_hu(3)));
    d.correction = "c_plus";
    CHECK(case_correction_value(d) == doctest::Approx(correction_c_plus(3)));
    d.correction = "0.001";
    CHECK(case_correction_value(d) == doctest::Approx(0.001));
    d.correction = "banana";
    CHECK_THROWS_AS(case_correction_value(d), std::invalid_argument);
    d.correction = "c_plus";
    d.semi.p = 7;
    CHECK_THROWS(case_correction_value(d)); // no tabulated value
}

TEST_CASE("experiment scripts: plans and rejection")
{
    ExperimentPlan b = experiment_scripts("burgers-dt-refinement");
    CHECK(b.runs.size() == 7);
    CHECK(b.runs[0].overrides.at("case") == "inviscid_burgers");
    const double dt0 = std::stod(b.runs[0].overrides.at("dt"));
    const double dt1 = std::stod(b.runs[1].overrides.at("dt"));
    CHECK(dt0 == doctest::Approx(0.3 / 32.0));
    CHECK(dt1 == doctest::Approx(0.5 * dt0));

    ExperimentPlan t = experiment_scripts("tgv-cfl-scan");
    CHECK(t.runs.size() == 10);
    int n_root = 0;
    for (const auto& r : t.runs)
        if (r.overrides.at("relaxation") == "root") ++n_root;
    CHECK(n_root == 5);
    CHECK(std::stod(t.runs[4].overrides.at("cfl")) == doctest::Approx(0.52));

    ExperimentPlan v = experiment_scripts("vortex-convergence");
    CHECK(v.runs.size() == 5);
    CHECK(v.runs.back().overrides.at("n_elements") == "128");

    CHECK_THROWS_AS(experiment_scripts("nope"), std::invalid_argument);
    CHECK(experiment_names().size() == 3);
}
