#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsfr/diagnostics.hpp"
#include "nsfr/physics.hpp"
#include "nsfr/semidiscretization.hpp"

using namespace nsfr;

namespace {

constexpr double pi = std::numbers::pi;

CartesianMesh cube(int n, double lo, double hi)
{
    return CartesianMesh(3, {n, n, n}, {lo, lo, lo}, {hi, hi, hi});
}

void taylor_green(const std::array<double, 3>& x, double gamma, double mach,
                  double* u)
{
    const double p0 = 1.0 / (gamma * mach * mach);
    const double p = p0
        + (std::cos(2 * x[0]) + std::cos(2 * x[1]))
          * (std::cos(2 * x[2]) + 2.0) / 16.0;
    const double rho = gamma * mach * mach * p; // isothermal
    const double q1 = std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]);
    const double q2 = -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]);
    u[0] = rho;
    u[1] = rho * q1;
    u[2] = rho * q2;
    u[3] = 0.0;
    u[4] = p / (gamma - 1.0) + 0.5 * rho * (q1 * q1 + q2 * q2);
}

} // namespace

TEST_CASE("integrated entropy: uniform states give closed-form values")
{
    EulerModel model;
    SemidiscConfig cfg;
    cfg.p = 2;
    Semidiscretization<EulerModel> sd(cube(2, 0.0, 2 * pi), cfg, model);

    // rho = 1, p = e: s = log(p) = 1, S = -rho s = -1 over (2 pi)^3.
    GlobalState s = sd.init([](const std::array<double, 3>&, double* u) {
        u[0] = 1.0;
        u[1] = u[2] = u[3] = 0.0;
        u[4] = std::exp(1.0) / 0.4;
    });
    const double vol = std::pow(2 * pi, 3);
    CHECK(integrated_entropy_L2(sd, s) == doctest::Approx(-vol).epsilon(1e-12));
    CHECK(integrated_entropy_L2(sd, s) == doctest::Approx(-248.05).epsilon(1e-4));

    // rho = 1, p = 1: S = 0.
    GlobalState s2 = sd.init([](const std::array<double, 3>&, double* u) {
        u[0] = 1.0;
        u[1] = u[2] = u[3] = 0.0;
        u[4] = 2.5;
    });
    CHECK(std::abs(integrated_entropy_L2(sd, s2)) < 1e-10);
}

TEST_CASE("energy norms: K contribution is nonnegative and vanishes for c=0")
{
    BurgersModel model;
    CartesianMesh mesh(1, {4, 1, 1}, {0.0, 0.0, 0.0}, {2.0, 1.0, 1.0});
    auto ic = [](const std::array<double, 3>& x, double* u) {
        u[0] = std::sin(pi * x[0]);
    };
    SemidiscConfig cfg;
    cfg.p = 3;
    Semidiscretization<BurgersModel> sd(mesh, cfg, model);
    GlobalState s = sd.init(ic);
    auto [el2, ew] = energy_norms(sd, s);
    CHECK(ew == doctest::Approx(el2).epsilon(1e-14));
    CHECK(el2 == doctest::Approx(0.5 * 1.0).epsilon(1e-3)); // ∫ sin²(πx)/2

    SemidiscConfig cfgc = cfg;
    cfgc.c = correction_c_hu(3);
    cfgc.kappa = cfgc.c;
    Semidiscretization<BurgersModel> sdc(mesh, cfgc, model);
    GlobalState sc = sdc.init(ic);
    auto [el2c, ewc] = energy_norms(sdc, sc);
    CHECK(el2c == doctest::Approx(el2).epsilon(1e-14));
    CHECK(ewc > el2c);
}

TEST_CASE("error norms: representable fields are exact, smooth fields small")
{
    BurgersModel model;
    CartesianMesh mesh(1, {4, 1, 1}, {0.0, 0.0, 0.0}, {2.0, 1.0, 1.0});
    SemidiscConfig cfg;
    cfg.p = 3;
    Semidiscretization<BurgersModel> sd(mesh, cfg, model);
    auto ident = [](const double* u) { return u[0]; };

    // Degree-p polynomial: interpolation and quadrature are both exact.
    auto poly = [](const std::array<double, 3>& x, double* u) {
        u[0] = 1.0 + x[0] + 0.5 * x[0] * x[0] * x[0];
    };
    GlobalState s = sd.init(poly);
    ErrorNorms en = error_norms(
        sd, s,
        [&](const std::array<double, 3>& x, double, double* u) { poly(x, u); },
        0.0, ident);
    CHECK(en.l1 < 1e-12);
    CHECK(en.l2 < 1e-12);
    CHECK(en.linf < 1e-12);

    // Smooth field at t = 0: interpolation-level error only.
    auto wave = [](const std::array<double, 3>& x, double* u) {
        u[0] = std::sin(pi * x[0]);
    };
    GlobalState s2 = sd.init(wave);
    ErrorNorms en2 = error_norms(
        sd, s2,
        [&](const std::array<double, 3>& x, double, double* u) { wave(x, u); },
        0.0, ident);
    CHECK(en2.linf > 0.0);
    CHECK(en2.linf < 1e-2);
    // Hoelder relations on the domain of measure 2.
    CHECK(en2.l1 <= std::sqrt(2.0) * en2.l2 * (1 + 1e-12));
    CHECK(en2.l2 <= std::sqrt(2.0) * en2.linf * (1 + 1e-12));
}

TEST_CASE("kinetic energy: uniform stream and initial vortex lattice")
{
    EulerModel model;
    SemidiscConfig cfg;
    cfg.p = 3;
    Semidiscretization<EulerModel> sd(cube(2, 0.0, 2 * pi), cfg, model);

    GlobalState s = sd.init([](const std::array<double, 3>&, double* u) {
        u[0] = 1.0;
        u[1] = 1.0;
        u[2] = u[3] = 0.0;
        u[4] = 2.5 + 0.5;
    });
    CHECK(kinetic_energy(sd, s) == doctest::Approx(0.5).epsilon(1e-13));

    const double mach = 0.1;
    Semidiscretization<EulerModel> sd2(cube(4, 0.0, 2 * pi), cfg, model);
    GlobalState s2 = sd2.init([&](const std::array<double, 3>& x, double* u) {
        taylor_green(x, model.gas.gamma, mach, u);
    });
    CHECK(kinetic_energy(sd2, s2) == doctest::Approx(0.125).epsilon(5e-3));
}

TEST_CASE("enstrophy: rigid rotation, translation, and gradient sources")
{
    EulerModel model;
    SemidiscConfig cfg;
    cfg.p = 2;
    Semidiscretization<EulerModel> sd(cube(2, -1.0, 1.0), cfg, model);

    // v = a (-y, x, 0): |omega| = 2a everywhere, rho = 1.
    const double a = 0.7;
    GlobalState rot = sd.init([&](const std::array<double, 3>& x, double* u) {
        u[0] = 1.0;
        u[1] = -a * x[1];
        u[2] = a * x[0];
        u[3] = 0.0;
        u[4] = 25.0 + 0.5 * (u[1] * u[1] + u[2] * u[2]);
    });
    CHECK(enstrophy(sd, rot) == doctest::Approx(2 * a * a).epsilon(1e-11));

    GlobalState uni = sd.init([](const std::array<double, 3>&, double* u) {
        u[0] = 1.0;
        u[1] = 0.3;
        u[2] = -0.2;
        u[3] = 0.1;
        u[4] = 2.5 + 0.07;
    });
    CHECK(std::abs(enstrophy(sd, uni)) < 1e-13);

    // Smooth periodic shear: auxiliary and direct gradients agree and match
    // the closed-form value (1/Omega) ∫ cos^2(y) / 2 = 1/4.
    EulerModel visc;
    visc.dim = 2;
    visc.viscous_terms = true;
    CartesianMesh m2(2, {4, 4, 1}, {0.0, 0.0, 0.0},
                     {2 * pi, 2 * pi, 1.0});
    SemidiscConfig cfg2;
    cfg2.p = 4;
    Semidiscretization<EulerModel> sd2(m2, cfg2, visc);
    GlobalState shear = sd2.init([](const std::array<double, 3>& x, double* u) {
        u[0] = 1.0;
        u[1] = std::sin(x[1]);
        u[2] = 0.0;
        u[3] = 2.5 + 0.5 * u[1] * u[1];
    });
    const double e_direct = enstrophy(sd2, shear, false);
    const double e_aux = enstrophy(sd2, shear, true);
    CHECK(e_direct == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(e_aux == doctest::Approx(e_direct).epsilon(1e-3));

    // Initial vortex lattice: |omega|^2 averages 3/4, rho ~ 1.
    SemidiscConfig cfg3;
    cfg3.p = 3;
    Semidiscretization<EulerModel> sd3(cube(4, 0.0, 2 * pi), cfg3, model);
    GlobalState tg = sd3.init([&](const std::array<double, 3>& x, double* u) {
        taylor_green(x, model.gas.gamma, 0.1, u);
    });
    CHECK(enstrophy(sd3, tg) == doctest::Approx(0.375).epsilon(5e-3));
}

TEST_CASE("dissipation decomposition: exact on linear and quadratic data")
{
    std::vector<double> t = {0.0, 0.11, 0.19, 0.35, 0.4};
    std::vector<double> ke(t.size()), ens(t.size());
    const double r = 0.8;
    for (size_t i = 0; i < t.size(); ++i) {
        ke[i] = 2.0 - r * t[i];
        ens[i] = 0.1 + 0.05 * t[i];
    }
    DissipationSeries s = dissipation_decomposition(t, ke, ens, 1600.0);
    for (size_t i = 0; i < t.size(); ++i) {
        CHECK(s.eps_ke[i] == doctest::Approx(r).epsilon(1e-13));
        CHECK(s.eps_omega[i]
              == doctest::Approx(2.0 * ens[i] / 1600.0).epsilon(1e-14));
        CHECK(s.eps_num[i] == s.eps_ke[i] - s.eps_omega[i]); // by construction
    }

    // Quadratic data: interior centered stencil is exact on non-uniform grids.
    for (size_t i = 0; i < t.size(); ++i) ke[i] = 1.0 - 0.3 * t[i] * t[i];
    DissipationSeries q = dissipation_decomposition(t, ke, ens, 1600.0);
    for (size_t i = 1; i + 1 < t.size(); ++i)
        CHECK(q.eps_ke[i] == doctest::Approx(0.6 * t[i]).epsilon(1e-12));
}

TEST_CASE("convergence rates: manufactured orders and ratio-0.8 grids")
{
    std::vector<double> h = {1.0, 0.5, 0.25, 0.125};
    std::vector<double> e(h.size());
    for (size_t i = 0; i < h.size(); ++i) e[i] = 3.0 * h[i] * h[i];
    for (double rate : convergence_rates(h, e))
        CHECK(rate == doctest::Approx(2.0).epsilon(1e-12));

    std::vector<double> dt = {0.1, 0.08, 0.064};
    std::vector<double> g(dt.size());
    for (size_t i = 0; i < dt.size(); ++i) g[i] = 7.0 * std::pow(dt[i], 3);
    for (double rate : convergence_rates(dt, g))
        CHECK(rate == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(convergence_rates({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("monitors do not mutate the state")
{
    EulerModel model;
    model.dim = 2;
    CartesianMesh m2(2, {3, 3, 1}, {0.0, 0.0, 0.0}, {2 * pi, 2 * pi, 1.0});
    SemidiscConfig cfg;
    cfg.p = 3;
    cfg.c = correction_c_hu(3);
    cfg.kappa = cfg.c;
    Semidiscretization<EulerModel> sd(m2, cfg, model);
    GlobalState s = sd.init([](const std::array<double, 3>& x, double* u) {
        u[0] = 1.0 + 0.2 * std::sin(x[0]) * std::cos(x[1]);
        u[1] = 0.5 * u[0];
        u[2] = -0.1 * u[0];
        u[3] = 2.0 / 0.4 + 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0];
    });
    std::vector<Eigen::MatrixXd> before = s.u;
    const double t_before = s.t;

    (void)integrated_entropy_L2(sd, s);
    (void)energy_norms(sd, s);
    (void)kinetic_energy(sd, s);
    (void)enstrophy(sd, s);
    (void)error_norms(
        sd, s,
        [](const std::array<double, 3>&, double, double* u) {
            u[0] = 1.0;
            u[1] = u[2] = 0.0;
            u[3] = 5.0;
        },
        0.0, [](const double* u) { return u[0]; });

    CHECK(s.t == t_before);
    for (size_t e = 0; e < before.size(); ++e)
        CHECK((s.u[e].array() == before[e].array()).all());
}
