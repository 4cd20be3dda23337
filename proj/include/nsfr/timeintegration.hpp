#ifndef NSFR_TIMEINTEGRATION_HPP
#define NSFR_TIMEINTEGRATION_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nsfr/semidiscretization.hpp"

namespace nsfr {

struct ButcherTableau {
    std::string name;
    int stages = 0;
    Eigen::MatrixXd a; // strictly lower triangular
    Eigen::VectorXd b;
    int order = 0;
};

/// Registry of the explicit tableaus used by the experiments:
/// "heun", "ssprk3", "rk4". Unknown names are rejected.
ButcherTableau tableau_registry(const std::string& name);

enum class RelaxationMode { None, AlgebraicBrokenSobolev, RootGeneralConvex };

struct RelaxationConfig {
    RelaxationMode mode = RelaxationMode::None;
    double tolerance = 5e-10;
    int iteration_limit = 100;
    double seed_offset = 1e-5;
    double guard_lo = 0.5;
    double guard_hi = 1.5;
    double bracket_half_width = 0.1;
    double bracket_growth = 0.1;
    int bracket_max_expansions = 10;
};

struct StepRecord {
    double t_before = 0.0;
    double t_after = 0.0;
    double dt_target = 0.0;
    double gamma = 1.0;
    double eta_L2 = 0.0;   // solution-node entropy after the step
    double eta_c_cum = 0.0; // eta plus accumulated K-correction terms
    double energy_L2 = 0.0;
    double energy_W = 0.0;
    int solver_iters = 0;
    std::string solver_branch = "none";
};

/// Raised when the relaxation solve fails (gamma <= 0, no bracket, or
/// iteration limits exhausted).
struct RelaxationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SecantResult {
    double gamma = 1.0;
    int iters = 0;
    std::string branch = "secant";
};

/// Secant iteration with a guard interval and bisection fallback, following
/// the fixed tolerances of the relaxation algorithm.
SecantResult solve_gamma_secant_bisection(
    const std::function<double(double)>& root_fn, double gamma_prev,
    const RelaxationConfig& cfg);

template <class Model>
class TimeIntegrator {
public:
    TimeIntegrator(const Semidiscretization<Model>& sd,
                   const ButcherTableau& tab, const RelaxationConfig& relax)
        : sd_(sd), tab_(tab), relax_(relax)
    {
    }

    double gamma_prev() const { return gamma_prev_; }
    double eta_c_correction() const { return k_accum_; }

    /// Runs the RK stages; fills stage states/rates and the unrelaxed search
    /// direction d = Δt Σ b_i f_i.
    void rk_step(const GlobalState& state, double dt,
                 std::vector<GlobalState>& stages, std::vector<Rates>& rates,
                 Rates& d) const
    {
        const int s = tab_.stages;
        const int ne = sd_.mesh().n_elements();
        stages.assign(s, GlobalState{});
        rates.assign(s, Rates{});
        for (int i = 0; i < s; ++i) {
            GlobalState& ui = stages[i];
            ui.t = state.t;
            ui.u.resize(ne);
            for (int e = 0; e < ne; ++e) {
                ui.u[e] = state.u[e];
                for (int j = 0; j < i; ++j)
                    if (tab_.a(i, j) != 0.0)
                        ui.u[e] += dt * tab_.a(i, j) * rates[j][e];
            }
            try {
                sd_.rhs(ui, rates[i]);
            } catch (const AdmissibilityError& err) {
                throw AdmissibilityError("stage " + std::to_string(i) + ": "
                                         + err.what());
            }
        }
        d.resize(ne);
        for (int e = 0; e < ne; ++e) {
            d[e] = Eigen::MatrixXd::Zero(state.u[e].rows(), state.u[e].cols());
            for (int i = 0; i < s; ++i)
                if (tab_.b[i] != 0.0) d[e] += dt * tab_.b[i] * rates[i][e];
        }
    }

    /// γⁿ = 2 Σ_i b_i Σ_j a_ij <f_j, f_i>_W / Σ_ij b_i b_j <f_i, f_j>_W,
    /// with γ = 1 when the denominator vanishes.
    double algebraic_gamma(const std::vector<Rates>& rates) const
    {
        const int s = tab_.stages;
        Eigen::MatrixXd ip(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j <= i; ++j) {
                ip(i, j) = sd_.broken_inner(rates[i], rates[j]);
                ip(j, i) = ip(i, j);
            }
        double num = 0.0, den = 0.0;
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < i; ++j)
                num += 2.0 * tab_.b[i] * tab_.a(i, j) * ip(j, i);
            for (int j = 0; j < s; ++j)
                den += tab_.b[i] * tab_.b[j] * ip(i, j);
        }
        if (den == 0.0) return 1.0;
        const double gamma = num / den;
        if (!(gamma > 0.0))
            throw RelaxationError("algebraic relaxation parameter "
                                  + std::to_string(gamma)
                                  + " <= 0: time step too large");
        return gamma;
    }

    /// Advances one step with the configured relaxation mode; the state time
    /// advances by γⁿ Δt.
    StepRecord step(GlobalState& state, double dt)
    {
        std::vector<GlobalState> stages;
        std::vector<Rates> rates;
        Rates d;
        rk_step(state, dt, stages, rates, d);

        StepRecord rec;
        rec.t_before = state.t;
        rec.dt_target = dt;

        // The K-seminorm estimate term feeds the cumulative eta_c in every
        // mode; the L2 part additionally drives the root solve.
        double k_rate_sum = 0.0; // Σ b_i <v_i, f_i>_K
        double e_l2 = 0.0;       // Δt Σ b_i <v_i, f_i>_M
        const bool need_rates = relax_.mode == RelaxationMode::RootGeneralConvex
                             || sd_.ops().c() != 0.0;
        if (need_rates) {
            for (int i = 0; i < tab_.stages; ++i) {
                EntropyRate er = sd_.entropy_rate(stages[i], rates[i]);
                e_l2 += tab_.b[i] * er.m_part;
                k_rate_sum += tab_.b[i] * er.k_part;
            }
            e_l2 *= dt;
        }
        if (relax_.mode == RelaxationMode::None) {
            rec.gamma = 1.0;
            rec.solver_branch = "none";
        } else if (relax_.mode == RelaxationMode::AlgebraicBrokenSobolev) {
            rec.gamma = algebraic_gamma(rates);
            rec.solver_branch = "algebraic";
        } else {
            bool zero_d = true;
            for (const auto& m : d)
                if (m.cwiseAbs().maxCoeff() != 0.0) { zero_d = false; break; }
            if (zero_d) {
                rec.gamma = 1.0;
                rec.solver_branch = "trivial";
            } else {
                const double eta0 = sd_.entropy(state);
                auto root_fn = [&](double g) {
                    if (g == 0.0) return 0.0;
                    GlobalState trial;
                    trial.t = state.t;
                    trial.u.resize(d.size());
                    for (size_t e = 0; e < d.size(); ++e)
                        trial.u[e] = state.u[e] + g * d[e];
                    try {
                        return sd_.entropy(trial) - eta0 - g * e_l2;
                    } catch (const AdmissibilityError&) {
                        return std::numeric_limits<double>::quiet_NaN();
                    }
                };
                SecantResult res =
                    solve_gamma_secant_bisection(root_fn, gamma_prev_, relax_);
                rec.gamma = res.gamma;
                rec.solver_iters = res.iters;
                rec.solver_branch = res.branch;
            }
        }

        for (size_t e = 0; e < state.u.size(); ++e)
            state.u[e] += rec.gamma * d[e];
        state.t += rec.gamma * dt;
        gamma_prev_ = rec.gamma;
        if (need_rates) k_accum_ += rec.gamma * dt * k_rate_sum;

        rec.t_after = state.t;
        rec.eta_L2 = sd_.entropy(state);
        rec.eta_c_cum = rec.eta_L2 + k_accum_;
        double e_m = 0.0, e_w = 0.0;
        for (size_t e = 0; e < state.u.size(); ++e) {
            e_m += (state.u[e].array()
                    * (sd_.ops().mass() * state.u[e]).array()).sum();
            e_w += sd_.ops().broken_inner_product(state.u[e], state.u[e]);
        }
        rec.energy_L2 = 0.5 * e_m;
        rec.energy_W = 0.5 * e_w;
        return rec;
    }

private:
    const Semidiscretization<Model>& sd_;
    ButcherTableau tab_;
    RelaxationConfig relax_;
    double gamma_prev_ = 1.0;
    double k_accum_ = 0.0;
};

/// Δt = CFL Δx_min / (λ_max (p+1)) from the current solution state.
template <class Model>
double cfl_adapt(const Semidiscretization<Model>& sd, const GlobalState& state,
                 double cfl)
{
    double dx = sd.mesh().dx(0);
    for (int a = 1; a < sd.mesh().dim; ++a) dx = std::min(dx, sd.mesh().dx(a));
    const double lam = sd.max_wavespeed(state);
    if (!(lam > 0.0))
        throw std::runtime_error("cfl_adapt: nonpositive wavespeed");
    return cfl * dx / (lam * (sd.ops().p() + 1));
}

} // namespace nsfr

#endif
