#include "nsfr/timeintegration.hpp"

#include <cmath>
#include <sstream>

namespace nsfr {

ButcherTableau tableau_registry(const std::string& name)
{
    ButcherTableau t;
    t.name = name;
    if (name == "heun") {
        t.stages = 2;
        t.order = 2;
        t.a = Eigen::MatrixXd::Zero(2, 2);
        t.a(1, 0) = 1.0;
        t.b = Eigen::VectorXd(2);
        t.b << 0.5, 0.5;
    } else if (name == "ssprk3") {
        t.stages = 3;
        t.order = 3;
        t.a = Eigen::MatrixXd::Zero(3, 3);
        t.a(1, 0) = 1.0;
        t.a(2, 0) = 0.25;
        t.a(2, 1) = 0.25;
        t.b = Eigen::VectorXd(3);
        t.b << 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0;
    } else if (name == "rk4") {
        t.stages = 4;
        t.order = 4;
        t.a = Eigen::MatrixXd::Zero(4, 4);
        t.a(1, 0) = 0.5;
        t.a(2, 1) = 0.5;
        t.a(3, 2) = 1.0;
        t.b = Eigen::VectorXd(4);
        t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
    } else {
        throw std::invalid_argument("tableau_registry: unknown tableau " + name);
    }
    return t;
}

SecantResult solve_gamma_secant_bisection(
    const std::function<double(double)>& root_fn, double gamma_prev,
    const RelaxationConfig& cfg)
{
    SecantResult out;
    double g0 = gamma_prev - cfg.seed_offset;
    double g1 = gamma_prev + cfg.seed_offset;
    double r0 = root_fn(g0);
    double r1 = root_fn(g1);
    bool reinit_used = false;
    int iters = 0;
    bool secant_failed = false;
    while (true) {
        if (iters >= cfg.iteration_limit) {
            secant_failed = true;
            break;
        }
        ++iters;
        if (std::isnan(r0) || std::isnan(r1)) {
            if (!reinit_used) {
                reinit_used = true;
                g0 = 1.0 - cfg.seed_offset;
                g1 = 1.0 + cfg.seed_offset;
                r0 = root_fn(g0);
                r1 = root_fn(g1);
                continue;
            }
            secant_failed = true;
            break;
        }
        if (std::abs(g1 - g0) <= cfg.tolerance) {
            out.gamma = g1;
            out.iters = iters;
            out.branch = "secant";
            return out;
        }
        const double denom = r1 - r0;
        if (denom == 0.0) {
            if (r1 == 0.0) {
                out.gamma = g1;
                out.iters = iters;
                out.branch = "secant";
                return out;
            }
            secant_failed = true;
            break;
        }
        const double g2 = g1 - r1 * (g1 - g0) / denom;
        if (!(g2 >= cfg.guard_lo && g2 <= cfg.guard_hi)) {
            if (!reinit_used) {
                reinit_used = true;
                g0 = 1.0 - cfg.seed_offset;
                g1 = 1.0 + cfg.seed_offset;
                r0 = root_fn(g0);
                r1 = root_fn(g1);
                continue;
            }
            secant_failed = true;
            break;
        }
        g0 = g1;
        r0 = r1;
        g1 = g2;
        r1 = root_fn(g1);
    }
    (void)secant_failed;

    // Bisection fallback: bracket around the previous gamma, widened until a
    // sign change appears, with a hard cap on the number of expansions.
    std::ostringstream history;
    for (int k = 0; k <= cfg.bracket_max_expansions; ++k) {
        const double half = cfg.bracket_half_width + k * cfg.bracket_growth;
        double lo = gamma_prev - half;
        double hi = gamma_prev + half;
        double rlo = root_fn(lo);
        double rhi = root_fn(hi);
        history << "[" << lo << "," << hi << "]:(" << rlo << "," << rhi << ") ";
        if (std::isnan(rlo) || std::isnan(rhi)) continue;
        if (rlo == 0.0) {
            out.gamma = lo;
            out.branch = "bisection";
            return out;
        }
        if (rhi == 0.0) {
            out.gamma = hi;
            out.branch = "bisection";
            return out;
        }
        if (rlo * rhi > 0.0) continue;
        int biters = 0;
        while (hi - lo > cfg.tolerance && biters < cfg.iteration_limit) {
            ++biters;
            const double mid = 0.5 * (lo + hi);
            const double rm = root_fn(mid);
            if (std::isnan(rm))
                throw RelaxationError(
                    "relaxation solve: inadmissible trial state during "
                    "bisection; bracket history: " + history.str());
            if (rm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (rlo * rm <= 0.0) {
                hi = mid;
                rhi = rm;
            } else {
                lo = mid;
                rlo = rm;
            }
        }
        out.gamma = 0.5 * (lo + hi);
        out.iters = biters;
        out.branch = "bisection";
        return out;
    }
    throw RelaxationError("relaxation solve failed: secant did not converge "
                          "and no sign change bracketed; bracket history: "
                          + history.str());
}

} // namespace nsfr
