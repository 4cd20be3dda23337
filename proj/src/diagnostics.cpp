#include "nsfr/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace nsfr {

std::vector<double> negative_time_derivative(const std::vector<double>& t,
                                             const std::vector<double>& values)
{
    const size_t n = t.size();
    if (values.size() != n)
        throw std::invalid_argument("negative_time_derivative: size mismatch");
    if (n < 2)
        throw std::invalid_argument("negative_time_derivative: need >= 2 samples");
    std::vector<double> out(n);
    auto two_point = [&](size_t i, size_t j) {
        return -(values[j] - values[i]) / (t[j] - t[i]);
    };
    out[0] = two_point(0, 1);
    out[n - 1] = two_point(n - 2, n - 1);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double hl = t[i] - t[i - 1];
        const double hr = t[i + 1] - t[i];
        // second-order centered stencil on a non-uniform grid
        const double d = (hl * hl * values[i + 1] - hr * hr * values[i - 1]
                          - (hl * hl - hr * hr) * values[i])
                       / (hl * hr * (hl + hr));
        out[i] = -d;
    }
    return out;
}

std::vector<double> convergence_rates(const std::vector<double>& h,
                                      const std::vector<double>& err)
{
    if (h.size() != err.size())
        throw std::invalid_argument("convergence_rates: size mismatch");
    if (h.size() < 2)
        throw std::invalid_argument("convergence_rates: need >= 2 levels");
    std::vector<double> rates(h.size() - 1);
    for (size_t i = 1; i < h.size(); ++i)
        rates[i - 1] =
            std::log(err[i - 1] / err[i]) / std::log(h[i - 1] / h[i]);
    return rates;
}

DissipationSeries dissipation_decomposition(const std::vector<double>& t,
                                            const std::vector<double>& ke,
                                            const std::vector<double>& enstrophy,
                                            double reynolds)
{
    if (enstrophy.size() != t.size())
        throw std::invalid_argument("dissipation_decomposition: size mismatch");
    DissipationSeries s;
    s.t = t;
    s.eps_ke = negative_time_derivative(t, ke);
    s.eps_omega.resize(t.size());
    s.eps_num.resize(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        s.eps_omega[i] = 2.0 * enstrophy[i] / reynolds;
        s.eps_num[i] = s.eps_ke[i] - s.eps_omega[i];
    }
    return s;
}

} // namespace nsfr
