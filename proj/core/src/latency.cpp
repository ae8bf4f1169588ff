#include "ppc/latency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppc {

long long delta_sc(std::size_t n)
{
    return 2 * static_cast<long long>(n) - 2;
}

long long delta_scl(std::size_t n, double rate)
{
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("rate must lie in (0,1]");
    return static_cast<long long>(std::ceil(static_cast<double>(n) * (2.0 + rate))) - 2;
}

long long delta_scl_k(std::size_t n, std::size_t k)
{
    return 2 * static_cast<long long>(n) + static_cast<long long>(k) - 2;
}

namespace {

long long component_delta(std::size_t n, double rate, StepOneAlg alg)
{
    return alg == StepOneAlg::Sc ? delta_sc(n) : delta_scl(n, rate);
}

}  // namespace

double two_step_hd_latency(std::size_t n_r, std::size_t n_c, double rate_r, double rate_c,
                           double t_avg, double gamma, StepOneAlg alg)
{
    const std::size_t n_max = std::max(n_r, n_c);
    const double rate_max = (n_r >= n_c) ? rate_r : rate_c;
    const long long d_comp = component_delta(n_max, rate_max, alg);
    const long long d_full = component_delta(n_r * n_c, rate_r * rate_c, alg);
    return t_avg * static_cast<double>(d_comp) + gamma * static_cast<double>(d_full);
}

double two_step_sd_latency(std::size_t n_r, std::size_t n_c, double rate_r, double rate_c,
                           double t_avg, double gamma)
{
    const long long d_rows = delta_scl(n_r, rate_r);
    const long long d_cols = delta_scl(n_c, rate_c);
    const long long d_full = delta_scl(n_r * n_c, rate_r * rate_c);
    return t_avg * static_cast<double>(d_rows + d_cols) + gamma * static_cast<double>(d_full);
}

double gamma_max_sc(std::size_t n, std::size_t n_r, double t_avg)
{
    const double nn = static_cast<double>(n);
    const double nr = static_cast<double>(n_r);
    return (t_avg * (1.0 - nr) + nn - 1.0) / (nr * nr - 1.0);
}

double gamma_max_scl(std::size_t n, std::size_t n_r, double rate, double rate_r,
                     double t_avg)
{
    const double nn = static_cast<double>(n);
    const double nr = static_cast<double>(n_r);
    return (nn / nr * (2.0 + rate) - t_avg * (2.0 + rate_r)) /
           (nr * (2.0 + rate_r * rate_r));
}

LatencyTableRow latency_table_row(std::size_t n_r, double rate_r, std::size_t t_max,
                                  std::size_t k_display)
{
    LatencyTableRow row;
    row.n = n_r * n_r;
    row.k = k_display;
    const double rate = rate_r * rate_r;
    const double t = static_cast<double>(t_max);

    row.sc_full = delta_sc(row.n);
    row.hd_sc_wc = static_cast<long long>(
        two_step_hd_latency(n_r, n_r, rate_r, rate_r, t, 1.0, StepOneAlg::Sc));
    row.hd_sc_bc = static_cast<long long>(
        two_step_hd_latency(n_r, n_r, rate_r, rate_r, 1.0, 0.0, StepOneAlg::Sc));

    row.scl_full = delta_scl(row.n, rate);
    row.hd_scl_wc = static_cast<long long>(
        two_step_hd_latency(n_r, n_r, rate_r, rate_r, t, 1.0, StepOneAlg::Scl));
    row.hd_scl_bc = static_cast<long long>(
        two_step_hd_latency(n_r, n_r, rate_r, rate_r, 1.0, 0.0, StepOneAlg::Scl));

    row.sd_scl_wc =
        static_cast<long long>(two_step_sd_latency(n_r, n_r, rate_r, rate_r, t, 1.0));
    row.sd_scl_bc =
        static_cast<long long>(two_step_sd_latency(n_r, n_r, rate_r, rate_r, 1.0, 0.0));
    return row;
}

}  // namespace ppc
