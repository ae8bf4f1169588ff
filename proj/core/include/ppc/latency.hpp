#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppc {

/// Component decoder family used by the two-step scheme.
enum class StepOneAlg { Sc, Scl };

/// Time steps of a fully parallel SC decoder for length n.
long long delta_sc(std::size_t n);

/// Time steps of a fully parallel SCL decoder for length n and rate r,
/// rounded up to whole steps.
long long delta_scl(std::size_t n, double rate);

/// Same with an integer dimension.
long long delta_scl_k(std::size_t n, std::size_t k);

/// Expected two-step time steps with hard-decision exchange: rows and
/// columns decode concurrently, so one iteration costs the longer component;
/// step two costs the full-length decoder a fraction gamma of the time.
double two_step_hd_latency(std::size_t n_r, std::size_t n_c, double rate_r, double rate_c,
                           double t_avg, double gamma, StepOneAlg alg);

/// Expected two-step time steps with soft exchange: row and column passes
/// are charged sequentially.
double two_step_sd_latency(std::size_t n_r, std::size_t n_c, double rate_r, double rate_c,
                           double t_avg, double gamma);

/// Largest gamma for which SC-based two-step decoding of the length-N_r^2
/// code beats plain SC decoding of a length-n code.
double gamma_max_sc(std::size_t n, std::size_t n_r, double t_avg);

/// SCL counterpart; n carries rate `rate`, the component code rate `rate_r`.
double gamma_max_scl(std::size_t n, std::size_t n_r, double rate, double rate_r,
                     double t_avg);

/// One row of the worst-case / best-case time-step table for a square
/// product decomposition with equal component rates.
struct LatencyTableRow {
    std::size_t n = 0;
    std::size_t k = 0;
    long long sc_full = 0;
    long long hd_sc_wc = 0;
    long long hd_sc_bc = 0;
    long long scl_full = 0;
    long long hd_scl_wc = 0;
    long long hd_scl_bc = 0;
    long long sd_scl_wc = 0;
    long long sd_scl_bc = 0;
};

/// Worst case assumes t_avg = t_max and gamma = 1; best case t_avg = 1 and
/// gamma = 0. k_display labels the row (the dimension the rate targets).
LatencyTableRow latency_table_row(std::size_t n_r, double rate_r, std::size_t t_max,
                                  std::size_t k_display);

}  // namespace ppc
