#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppc/channel.hpp"
#include "ppc/construction.hpp"
#include "ppc/two_step.hpp"

namespace ppc {

/// Aggregated Monte-Carlo counters for one channel grid point.
struct TrialStats {
    double eb_n0_db = 0.0;
    std::uint64_t info_bits_per_frame = 0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t step2_count = 0;
    std::uint64_t iteration_sum = 0;
    std::uint64_t time_step_sum = 0;

    double ber() const
    {
        return frames ? static_cast<double>(bit_errors) /
                            (static_cast<double>(frames) * static_cast<double>(info_bits_per_frame))
                      : 0.0;
    }
    double fer() const
    {
        return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0;
    }
    double gamma() const
    {
        return frames ? static_cast<double>(step2_count) / static_cast<double>(frames) : 0.0;
    }
    double t_avg() const
    {
        return frames ? static_cast<double>(iteration_sum) / static_cast<double>(frames) : 0.0;
    }
    double avg_time_steps() const
    {
        return frames ? static_cast<double>(time_step_sum) / static_cast<double>(frames) : 0.0;
    }

    void merge(const TrialStats& other);
};

/// Decoder driven by the simulation loop. Sc and Scl decode the full code
/// directly; the rest are two-step variants.
enum class SimDecoder { Sc, Scl, ScHd, SclHd, SclSd };

struct StopRule {
    std::uint64_t max_frames = 1'000'000;
    std::uint64_t min_frame_errors = 100;
};

struct Experiment {
    CodeSpec spec;
    SimDecoder decoder = SimDecoder::ScHd;
    TwoStepConfig two_step;        // two-step variants; variant field derived from decoder
    std::size_t list_size = 8;     // plain SCL
    MetricMode metric_mode = MetricMode::MinSum;
    std::vector<double> eb_n0_grid_db;
    std::uint64_t seed = 1;
    StopRule stop;
    std::size_t workers = 0;       // 0 = PPC_THREADS env or hardware concurrency
};

/// Runs encode -> AWGN/BPSK -> decode trials for every grid point until the
/// stop rule fires. Per-frame randomness is keyed by (seed, point, frame),
/// so results do not depend on the worker count.
std::vector<TrialStats> run_experiment(const Experiment& exp);

enum class ResultFormat { Csv, JsonLines };

/// Header: eb_n0_db,frames,ber,fer,gamma,t_avg,avg_time_steps.
/// Floats use shortest round-trip formatting.
void write_results(std::ostream& out, const std::vector<TrialStats>& stats,
                   ResultFormat format);
void emit_results(const std::string& path, const std::vector<TrialStats>& stats,
                  ResultFormat format);

}  // namespace ppc
