#include "ppc/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ppc/latency.hpp"

namespace ppc {

void TrialStats::merge(const TrialStats& other)
{
    frames += other.frames;
    bit_errors += other.bit_errors;
    frame_errors += other.frame_errors;
    step2_count += other.step2_count;
    iteration_sum += other.iteration_sum;
    time_step_sum += other.time_step_sum;
}

namespace {

std::size_t resolve_workers(std::size_t requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("PPC_THREADS")) {
        const long v = std::atol(env);
        if (v > 0)
            return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

TwoStepVariant to_two_step_variant(SimDecoder d)
{
    switch (d) {
    case SimDecoder::ScHd: return TwoStepVariant::ScHd;
    case SimDecoder::SclHd: return TwoStepVariant::SclHd;
    default: return TwoStepVariant::SclSd;
    }
}

/// Per-thread decode context; holds decoder scratch reused across frames.
struct Worker {
    const Experiment& exp;
    std::vector<std::uint8_t> frozen_mask;
    std::vector<std::size_t> info_positions;
    std::optional<TwoStepDecoder> two_step;
    std::optional<ScDecoder> sc;
    std::optional<SclDecoder> scl;
    long long flat_delta = 0;

    BitVector info, u, x;
    LlrVector llr;
    ListCandidate cand;

    explicit Worker(const Experiment& e) : exp(e)
    {
        const CodeSpec& spec = exp.spec;
        frozen_mask = spec.frozen.mask();
        for (std::size_t i = 0; i < spec.length; ++i)
            if (!frozen_mask[i])
                info_positions.push_back(i);

        switch (exp.decoder) {
        case SimDecoder::Sc:
            sc.emplace(spec.length, exp.metric_mode);
            flat_delta = delta_sc(spec.length);
            break;
        case SimDecoder::Scl:
            scl.emplace(spec.length, exp.list_size, exp.metric_mode);
            flat_delta = delta_scl_k(spec.length, spec.dimension);
            break;
        default: {
            TwoStepConfig cfg = exp.two_step;
            cfg.variant = to_two_step_variant(exp.decoder);
            two_step.emplace(spec, cfg);
            break;
        }
        }
        info.resize(spec.dimension);
        u.resize(spec.length);
        x.resize(spec.length);
    }

    void run_frame(const ChannelConfig& ch, std::uint64_t stream, TrialStats& stats)
    {
        CounterRng rng(ch.seed, stream);
        for (std::size_t i = 0; i < info.size(); ++i)
            info[i] = rng.next_bit();
        std::fill(u.begin(), u.end(), 0);
        for (std::size_t i = 0; i < info_positions.size(); ++i)
            u[info_positions[i]] = info[i];
        x = u;
        polar_transform_inplace(x);
        modulate_and_transmit_into(x, ch, rng, llr);

        const BitVector* u_hat = nullptr;
        if (two_step) {
            TwoStepOutcome out = two_step->decode(llr);
            stats.iteration_sum += out.iterations_used;
            stats.step2_count += out.step2_used ? 1 : 0;
            stats.time_step_sum += static_cast<std::uint64_t>(out.time_steps);
            decoded_ = std::move(out.u_hat);
            u_hat = &decoded_;
        } else {
            if (sc)
                sc->decode_into(llr, frozen_mask, cand);
            else
                scl->decode_best(llr, frozen_mask, cand);
            stats.iteration_sum += 1;
            stats.time_step_sum += static_cast<std::uint64_t>(flat_delta);
            u_hat = &cand.u_hat;
        }

        std::uint64_t errs = 0;
        for (std::size_t i = 0; i < info_positions.size(); ++i)
            errs += (*u_hat)[info_positions[i]] != info[i];
        stats.bit_errors += errs;
        stats.frame_errors += errs > 0;
        stats.frames += 1;
    }

private:
    BitVector decoded_;
};

}  // namespace

std::vector<TrialStats> run_experiment(const Experiment& exp)
{
    if (exp.eb_n0_grid_db.empty())
        throw std::invalid_argument("channel grid is empty");
    if (exp.stop.max_frames == 0)
        throw std::invalid_argument("stop rule admits no frames");

    const std::size_t workers = resolve_workers(exp.workers);
    constexpr std::uint64_t kRound = 1024;  // stop rule checked between rounds

    std::vector<TrialStats> results;
    results.reserve(exp.eb_n0_grid_db.size());

    std::vector<Worker> ctx;
    ctx.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        ctx.emplace_back(exp);

    for (std::size_t point = 0; point < exp.eb_n0_grid_db.size(); ++point) {
        ChannelConfig ch;
        ch.eb_n0_db = exp.eb_n0_grid_db[point];
        ch.rate = static_cast<double>(exp.spec.dimension) / static_cast<double>(exp.spec.length);
        ch.seed = exp.seed;

        TrialStats total;
        total.eb_n0_db = ch.eb_n0_db;
        total.info_bits_per_frame = exp.spec.dimension;

        // min_frame_errors == 0 disables the error-count stop
        std::uint64_t next_frame = 0;
        while (next_frame < exp.stop.max_frames &&
               (exp.stop.min_frame_errors == 0 ||
                total.frame_errors < exp.stop.min_frame_errors)) {
            const std::uint64_t round =
                std::min<std::uint64_t>(kRound, exp.stop.max_frames - next_frame);
            std::vector<TrialStats> partial(workers);
            auto body = [&](std::size_t w) {
                for (std::uint64_t f = w; f < round; f += workers) {
                    const std::uint64_t frame = next_frame + f;
                    const std::uint64_t stream =
                        (static_cast<std::uint64_t>(point) << 40) | frame;
                    ctx[w].run_frame(ch, stream, partial[w]);
                }
            };
            if (workers == 1) {
                body(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (std::size_t w = 0; w < workers; ++w)
                    pool.emplace_back(body, w);
                for (auto& t : pool)
                    t.join();
            }
            for (const TrialStats& p : partial)
                total.merge(p);
            next_frame += round;
        }
        results.push_back(total);
    }
    return results;
}

namespace {

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void write_results(std::ostream& out, const std::vector<TrialStats>& stats,
                   ResultFormat format)
{
    if (stats.empty())
        throw std::invalid_argument("no statistics to emit");
    if (format == ResultFormat::Csv) {
        out << "eb_n0_db,frames,ber,fer,gamma,t_avg,avg_time_steps\n";
        for (const TrialStats& s : stats) {
            out << format_double(s.eb_n0_db) << ',' << s.frames << ','
                << format_double(s.ber()) << ',' << format_double(s.fer()) << ','
                << format_double(s.gamma()) << ',' << format_double(s.t_avg()) << ','
                << format_double(s.avg_time_steps()) << '\n';
        }
    } else {
        for (const TrialStats& s : stats) {
            out << "{\"eb_n0_db\":" << format_double(s.eb_n0_db)
                << ",\"frames\":" << s.frames << ",\"ber\":" << format_double(s.ber())
                << ",\"fer\":" << format_double(s.fer())
                << ",\"gamma\":" << format_double(s.gamma())
                << ",\"t_avg\":" << format_double(s.t_avg())
                << ",\"avg_time_steps\":" << format_double(s.avg_time_steps()) << "}\n";
        }
    }
}

void emit_results(const std::string& path, const std::vector<TrialStats>& stats,
                  ResultFormat format)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write results file: " + path);
    write_results(out, stats, format);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing results file: " + path);
}

}  // namespace ppc
