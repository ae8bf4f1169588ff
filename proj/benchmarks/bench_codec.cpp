#include <benchmark/benchmark.h>

#include <random>

#include "ppc/channel.hpp"
#include "ppc/construction.hpp"
#include "ppc/decoders.hpp"
#include "ppc/two_step.hpp"

using namespace ppc;

namespace {

LlrVector noisy_frame(std::uint64_t stream, const CodeSpec& spec, double eb_n0_db)
{
    ChannelConfig ch;
    ch.eb_n0_db = eb_n0_db;
    ch.rate = double(spec.dimension) / double(spec.length);
    ch.seed = 1;
    CounterRng rng(ch.seed, stream);
    BitVector u(spec.length, 0);
    for (std::size_t i = 0; i < spec.length; ++i)
        if (!spec.frozen.contains(i))
            u[i] = rng.next_bit();
    return modulate_and_transmit(polar_encode(u), ch, rng);
}

void BM_PolarTransform(benchmark::State& state)
{
    const std::size_t n = state.range(0);
    std::mt19937 rng(1);
    BitVector u(n);
    for (auto& b : u)
        b = rng() & 1;
    for (auto _ : state) {
        polar_transform_inplace(u);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PolarTransform)->Arg(256)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_ScDecode(benchmark::State& state)
{
    const std::size_t n = state.range(0);
    const CodeSpec spec =
        make_flat_spec(frozen_from_order(bhattacharyya_order(n, 0.5), n * 3 / 4));
    const auto mask = spec.frozen.mask();
    const LlrVector y = noisy_frame(7, spec, 3.0);
    ScDecoder dec(n);
    ListCandidate out;
    for (auto _ : state) {
        dec.decode_into(y, mask, out);
        benchmark::DoNotOptimize(out.metric);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ScDecode)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SclDecode(benchmark::State& state)
{
    const std::size_t list = state.range(0);
    const std::size_t n = 1024;
    const CodeSpec spec =
        make_flat_spec(frozen_from_order(bhattacharyya_order(n, 0.5), 784));
    const auto mask = spec.frozen.mask();
    const LlrVector y = noisy_frame(11, spec, 3.0);
    SclDecoder dec(n, list);
    ListCandidate out;
    for (auto _ : state) {
        dec.decode_best(y, mask, out);
        benchmark::DoNotOptimize(out.metric);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SclDecode)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_TwoStep(benchmark::State& state)
{
    const auto variant = static_cast<TwoStepVariant>(state.range(0));
    const FrozenSet comp = frozen_from_order(bhattacharyya_order(32, 0.5), 28);
    const CodeSpec spec = make_product_spec(comp, comp);
    TwoStepConfig cfg;
    cfg.variant = variant;
    cfg.list_size = 8;
    TwoStepDecoder dec(spec, cfg);

    std::vector<LlrVector> frames;
    for (std::uint64_t s = 0; s < 32; ++s)
        frames.push_back(noisy_frame(s, spec, 4.5));
    std::size_t i = 0;
    for (auto _ : state) {
        const TwoStepOutcome out = dec.decode(frames[i]);
        benchmark::DoNotOptimize(out.time_steps);
        i = (i + 1) % frames.size();
    }
    state.SetItemsProcessed(state.iterations() * spec.length);
}
BENCHMARK(BM_TwoStep)
    ->Arg(static_cast<int>(TwoStepVariant::ScHd))
    ->Arg(static_cast<int>(TwoStepVariant::SclHd))
    ->Arg(static_cast<int>(TwoStepVariant::SclSd));

void BM_FindErroneous(benchmark::State& state)
{
    std::mt19937 rng(3);
    BitMatrix d(64, 64);
    for (auto& b : d.data)
        b = (rng() % 16) == 0;
    for (auto _ : state) {
        const MismatchReport r = find_erroneous(d);
        benchmark::DoNotOptimize(r.err_rows.data());
    }
}
BENCHMARK(BM_FindErroneous);

}  // namespace

BENCHMARK_MAIN();
