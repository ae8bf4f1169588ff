#include "ppc/channel.hpp"

namespace ppc {

void modulate_and_transmit_into(const BitVector& x, const ChannelConfig& ch, CounterRng& rng,
                                LlrVector& out)
{
    const double variance = ch.noise_variance();
    const double sigma = std::sqrt(variance);
    const double scale = 2.0 / variance;
    out.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = x[i] ? -1.0 : 1.0;
        const double y = s + sigma * rng.next_gaussian();
        out[i] = scale * y;
    }
}

LlrVector modulate_and_transmit(const BitVector& x, const ChannelConfig& ch, CounterRng& rng)
{
    LlrVector out;
    modulate_and_transmit_into(x, ch, rng, out);
    return out;
}

}  // namespace ppc
