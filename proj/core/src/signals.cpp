// SPDX-License-Identifier: Apache-2.0
#include "simlearn/signals.hpp"

#include <cmath>
#include <random>

namespace simlearn {

cplx qpsk_modulate(Bits2 bits)
{
    const double a = 1.0 / std::sqrt(2.0);
    return {bits[0] ? -a : a, bits[1] ? -a : a};
}

Bits2 qpsk_demodulate(cplx y)
{
    return {static_cast<std::uint8_t>(y.real() < 0.0), static_cast<std::uint8_t>(y.imag() < 0.0)};
}

std::uint8_t qpsk_label(cplx y)
{
    const Bits2 b = qpsk_demodulate(y);
    return static_cast<std::uint8_t>(2 * b[0] + b[1]);
}

cplx qpsk_symbol(std::uint8_t label)
{
    return qpsk_modulate({static_cast<std::uint8_t>((label >> 1) & 1U), static_cast<std::uint8_t>(label & 1U)});
}

SymbolFrame gen_frame(int users, int slots, std::uint64_t seed)
{
    if (users < 1 || slots < 1) throw RuntimeError("gen_frame: dimensions must be positive");
    SymbolFrame f;
    f.symbols.resize(users, slots);
    f.labels.resize(users, slots);
    std::mt19937_64 rng(seed);
    for (int u = 0; u < slots; ++u)
        for (int k = 0; k < users; ++k) {
            const auto label = static_cast<std::uint8_t>(rng() >> 62);
            f.labels(k, u) = label;
            f.symbols(k, u) = qpsk_symbol(label);
        }
    return f;
}

CMatrix awgn(int rows, int cols, double noise_variance, std::uint64_t seed)
{
    if (!(noise_variance >= 0.0)) throw RuntimeError("awgn: negative variance");
    if (rows < 0 || cols < 0) throw RuntimeError("awgn: negative shape");
    CMatrix n = CMatrix::Zero(rows, cols);
    if (noise_variance == 0.0) return n;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * noise_variance));
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            n(r, c) = cplx(re, im);
        }
    return n;
}

JammerWaveform jammer_waveform(int slots, const JammerPower& power, std::uint64_t seed)
{
    if (slots < 1) throw RuntimeError("jammer_waveform: slot count must be positive");
    if (!(power.p_min >= 0.0) || !(power.p_max >= power.p_min))
        throw RuntimeError("jammer_waveform: need 0 <= p_min <= p_max");
    JammerWaveform w;
    w.samples.resize(slots);
    w.amplitude.resize(slots);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * JammerWaveform::base_variance));
    for (int u = 0; u < slots; ++u) {
        const double p = power.p_min + (power.p_max - power.p_min) * uni(rng);
        const double re = normal(rng);
        const double im = normal(rng);
        w.amplitude(u) = std::sqrt(p);
        w.samples(u) = w.amplitude(u) * cplx(re, im);
    }
    return w;
}

}  // namespace simlearn
