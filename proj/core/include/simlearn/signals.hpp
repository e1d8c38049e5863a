// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/types.hpp"

#include <array>
#include <cstdint>

namespace simlearn {

using Bits2 = std::array<std::uint8_t, 2>;
using LabelMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Gray mapping, first bit on the in-phase axis: 0 -> +, 1 -> -.
cplx qpsk_modulate(Bits2 bits);
Bits2 qpsk_demodulate(cplx y);
// Symbol label 2*b0 + b1.
std::uint8_t qpsk_label(cplx y);
cplx qpsk_symbol(std::uint8_t label);

struct SymbolFrame {
    CMatrix symbols;     // K x U
    LabelMatrix labels;  // K x U, values 0..3
};

SymbolFrame gen_frame(int users, int slots, std::uint64_t seed);

CMatrix awgn(int rows, int cols, double noise_variance, std::uint64_t seed);

struct JammerPower {
    double p_min = 0.0;
    double p_max = 0.0;
};

struct JammerWaveform {
    CVector samples;
    RVector amplitude;
    static constexpr double base_variance = 0.5;
};

JammerWaveform jammer_waveform(int slots, const JammerPower& power, std::uint64_t seed);

}  // namespace simlearn
