// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/forward_model.hpp"

#include <optional>

namespace simlearn {

struct ImpairmentConfig {
    std::optional<int> quant_bits;
    std::optional<double> coupling_alpha;
    std::optional<double> phase_noise_sigma;

    bool any() const { return quant_bits || coupling_alpha || phase_noise_sigma; }
    bool operator==(const ImpairmentConfig&) const = default;
};

inline constexpr int kCouplingHalfWidth = 5;

PhaseBook quantize_phases(const PhaseBook& pb, int bits);
RMatrix coupling_matrix(int atoms, double alpha);
LayerResponse apply_coupling(const RMatrix& coupling, int atoms);

double mean_resultant_length(double kappa);
double circular_std_to_kappa(double sigma);
// Best-Fisher rejection sampler, mean direction 0, result in [-pi, pi).
double sample_von_mises(double kappa, std::mt19937_64& rng);
PhaseBook von_mises_phase_noise(const PhaseBook& pb, double sigma, std::uint64_t seed);

struct ImpairedModel {
    PhaseBook phases;
    LayerResponse response;
};

// Applies quantization, then phase noise, and attaches coupling.
ImpairedModel impair(const PhaseBook& pb, const ImpairmentConfig& cfg, std::uint64_t seed);

}  // namespace simlearn
