// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/forward_model.hpp"
#include "simlearn/signals.hpp"

#include <vector>

namespace simlearn {

// Mean desired-signal power over the selected diagonal, scaled by frame_power.
double signal_power(const CMatrix& selected, double frame_power = 1.0);
double snr_to_noise_variance(double snr_db, const CMatrix& selected, double frame_power = 1.0);
double snr_to_noise_variance(double snr_db, const ChannelSet& ch, const PhaseBook& pb,
                             const AntennaAssignment& assignment, double frame_power = 1.0);

double ser(const CMatrix& received, const LabelMatrix& transmitted);

// Scales each slot (column) to norm sqrt(K).
CMatrix normalize_slots(const CMatrix& received);
double constellation_mse(const CMatrix& received_normalized, const CMatrix& ideal);

struct LinkBudget {
    std::vector<double> sinr;
    double sum_rate = 0.0;
};

LinkBudget sinr_and_sumrate(const CMatrix& selected, const std::optional<CVector>& jammer_selected,
                            double noise_variance, double jammer_mean_power);
LinkBudget sinr_and_sumrate(const EquivalentChannel& eq, double noise_variance, double jammer_mean_power);

}  // namespace simlearn
