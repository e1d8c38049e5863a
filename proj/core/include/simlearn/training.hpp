// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/forward_model.hpp"

#include <optional>
#include <vector>

namespace simlearn {

struct TrainConfig {
    double eta0 = 0.8;
    double beta = 0.99;
    int episodes = 200;
    double tolerance = 1e-6;
    int pilots = 64;

    bool operator==(const TrainConfig&) const = default;
};

enum class Termination { max_episodes, loss_delta_below_tolerance };

struct TrainRecord {
    std::vector<double> loss_mean;
    std::vector<double> loss_std;
    std::vector<double> eta;
    double initial_loss_mean = 0.0;
    double initial_loss_std = 0.0;
    int episodes_run = 0;
    Termination termination = Termination::max_episodes;
};

struct TrainResult {
    PhaseBook phases;
    TrainRecord record;
};

struct LossStats {
    double mean = 0.0;
    double std = 0.0;
};

double loss(const CVector& received, const CVector& transmitted);

// Per-slot loss of a K x U block of received symbols.
RVector slot_losses(const CMatrix& received, const CMatrix& transmitted);

LossStats batch_loss(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots,
                     const std::optional<CVector>& jam, const AntennaAssignment& assignment);

// Gradient of the batch-mean loss with respect to the phases of layer (1-based).
RVector layer_gradient(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots,
                       const std::optional<CVector>& jam, const AntennaAssignment& assignment, int layer);

double lr_schedule(int t, double eta0, double beta);

void validate(const TrainConfig& cfg);

TrainResult train(const ChannelSet& ch, const CMatrix& pilots, const TrainConfig& cfg, const PhaseBook& pb0,
                  const AntennaAssignment& assignment, const std::optional<CVector>& jam = {},
                  const std::optional<CMatrix>& noise = {});

struct ComplexityEstimate {
    double per_layer_flops = 0.0;
    double per_episode_flops = 0.0;
};

// Real-flop count of the slot-batched gradient kernel; propagation through W is excluded.
ComplexityEstimate complexity_probe(int atoms, int users, int layers, int pilots, bool jammer = false);

}  // namespace simlearn
