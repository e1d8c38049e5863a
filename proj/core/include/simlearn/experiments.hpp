// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/diagonality.hpp"
#include "simlearn/impairments.hpp"
#include "simlearn/training.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace simlearn {

struct UserRegion {
    int count = 4;
    std::array<double, 2> azimuth_deg{-60.0, 60.0};
    std::array<double, 2> elevation_deg{-30.0, 30.0};
    std::array<double, 2> distance_m{20.0, 60.0};
    double rician_factor = 1.0;
    double pathloss_exponent = 2.2;
    double reference_gain_db = -30.0;

    bool operator==(const UserRegion&) const = default;
};

enum class JammingMode { none, aware, agnostic };

struct JammingConfig {
    JammingMode mode = JammingMode::none;
    double jsr_db = 0.0;
    std::array<double, 2> power_spread{0.5, 1.5};  // per-slot power range relative to nominal

    bool operator==(const JammingConfig&) const = default;
};

struct EvaluationConfig {
    std::vector<double> snr_db{0.0, 5.0, 10.0, 15.0, 20.0};
    int realizations = 8;
    int payload_slots = 4096;
    int constellation_slots = 256;

    bool operator==(const EvaluationConfig&) const = default;
};

struct Scenario {
    GeometryParams geometry;
    UserRegion users;
    TrainConfig training;
    std::optional<double> training_snr_db;  // receiver noise on pilots, off when absent
    JammingConfig jamming;
    ImpairmentConfig impairments;
    EvaluationConfig evaluation;
    std::uint64_t seed = 1;
    int jobs = 1;

    bool operator==(const Scenario&) const = default;
};

void validate(const Scenario& sc);

// One channel draw with its frozen assignment and (after training) its phases.
struct Realization {
    int index = 0;
    SimGeometry geometry;
    UserLayout layout;
    std::optional<Emitter> jammer;
    double jammer_nominal_power = 0.0;
    ChannelSet channels;
    AntennaAssignment assignment;
    PhaseBook initial;
    PhaseBook trained;
    TrainRecord record;
};

Realization prepare_realization(const Scenario& sc, int index);
void train_realization(const Scenario& sc, Realization& rz);

struct ConstellationPoint {
    int slot = 0;
    int user = 0;
    cplx received;
    cplx ideal;
};

struct SnrMetrics {
    double snr_db = 0.0;
    double ser = 0.0;
    double sum_rate = 0.0;
    double mse = 0.0;
};

struct RealizationSummary {
    int index = 0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int episodes = 0;
    Termination termination = Termination::max_episodes;
    std::vector<double> loss_trace;
    double noise_free_mse = 0.0;
    std::vector<DiagonalityMetrics> layers;  // cumulative channel after each layer
    std::vector<SnrMetrics> metrics;
};

struct CurveStats {
    std::vector<double> mean;
    std::vector<double> std;
};

struct ExperimentReport {
    std::string label;
    int realizations = 0;
    std::vector<RealizationSummary> per_realization;
    CurveStats convergence;           // loss over episodes, index 0 = before training
    std::vector<double> eta;          // learning rate per episode
    std::vector<SnrMetrics> metrics;  // realization means
    std::vector<SnrMetrics> metrics_std;
    std::vector<DiagonalityMetrics> layers;  // powers averaged across realizations
    double noise_free_mse = 0.0;
    std::vector<ConstellationPoint> constellation;  // first realization
};

ExperimentReport run_multiuser(const Scenario& sc);
ExperimentReport run_jamming(const Scenario& sc);

enum class SweepAxis { atoms, quant_bits, eta0, beta, phase_noise, coupling };
SweepAxis parse_sweep_axis(const std::string& name);
std::string to_string(SweepAxis axis);

std::vector<ExperimentReport> run_sweep(const Scenario& sc, SweepAxis axis, const std::vector<double>& values);

// Elementwise mean and population standard deviation, reduced in index order.
CurveStats monte_carlo_aggregate(const std::vector<std::vector<double>>& per_realization);

// Aggregates linear powers across realizations and recomputes the dB figures.
DiagonalityMetrics average_diagonality(const std::vector<DiagonalityMetrics>& items);

// Noise-free constellation of a trained realization with per-slot, per-user
// distance scale factors drawn uniformly from scale_range.
std::vector<ConstellationPoint> distance_robustness(const Scenario& sc, const Realization& rz,
                                                    std::array<double, 2> scale_range, int slots);

}  // namespace simlearn
