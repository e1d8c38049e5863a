// SPDX-License-Identifier: Apache-2.0
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace simlearn;
using namespace simlearn::test;

namespace {

Scenario small_scenario()
{
    Scenario sc;
    sc.geometry = toy_params(2, 4, 4, 4);
    sc.users.count = 2;
    sc.training.episodes = 30;
    sc.training.pilots = 32;
    sc.evaluation.realizations = 2;
    sc.evaluation.payload_slots = 256;
    sc.evaluation.constellation_slots = 8;
    sc.evaluation.snr_db = {0.0, 10.0};
    sc.seed = 77;
    return sc;
}

void expect_same_report(const ExperimentReport& a, const ExperimentReport& b)
{
    ASSERT_EQ(a.per_realization.size(), b.per_realization.size());
    EXPECT_EQ(a.convergence.mean, b.convergence.mean);
    EXPECT_EQ(a.noise_free_mse, b.noise_free_mse);
    ASSERT_EQ(a.metrics.size(), b.metrics.size());
    for (size_t p = 0; p < a.metrics.size(); ++p) {
        EXPECT_EQ(a.metrics[p].ser, b.metrics[p].ser);
        EXPECT_EQ(a.metrics[p].sum_rate, b.metrics[p].sum_rate);
        EXPECT_EQ(a.metrics[p].mse, b.metrics[p].mse);
    }
}

}  // namespace

TEST(MonteCarloAggregate, Examples)
{
    const CurveStats same = monte_carlo_aggregate({{0.4, 2.0}, {0.4, 2.0}, {0.4, 2.0}});
    EXPECT_EQ(same.mean, (std::vector<double>{0.4, 2.0}));
    EXPECT_EQ(same.std, (std::vector<double>{0.0, 0.0}));
    const CurveStats two = monte_carlo_aggregate({{0.1}, {0.3}});
    EXPECT_NEAR(two.mean[0], 0.2, 1e-15);
    EXPECT_NEAR(two.std[0], 0.1, 1e-15);
    EXPECT_EQ(monte_carlo_aggregate({{5.0, -1.0}}).std, (std::vector<double>{0.0, 0.0}));
    EXPECT_THROW(monte_carlo_aggregate({{1.0}, {1.0, 2.0}}), RuntimeError);
    EXPECT_THROW(monte_carlo_aggregate({}), RuntimeError);
}

TEST(AverageDiagonality, PowersAveragedDbRecomputed)
{
    DiagonalityMetrics a, b;
    a.avg_diag_power = 0.2;
    a.avg_offdiag_power = 0.02;
    a.diag_variance = 1e-3;
    b.avg_diag_power = 0.4;
    b.avg_offdiag_power = 0.0;
    b.diag_variance = 3e-3;
    const DiagonalityMetrics m = average_diagonality({a, b});
    EXPECT_NEAR(m.avg_diag_power, 0.3, 1e-15);
    EXPECT_NEAR(m.avg_offdiag_power, 0.01, 1e-15);
    EXPECT_NEAR(m.offdiag_suppression_db, 10.0 * std::log10(30.0), 1e-12);
    EXPECT_NEAR(m.diag_variance_db, 10.0 * std::log10(2e-3), 1e-12);
}

TEST(Scenario, Validation)
{
    Scenario sc = small_scenario();
    EXPECT_NO_THROW(validate(sc));
    sc.users.count = 5;
    EXPECT_THROW(validate(sc), ConfigError);
    sc = small_scenario();
    sc.evaluation.realizations = 0;
    EXPECT_THROW(validate(sc), ConfigError);
    sc = small_scenario();
    sc.impairments.coupling_alpha = 1.0;
    EXPECT_THROW(validate(sc), ConfigError);
    sc = small_scenario();
    EXPECT_THROW(run_jamming(sc), ConfigError);
    sc.jamming.mode = JammingMode::aware;
    EXPECT_THROW(run_multiuser(sc), ConfigError);
}

TEST(Realization, DependsOnlyOnMasterSeedAndIndex)
{
    Scenario sc = small_scenario();
    const Realization a = prepare_realization(sc, 3);
    sc.evaluation.realizations = 9;
    sc.evaluation.snr_db = {1.0};
    sc.training.episodes = 2;
    const Realization b = prepare_realization(sc, 3);
    EXPECT_TRUE(a.channels.users == b.channels.users);
    EXPECT_TRUE(a.initial == b.initial);
    EXPECT_FALSE(prepare_realization(sc, 4).channels.users == a.channels.users);
    sc.seed = 78;
    EXPECT_FALSE(prepare_realization(sc, 3).channels.users == a.channels.users);
}

TEST(Realization, LayoutStaysInRegion)
{
    Scenario sc = small_scenario();
    sc.users.count = 4;
    sc.geometry.bs_antennas = 6;
    for (int i = 0; i < 10; ++i) {
        const Realization rz = prepare_realization(sc, i);
        ASSERT_EQ(rz.layout.count(), 4);
        for (const Emitter& e : rz.layout.users) {
            EXPECT_GE(e.azimuth, -kPi / 3 - 1e-12);
            EXPECT_LE(e.azimuth, kPi / 3 + 1e-12);
            EXPECT_GE(e.distance, 20.0);
            EXPECT_LE(e.distance, 60.0);
        }
        EXPECT_FALSE(rz.jammer.has_value());
    }
}

TEST(RunMultiuser, ReportShape)
{
    const Scenario sc = small_scenario();
    const ExperimentReport rep = run_multiuser(sc);
    EXPECT_EQ(rep.realizations, 2);
    EXPECT_EQ(rep.convergence.mean.size(), 31u);
    EXPECT_EQ(rep.eta.size(), 30u);
    EXPECT_EQ(rep.metrics.size(), 2u);
    EXPECT_EQ(rep.layers.size(), 2u);
    EXPECT_EQ(rep.constellation.size(), 16u);
    EXPECT_LT(rep.convergence.mean.back(), rep.convergence.mean.front());
    EXPECT_LE(rep.metrics[1].ser, rep.metrics[0].ser);
    for (const auto& m : rep.metrics) {
        EXPECT_GE(m.ser, 0.0);
        EXPECT_LE(m.ser, 1.0);
        EXPECT_GE(m.sum_rate, 0.0);
    }
}

TEST(RunMultiuser, DeterministicAndJobCountIndependent)
{
    Scenario sc = small_scenario();
    const ExperimentReport a = run_multiuser(sc);
    sc.jobs = 2;
    expect_same_report(a, run_multiuser(sc));
}

TEST(RunMultiuser, EmptySnrGridGivesTrainingOutputsOnly)
{
    Scenario sc = small_scenario();
    sc.evaluation.realizations = 1;
    sc.evaluation.payload_slots = 1;
    sc.evaluation.snr_db.clear();
    const ExperimentReport rep = run_multiuser(sc);
    EXPECT_TRUE(rep.metrics.empty());
    EXPECT_EQ(rep.convergence.mean.size(), 31u);
    EXPECT_EQ(rep.realizations, 1);
}

TEST(RunMultiuser, ReferenceRunSeparatesUsers)
{
    Scenario sc;
    sc.users.count = 4;
    sc.evaluation.realizations = 4;
    sc.evaluation.payload_slots = 1024;
    sc.evaluation.snr_db = {10.0};
    sc.training.tolerance = 0.0;
    const ExperimentReport rep = run_multiuser(sc);
    int good = 0;
    for (const auto& r : rep.per_realization) good += r.noise_free_mse < 1e-3 ? 1 : 0;
    EXPECT_GE(good, 3);
}

TEST(RunMultiuser, StackedLayersBeatSingleLayer)
{
    Scenario sc;
    sc.users.count = 4;
    sc.evaluation.realizations = 4;
    sc.evaluation.payload_slots = 256;
    sc.evaluation.snr_db = {};
    sc.training.tolerance = 0.0;
    const double deep = run_multiuser(sc).layers.back().offdiag_suppression_db;
    sc.geometry.layers = 1;
    const double ris = run_multiuser(sc).layers.back().offdiag_suppression_db;
    EXPECT_GE(deep - ris, 10.0) << "deep " << deep << " dB, single " << ris << " dB";
}

TEST(RunJamming, SilentJammerMakesModesAgree)
{
    Scenario sc = small_scenario();
    sc.jamming.power_spread = {0.0, 0.0};
    sc.jamming.mode = JammingMode::aware;
    const ExperimentReport aware = run_jamming(sc);
    sc.jamming.mode = JammingMode::agnostic;
    const ExperimentReport agnostic = run_jamming(sc);
    for (size_t p = 0; p < aware.metrics.size(); ++p) {
        EXPECT_NEAR(aware.metrics[p].ser, agnostic.metrics[p].ser, 1e-12);
        EXPECT_NEAR(aware.metrics[p].sum_rate, agnostic.metrics[p].sum_rate, 1e-9);
    }
    EXPECT_NEAR(aware.noise_free_mse, agnostic.noise_free_mse, 1e-9);
}

TEST(RunJamming, AwareTrainingResistsJammer)
{
    Scenario sc = small_scenario();
    sc.geometry = toy_params(3, 6, 6, 4);
    sc.training.episodes = 200;
    sc.training.tolerance = 0.0;
    sc.evaluation.realizations = 2;
    sc.evaluation.payload_slots = 1024;
    sc.evaluation.snr_db = {20.0};
    sc.jamming.mode = JammingMode::aware;
    const ExperimentReport aware = run_jamming(sc);
    sc.jamming.mode = JammingMode::agnostic;
    const ExperimentReport agnostic = run_jamming(sc);
    EXPECT_LT(aware.metrics[0].ser, agnostic.metrics[0].ser);
    EXPECT_LT(aware.noise_free_mse, agnostic.noise_free_mse);
}

TEST(RunSweep, ArgumentErrors)
{
    const Scenario sc = small_scenario();
    EXPECT_THROW(run_sweep(sc, SweepAxis::eta0, {}), ConfigError);
    EXPECT_THROW(parse_sweep_axis("gamma"), ConfigError);
    EXPECT_THROW(run_sweep(sc, SweepAxis::quant_bits, {2.5}), ConfigError);
    EXPECT_THROW(run_sweep(sc, SweepAxis::atoms, {20.0}), ConfigError);
    for (auto axis : {SweepAxis::atoms, SweepAxis::quant_bits, SweepAxis::eta0, SweepAxis::beta, SweepAxis::phase_noise,
                      SweepAxis::coupling})
        EXPECT_EQ(parse_sweep_axis(to_string(axis)), axis);
}

TEST(RunSweep, ImpairmentAxisSharesTraining)
{
    const Scenario sc = small_scenario();
    const auto reps = run_sweep(sc, SweepAxis::quant_bits, {1.0, 4.0});
    ASSERT_EQ(reps.size(), 2u);
    EXPECT_NE(reps[0].label, reps[1].label);
    EXPECT_EQ(reps[0].convergence.mean, reps[1].convergence.mean);
    EXPECT_GE(reps[0].metrics[1].ser, reps[1].metrics[1].ser);
}

TEST(RunSweep, WidthAxisChangesGrid)
{
    const Scenario sc = small_scenario();
    const auto reps = run_sweep(sc, SweepAxis::atoms, {9.0, 25.0});
    ASSERT_EQ(reps.size(), 2u);
    EXPECT_EQ(reps[1].constellation.size(), reps[0].constellation.size());
    Scenario five = sc;
    five.geometry.nx = 5;
    five.geometry.ny = 5;
    expect_same_report(reps[1], run_multiuser(five));
}

TEST(DistanceRobustness, UnitScaleReproducesNominal)
{
    Scenario sc = small_scenario();
    Realization rz = prepare_realization(sc, 0);
    train_realization(sc, rz);
    const auto pts = distance_robustness(sc, rz, {1.0, 1.0}, 32);
    const EquivalentChannel eq = equivalent_channel(rz.channels, rz.trained, rz.assignment);
    const SymbolFrame f = gen_frame(2, 32, derive_seed(sc.seed, "payload", 0));
    const CMatrix nominal = normalize_slots(eq.selected * f.symbols);
    ASSERT_EQ(pts.size(), 64u);
    for (const auto& p : pts) {
        EXPECT_EQ(p.received, nominal(p.user, p.slot));
        EXPECT_EQ(p.ideal, f.symbols(p.user, p.slot));
    }
    EXPECT_THROW(distance_robustness(sc, rz, {0.0, 1.0}, 4), ConfigError);
    EXPECT_THROW(distance_robustness(sc, rz, {1.5, 0.5}, 4), ConfigError);
}

TEST(DistanceRobustness, CommonScaleCancelsInNormalization)
{
    Scenario sc = small_scenario();
    Realization rz = prepare_realization(sc, 1);
    train_realization(sc, rz);
    const auto a = distance_robustness(sc, rz, {1.0, 1.0}, 16);
    const auto b = distance_robustness(sc, rz, {0.5, 0.5}, 16);
    for (size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i].received - b[i].received), 1e-13);
}

TEST(DistanceRobustness, LosPointsStayOnIdealRays)
{
    Scenario sc = small_scenario();
    sc.users.rician_factor = std::numeric_limits<double>::infinity();
    sc.geometry = toy_params(3, 4, 4, 4);
    sc.training.episodes = 3000;
    sc.training.beta = 1.0;
    sc.training.eta0 = 0.5;
    sc.training.tolerance = 0.0;
    Realization rz = prepare_realization(sc, 0);
    train_realization(sc, rz);
    const auto pts = distance_robustness(sc, rz, {0.5, 1.5}, 256);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(std::arg(p.received / p.ideal)));
    EXPECT_LT(worst, 1e-6) << "final loss " << rz.record.loss_mean.back();
}
