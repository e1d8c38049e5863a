// SPDX-License-Identifier: Apache-2.0
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace simlearn;
using namespace simlearn::test;

namespace {

// Mean slot loss through the per-symbol forward model; shares no code with batch_loss.
double oracle_mean_loss(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots,
                        const std::optional<CVector>& jam, const AntennaAssignment& a)
{
    double sum = 0.0;
    for (int u = 0; u < pilots.cols(); ++u) {
        std::optional<cplx> j;
        if (jam) j = (*jam)(u);
        const CVector y = forward(ch, pb, pilots.col(u), j);
        CVector r(a.users());
        for (int k = 0; k < a.users(); ++k) r(k) = y(a.antenna_of_user[k]);
        sum += loss(r, pilots.col(u));
    }
    return sum / static_cast<double>(pilots.cols());
}

RVector finite_difference(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots,
                          const std::optional<CVector>& jam, const AntennaAssignment& a, int layer, double h)
{
    RVector g(pb.atoms());
    for (int n = 0; n < pb.atoms(); ++n) {
        RMatrix plus = pb.matrix(), minus = pb.matrix();
        plus(layer - 1, n) += h;
        minus(layer - 1, n) -= h;
        g(n) = (oracle_mean_loss(ch, PhaseBook(plus), pilots, jam, a) -
                oracle_mean_loss(ch, PhaseBook(minus), pilots, jam, a)) /
               (2.0 * h);
    }
    return g;
}

double max_rel_err(const RVector& analytic, const RVector& fd)
{
    const double floor = 1e-3 * fd.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int i = 0; i < fd.size(); ++i)
        worst = std::max(worst, std::abs(analytic(i) - fd(i)) / std::max(std::abs(fd(i)), floor));
    return worst;
}

ChannelSet identity_channels(int k)
{
    ChannelSet ch;
    ch.users = CMatrix::Identity(k, k);
    ch.to_bs = CMatrix::Identity(k, k);
    return ch;
}

AntennaAssignment identity_assignment(int k)
{
    AntennaAssignment a;
    for (int i = 0; i < k; ++i) a.antenna_of_user.push_back(i);
    return a;
}

}  // namespace

TEST(Loss, SpecialDirections)
{
    CVector s(2);
    s << cplx(1, 1), cplx(-0.5, 2);
    EXPECT_NEAR(loss(s, s), 0.0, 1e-15);
    EXPECT_NEAR(loss(-s, s), 4.0, 1e-15);
    CVector o(2);
    o << cplx(2, -0.5), cplx(-1, -1);
    o = o - (s.dot(o) / s.squaredNorm()) * s;
    EXPECT_NEAR(loss(o, s), 2.0, 1e-14);
    EXPECT_THROW(loss(CVector::Zero(2), s), RuntimeError);
    EXPECT_THROW(loss(s, CVector::Zero(2)), RuntimeError);
}

TEST(Loss, ScaleInvariantAndBounded)
{
    for (int i = 0; i < 200; ++i) {
        const CVector r = awgn(3, 1, 1.0, derive_seed(1, "r", i)).col(0);
        const CVector s = awgn(3, 1, 1.0, derive_seed(1, "s", i)).col(0);
        const double l = loss(r, s);
        EXPECT_GE(l, 0.0);
        EXPECT_LE(l, 4.0);
        EXPECT_NEAR(loss(7.5 * r, s), l, 1e-13);
        EXPECT_NEAR(loss(r, 0.01 * s), l, 1e-13);
    }
}

TEST(BatchLoss, SingleSlotHasZeroSpread)
{
    const Toy t = make_toy(2, 3, 3, 2, 4, 1, 2);
    EXPECT_EQ(batch_loss(t.ch, t.pb, t.pilots, {}, t.assignment).std, 0.0);
}

TEST(BatchLoss, OrthogonalChannelHasZeroLoss)
{
    const ChannelSet ch = identity_channels(3);
    const CMatrix pilots = gen_frame(3, 16, 5).symbols;
    const LossStats s = batch_loss(ch, PhaseBook(1, 3), pilots, {}, identity_assignment(3));
    EXPECT_NEAR(s.mean, 0.0, 1e-15);
    EXPECT_NEAR(s.std, 0.0, 1e-15);
}

TEST(BatchLoss, MatchesPerSlotOracle)
{
    const Toy t = make_toy(3, 3, 3, 2, 4, 24, 3, true);
    const CVector jam = awgn(24, 1, 0.5, 4).col(0);
    EXPECT_NEAR(batch_loss(t.ch, t.pb, t.pilots, {}, t.assignment).mean,
                oracle_mean_loss(t.ch, t.pb, t.pilots, {}, t.assignment), 1e-12);
    EXPECT_NEAR(batch_loss(t.ch, t.pb, t.pilots, jam, t.assignment).mean,
                oracle_mean_loss(t.ch, t.pb, t.pilots, jam, t.assignment), 1e-12);
    EXPECT_THROW(batch_loss(t.ch, t.pb, t.pilots.leftCols(3), jam, t.assignment), RuntimeError);
}

TEST(LayerGradient, ScalarSystemAgreesWithFiniteDifference)
{
    ChannelSet ch;
    ch.users = CMatrix::Constant(1, 1, cplx(0.4, -0.9));
    ch.to_bs = CMatrix::Constant(1, 1, cplx(-0.3, 0.2));
    // a scalar loss is phase-dependent only through the received direction
    const CMatrix pilots = gen_frame(1, 1, 7).symbols;
    const AntennaAssignment a = identity_assignment(1);
    for (double phi : {0.0, 0.7, 2.9, 5.5}) {
        PhaseBook pb(1, 1);
        pb.set(1, 0, phi);
        const RVector g = layer_gradient(ch, pb, pilots, {}, a, 1);
        const RVector fd = finite_difference(ch, pb, pilots, {}, a, 1, 1e-5);
        EXPECT_NEAR(g(0), fd(0), 1e-6);
    }
}

TEST(LayerGradient, VanishesAtExactMinimum)
{
    const ChannelSet ch = identity_channels(2);
    const CMatrix pilots = gen_frame(2, 8, 6).symbols;
    const RVector g = layer_gradient(ch, PhaseBook(1, 2), pilots, {}, identity_assignment(2), 1);
    EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(LayerGradient, RandomInstanceAgreesWithFiniteDifference)
{
    const Toy t = make_toy(2, 4, 2, 2, 3, 16, 8);
    for (int l = 1; l <= 2; ++l) {
        const RVector g = layer_gradient(t.ch, t.pb, t.pilots, {}, t.assignment, l);
        const RVector fd = finite_difference(t.ch, t.pb, t.pilots, {}, t.assignment, l, 1e-5);
        EXPECT_LT(max_rel_err(g, fd), 1e-4) << "layer " << l;
    }
}

TEST(LayerGradient, JammedInstanceAgreesWithFiniteDifference)
{
    const Toy t = make_toy(3, 3, 3, 3, 5, 12, 9, true);
    const CVector jam = awgn(12, 1, 0.5, 10).col(0);
    for (int l = 1; l <= 3; ++l) {
        const RVector g = layer_gradient(t.ch, t.pb, t.pilots, jam, t.assignment, l);
        const RVector fd = finite_difference(t.ch, t.pb, t.pilots, jam, t.assignment, l, 1e-5);
        EXPECT_LT(max_rel_err(g, fd), 1e-4) << "layer " << l;
    }
}

TEST(LayerGradient, FftPathAgreesWithFiniteDifference)
{
    const Toy t = make_toy(2, 8, 6, 2, 4, 8, 11);
    ASSERT_TRUE(t.ch.inter_layer[0].fast());
    const RVector g = layer_gradient(t.ch, t.pb, t.pilots, {}, t.assignment, 1);
    const RVector fd = finite_difference(t.ch, t.pb, t.pilots, {}, t.assignment, 1, 1e-5);
    EXPECT_LT(max_rel_err(g, fd), 1e-4);
    EXPECT_THROW(layer_gradient(t.ch, t.pb, t.pilots, {}, t.assignment, 3), RuntimeError);
}

TEST(LrSchedule, Values)
{
    EXPECT_EQ(lr_schedule(1, 0.8, 0.99), 0.8);
    EXPECT_NEAR(lr_schedule(2, 0.8, 0.99), 0.792, 1e-15);
    EXPECT_NEAR(lr_schedule(101, 0.8, 0.97), 0.8 * std::pow(0.97, 100), 1e-15);
    EXPECT_THROW(lr_schedule(0, 0.8, 0.99), RuntimeError);
}

TEST(TrainConfig, Validation)
{
    TrainConfig c;
    EXPECT_NO_THROW(validate(c));
    c.eta0 = 0.0;
    EXPECT_THROW(validate(c), ConfigError);
    c = {};
    c.beta = 1.5;
    EXPECT_THROW(validate(c), ConfigError);
    c = {};
    c.beta = 1.0;
    EXPECT_NO_THROW(validate(c));
    c.episodes = -1;
    EXPECT_THROW(validate(c), ConfigError);
    c = {};
    c.pilots = 0;
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Train, ZeroEpisodesReturnsInitialPhases)
{
    const Toy t = make_toy(2, 3, 3, 2, 4, 8, 12);
    TrainConfig c;
    c.episodes = 0;
    const TrainResult r = train(t.ch, t.pilots, c, t.pb, t.assignment);
    EXPECT_TRUE(r.phases == t.pb);
    EXPECT_TRUE(r.record.loss_mean.empty());
    EXPECT_EQ(r.record.episodes_run, 0);
}

TEST(Train, InfiniteToleranceStopsAtSecondEpisode)
{
    const Toy t = make_toy(2, 3, 3, 2, 4, 8, 13);
    TrainConfig c;
    c.tolerance = std::numeric_limits<double>::infinity();
    const TrainResult r = train(t.ch, t.pilots, c, t.pb, t.assignment);
    EXPECT_EQ(r.record.episodes_run, 2);
    EXPECT_EQ(r.record.termination, Termination::loss_delta_below_tolerance);
    EXPECT_EQ(r.record.loss_mean.size(), 2u);
    EXPECT_EQ(r.record.eta.size(), 2u);
}

TEST(Train, ReferenceRunConverges)
{
    const Toy t = make_toy(3, 4, 4, 2, 4, 32, 14);
    TrainConfig c;
    c.eta0 = 0.5;
    c.beta = 0.99;
    c.episodes = 200;
    c.pilots = 32;
    const TrainResult r = train(t.ch, t.pilots, c, t.pb, t.assignment);
    const double final_loss = r.record.loss_mean.back();
    EXPECT_LT(final_loss, 1e-2);
    EXPECT_LT(final_loss, r.record.initial_loss_mean / 10.0);
    EXPECT_EQ(r.record.loss_std.size(), static_cast<size_t>(r.record.episodes_run));
    EXPECT_NEAR(final_loss, batch_loss(t.ch, r.phases, t.pilots, {}, t.assignment).mean, 1e-12);
    for (int l = 1; l <= 3; ++l)
        for (int n = 0; n < 16; ++n) {
            EXPECT_GE(r.phases.at(l, n), 0.0);
            EXPECT_LT(r.phases.at(l, n), kTwoPi);
        }
}

TEST(Train, DeterministicOnRepeat)
{
    const Toy t = make_toy(3, 8, 8, 3, 6, 16, 15, true);
    const CVector jam = awgn(16, 1, 0.5, 16).col(0);
    TrainConfig c;
    c.episodes = 20;
    const TrainResult a = train(t.ch, t.pilots, c, t.pb, t.assignment, jam);
    const TrainResult b = train(t.ch, t.pilots, c, t.pb, t.assignment, jam);
    EXPECT_TRUE(a.phases == b.phases);
    EXPECT_EQ(a.record.loss_mean, b.record.loss_mean);
}

TEST(Train, EpisodeUpdatesLayersSequentially)
{
    const Toy t = make_toy(3, 3, 3, 2, 4, 8, 17);
    TrainConfig c;
    c.episodes = 1;
    c.eta0 = 0.3;
    const TrainResult r = train(t.ch, t.pilots, c, t.pb, t.assignment);
    PhaseBook manual = t.pb;
    for (int l = 1; l <= 3; ++l)
        manual.set_layer(l, manual.layer(l) - 0.3 * layer_gradient(t.ch, manual, t.pilots, {}, t.assignment, l));
    EXPECT_LT((r.phases.matrix() - manual.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Train, PilotNoiseEntersLoss)
{
    const Toy t = make_toy(2, 3, 3, 2, 4, 8, 18);
    TrainConfig c;
    c.episodes = 3;
    const CMatrix zero = CMatrix::Zero(2, 8);
    const TrainResult clean = train(t.ch, t.pilots, c, t.pb, t.assignment);
    const TrainResult silent = train(t.ch, t.pilots, c, t.pb, t.assignment, {}, zero);
    EXPECT_TRUE(clean.phases == silent.phases);
    const TrainResult noisy = train(t.ch, t.pilots, c, t.pb, t.assignment, {}, awgn(2, 8, 1e-3, 19));
    EXPECT_FALSE(clean.phases == noisy.phases);
    EXPECT_THROW(train(t.ch, t.pilots, c, t.pb, t.assignment, {}, CMatrix::Zero(2, 7)), RuntimeError);
}

TEST(ComplexityProbe, LinearInAtomsAndPilots)
{
    const ComplexityEstimate base = complexity_probe(64, 4, 5, 64);
    EXPECT_DOUBLE_EQ(complexity_probe(128, 4, 5, 64).per_layer_flops, 2.0 * base.per_layer_flops);
    EXPECT_DOUBLE_EQ(complexity_probe(64, 4, 5, 128).per_layer_flops, 2.0 * base.per_layer_flops);
    EXPECT_DOUBLE_EQ(base.per_episode_flops, 5.0 * base.per_layer_flops);
    EXPECT_GT(complexity_probe(64, 4, 5, 64, true).per_layer_flops, base.per_layer_flops);
}
