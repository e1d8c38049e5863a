// SPDX-License-Identifier: Apache-2.0
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace simlearn;
using namespace simlearn::test;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(Qpsk, GrayMappingRoundTrip)
{
    EXPECT_EQ(qpsk_modulate({0, 0}), cplx(kInvSqrt2, kInvSqrt2));
    EXPECT_EQ(qpsk_modulate({1, 1}), cplx(-kInvSqrt2, -kInvSqrt2));
    for (std::uint8_t b0 = 0; b0 < 2; ++b0)
        for (std::uint8_t b1 = 0; b1 < 2; ++b1) {
            const Bits2 bits{b0, b1};
            EXPECT_EQ(qpsk_demodulate(qpsk_modulate(bits)), bits);
            EXPECT_NEAR(std::norm(qpsk_modulate(bits)), 1.0, 1e-15);
        }
    for (std::uint8_t l = 0; l < 4; ++l) EXPECT_EQ(qpsk_label(qpsk_symbol(l)), l);
}

TEST(Qpsk, SignRuleAndTies)
{
    EXPECT_EQ(qpsk_demodulate(cplx(3, -2)), (Bits2{0, 1}));
    EXPECT_EQ(qpsk_demodulate(cplx(0.0, 0.0)), (Bits2{0, 0}));
    EXPECT_EQ(qpsk_demodulate(cplx(-0.0, -1.0)), (Bits2{0, 1}));
    for (std::uint8_t l = 0; l < 4; ++l) {
        const Bits2 a = qpsk_demodulate(qpsk_symbol(l));
        const Bits2 b = qpsk_demodulate(-qpsk_symbol(l));
        EXPECT_NE(a[0], b[0]);
        EXPECT_NE(a[1], b[1]);
    }
}

TEST(GenFrame, DeterministicUnitPower)
{
    const SymbolFrame a = gen_frame(3, 50, 21);
    const SymbolFrame b = gen_frame(3, 50, 21);
    EXPECT_TRUE(a.symbols == b.symbols);
    EXPECT_TRUE(a.labels == b.labels);
    for (int i = 0; i < a.symbols.size(); ++i) {
        EXPECT_NEAR(std::norm(a.symbols(i)), 1.0, 1e-15);
        EXPECT_EQ(qpsk_label(a.symbols(i)), a.labels(i));
    }
    EXPECT_FALSE(gen_frame(3, 50, 22).symbols == a.symbols);
    EXPECT_THROW(gen_frame(0, 5, 1), RuntimeError);
}

TEST(GenFrame, EmpiricalMeanVanishes)
{
    const SymbolFrame f = gen_frame(1, 1000000, 23);
    EXPECT_LT(std::abs(f.symbols.mean()), 0.005);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < f.labels.size(); ++i) ++counts[f.labels(i)];
    for (int c : counts) EXPECT_NEAR(c / 1e6, 0.25, 0.003);
}

TEST(Awgn, ZeroVarianceAndStatistics)
{
    EXPECT_TRUE(awgn(4, 3, 0.0, 1).isZero(0.0));
    EXPECT_THROW(awgn(2, 2, -1.0, 1), RuntimeError);
    const double var = 0.37;
    const CMatrix n = awgn(1000, 1000, var, 24);
    EXPECT_TRUE(n == awgn(1000, 1000, var, 24));
    const double total = n.cwiseAbs2().mean();
    const double re = n.real().array().square().mean();
    const double im = n.imag().array().square().mean();
    EXPECT_NEAR(total / var, 1.0, 0.01);
    EXPECT_NEAR(re / (0.5 * var), 1.0, 0.02);
    EXPECT_NEAR(im / (0.5 * var), 1.0, 0.02);
    EXPECT_LT(std::abs(n.mean()), 0.002);
}

TEST(JammerWaveform, ZeroPowerIsSilent)
{
    const JammerWaveform w = jammer_waveform(16, {0.0, 0.0}, 3);
    EXPECT_TRUE(w.samples.isZero(0.0));
    EXPECT_THROW(jammer_waveform(4, {1.0, 0.5}, 3), RuntimeError);
}

TEST(JammerWaveform, UnitAmplitudeHasBaseVariance)
{
    const JammerWaveform w = jammer_waveform(1000000, {1.0, 1.0}, 25);
    EXPECT_NEAR(w.samples.cwiseAbs2().mean() / 0.5, 1.0, 0.01);
    EXPECT_TRUE(w.samples == jammer_waveform(1000000, {1.0, 1.0}, 25).samples);
}

TEST(JammerWaveform, AmplitudeWithinPowerRange)
{
    const JammerWaveform w = jammer_waveform(100000, {0.5, 1.5}, 26);
    EXPECT_GE(w.amplitude.minCoeff(), std::sqrt(0.5));
    EXPECT_LE(w.amplitude.maxCoeff(), std::sqrt(1.5));
    // mean power is the midpoint times the base variance
    EXPECT_NEAR(w.samples.cwiseAbs2().mean(), 0.5, 0.01);
    EXPECT_NEAR(w.amplitude.array().square().mean(), 1.0, 0.01);
}

TEST(SnrToNoiseVariance, Definitions)
{
    const CMatrix eye = CMatrix::Identity(3, 3);
    EXPECT_DOUBLE_EQ(snr_to_noise_variance(0.0, eye), 1.0);
    for (double snr : {-5.0, 3.0, 17.0}) EXPECT_NEAR(snr_to_noise_variance(snr, eye), std::pow(10.0, -snr / 10), 1e-15);
    CMatrix d(2, 2);
    d << cplx(1, 1), 5.0, 0.3, cplx(0, -2);
    EXPECT_NEAR(snr_to_noise_variance(0.0, d), 3.0, 1e-15);
    EXPECT_NEAR(snr_to_noise_variance(10.0, d), 0.3, 1e-15);
    EXPECT_THROW(snr_to_noise_variance(0.0, CMatrix::Zero(2, 2)), RuntimeError);
}

TEST(SnrToNoiseVariance, ChannelOverloadUsesSelectedDiagonal)
{
    const Toy t = make_toy(2, 3, 3, 2, 4, 1, 27);
    const CMatrix sel = equivalent_channel(t.ch, t.pb, t.assignment).selected;
    const double p = 0.5 * (std::norm(sel(0, 0)) + std::norm(sel(1, 1)));
    EXPECT_NEAR(snr_to_noise_variance(6.0, t.ch, t.pb, t.assignment) / (p / std::pow(10.0, 0.6)), 1.0, 1e-12);
}

TEST(Ser, Examples)
{
    const SymbolFrame f = gen_frame(4, 1000, 28);
    EXPECT_EQ(ser(f.symbols, f.labels), 0.0);
    EXPECT_EQ(ser(-f.symbols, f.labels), 1.0);
    EXPECT_EQ(ser(cplx(0.2, 0.0) * f.symbols, f.labels), 0.0);
    const CMatrix noise = awgn(4, 25000, 1.0, 29);
    EXPECT_NEAR(ser(noise, f.labels.replicate(1, 25)), 0.75, 0.01);
    EXPECT_THROW(ser(f.symbols.leftCols(3), f.labels), RuntimeError);
}

TEST(Ser, CountsEitherBitWrong)
{
    LabelMatrix labels(1, 3);
    labels << 0, 0, 0;
    CMatrix r(1, 3);
    r << cplx(1, 1), cplx(-1, 1), cplx(1, -1);
    EXPECT_NEAR(ser(r, labels), 2.0 / 3.0, 1e-15);
}

TEST(ConstellationMse, Examples)
{
    const CMatrix ideal = gen_frame(2, 10, 30).symbols;
    EXPECT_EQ(constellation_mse(ideal, ideal), 0.0);
    EXPECT_NEAR(constellation_mse(ideal.array() + 0.1, ideal), 0.01, 1e-15);
    CMatrix r(2, 2), s(2, 2);
    s << 1.0, cplx(0, 1), -1.0, cplx(0, -1);
    r << 1.5, cplx(0, 1), cplx(-1, 0.2), cplx(0.3, -1);
    EXPECT_NEAR(constellation_mse(r, s), (0.25 + 0.0 + 0.04 + 0.09) / 4.0, 1e-15);
}

TEST(NormalizeSlots, ColumnsHaveNormSqrtK)
{
    const CMatrix r = awgn(3, 7, 2.0, 31);
    const CMatrix n = normalize_slots(r);
    for (int u = 0; u < 7; ++u) {
        EXPECT_NEAR(n.col(u).norm(), std::sqrt(3.0), 1e-14);
        EXPECT_NEAR(std::abs(n.col(u).dot(r.col(u))), n.col(u).norm() * r.col(u).norm(), 1e-12);
    }
    EXPECT_THROW(normalize_slots(CMatrix::Zero(2, 1)), RuntimeError);
}

TEST(SinrSumRate, Examples)
{
    const LinkBudget a = sinr_and_sumrate(CMatrix::Identity(3, 3), std::nullopt, 1.0, 0.0);
    for (double s : a.sinr) EXPECT_DOUBLE_EQ(s, 1.0);
    EXPECT_DOUBLE_EQ(a.sum_rate, 3.0);

    const CMatrix single = CMatrix::Constant(1, 1, std::sqrt(10.0));
    const LinkBudget b = sinr_and_sumrate(single, std::nullopt, 1.0, 0.0);
    EXPECT_NEAR(b.sinr[0], 10.0, 1e-14);
    EXPECT_NEAR(b.sum_rate, 3.4594, 1e-4);
    EXPECT_NEAR(sinr_and_sumrate(single, std::nullopt, 2.0, 0.0).sinr[0], 5.0, 1e-14);
    EXPECT_THROW(sinr_and_sumrate(CMatrix::Identity(2, 2), std::nullopt, 0.0, 0.0), RuntimeError);
}

TEST(SinrSumRate, HandComputedWithJammer)
{
    CMatrix d(2, 2);
    d << 2.0, cplx(0, 0.5), 0.3, cplx(1, 1);
    CVector j(2);
    j << cplx(0.1, 0), cplx(0, 0.4);
    const LinkBudget b = sinr_and_sumrate(d, j, 0.2, 2.0);
    const double s0 = 4.0 / (0.25 + 2.0 * 0.01 + 0.2);
    const double s1 = 2.0 / (0.09 + 2.0 * 0.16 + 0.2);
    EXPECT_NEAR(b.sinr[0], s0, 1e-13);
    EXPECT_NEAR(b.sinr[1], s1, 1e-13);
    EXPECT_NEAR(b.sum_rate, std::log2(1 + s0) + std::log2(1 + s1), 1e-13);
}

TEST(SinrSumRate, InvariantToRowPhaseRotation)
{
    const CMatrix d = awgn(4, 4, 1.0, 32);
    const CVector j = awgn(4, 1, 1.0, 33).col(0);
    CVector rot(4);
    for (int i = 0; i < 4; ++i) rot(i) = std::polar(1.0, 0.7 * i + 0.3);
    const LinkBudget a = sinr_and_sumrate(d, j, 0.1, 0.5);
    const LinkBudget b = sinr_and_sumrate(rot.asDiagonal() * d, CVector(rot.asDiagonal() * j), 0.1, 0.5);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.sinr[i], b.sinr[i], 1e-12 * a.sinr[i]);
}
