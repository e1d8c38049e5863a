// SPDX-License-Identifier: Apache-2.0
#include "simlearn/metrics.hpp"

#include <cmath>

namespace simlearn {

double signal_power(const CMatrix& selected, double frame_power)
{
    if (selected.rows() != selected.cols() || selected.rows() < 1) throw RuntimeError("signal_power: need square matrix");
    return frame_power * selected.diagonal().cwiseAbs2().mean();
}

double snr_to_noise_variance(double snr_db, const CMatrix& selected, double frame_power)
{
    const double p = signal_power(selected, frame_power);
    if (!(p > 0.0)) throw RuntimeError("snr_to_noise_variance: zero signal power");
    return p / std::pow(10.0, snr_db / 10.0);
}

double snr_to_noise_variance(double snr_db, const ChannelSet& ch, const PhaseBook& pb,
                             const AntennaAssignment& assignment, double frame_power)
{
    return snr_to_noise_variance(snr_db, equivalent_channel(ch, pb, assignment).selected, frame_power);
}

double ser(const CMatrix& received, const LabelMatrix& transmitted)
{
    if (received.rows() != transmitted.rows() || received.cols() != transmitted.cols())
        throw RuntimeError("ser: shape mismatch");
    if (received.size() == 0) throw RuntimeError("ser: empty input");
    Eigen::Index errors = 0;
    for (Eigen::Index u = 0; u < received.cols(); ++u)
        for (Eigen::Index k = 0; k < received.rows(); ++k)
            if (qpsk_label(received(k, u)) != transmitted(k, u)) ++errors;
    return static_cast<double>(errors) / static_cast<double>(received.size());
}

CMatrix normalize_slots(const CMatrix& received)
{
    CMatrix out(received.rows(), received.cols());
    const double target = std::sqrt(static_cast<double>(received.rows()));
    for (Eigen::Index u = 0; u < received.cols(); ++u) {
        const double n = received.col(u).norm();
        if (!(n > 0.0)) throw RuntimeError("normalize_slots: zero received slot");
        out.col(u) = received.col(u) * (target / n);
    }
    return out;
}

double constellation_mse(const CMatrix& received_normalized, const CMatrix& ideal)
{
    if (received_normalized.rows() != ideal.rows() || received_normalized.cols() != ideal.cols())
        throw RuntimeError("constellation_mse: shape mismatch");
    if (ideal.size() == 0) throw RuntimeError("constellation_mse: empty input");
    return (received_normalized - ideal).cwiseAbs2().sum() / static_cast<double>(ideal.size());
}

LinkBudget sinr_and_sumrate(const CMatrix& d, const std::optional<CVector>& jammer_selected, double noise_variance,
                            double jammer_mean_power)
{
    const Eigen::Index k = d.rows();
    if (d.cols() != k || k < 1) throw RuntimeError("sinr_and_sumrate: need square selected channel");
    if (!(noise_variance >= 0.0) || !(jammer_mean_power >= 0.0))
        throw RuntimeError("sinr_and_sumrate: negative noise or jammer power");
    if (jammer_selected && jammer_selected->size() != k) throw RuntimeError("sinr_and_sumrate: jammer length");
    LinkBudget out;
    for (Eigen::Index i = 0; i < k; ++i) {
        double interference = noise_variance;
        for (Eigen::Index j = 0; j < k; ++j)
            if (j != i) interference += std::norm(d(i, j));
        if (jammer_selected) interference += jammer_mean_power * std::norm((*jammer_selected)(i));
        if (!(interference > 0.0))
            throw RuntimeError("sinr_and_sumrate: no noise, interference or jamming; SINR is unbounded");
        const double sinr = std::norm(d(i, i)) / interference;
        out.sinr.push_back(sinr);
        out.sum_rate += std::log2(1.0 + sinr);
    }
    return out;
}

LinkBudget sinr_and_sumrate(const EquivalentChannel& eq, double noise_variance, double jammer_mean_power)
{
    if (eq.selected.size() == 0) throw RuntimeError("sinr_and_sumrate: assignment not applied");
    return sinr_and_sumrate(eq.selected, eq.jammer_selected, noise_variance, jammer_mean_power);
}

}  // namespace simlearn
