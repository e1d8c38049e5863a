// SPDX-License-Identifier: Apache-2.0
#include "simlearn/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace simlearn {

PhaseBook quantize_phases(const PhaseBook& pb, int bits)
{
    if (bits < 1) throw ConfigError("quantization bits must be >= 1");
    if (bits > 52) throw ConfigError("quantization bits must be <= 52");
    const double levels = std::ldexp(1.0, bits);
    const double step = kTwoPi / levels;
    RMatrix q(pb.layers(), pb.atoms());
    for (int l = 0; l < pb.layers(); ++l)
        for (int n = 0; n < pb.atoms(); ++n) {
            double idx = std::round(pb.matrix()(l, n) / step);
            idx = std::fmod(idx, levels);
            if (idx < 0.0) idx += levels;
            q(l, n) = idx * step;
        }
    return PhaseBook(q);
}

RMatrix coupling_matrix(int atoms, double alpha)
{
    if (atoms < 1) throw ConfigError("coupling matrix size must be >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("coupling alpha must be in [0, 1)");
    RMatrix c = RMatrix::Zero(atoms, atoms);
    for (int i = 0; i < atoms; ++i)
        for (int j = std::max(0, i - kCouplingHalfWidth); j <= std::min(atoms - 1, i + kCouplingHalfWidth); ++j)
            c(i, j) = std::pow(alpha, std::abs(i - j));
    return c;
}

LayerResponse apply_coupling(const RMatrix& coupling, int atoms)
{
    if (coupling.rows() != atoms || coupling.cols() != atoms)
        throw RuntimeError("apply_coupling: coupling matrix does not match atom count");
    return LayerResponse{coupling};
}

double mean_resultant_length(double kappa)
{
    if (!(kappa >= 0.0)) throw RuntimeError("mean_resultant_length: negative concentration");
    if (kappa == 0.0) return 0.0;
    if (kappa < 600.0) return std::cyl_bessel_i(1.0, kappa) / std::cyl_bessel_i(0.0, kappa);
    const double x = 1.0 / kappa;
    return 1.0 - x / 2.0 - x * x / 8.0 - x * x * x / 8.0 - 25.0 * x * x * x * x / 128.0;
}

double circular_std_to_kappa(double sigma)
{
    if (!(sigma > 0.0)) throw RuntimeError("circular_std_to_kappa: sigma must be positive");
    auto circ_std = [](double kappa) { return std::sqrt(-2.0 * std::log(mean_resultant_length(kappa))); };
    double lo = std::log(1e-8), hi = std::log(1e12);
    if (sigma >= circ_std(std::exp(lo))) return std::exp(lo);
    if (sigma <= circ_std(std::exp(hi))) return 1.0 / (sigma * sigma);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (circ_std(std::exp(mid)) > sigma) lo = mid;
        else hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double sample_von_mises(double kappa, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    if (kappa < 1e-8) return kPi * (2.0 * uni(rng) - 1.0);
    if (kappa > 1e6) {
        std::normal_distribution<double> normal(0.0, std::sqrt(1.0 / kappa));
        return std::remainder(normal(rng), kTwoPi);
    }
    double s;
    if (kappa < 1e-5) {
        s = 1.0 / kappa + kappa;
    } else {
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
        s = (1.0 + rho * rho) / (2.0 * rho);
    }
    double w;
    while (true) {
        const double z = std::cos(kPi * uni(rng));
        w = (1.0 + s * z) / (s + z);
        const double y = kappa * (s - w);
        const double v = uni(rng);
        if (y * (2.0 - y) - v >= 0.0 || std::log(y / v) + 1.0 - y >= 0.0) break;
    }
    const double theta = std::acos(std::clamp(w, -1.0, 1.0));
    const double out = uni(rng) < 0.5 ? -theta : theta;
    return out >= kPi ? out - kTwoPi : out;
}

PhaseBook von_mises_phase_noise(const PhaseBook& pb, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0)) throw ConfigError("phase noise sigma must be >= 0");
    if (sigma == 0.0) return pb;
    const double kappa = circular_std_to_kappa(sigma);
    std::mt19937_64 rng(seed);
    RMatrix m = pb.matrix();
    for (int l = 0; l < m.rows(); ++l)
        for (int n = 0; n < m.cols(); ++n) m(l, n) += sample_von_mises(kappa, rng);
    return PhaseBook(m);
}

ImpairedModel impair(const PhaseBook& pb, const ImpairmentConfig& cfg, std::uint64_t seed)
{
    ImpairedModel out{pb, {}};
    if (cfg.quant_bits) out.phases = quantize_phases(out.phases, *cfg.quant_bits);
    if (cfg.phase_noise_sigma) out.phases = von_mises_phase_noise(out.phases, *cfg.phase_noise_sigma, seed);
    if (cfg.coupling_alpha) out.response = apply_coupling(coupling_matrix(pb.atoms(), *cfg.coupling_alpha), pb.atoms());
    return out;
}

}  // namespace simlearn
