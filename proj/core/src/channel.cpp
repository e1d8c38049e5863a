// SPDX-License-Identifier: Apache-2.0
#include "simlearn/channel.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace simlearn {

cplx rs_coefficient(const Point3& src, const Point3& dst, double atom_area, double wavelength)
{
    const Point3 d = dst - src;
    const double r = d.norm();
    if (!(r > 0.0)) throw RuntimeError("rs_coefficient: coincident source and destination");
    const double cos_chi = std::abs(d.z()) / r;
    const cplx radial(1.0 / (kTwoPi * r), -1.0 / wavelength);
    return (atom_area * cos_chi / r) * radial * std::polar(1.0, kTwoPi * r / wavelength);
}

CMatrix inter_layer_matrix(const SimGeometry& geom, int layer)
{
    if (geom.layers < 2 || layer < 2 || layer > geom.layers)
        throw RuntimeError("inter_layer_matrix: layer index out of range");
    const auto& src = geom.atom_positions[layer - 2];
    const auto& dst = geom.atom_positions[layer - 1];
    const int n = geom.atoms();
    // Offsets are taken in-plane plus the nominal spacing so every layer pair
    // yields bit-identical coefficients.
    CMatrix w(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const Point3 d(dst[i].x() - src[j].x(), dst[i].y() - src[j].y(), geom.layer_spacing);
            w(i, j) = rs_coefficient(Point3::Zero(), d, geom.atom_area(), geom.wavelength);
        }
    return w;
}

CMatrix sim_to_bs_matrix(const SimGeometry& geom)
{
    const auto& src = geom.atom_positions.back();
    const int n = geom.atoms();
    CMatrix g(geom.bs_antennas, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < geom.bs_antennas; ++m)
            g(m, j) = rs_coefficient(src[j], geom.antenna_positions[m], geom.atom_area(), geom.wavelength);
    return g;
}

static double sinc(double x)
{
    if (x == 0.0) return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

RMatrix correlation_matrix(const SimGeometry& geom)
{
    const auto& p = geom.atom_positions.front();
    const int n = geom.atoms();
    RMatrix r(n, n);
    for (int i = 0; i < n; ++i) {
        r(i, i) = 1.0;
        for (int j = 0; j < i; ++j) {
            const double v = sinc(2.0 * (p[i] - p[j]).norm() / geom.wavelength);
            r(i, j) = v;
            r(j, i) = v;
        }
    }
    return r;
}

RMatrix correlation_sqrt(const RMatrix& r)
{
    Eigen::SelfAdjointEigenSolver<RMatrix> es(r);
    if (es.info() != Eigen::Success) throw RuntimeError("correlation_sqrt: eigendecomposition failed");
    RVector ev = es.eigenvalues();
    const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tol) throw RuntimeError("correlation_sqrt: matrix is not positive semidefinite");
        ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
    }
    const RMatrix& v = es.eigenvectors();
    RMatrix s = v * ev.asDiagonal() * v.transpose();
    return 0.5 * (s + s.transpose());
}

Eigen::Vector3d direction(const Emitter& e)
{
    const double ce = std::cos(e.elevation);
    return {ce * std::sin(e.azimuth), std::sin(e.elevation), -ce * std::cos(e.azimuth)};
}

CVector steering_vector(const SimGeometry& geom, const Emitter& e)
{
    const Eigen::Vector3d u = direction(e);
    const auto& p = geom.atom_positions.front();
    const double k = kTwoPi / geom.wavelength;
    CVector a(geom.atoms());
    for (int n = 0; n < geom.atoms(); ++n) a(n) = std::polar(1.0, k * u.dot(p[n]));
    return a;
}

double pathloss_gain(const UserLayout& layout, double distance)
{
    return layout.reference_gain * std::pow(distance, -layout.pathloss_exponent);
}

static void check_propagation(const UserLayout& layout, const Emitter& e)
{
    if (!(e.distance > 0.0)) throw ConfigError("emitter distance must be positive");
    if (!(layout.rician_factor >= 0.0)) throw ConfigError("rician factor must be nonnegative");
    if (!(layout.reference_gain > 0.0)) throw ConfigError("reference gain must be positive");
}

CVector rician_channel(const SimGeometry& geom, const RMatrix& r_sqrt, const UserLayout& propagation,
                       const Emitter& e, std::uint64_t seed)
{
    check_propagation(propagation, e);
    const double kappa = propagation.rician_factor;
    const double amp = std::sqrt(pathloss_gain(propagation, e.distance));
    const CVector a = steering_vector(geom, e);
    if (std::isinf(kappa)) return amp * a;

    const int n = geom.atoms();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CVector z(n);
    for (int i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        z(i) = cplx(re, im);
    }
    const double los = std::sqrt(kappa / (1.0 + kappa));
    const double nlos = std::sqrt(1.0 / (1.0 + kappa));
    return amp * (los * a + nlos * (r_sqrt.cast<cplx>() * z));
}

CVector user_channel(const SimGeometry& geom, const UserLayout& layout, int k, std::uint64_t seed)
{
    if (k < 0 || k >= layout.count()) throw RuntimeError("user_channel: user index out of range");
    const RMatrix rs = correlation_sqrt(correlation_matrix(geom));
    return rician_channel(geom, rs, layout, layout.users[k], seed);
}

CVector jammer_channel(const SimGeometry& geom, const UserLayout& propagation, const Emitter& jammer,
                       std::uint64_t seed)
{
    const RMatrix rs = correlation_sqrt(correlation_matrix(geom));
    return rician_channel(geom, rs, propagation, jammer, seed);
}

ChannelSet make_channel_set(const SimGeometry& geom, const CMatrix& users, std::optional<CVector> jammer)
{
    if (users.rows() != geom.atoms()) throw RuntimeError("make_channel_set: user matrix has wrong row count");
    if (jammer && jammer->size() != geom.atoms()) throw RuntimeError("make_channel_set: jammer vector size");
    ChannelSet ch;
    ch.users = users;
    ch.jammer = std::move(jammer);
    if (geom.layers >= 2) {
        const GridOperator w(inter_layer_matrix(geom, 2), geom.nx, geom.ny);
        ch.inter_layer.assign(geom.layers - 1, w);
    }
    ch.to_bs = sim_to_bs_matrix(geom);
    return ch;
}

}  // namespace simlearn
