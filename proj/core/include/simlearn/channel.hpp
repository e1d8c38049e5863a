// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/geometry.hpp"
#include "simlearn/grid_operator.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace simlearn {

cplx rs_coefficient(const Point3& src, const Point3& dst, double atom_area, double wavelength);

// layer is the receiving layer number, 2..L.
CMatrix inter_layer_matrix(const SimGeometry& geom, int layer);
CMatrix sim_to_bs_matrix(const SimGeometry& geom);

RMatrix correlation_matrix(const SimGeometry& geom);
RMatrix correlation_sqrt(const RMatrix& r);

struct Emitter {
    double azimuth = 0.0;    // radians
    double elevation = 0.0;  // radians
    double distance = 1.0;   // meters
};

struct UserLayout {
    std::vector<Emitter> users;
    double rician_factor = 1.0;      // linear, may be +inf for pure LoS
    double pathloss_exponent = 2.2;
    double reference_gain = 1e-3;    // linear gain at 1 m

    int count() const { return static_cast<int>(users.size()); }
};

Eigen::Vector3d direction(const Emitter& e);
CVector steering_vector(const SimGeometry& geom, const Emitter& e);
double pathloss_gain(const UserLayout& layout, double distance);

CVector user_channel(const SimGeometry& geom, const UserLayout& layout, int k, std::uint64_t seed);
CVector jammer_channel(const SimGeometry& geom, const UserLayout& propagation, const Emitter& jammer,
                       std::uint64_t seed);

// Same as user_channel but reusing a precomputed correlation square root.
CVector rician_channel(const SimGeometry& geom, const RMatrix& r_sqrt, const UserLayout& propagation,
                       const Emitter& e, std::uint64_t seed);

struct ChannelSet {
    CMatrix users;                          // H, N x K
    std::vector<GridOperator> inter_layer;  // W_2 .. W_L
    CMatrix to_bs;                          // G, M x N
    std::optional<CVector> jammer;          // h_J, N

    int atoms() const { return static_cast<int>(users.rows()); }
    int user_count() const { return static_cast<int>(users.cols()); }
    int antennas() const { return static_cast<int>(to_bs.rows()); }
    int layers() const { return static_cast<int>(inter_layer.size()) + 1; }
};

// Builds H, W and G; W is shared by every layer and evaluated once.
ChannelSet make_channel_set(const SimGeometry& geom, const CMatrix& users, std::optional<CVector> jammer = {});

}  // namespace simlearn
