// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/types.hpp"

#include <vector>

namespace simlearn {

using Point3 = Eigen::Vector3d;

struct GeometryParams {
    double wavelength = 0.01;      // meters
    int layers = 5;
    int nx = 8;
    int ny = 8;
    double atom_spacing = 0.5;     // in wavelengths
    double total_thickness = 10.0; // in wavelengths
    int bs_antennas = 8;
    double bs_spacing = 0.5;       // in wavelengths
    double bs_standoff = 3.0;      // in wavelengths, layer L plane to antenna line

    bool operator==(const GeometryParams&) const = default;
};

struct SimGeometry {
    double wavelength = 0.0;
    int layers = 0;
    int nx = 0;
    int ny = 0;
    double atom_spacing = 0.0;     // meters
    double total_thickness = 0.0;  // meters
    double layer_spacing = 0.0;    // meters, zero when layers == 1
    int bs_antennas = 0;
    double bs_spacing = 0.0;
    double bs_standoff = 0.0;
    std::vector<std::vector<Point3>> atom_positions;  // [layer][atom], atom = iy * nx + ix
    std::vector<Point3> antenna_positions;

    int atoms() const { return nx * ny; }
    double atom_area() const { return atom_spacing * atom_spacing; }
    double layer_z(int layer) const;  // layer in 1..L
};

// Layer planes are parallel to x-y at z = (l-1) D_L; users live in z < 0 and
// the BS line sits along x at z = (L-1) D_L + standoff.
SimGeometry build_geometry(const GeometryParams& params);

}  // namespace simlearn
