// SPDX-License-Identifier: Apache-2.0
#include "simlearn/geometry.hpp"

#include <cmath>
#include <string>

namespace simlearn {

double SimGeometry::layer_z(int layer) const
{
    return (layer - 1) * layer_spacing;
}

SimGeometry build_geometry(const GeometryParams& p)
{
    if (!(p.wavelength > 0.0) || !std::isfinite(p.wavelength))
        throw ConfigError("geometry.wavelength_m must be positive");
    if (p.layers < 1) throw ConfigError("geometry.layers must be >= 1");
    if (p.nx < 1 || p.ny < 1) throw ConfigError("geometry.nx and geometry.ny must be >= 1");
    if (p.bs_antennas < 1) throw ConfigError("geometry.bs_antennas must be >= 1");
    if (!(p.atom_spacing > 0.0)) throw ConfigError("geometry.atom_spacing_wl must be positive");
    if (!(p.bs_spacing > 0.0)) throw ConfigError("geometry.bs_spacing_wl must be positive");
    if (!(p.bs_standoff > 0.0)) throw ConfigError("geometry.bs_standoff_wl must be positive");
    if (p.total_thickness < 0.0) throw ConfigError("geometry.thickness_wl must be nonnegative");
    if (p.layers >= 2 && !(p.total_thickness > 0.0))
        throw ConfigError("geometry.thickness_wl must be positive when layers >= 2");

    SimGeometry g;
    const double lam = p.wavelength;
    g.wavelength = lam;
    g.layers = p.layers;
    g.nx = p.nx;
    g.ny = p.ny;
    g.atom_spacing = p.atom_spacing * lam;
    g.total_thickness = p.total_thickness * lam;
    g.layer_spacing = p.layers >= 2 ? g.total_thickness / (p.layers - 1) : 0.0;
    g.bs_antennas = p.bs_antennas;
    g.bs_spacing = p.bs_spacing * lam;
    g.bs_standoff = p.bs_standoff * lam;

    const double cx = 0.5 * (p.nx - 1);
    const double cy = 0.5 * (p.ny - 1);
    g.atom_positions.resize(p.layers);
    for (int l = 1; l <= p.layers; ++l) {
        auto& layer = g.atom_positions[l - 1];
        layer.reserve(static_cast<size_t>(p.nx) * p.ny);
        const double z = g.layer_z(l);
        for (int iy = 0; iy < p.ny; ++iy)
            for (int ix = 0; ix < p.nx; ++ix)
                layer.emplace_back((ix - cx) * g.atom_spacing, (iy - cy) * g.atom_spacing, z);
    }

    const double zb = g.layer_z(p.layers) + g.bs_standoff;
    const double cm = 0.5 * (p.bs_antennas - 1);
    for (int m = 0; m < p.bs_antennas; ++m)
        g.antenna_positions.emplace_back((m - cm) * g.bs_spacing, 0.0, zb);
    return g;
}

}  // namespace simlearn
