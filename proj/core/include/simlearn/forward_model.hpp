// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/channel.hpp"
#include "simlearn/phase_book.hpp"

#include <optional>
#include <vector>

namespace simlearn {

// Per-layer response model. Without coupling a layer acts as diag(e^{j phi});
// with coupling it acts as C * diag(e^{j phi}).
struct LayerResponse {
    std::optional<RMatrix> coupling;
};

struct AntennaAssignment {
    std::vector<int> antenna_of_user;  // 0-based antenna index per user

    int users() const { return static_cast<int>(antenna_of_user.size()); }
    bool operator==(const AntennaAssignment&) const = default;
};

struct EquivalentChannel {
    CMatrix full;                           // M x K
    std::optional<CVector> jammer_full;     // M
    CMatrix selected;                       // K x K, rows ordered by user
    std::optional<CVector> jammer_selected; // K
};

CVector forward(const ChannelSet& ch, const PhaseBook& pb, const CVector& s,
                std::optional<cplx> jam = {}, const LayerResponse& response = {});

EquivalentChannel equivalent_channel(const ChannelSet& ch, const PhaseBook& pb,
                                     const LayerResponse& response = {});
EquivalentChannel equivalent_channel(const ChannelSet& ch, const PhaseBook& pb,
                                     const AntennaAssignment& assignment,
                                     const LayerResponse& response = {});

void select_antennas(EquivalentChannel& eq, const AntennaAssignment& assignment);
CMatrix select_rows(const CMatrix& m, const AntennaAssignment& assignment);

// Entry l is the equivalent channel truncated after layer l: layers beyond l keep
// their diffraction but have zero phase.
std::vector<CMatrix> cumulative_layer_channels(const ChannelSet& ch, const PhaseBook& pb);

}  // namespace simlearn
