// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/channel.hpp"

#include <cstdint>
#include <iosfwd>

namespace simlearn {

struct ChannelDumpHeader {
    double wavelength = 0.0;
    std::uint64_t seed = 0;
    int nx = 0;
    int ny = 0;
};

void write_channel_set(std::ostream& os, const ChannelSet& ch, const ChannelDumpHeader& header);
ChannelSet read_channel_set(std::istream& is, ChannelDumpHeader* header = nullptr);

}  // namespace simlearn
