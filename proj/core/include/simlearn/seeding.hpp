// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace simlearn {

// Child seed for a named stream. Streams with distinct (purpose, index) are
// independent of each other and of how many other streams exist.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index = 0);
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index,
                          std::uint64_t sub);

}  // namespace simlearn
