// SPDX-License-Identifier: Apache-2.0
#include "simlearn/seeding.hpp"

namespace simlearn {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index)
{
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ fnv1a(purpose));
    return splitmix64(h ^ splitmix64(index));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index, std::uint64_t sub)
{
    return splitmix64(derive_seed(master, purpose, index) ^ splitmix64(sub ^ 0x5851f42d4c957f2dULL));
}

}  // namespace simlearn
