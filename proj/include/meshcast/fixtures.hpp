#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "meshcast/topology.hpp"

namespace meshcast::fixtures {

// Eight-router example with source s and multireceivers g, e, f:
//   s-a, s-b, a-c, b-d, b-e, c-f, c-g, d-g
// Ids follow the order in which the receivers are served (g before e before
// f), i.e. s=0 a=1 b=2 c=3 d=4 g=5 e=6 f=7. Nodes carry their letters as
// labels; positions are only used by the interference-aware steps.
MeshNetwork level_example();

// Seed under which g's random parent pick lands on d.
inline constexpr std::uint64_t kLevelExampleSeed = 3;

// Four-level tree mesh with source "1" and multireceivers "6", "7", "8";
// "4" reaches all three receivers, "5" only "7" and "8". Ids are label - 1.
MeshNetwork relay_example();

std::optional<MeshNetwork> by_name(std::string_view name);

}  // namespace meshcast::fixtures
