#pragma once

#include <cstdint>
#include <span>

#include "meshcast/multicast.hpp"
#include "meshcast/topology.hpp"

namespace meshcast {

// Level Channel Assignment tree: the source and all receivers start in the
// tree; each receiver (ascending id) climbs towards the source, attaching to
// the first tree node found among its parents and otherwise picking one of
// its parents at random as a new relay.
MulticastTree lca_build_tree(const TreeMesh& mesh, std::span<const NodeId> receivers, std::uint64_t seed);

// Level-indexed channels: si = level mod C, ri = (level - 1) mod C.
ChannelAssignment lca_assign_channels(const MulticastTree& tree, const LevelDecomposition& levels,
                                      int channel_count);

}  // namespace meshcast
