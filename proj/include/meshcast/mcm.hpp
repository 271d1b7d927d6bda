#pragma once

#include <map>
#include <set>
#include <span>

#include "meshcast/interference.hpp"
#include "meshcast/multicast.hpp"
#include "meshcast/topology.hpp"

namespace meshcast {

// One level of relay selection: targets one level down and, per candidate,
// the targets it can reach.
struct CoverInstance {
  std::set<NodeId> targets;
  std::map<NodeId, std::set<NodeId>> candidates;
};

// Greedy set cover: repeatedly take the candidate covering the most uncovered
// targets, smallest id on ties, then drop picks that later picks made
// redundant. Throws Uncoverable if some target is reachable from no candidate.
std::set<NodeId> min_relay_cover(const CoverInstance& instance);

// Cover instance for level `level`: targets are `targets_below` (nodes at
// level + 1), candidates every level-`level` node with a retained edge to one.
CoverInstance relay_cover_instance(const TreeMesh& mesh, int level, const std::set<NodeId>& targets_below);

// Multi-Channel Multicast tree, built bottom-up one level at a time from the
// deepest receiver. Every receiver ends up at tree depth equal to its level.
MulticastTree mcm_build_tree(const TreeMesh& mesh, std::span<const NodeId> receivers);

// Top-down ascending allocation: si(source) = 0, each forwarding node sends on
// (ri + 1) mod C, each child receives on its parent's SI. Leaves get no SI.
ChannelAssignment ascending_assignment(const MulticastTree& tree, int channel_count);

struct HeuristicParams {
  int channel_count = 3;
  double delta = 0.5;
  // Distance within which two forwarding nodes count as neighbours;
  // non-positive means twice the communication range.
  double neighbor_radius = 0.0;
};

// Forwarding nodes within `radius` of u among `assigned` (excluding u).
std::vector<NodeId> relay_neighbors(NodeId u, std::span<const NodeId> assigned, const MeshNetwork& net,
                                    double radius);

// Sequential greedy assignment: each forwarding node, top-down, takes the SI
// minimising the summed squared interference range to the already-assigned
// forwarding nodes within the neighbour radius (smallest channel on ties;
// (ri + 1) mod C when there are no such neighbours).
ChannelAssignment heuristic_assignment(const MulticastTree& tree, const MeshNetwork& net,
                                       const HeuristicParams& params);

// Sum of IR^2 over unordered pairs of forwarding nodes lying within `radius`
// of each other.
double total_interference(const MulticastTree& tree, const ChannelAssignment& assignment,
                          const MeshNetwork& net, const InterferenceParams& params, double radius);

}  // namespace meshcast
