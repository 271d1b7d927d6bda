#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "meshcast/topology.hpp"

namespace meshcast {

// Multicast tree rooted at the source. parent_of holds exactly one entry per
// non-source tree node.
struct MulticastTree {
  NodeId source = 0;
  std::vector<NodeId> receivers;
  std::set<NodeId> nodes;
  std::map<NodeId, NodeId> parent_of;

  bool contains(NodeId v) const { return nodes.count(v) != 0; }
  std::optional<NodeId> parent(NodeId v) const;
  std::vector<NodeId> children(NodeId v) const;
  bool forwards(NodeId v) const;
  // Non-source tree nodes that forward to at least one child.
  std::set<NodeId> relays() const;
  // Hops from the source along parent_of.
  int depth(NodeId v) const;
  // Top-down order: by depth, then by id.
  std::vector<NodeId> top_down_order() const;
  // Forwarding nodes (source included) in top-down order.
  std::vector<NodeId> forwarding_order() const;
  // (child, parent) pairs sorted by child.
  std::vector<Edge> edges() const;
};

// Throws ValidationError unless the tree is rooted, acyclic, spans every
// receiver and every parent sits exactly one level above its child.
void validate_tree(const MulticastTree& tree, const LevelDecomposition& levels);

using Channel = int;

// Receive-interface and send-interface channels per tree node.
struct ChannelAssignment {
  int channel_count = 1;
  std::map<NodeId, Channel> ri;
  std::map<NodeId, Channel> si;

  std::optional<Channel> ri_of(NodeId v) const;
  std::optional<Channel> si_of(NodeId v) const;
};

// Throws ContractViolation if some child's RI differs from its parent's SI
// or if a channel falls outside [0, channel_count).
void check_link_contract(const MulticastTree& tree, const ChannelAssignment& assignment);

}  // namespace meshcast
