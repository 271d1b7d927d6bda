#pragma once

#include <span>
#include <vector>

#include "meshcast/multicast.hpp"
#include "meshcast/topology.hpp"

namespace meshcast {

// Partially-overlapping channel model: all senders share transmission range
// `range`; delta in (0, 1] is the per-channel-step interference factor.
struct InterferenceParams {
  double range = 250.0;
  double delta = 0.5;

  void validate() const;
};

// range * delta^|a - b|
double interference_range(Channel a, Channel b, const InterferenceParams& params);

// Sum over `neighbors` of interference_range(si(u), si(v))^2, in m^2.
// Throws MissingSi when u or a neighbour has no SI.
double pairwise_objective(NodeId u, const ChannelAssignment& assignment, std::span<const NodeId> neighbors,
                          const InterferenceParams& params);

// Protocol-model conflict between two senders: their distance is below the
// interference range of their SI channels plus the transmission range.
bool links_conflict(NodeId sender1, NodeId sender2, const ChannelAssignment& assignment,
                    std::span<const Point> positions, const InterferenceParams& params);

}  // namespace meshcast
