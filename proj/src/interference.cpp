#include "meshcast/interference.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "meshcast/error.hpp"

namespace meshcast {

void InterferenceParams::validate() const {
  if (!(range > 0.0) || !std::isfinite(range)) throw Error(ErrorCode::InvalidArgument, "range must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1]");
}

double interference_range(Channel a, Channel b, const InterferenceParams& params) {
  if (a < 0 || b < 0) throw Error(ErrorCode::InvalidArgument, "channels must be non-negative");
  return params.range * std::pow(params.delta, std::abs(a - b));
}

namespace {

Channel require_si(const ChannelAssignment& assignment, NodeId v) {
  const auto si = assignment.si_of(v);
  if (!si) throw Error(ErrorCode::MissingSi, "node " + std::to_string(v) + " has no send-interface channel");
  return *si;
}

}  // namespace

double pairwise_objective(NodeId u, const ChannelAssignment& assignment, std::span<const NodeId> neighbors,
                          const InterferenceParams& params) {
  if (neighbors.empty()) return 0.0;
  const Channel cu = require_si(assignment, u);
  double total = 0.0;
  for (NodeId v : neighbors) {
    const double ir = interference_range(cu, require_si(assignment, v), params);
    total += ir * ir;
  }
  return total;
}

bool links_conflict(NodeId sender1, NodeId sender2, const ChannelAssignment& assignment,
                    std::span<const Point> positions, const InterferenceParams& params) {
  const Channel c1 = require_si(assignment, sender1);
  const Channel c2 = require_si(assignment, sender2);
  const double d = distance(positions[static_cast<std::size_t>(sender1)], positions[static_cast<std::size_t>(sender2)]);
  return d < interference_range(c1, c2, params) + params.range;
}

}  // namespace meshcast
