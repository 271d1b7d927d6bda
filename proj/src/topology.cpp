#include "meshcast/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "meshcast/error.hpp"
#include "meshcast/random.hpp"

namespace meshcast {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void MeshNetwork::validate_common(std::vector<NodeId>& receivers) {
  if (positions_.empty()) throw Error(ErrorCode::InvalidArgument, "network has no nodes");
  if (!(comm_range_ > 0.0) || !std::isfinite(comm_range_))
    throw Error(ErrorCode::InvalidArgument, "communication range must be positive");
  for (const auto& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorCode::InvalidArgument, "node position is not finite");
  }
  if (!valid_node(source_)) throw Error(ErrorCode::InvalidArgument, "source id out of range");
  std::sort(receivers.begin(), receivers.end());
  if (std::adjacent_find(receivers.begin(), receivers.end()) != receivers.end())
    throw Error(ErrorCode::InvalidArgument, "duplicate receiver");
  for (NodeId r : receivers) {
    if (!valid_node(r)) throw Error(ErrorCode::InvalidArgument, "receiver id out of range: " + std::to_string(r));
    if (r == source_) throw Error(ErrorCode::InvalidArgument, "source cannot be a receiver");
  }
  receivers_ = std::move(receivers);
  if (!labels_.empty() && labels_.size() != positions_.size())
    throw Error(ErrorCode::InvalidArgument, "label count does not match node count");
}

MeshNetwork MeshNetwork::unit_disk(std::vector<Point> positions, double comm_range, NodeId source,
                                   std::vector<NodeId> receivers, std::vector<std::string> labels) {
  MeshNetwork net;
  net.positions_ = std::move(positions);
  net.comm_range_ = comm_range;
  net.source_ = source;
  net.labels_ = std::move(labels);
  net.validate_common(receivers);
  const std::size_t n = net.positions_.size();
  net.adjacency_.assign(n, {});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (distance(net.positions_[u], net.positions_[v]) <= comm_range) {
        net.adjacency_[u].push_back(static_cast<NodeId>(v));
        net.adjacency_[v].push_back(static_cast<NodeId>(u));
      }
    }
  }
  for (auto& row : net.adjacency_) std::sort(row.begin(), row.end());
  return net;
}

MeshNetwork MeshNetwork::with_edges(std::vector<Point> positions, double comm_range, NodeId source,
                                    std::vector<NodeId> receivers, std::span<const Edge> edges,
                                    std::vector<std::string> labels) {
  MeshNetwork net;
  net.positions_ = std::move(positions);
  net.comm_range_ = comm_range;
  net.source_ = source;
  net.labels_ = std::move(labels);
  net.explicit_edges_ = true;
  net.validate_common(receivers);
  net.adjacency_.assign(net.positions_.size(), {});
  for (const auto& [u, v] : edges) {
    if (!net.valid_node(u) || !net.valid_node(v))
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop on node " + std::to_string(u));
    net.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    net.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& row : net.adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return net;
}

bool MeshNetwork::is_receiver(NodeId v) const {
  return std::binary_search(receivers_.begin(), receivers_.end(), v);
}

bool MeshNetwork::adjacent(NodeId u, NodeId v) const {
  if (!valid_node(u) || !valid_node(v)) return false;
  const auto& row = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> MeshNetwork::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (static_cast<NodeId>(u) < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

std::size_t MeshNetwork::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

std::string MeshNetwork::label(NodeId v) const {
  if (!labels_.empty() && valid_node(v)) return labels_[static_cast<std::size_t>(v)];
  return std::to_string(v);
}

std::optional<NodeId> MeshNetwork::find_label(const std::string& label) const {
  for (std::size_t v = 0; v < positions_.size(); ++v) {
    if (this->label(static_cast<NodeId>(v)) == label) return static_cast<NodeId>(v);
  }
  return std::nullopt;
}

namespace {

std::vector<int> hop_counts(const MeshNetwork& net) {
  std::vector<int> level(net.node_count(), kUnreached);
  std::deque<NodeId> queue{net.source()};
  level[static_cast<std::size_t>(net.source())] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : net.neighbors(u)) {
      auto& lv = level[static_cast<std::size_t>(v)];
      if (lv == kUnreached) {
        lv = level[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

}  // namespace

MeshNetwork generate_random_mesh(const MeshParams& params) {
  if (params.node_count < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 nodes");
  if (!(params.side > 0.0)) throw Error(ErrorCode::InvalidArgument, "side must be positive");
  if (!(params.comm_range > 0.0)) throw Error(ErrorCode::InvalidArgument, "range must be positive");
  if (params.receiver_count < 1 || params.receiver_count > params.node_count - 1)
    throw Error(ErrorCode::InvalidArgument, "receiver count must lie in [1, n-1]");

  Rng rng(params.seed);
  const auto n = static_cast<std::size_t>(params.node_count);
  for (int attempt = 0; attempt < kMaxMeshAttempts; ++attempt) {
    std::vector<Point> positions(n);
    for (auto& p : positions) {
      p.x = rng.uniform01() * params.side;
      p.y = rng.uniform01() * params.side;
    }
    // Partial Fisher-Yates over the non-source ids.
    std::vector<NodeId> pool(n - 1);
    std::iota(pool.begin(), pool.end(), 1);
    for (std::size_t i = 0; i < static_cast<std::size_t>(params.receiver_count); ++i) {
      const std::size_t j = i + rng.index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<NodeId> receivers(pool.begin(), pool.begin() + params.receiver_count);

    auto net = MeshNetwork::unit_disk(std::move(positions), params.comm_range, 0, std::move(receivers));
    const auto level = hop_counts(net);
    const bool connected = std::all_of(net.receivers().begin(), net.receivers().end(), [&](NodeId r) {
      return level[static_cast<std::size_t>(r)] != kUnreached;
    });
    if (connected) return net;
  }
  throw Error(ErrorCode::Unsatisfiable,
              "no connected placement after " + std::to_string(kMaxMeshAttempts) +
                  " attempts; node density too low for the communication range");
}

int LevelDecomposition::max_level() const {
  int best = 0;
  for (int l : level) best = std::max(best, l);
  return best;
}

std::vector<NodeId> LevelDecomposition::nodes_at(int lvl) const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < level.size(); ++v) {
    if (level[v] == lvl) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

LevelDecomposition bfs_levels(const MeshNetwork& net) {
  LevelDecomposition out;
  out.source = net.source();
  out.level = hop_counts(net);
  out.parents.assign(net.node_count(), {});
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    const int lv = out.level[v];
    if (lv <= 0) continue;
    for (NodeId u : net.neighbors(static_cast<NodeId>(v))) {
      if (out.level[static_cast<std::size_t>(u)] == lv - 1) out.parents[v].push_back(u);
    }
  }
  for (NodeId r : net.receivers()) {
    if (!out.reachable(r))
      throw Error(ErrorCode::UnreachableReceiver, "receiver " + net.label(r) + " is not connected to the source");
  }
  return out;
}

std::vector<NodeId> TreeMesh::children(NodeId v) const {
  std::vector<NodeId> out;
  const int lv = levels.level_of(v);
  if (lv == kUnreached) return out;
  for (NodeId w : adjacency.at(static_cast<std::size_t>(v))) {
    if (levels.level_of(w) == lv + 1) out.push_back(w);
  }
  return out;
}

std::vector<Edge> TreeMesh::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < adjacency.size(); ++u) {
    for (NodeId v : adjacency[u]) {
      if (static_cast<NodeId>(u) < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

std::size_t TreeMesh::edge_count() const { return edges().size(); }

TreeMesh build_tree_mesh(const MeshNetwork& net, const LevelDecomposition& levels) {
  if (levels.level.size() != net.node_count() || levels.source != net.source())
    throw Error(ErrorCode::InvalidArgument, "level decomposition does not belong to this network");
  TreeMesh out;
  out.levels = levels;
  out.adjacency.assign(net.node_count(), {});
  for (std::size_t u = 0; u < net.node_count(); ++u) {
    const int lu = levels.level[u];
    for (NodeId v : net.neighbors(static_cast<NodeId>(u))) {
      const int lv = levels.level[static_cast<std::size_t>(v)];
      if (lu != kUnreached && lv != kUnreached && std::abs(lu - lv) == 1) out.adjacency[u].push_back(v);
    }
  }
  return out;
}

}  // namespace meshcast
