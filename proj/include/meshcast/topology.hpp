#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace meshcast {

using NodeId = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

using Edge = std::pair<NodeId, NodeId>;

// Static mesh of routers. Adjacency is symmetric, irreflexive and kept with
// sorted neighbour lists. Unless explicit edges are supplied, two nodes are
// adjacent iff their Euclidean distance is at most the communication range.
class MeshNetwork {
 public:
  static MeshNetwork unit_disk(std::vector<Point> positions, double comm_range, NodeId source,
                               std::vector<NodeId> receivers,
                               std::vector<std::string> labels = {});

  static MeshNetwork with_edges(std::vector<Point> positions, double comm_range, NodeId source,
                                std::vector<NodeId> receivers, std::span<const Edge> edges,
                                std::vector<std::string> labels = {});

  std::size_t node_count() const { return positions_.size(); }
  const Point& position(NodeId v) const { return positions_.at(static_cast<std::size_t>(v)); }
  const std::vector<Point>& positions() const { return positions_; }
  double comm_range() const { return comm_range_; }
  NodeId source() const { return source_; }
  // Sorted ascending, no duplicates.
  const std::vector<NodeId>& receivers() const { return receivers_; }
  bool is_receiver(NodeId v) const;

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  bool adjacent(NodeId u, NodeId v) const;
  // Undirected edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  bool has_explicit_edges() const { return explicit_edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Label if one was given, otherwise the decimal id.
  std::string label(NodeId v) const;
  std::optional<NodeId> find_label(const std::string& label) const;

  bool valid_node(NodeId v) const { return v >= 0 && static_cast<std::size_t>(v) < positions_.size(); }

 private:
  MeshNetwork() = default;
  void validate_common(std::vector<NodeId>& receivers);

  std::vector<Point> positions_;
  double comm_range_ = 0.0;
  NodeId source_ = 0;
  std::vector<NodeId> receivers_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::string> labels_;
  bool explicit_edges_ = false;
};

struct MeshParams {
  int node_count = 0;
  double side = 0.0;
  double comm_range = 0.0;
  int receiver_count = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxMeshAttempts = 100;

// Uniform placement in [0, side)^2, node 0 as source, receivers drawn without
// replacement. Placement is redrawn until every receiver is connected to the
// source; throws Unsatisfiable after kMaxMeshAttempts draws.
MeshNetwork generate_random_mesh(const MeshParams& params);

inline constexpr int kUnreached = -1;

struct LevelDecomposition {
  NodeId source = 0;
  // Hop count from the source, kUnreached for nodes in other components.
  std::vector<int> level;
  // Adjacent nodes exactly one level closer to the source, ascending.
  std::vector<std::vector<NodeId>> parents;

  bool reachable(NodeId v) const { return level.at(static_cast<std::size_t>(v)) != kUnreached; }
  int level_of(NodeId v) const { return level.at(static_cast<std::size_t>(v)); }
  int max_level() const;
  std::vector<NodeId> nodes_at(int lvl) const;
};

// Throws UnreachableReceiver if some receiver has no finite level.
LevelDecomposition bfs_levels(const MeshNetwork& net);

// Leveled DAG: the mesh with every edge between equal-level nodes removed.
struct TreeMesh {
  LevelDecomposition levels;
  std::vector<std::vector<NodeId>> adjacency;

  std::size_t node_count() const { return adjacency.size(); }
  std::span<const NodeId> parents(NodeId v) const {
    return levels.parents.at(static_cast<std::size_t>(v));
  }
  // Retained neighbours one level further from the source, ascending.
  std::vector<NodeId> children(NodeId v) const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
};

TreeMesh build_tree_mesh(const MeshNetwork& net, const LevelDecomposition& levels);

}  // namespace meshcast
