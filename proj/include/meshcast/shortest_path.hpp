#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "meshcast/topology.hpp"

namespace meshcast {

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double length = 0.0;
};

// Undirected graph with non-negative edge lengths and a (source, goal) query.
class WeightedGraph {
 public:
  struct Arc {
    NodeId to;
    double length;
  };

  WeightedGraph(std::size_t vertex_count, std::vector<WeightedEdge> edges, NodeId source, NodeId goal);

  std::size_t vertex_count() const { return arcs_.size(); }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs(NodeId v) const { return arcs_.at(static_cast<std::size_t>(v)); }
  NodeId source() const { return source_; }
  NodeId goal() const { return goal_; }
  // Shortest parallel edge between u and v, if any.
  std::optional<double> edge_length(NodeId u, NodeId v) const;

  WeightedGraph with_query(NodeId source, NodeId goal) const;

 private:
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<Arc>> arcs_;
  NodeId source_;
  NodeId goal_;
};

// Edge-list text: "n m s g" then m lines "u v length".
WeightedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const WeightedGraph& graph);

enum class LengthMode { Hops, Euclidean };

// One vertex per mesh node, one edge per link.
WeightedGraph mesh_to_weighted(const MeshNetwork& net, LengthMode mode, NodeId goal);

struct PathResult {
  std::vector<NodeId> path;
  double length = 0.0;
  std::size_t fired_count = 0;
  std::string solver;
};

// Text record: "solver", "length", "fired_count", "path" lines.
void write_path_result(std::ostream& out, const PathResult& result);

enum class WaveTag { Source = 0, Goal = 1 };

inline constexpr NodeId kNoVertex = -1;

struct Firing {
  double time;
  WaveTag tag;
  NodeId vertex;
};

// Where the two autowaves join: a vertex fired by both (vertex == other),
// or an edge whose endpoints were fired by opposite waves.
struct Junction {
  NodeId source_side = kNoVertex;
  NodeId goal_side = kNoVertex;
  double total = 0.0;

  bool at_vertex() const { return source_side == goal_side; }
};

struct WaveState {
  // Indexed [tag][vertex]; fire_time is +inf for unfired neurons.
  std::array<std::vector<double>, 2> fire_time;
  std::array<std::vector<NodeId>, 2> precursor;
  std::vector<Firing> log;
  std::optional<Junction> meeting;

  std::size_t fired_count() const { return log.size(); }
  bool fired(WaveTag tag, NodeId v) const;
};

struct WaveRun {
  WaveState state;
  PathResult result;
};

// Label-setting Dijkstra; ties prefer the smaller predecessor id.
// fired_count is the number of settled vertices. Throws NoPath.
PathResult dijkstra_oracle(const WeightedGraph& graph);

// Single autowave from the source: a neuron fires at the earliest arrival of
// a pulse from a fired neighbour; stops once the goal fires.
WaveRun pcnn_run(const WeightedGraph& graph);
PathResult pcnn_shortest_path(const WeightedGraph& graph);

// Dual-source autowaves from source and goal on one shared timeline. After
// the waves first meet, events up to half the best junction total are still
// drained so the minimising junction is found; the path is the source-wave
// precursor chain to the junction followed by the goal-wave chain.
WaveRun dspcnn_run(const WeightedGraph& graph);
PathResult dspcnn_shortest_path(const WeightedGraph& graph);

}  // namespace meshcast
