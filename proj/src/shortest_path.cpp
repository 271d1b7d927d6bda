#include "meshcast/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <tuple>

#include "meshcast/error.hpp"

namespace meshcast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t at(NodeId v) { return static_cast<std::size_t>(v); }

}  // namespace

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<WeightedEdge> edges, NodeId source, NodeId goal)
    : edges_(std::move(edges)), arcs_(vertex_count), source_(source), goal_(goal) {
  auto valid = [&](NodeId v) { return v >= 0 && at(v) < vertex_count; };
  if (vertex_count == 0) throw Error(ErrorCode::InvalidArgument, "graph has no vertices");
  if (!valid(source) || !valid(goal)) throw Error(ErrorCode::InvalidArgument, "source or goal out of range");
  for (const auto& e : edges_) {
    if (!valid(e.u) || !valid(e.v)) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (!(e.length >= 0.0) || !std::isfinite(e.length))
      throw Error(ErrorCode::InvalidArgument, "edge lengths must be finite and non-negative");
    arcs_[at(e.u)].push_back({e.v, e.length});
    if (e.u != e.v) arcs_[at(e.v)].push_back({e.u, e.length});
  }
}

std::optional<double> WeightedGraph::edge_length(NodeId u, NodeId v) const {
  std::optional<double> best;
  for (const auto& arc : arcs(u)) {
    if (arc.to == v && (!best || arc.length < *best)) best = arc.length;
  }
  return best;
}

WeightedGraph WeightedGraph::with_query(NodeId source, NodeId goal) const {
  return WeightedGraph(vertex_count(), edges_, source, goal);
}

WeightedGraph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::ParseError, "edge list is empty");
  std::istringstream header(line);
  long long n = 0, m = 0, s = 0, g = 0;
  if (!(header >> n >> m >> s >> g) || n <= 0 || m < 0)
    throw Error(ErrorCode::ParseError, "bad header, expected \"n m s g\"");
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw Error(ErrorCode::ParseError, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream row(line);
    long long u = 0, v = 0;
    double len = 0.0;
    if (!(row >> u >> v >> len)) throw Error(ErrorCode::ParseError, "bad edge line: " + line);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), len});
  }
  return WeightedGraph(static_cast<std::size_t>(n), std::move(edges), static_cast<NodeId>(s), static_cast<NodeId>(g));
}

void write_edge_list(std::ostream& out, const WeightedGraph& graph) {
  out << graph.vertex_count() << ' ' << graph.edges().size() << ' ' << graph.source() << ' ' << graph.goal() << '\n';
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.length << '\n';
}

WeightedGraph mesh_to_weighted(const MeshNetwork& net, LengthMode mode, NodeId goal) {
  std::vector<WeightedEdge> edges;
  for (const auto& [u, v] : net.edges()) {
    const double len = mode == LengthMode::Hops ? 1.0 : distance(net.position(u), net.position(v));
    edges.push_back({u, v, len});
  }
  return WeightedGraph(net.node_count(), std::move(edges), net.source(), goal);
}

void write_path_result(std::ostream& out, const PathResult& result) {
  std::ostringstream len;
  len.precision(17);
  len << result.length;
  out << "solver " << result.solver << '\n'
      << "length " << len.str() << '\n'
      << "fired_count " << result.fired_count << '\n'
      << "path";
  for (NodeId v : result.path) out << ' ' << v;
  out << '\n';
}

bool WaveState::fired(WaveTag tag, NodeId v) const {
  return std::isfinite(fire_time[static_cast<std::size_t>(tag)][at(v)]);
}

PathResult dijkstra_oracle(const WeightedGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kInf);
  std::vector<NodeId> pred(n, kNoVertex);
  std::vector<bool> settled(n, false);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[at(graph.source())] = 0.0;
  heap.emplace(0.0, graph.source());
  std::size_t settled_count = 0;

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[at(u)] || d > dist[at(u)]) continue;
    settled[at(u)] = true;
    ++settled_count;
    if (u == graph.goal()) break;
    for (const auto& arc : graph.arcs(u)) {
      if (settled[at(arc.to)]) continue;
      const double nd = d + arc.length;
      auto& cur = dist[at(arc.to)];
      auto& p = pred[at(arc.to)];
      if (nd < cur || (nd == cur && u < p)) {
        const bool improved = nd < cur;
        cur = nd;
        p = u;
        if (improved) heap.emplace(nd, arc.to);
      }
    }
  }
  if (!settled[at(graph.goal())]) throw Error(ErrorCode::NoPath, "goal is not reachable from source");

  PathResult out;
  out.solver = "dijkstra";
  out.length = dist[at(graph.goal())];
  out.fired_count = settled_count;
  for (NodeId v = graph.goal(); v != kNoVertex; v = pred[at(v)]) out.path.push_back(v);
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

namespace {

struct Pulse {
  double time;
  WaveTag tag;
  NodeId vertex;
  NodeId precursor;

  auto key() const { return std::make_tuple(time, static_cast<int>(tag), vertex, precursor); }
  bool operator>(const Pulse& other) const { return key() > other.key(); }
};

using PulseQueue = std::priority_queue<Pulse, std::vector<Pulse>, std::greater<>>;

WaveState empty_state(std::size_t n) {
  WaveState state;
  for (auto& row : state.fire_time) row.assign(n, kInf);
  for (auto& row : state.precursor) row.assign(n, kNoVertex);
  return state;
}

std::size_t idx(WaveTag tag) { return static_cast<std::size_t>(tag); }

WaveTag opposite(WaveTag tag) { return tag == WaveTag::Source ? WaveTag::Goal : WaveTag::Source; }

// Fires v under the pulse's tag and emits pulses to every neighbour not yet
// fired under that tag.
void fire(WaveState& state, const WeightedGraph& graph, const Pulse& pulse, PulseQueue& queue) {
  const auto t = idx(pulse.tag);
  state.fire_time[t][at(pulse.vertex)] = pulse.time;
  state.precursor[t][at(pulse.vertex)] = pulse.precursor;
  state.log.push_back({pulse.time, pulse.tag, pulse.vertex});
  for (const auto& arc : graph.arcs(pulse.vertex)) {
    if (!state.fired(pulse.tag, arc.to)) queue.push({pulse.time + arc.length, pulse.tag, arc.to, pulse.vertex});
  }
}

std::vector<NodeId> backtrack(const WaveState& state, WaveTag tag, NodeId from) {
  std::vector<NodeId> chain;
  for (NodeId v = from; v != kNoVertex; v = state.precursor[idx(tag)][at(v)]) chain.push_back(v);
  return chain;
}

}  // namespace

WaveRun pcnn_run(const WeightedGraph& graph) {
  WaveRun run{empty_state(graph.vertex_count()), {}};
  auto& state = run.state;
  PulseQueue queue;
  queue.push({0.0, WaveTag::Source, graph.source(), kNoVertex});
  while (!queue.empty() && !state.fired(WaveTag::Source, graph.goal())) {
    const Pulse pulse = queue.top();
    queue.pop();
    if (state.fired(pulse.tag, pulse.vertex)) continue;
    fire(state, graph, pulse, queue);
  }
  if (!state.fired(WaveTag::Source, graph.goal())) throw Error(ErrorCode::NoPath, "goal is not reachable from source");

  auto& result = run.result;
  result.solver = "pcnn";
  result.length = state.fire_time[idx(WaveTag::Source)][at(graph.goal())];
  result.fired_count = state.fired_count();
  result.path = backtrack(state, WaveTag::Source, graph.goal());
  std::reverse(result.path.begin(), result.path.end());
  return run;
}

PathResult pcnn_shortest_path(const WeightedGraph& graph) { return pcnn_run(graph).result; }

WaveRun dspcnn_run(const WeightedGraph& graph) {
  WaveRun run{empty_state(graph.vertex_count()), {}};
  auto& state = run.state;
  auto& best = state.meeting;
  PulseQueue queue;
  queue.push({0.0, WaveTag::Source, graph.source(), kNoVertex});
  queue.push({0.0, WaveTag::Goal, graph.goal(), kNoVertex});

  auto offer = [&](NodeId source_side, NodeId goal_side, double total) {
    if (!best || total < best->total) best = Junction{source_side, goal_side, total};
  };

  while (!queue.empty()) {
    // The midpoint of a shortest path of length D lies on an edge (or vertex)
    // whose endpoints both fire by time D / 2, so draining every pulse up to
    // half the best total is enough to have offered the optimal junction.
    if (best && queue.top().time > best->total / 2.0) break;
    const Pulse pulse = queue.top();
    queue.pop();
    if (state.fired(pulse.tag, pulse.vertex)) continue;
    fire(state, graph, pulse, queue);

    const WaveTag other = opposite(pulse.tag);
    const auto& other_time = state.fire_time[idx(other)];
    const bool from_source = pulse.tag == WaveTag::Source;
    if (state.fired(other, pulse.vertex)) offer(pulse.vertex, pulse.vertex, pulse.time + other_time[at(pulse.vertex)]);
    for (const auto& arc : graph.arcs(pulse.vertex)) {
      if (!state.fired(other, arc.to)) continue;
      const double total = pulse.time + arc.length + other_time[at(arc.to)];
      if (from_source) {
        offer(pulse.vertex, arc.to, total);
      } else {
        offer(arc.to, pulse.vertex, total);
      }
    }
  }
  if (!best) throw Error(ErrorCode::NoPath, "autowaves never met; goal is not reachable from source");

  auto& result = run.result;
  result.solver = "dspcnn";
  result.length = best->total;
  result.fired_count = state.fired_count();
  result.path = backtrack(state, WaveTag::Source, best->source_side);
  std::reverse(result.path.begin(), result.path.end());
  auto tail = backtrack(state, WaveTag::Goal, best->goal_side);
  const auto skip = best->at_vertex() ? 1 : 0;
  result.path.insert(result.path.end(), tail.begin() + skip, tail.end());
  return run;
}

PathResult dspcnn_shortest_path(const WeightedGraph& graph) { return dspcnn_run(graph).result; }

}  // namespace meshcast
