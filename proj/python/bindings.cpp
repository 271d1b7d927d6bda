#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "meshcast/error.hpp"
#include "meshcast/fixtures.hpp"
#include "meshcast/interference.hpp"
#include "meshcast/lca.hpp"
#include "meshcast/mcm.hpp"
#include "meshcast/scenario.hpp"
#include "meshcast/serialize.hpp"
#include "meshcast/shortest_path.hpp"
#include "meshcast/simulator.hpp"

namespace py = pybind11;
using namespace meshcast;

namespace {

std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xy) {
  std::vector<Point> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

TreeMesh tree_mesh_of(const MeshNetwork& net) { return build_tree_mesh(net, bfs_levels(net)); }

py::dict metrics_dict(const SimMetrics& m) {
  py::dict d;
  d["delivered"] = m.delivered;
  d["injected"] = m.injected;
  d["throughput"] = m.throughput;
  d["avg_delay"] = m.avg_delay;
  d["conflict_losses"] = m.conflict_losses;
  return d;
}

py::dict path_dict(const PathResult& r) {
  py::dict d;
  d["solver"] = r.solver;
  d["length"] = r.length;
  d["fired_count"] = r.fired_count;
  d["path"] = r.path;
  return d;
}

}  // namespace

PYBIND11_MODULE(_meshcast, m) {
  m.doc() = "Multicast tree construction, channel assignment and shortest-path search for wireless meshes.";

  // Message is "CODE: detail".
  py::register_exception<Error>(m, "MeshcastError", PyExc_RuntimeError);

  py::class_<MeshNetwork>(m, "Network")
      .def_static(
          "unit_disk",
          [](const std::vector<std::pair<double, double>>& xy, double range, NodeId source,
             std::vector<NodeId> receivers) { return MeshNetwork::unit_disk(to_points(xy), range, source, receivers); },
          py::arg("positions"), py::arg("range"), py::arg("source"), py::arg("receivers"))
      .def_static(
          "with_edges",
          [](const std::vector<std::pair<double, double>>& xy, double range, NodeId source,
             std::vector<NodeId> receivers, const std::vector<Edge>& edges) {
            return MeshNetwork::with_edges(to_points(xy), range, source, receivers, edges);
          },
          py::arg("positions"), py::arg("range"), py::arg("source"), py::arg("receivers"), py::arg("edges"))
      .def_static(
          "generate",
          [](int nodes, double side, double range, int receivers, std::uint64_t seed) {
            return generate_random_mesh({nodes, side, range, receivers, seed});
          },
          py::arg("nodes"), py::arg("side"), py::arg("range"), py::arg("receivers"), py::arg("seed"))
      .def_static(
          "fixture",
          [](const std::string& name) {
            auto net = fixtures::by_name(name);
            if (!net) throw Error(ErrorCode::InvalidArgument, "unknown fixture " + name);
            return *net;
          },
          py::arg("name"))
      .def_static("from_json", [](const std::string& text) { return network_from_json(Json::parse(text)); })
      .def("to_json", [](const MeshNetwork& n) { return canonical(to_json(n)); })
      .def_property_readonly("node_count", &MeshNetwork::node_count)
      .def_property_readonly("range", &MeshNetwork::comm_range)
      .def_property_readonly("source", &MeshNetwork::source)
      .def_property_readonly("receivers", &MeshNetwork::receivers)
      .def_property_readonly("edges", &MeshNetwork::edges)
      .def_property_readonly("positions",
                             [](const MeshNetwork& n) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : n.positions()) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def("label", &MeshNetwork::label)
      .def("find_label", &MeshNetwork::find_label);

  py::class_<MulticastTree>(m, "Tree")
      .def_readonly("source", &MulticastTree::source)
      .def_readonly("receivers", &MulticastTree::receivers)
      .def_readonly("nodes", &MulticastTree::nodes)
      .def_readonly("parent_of", &MulticastTree::parent_of)
      .def_property_readonly("edges", &MulticastTree::edges)
      .def_property_readonly("relays", &MulticastTree::relays)
      .def("depth", &MulticastTree::depth)
      .def("to_json", [](const MulticastTree& t) { return canonical(to_json(t)); });

  py::class_<ChannelAssignment>(m, "Assignment")
      .def_readonly("channel_count", &ChannelAssignment::channel_count)
      .def_readonly("ri", &ChannelAssignment::ri)
      .def_readonly("si", &ChannelAssignment::si)
      .def("to_json", [](const ChannelAssignment& a) { return canonical(to_json(a)); });

  m.def("bfs_levels", [](const MeshNetwork& n) { return bfs_levels(n).level; }, py::arg("net"),
        "Hop level of every node, -1 if unreachable.");
  m.def("lca_tree", [](const MeshNetwork& n, std::uint64_t seed) { return lca_build_tree(tree_mesh_of(n), n.receivers(), seed); },
        py::arg("net"), py::arg("seed"));
  m.def("mcm_tree", [](const MeshNetwork& n) { return mcm_build_tree(tree_mesh_of(n), n.receivers()); }, py::arg("net"));
  m.def("lca_channels",
        [](const MeshNetwork& n, const MulticastTree& t, int c) { return lca_assign_channels(t, bfs_levels(n), c); },
        py::arg("net"), py::arg("tree"), py::arg("channels"));
  m.def("ascending_channels", &ascending_assignment, py::arg("tree"), py::arg("channels"));
  m.def(
      "heuristic_channels",
      [](const MulticastTree& t, const MeshNetwork& n, int c, double delta, double radius) {
        return heuristic_assignment(t, n, {c, delta, radius});
      },
      py::arg("tree"), py::arg("net"), py::arg("channels") = 3, py::arg("delta") = 0.5, py::arg("neighbor_radius") = 0.0);
  m.def(
      "interference_range",
      [](Channel a, Channel b, double range, double delta) { return interference_range(a, b, {range, delta}); },
      py::arg("a"), py::arg("b"), py::arg("range") = 250.0, py::arg("delta") = 0.5);
  m.def(
      "total_interference",
      [](const MulticastTree& t, const ChannelAssignment& a, const MeshNetwork& n, double delta, double radius) {
        if (radius <= 0) radius = 2 * n.comm_range();
        return total_interference(t, a, n, {n.comm_range(), delta}, radius);
      },
      py::arg("tree"), py::arg("assignment"), py::arg("net"), py::arg("delta") = 0.5, py::arg("radius") = 0.0);
  m.def(
      "simulate",
      [](const MeshNetwork& n, const MulticastTree& t, const ChannelAssignment& a, int slots, double rate,
         std::uint64_t seed, double delta) {
        SimConfig cfg;
        cfg.slots = slots;
        cfg.packets_per_slot = rate;
        cfg.seed = seed;
        cfg.interference.delta = delta;
        return metrics_dict(simulate_multicast(n, t, a, cfg));
      },
      py::arg("net"), py::arg("tree"), py::arg("assignment"), py::arg("slots") = 200, py::arg("rate") = 1.0,
      py::arg("seed") = 1, py::arg("delta") = 0.5);
  m.def(
      "shortest_path",
      [](std::size_t n, const std::vector<std::tuple<NodeId, NodeId, double>>& edges, NodeId source, NodeId goal,
         const std::string& solver) {
        std::vector<WeightedEdge> list;
        for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
        const WeightedGraph g(n, std::move(list), source, goal);
        switch (parse_solver(solver)) {
          case Solver::Dijkstra: return path_dict(dijkstra_oracle(g));
          case Solver::Pcnn: return path_dict(pcnn_shortest_path(g));
          case Solver::Dspcnn: break;
        }
        return path_dict(dspcnn_shortest_path(g));
      },
      py::arg("vertex_count"), py::arg("edges"), py::arg("source"), py::arg("goal"), py::arg("solver") = "dspcnn");
  m.def(
      "run_scenario",
      [](const std::string& scenario, const std::string& out_dir) {
        std::vector<std::string> out;
        for (const auto& p : run_scenario(load_scenario(scenario), out_dir)) out.push_back(p.string());
        return out;
      },
      py::arg("scenario"), py::arg("out_dir"));
}
