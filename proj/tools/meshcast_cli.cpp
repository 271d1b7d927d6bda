// meshcast: command-line front end for the multicast / channel assignment /
// shortest-path pipeline.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "meshcast/compare.hpp"
#include "meshcast/error.hpp"
#include "meshcast/fixtures.hpp"
#include "meshcast/lca.hpp"
#include "meshcast/mcm.hpp"
#include "meshcast/scenario.hpp"
#include "meshcast/serialize.hpp"
#include "meshcast/shortest_path.hpp"
#include "meshcast/simulator.hpp"

namespace fs = std::filesystem;
using namespace meshcast;

namespace {

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_file_atomic(out, content);
  }
}

MeshNetwork load_network(const std::string& path) {
  if (auto fx = fixtures::by_name(path)) return *fx;
  return network_from_json(read_json_file(path));
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 2;
    case ErrorCode::ValidationError: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicast trees, channel assignment, interference simulation and autowave shortest paths"};
  app.require_subcommand(1);

  std::string scenario_path, out;
  std::optional<std::uint64_t> seed_override;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run a scenario file end to end");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed-override", seed_override, "Replace the generator seed");
  run->add_option("--jobs", jobs, "Parallel sweep workers")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Run only the sweep section of a scenario");
  sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--out", out, "Output directory")->required();
  sweep->add_option("--seed-override", seed_override, "First sweep seed");
  sweep->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  MeshParams gen;
  auto* generate = app.add_subcommand("generate", "Generate a random unit-disk mesh (or resolve a scenario's network)");
  generate->add_option("--scenario", scenario_path, "Take the network from this scenario");
  generate->add_option("--nodes", gen.node_count, "Node count");
  generate->add_option("--side", gen.side, "Square side in metres");
  generate->add_option("--range", gen.comm_range, "Communication range in metres");
  generate->add_option("--receivers", gen.receiver_count, "Receiver count");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--seed-override", seed_override, "Replace the scenario's generator seed");
  generate->add_option("--out", out, "Output file (default stdout)");

  std::string network_path, tree_path, assignment_path, algorithm;
  std::uint64_t seed = 1;
  auto* tree_cmd = app.add_subcommand("tree", "Build a multicast tree");
  tree_cmd->add_option("--network", network_path, "Network JSON or fixture name")->required();
  tree_cmd->add_option("--algorithm", algorithm, "lca or mcm")->required();
  tree_cmd->add_option("--seed", seed, "Seed for random parent picks (lca)");
  tree_cmd->add_option("--out", out, "Output file (default stdout)");

  int channels = 3;
  double delta = 0.5, neighbor_radius = 0.0;
  auto* assign = app.add_subcommand("assign", "Assign channels to a tree");
  assign->add_option("--network", network_path, "Network JSON or fixture name")->required();
  assign->add_option("--tree", tree_path, "Tree JSON")->required();
  assign->add_option("--algorithm", algorithm, "lca, ascending or heuristic")->required();
  assign->add_option("--channels", channels, "Channel count")->check(CLI::PositiveNumber);
  assign->add_option("--delta", delta, "Interference factor in (0, 1]");
  assign->add_option("--neighbor-radius", neighbor_radius, "Neighbour radius (default 2 x range)");
  assign->add_option("--out", out, "Output file (default stdout)");

  SimConfig sim;
  std::string scenario_id = "adhoc";
  auto* simulate = app.add_subcommand("simulate", "Simulate multicast delivery");
  simulate->add_option("--network", network_path, "Network JSON or fixture name")->required();
  simulate->add_option("--tree", tree_path, "Tree JSON")->required();
  simulate->add_option("--assignment", assignment_path, "Assignment JSON")->required();
  simulate->add_option("--slots", sim.slots, "Simulated slots");
  simulate->add_option("--rate", sim.packets_per_slot, "Packets per slot at the source");
  simulate->add_option("--seed", sim.seed, "Backoff seed");
  simulate->add_option("--delta", delta, "Interference factor in (0, 1]");
  simulate->add_option("--id", scenario_id, "scenario_id column value");
  simulate->add_option("--out", out, "Metrics CSV (default stdout)");

  std::string graph_path, goal, mode = "hops", solver = "all";
  auto* sp = app.add_subcommand("sp", "Point-to-point shortest path");
  sp->add_option("--graph", graph_path, "Edge-list file (n m s g / u v length)");
  sp->add_option("--network", network_path, "Network JSON or fixture name (alternative to --graph)");
  sp->add_option("--goal", goal, "Goal node id or label (with --network)");
  sp->add_option("--mode", mode, "hops or euclidean (with --network)");
  sp->add_option("--solver", solver, "dspcnn, pcnn, dijkstra or all");
  sp->add_option("--out", out, "Output file (default stdout)");

  std::string csv_a, csv_b;
  auto* compare = app.add_subcommand("compare", "Compare two metrics CSVs");
  compare->add_option("a", csv_a, "Baseline CSV")->required();
  compare->add_option("b", csv_b, "Candidate CSV")->required();
  compare->add_option("--out", out, "Also write the summary table here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto sc = load_scenario(scenario_path);
      for (const auto& p : run_scenario(sc, out, {seed_override, jobs})) std::cout << p.string() << '\n';
    } else if (sweep->parsed()) {
      const auto sc = load_scenario(scenario_path);
      const auto path = fs::path(out) / "sweep.csv";
      write_file_atomic(path, format_metrics_csv(run_sweep(sc, {seed_override, jobs})));
      std::cout << path.string() << '\n';
    } else if (generate->parsed()) {
      const MeshNetwork net = scenario_path.empty() ? generate_random_mesh(gen)
                                                    : resolve_network(load_scenario(scenario_path), {seed_override, 1});
      emit(out, canonical(to_json(net)));
    } else if (tree_cmd->parsed()) {
      const auto net = load_network(network_path);
      const auto mesh = build_tree_mesh(net, bfs_levels(net));
      const auto kind = parse_tree_algorithm(algorithm);
      const auto tree = kind == TreeAlgorithm::Lca ? lca_build_tree(mesh, net.receivers(), seed)
                                                   : mcm_build_tree(mesh, net.receivers());
      validate_tree(tree, mesh.levels);
      emit(out, canonical(to_json(tree)));
    } else if (assign->parsed()) {
      const auto net = load_network(network_path);
      const auto tree = tree_from_json(read_json_file(tree_path));
      const auto levels = bfs_levels(net);
      validate_tree(tree, levels);
      ChannelAssignment a;
      switch (parse_assign_algorithm(algorithm)) {
        case AssignAlgorithm::Lca: a = lca_assign_channels(tree, levels, channels); break;
        case AssignAlgorithm::Ascending: a = ascending_assignment(tree, channels); break;
        case AssignAlgorithm::Heuristic: a = heuristic_assignment(tree, net, {channels, delta, neighbor_radius}); break;
      }
      emit(out, canonical(to_json(a)));
    } else if (simulate->parsed()) {
      const auto net = load_network(network_path);
      const auto tree = tree_from_json(read_json_file(tree_path));
      const auto a = assignment_from_json(read_json_file(assignment_path));
      sim.interference.delta = delta;
      const auto m = simulate_multicast(net, tree, a, sim);
      MetricsRow row{scenario_id, "given", a.channel_count, delta, m.throughput, m.avg_delay, m.conflict_losses,
                     tree.relays().size()};
      emit(out, format_metrics_csv({row}));
    } else if (sp->parsed()) {
      std::optional<WeightedGraph> graph;
      if (!graph_path.empty()) {
        std::ifstream in(graph_path);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + graph_path);
        graph = read_edge_list(in);
      } else if (!network_path.empty()) {
        const auto net = load_network(network_path);
        auto g = net.find_label(goal);
        if (!g) throw Error(ErrorCode::ValidationError, "unknown goal \"" + goal + "\"");
        if (mode != "hops" && mode != "euclidean") throw Error(ErrorCode::ValidationError, "mode must be hops or euclidean");
        graph = mesh_to_weighted(net, mode == "hops" ? LengthMode::Hops : LengthMode::Euclidean, *g);
      } else {
        throw Error(ErrorCode::ValidationError, "sp needs --graph or --network");
      }
      std::ostringstream text;
      const bool all = solver == "all";
      if (!all) (void)parse_solver(solver);
      if (all || solver == "dspcnn") write_path_result(text, dspcnn_shortest_path(*graph));
      if (all || solver == "pcnn") write_path_result(text, pcnn_shortest_path(*graph));
      if (all || solver == "dijkstra") write_path_result(text, dijkstra_oracle(*graph));
      emit(out, text.str());
    } else if (compare->parsed()) {
      const auto table = format_comparison(compare_metrics(read_metrics_csv(csv_a), read_metrics_csv(csv_b)));
      std::cout << table;
      if (!out.empty()) write_file_atomic(out, table);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
