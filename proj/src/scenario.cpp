#include "meshcast/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "meshcast/error.hpp"
#include "meshcast/fixtures.hpp"
#include "meshcast/lca.hpp"
#include "meshcast/mcm.hpp"

namespace meshcast {

std::string_view to_string(TreeAlgorithm a) { return a == TreeAlgorithm::Lca ? "lca" : "mcm"; }

std::string_view to_string(AssignAlgorithm a) {
  switch (a) {
    case AssignAlgorithm::Lca: return "lca";
    case AssignAlgorithm::Ascending: return "ascending";
    case AssignAlgorithm::Heuristic: return "heuristic";
  }
  return "?";
}

std::string_view to_string(Solver s) {
  switch (s) {
    case Solver::Dijkstra: return "dijkstra";
    case Solver::Pcnn: return "pcnn";
    case Solver::Dspcnn: return "dspcnn";
  }
  return "?";
}

TreeAlgorithm parse_tree_algorithm(const std::string& name) {
  if (name == "lca") return TreeAlgorithm::Lca;
  if (name == "mcm") return TreeAlgorithm::Mcm;
  throw Error(ErrorCode::ValidationError, "unknown tree algorithm \"" + name + "\" (expected lca or mcm)");
}

AssignAlgorithm parse_assign_algorithm(const std::string& name) {
  if (name == "lca") return AssignAlgorithm::Lca;
  if (name == "ascending") return AssignAlgorithm::Ascending;
  if (name == "heuristic") return AssignAlgorithm::Heuristic;
  throw Error(ErrorCode::ValidationError,
              "unknown assignment algorithm \"" + name + "\" (expected lca, ascending or heuristic)");
}

Solver parse_solver(const std::string& name) {
  if (name == "dijkstra") return Solver::Dijkstra;
  if (name == "pcnn") return Solver::Pcnn;
  if (name == "dspcnn") return Solver::Dspcnn;
  throw Error(ErrorCode::ValidationError, "unknown solver \"" + name + "\" (expected dijkstra, pcnn or dspcnn)");
}

namespace {

void validation(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

void only_keys(const Json& obj, const char* where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw Error(ErrorCode::ParseError, std::string(where) + " must be an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) validation(std::string("unknown key \"") + item.key() + "\" in " + where);
  }
}

template <typename T>
T get_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

template <typename T>
T require(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return get_or<T>(obj, key, T{});
}

// Prefixes module errors with the scenario file and the failing step.
template <typename Fn>
auto step(const Scenario& sc, const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string where = sc.file.empty() ? sc.id : sc.file.string();
    throw Error(e.code(), where + ": step '" + name + "': " + e.detail());
  }
}

}  // namespace

Scenario parse_scenario(const Json& doc, const std::filesystem::path& file) {
  only_keys(doc, "scenario", {"id", "network", "tree", "assign", "simulate", "shortest_path", "sweep"});
  Scenario sc;
  sc.file = file;
  sc.id = get_or<std::string>(doc, "id", file.empty() ? std::string("scenario") : file.stem().string());
  if (sc.id.empty() || sc.id.find_first_of(",\n\"") != std::string::npos)
    validation("scenario id must be non-empty and free of commas, quotes and newlines");

  const auto net = require<Json>(doc, "network");
  only_keys(net, "network", {"fixture", "file", "inline", "generate"});
  if (net.size() != 1) validation("network needs exactly one of fixture, file, inline, generate");
  if (net.contains("fixture")) {
    sc.fixture = require<std::string>(net, "fixture");
    if (!fixtures::by_name(*sc.fixture)) validation("unknown fixture \"" + *sc.fixture + "\"");
  } else if (net.contains("file")) {
    std::filesystem::path p = require<std::string>(net, "file");
    if (p.is_relative() && !file.empty()) p = file.parent_path() / p;
    if (!std::filesystem::exists(p)) validation("network file not found: " + p.string());
    sc.network_file = p;
  } else if (net.contains("inline")) {
    try {
      sc.inline_network = network_from_json(net.at("inline"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      validation("inline network: " + e.detail());
    }
  } else {
    const auto& gen = net.at("generate");
    only_keys(gen, "network.generate", {"nodes", "side", "range", "receivers", "seed"});
    MeshParams p;
    p.node_count = require<int>(gen, "nodes");
    p.side = require<double>(gen, "side");
    p.comm_range = require<double>(gen, "range");
    p.receiver_count = require<int>(gen, "receivers");
    p.seed = require<std::uint64_t>(gen, "seed");
    if (p.node_count < 2 || !(p.side > 0) || !(p.comm_range > 0) || p.receiver_count < 1 ||
        p.receiver_count > p.node_count - 1)
      validation("generator parameters out of range");
    sc.generate = p;
  }

  if (doc.contains("tree")) {
    const auto& t = doc.at("tree");
    only_keys(t, "tree", {"algorithm", "seed"});
    sc.tree = parse_tree_algorithm(get_or<std::string>(t, "algorithm", "mcm"));
    sc.tree_seed = get_or<std::uint64_t>(t, "seed", 1);
  }
  if (doc.contains("assign")) {
    const auto& a = doc.at("assign");
    only_keys(a, "assign", {"algorithm", "channels", "delta", "neighbor_radius"});
    sc.assign = parse_assign_algorithm(get_or<std::string>(a, "algorithm", "ascending"));
    sc.channels = get_or<int>(a, "channels", 3);
    sc.delta = get_or<double>(a, "delta", 0.5);
    sc.neighbor_radius = get_or<double>(a, "neighbor_radius", 0.0);
    if (sc.channels < 1) validation("assign.channels must be at least 1");
    if (!(sc.delta > 0.0 && sc.delta <= 1.0)) validation("assign.delta must lie in (0, 1]");
  }
  if (doc.contains("simulate")) {
    const auto& s = doc.at("simulate");
    only_keys(s, "simulate", {"slots", "rate", "seed"});
    SimConfig cfg;
    cfg.slots = get_or<int>(s, "slots", 200);
    cfg.packets_per_slot = get_or<double>(s, "rate", 1.0);
    cfg.seed = get_or<std::uint64_t>(s, "seed", 1);
    cfg.interference.delta = sc.delta;
    if (cfg.slots < 1) validation("simulate.slots must be at least 1");
    if (!(cfg.packets_per_slot > 0)) validation("simulate.rate must be positive");
    sc.sim = cfg;
  }
  if (doc.contains("shortest_path")) {
    const auto& q = doc.at("shortest_path");
    only_keys(q, "shortest_path", {"solvers", "mode", "goal"});
    ShortestPathQuery query;
    if (q.contains("solvers")) {
      query.solvers.clear();
      for (const auto& name : require<std::vector<std::string>>(q, "solvers")) query.solvers.push_back(parse_solver(name));
      if (query.solvers.empty()) validation("shortest_path.solvers is empty");
    }
    const auto mode = get_or<std::string>(q, "mode", "hops");
    if (mode == "hops") {
      query.mode = LengthMode::Hops;
    } else if (mode == "euclidean") {
      query.mode = LengthMode::Euclidean;
    } else {
      validation("shortest_path.mode must be hops or euclidean");
    }
    const auto goal = require<Json>(q, "goal");
    if (goal.is_string()) {
      sc.goal_label = goal.get<std::string>();
    } else if (goal.is_number_integer()) {
      query.goal = goal.get<NodeId>();
    } else {
      throw Error(ErrorCode::ParseError, "shortest_path.goal must be a node id or label");
    }
    sc.shortest_path = query;
  }
  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    only_keys(s, "sweep", {"seeds", "channels", "trees"});
    SweepPlan plan;
    const auto seeds = require<Json>(s, "seeds");
    if (seeds.is_array()) {
      plan.seeds = seeds.get<std::vector<std::uint64_t>>();
    } else {
      only_keys(seeds, "sweep.seeds", {"start", "count"});
      const auto start = get_or<std::uint64_t>(seeds, "start", 1);
      const auto count = require<std::uint64_t>(seeds, "count");
      for (std::uint64_t i = 0; i < count; ++i) plan.seeds.push_back(start + i);
    }
    plan.channels = get_or<std::vector<int>>(s, "channels", {sc.channels});
    for (const auto& name : get_or<std::vector<std::string>>(s, "trees", {std::string(to_string(sc.tree))}))
      plan.trees.push_back(parse_tree_algorithm(name));
    if (plan.seeds.empty() || plan.channels.empty() || plan.trees.empty()) validation("sweep lists must be non-empty");
    if (std::any_of(plan.channels.begin(), plan.channels.end(), [](int c) { return c < 1; }))
      validation("sweep channel counts must be at least 1");
    sc.sweep = plan;
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) throw Error(ErrorCode::IoError, "scenario file not found: " + file.string());
  return parse_scenario(read_json_file(file), file);
}

MeshNetwork resolve_network(const Scenario& sc, const RunOptions& options) {
  return step(sc, "network", [&]() -> MeshNetwork {
    if (sc.fixture) return *fixtures::by_name(*sc.fixture);
    if (sc.inline_network) return *sc.inline_network;
    if (sc.network_file) return network_from_json(read_json_file(*sc.network_file));
    MeshParams p = *sc.generate;
    if (options.seed_override) p.seed = *options.seed_override;
    return generate_random_mesh(p);
  });
}

namespace {

MulticastTree build_tree(const Scenario& sc, TreeAlgorithm algorithm, const MeshNetwork& net, const TreeMesh& mesh) {
  return step(sc, "tree", [&] {
    auto tree = algorithm == TreeAlgorithm::Lca ? lca_build_tree(mesh, net.receivers(), sc.tree_seed)
                                                : mcm_build_tree(mesh, net.receivers());
    validate_tree(tree, mesh.levels);
    return tree;
  });
}

ChannelAssignment assign_channels(const Scenario& sc, int channels, const MeshNetwork& net, const MulticastTree& tree,
                                  const LevelDecomposition& levels) {
  return step(sc, "assign", [&] {
    switch (sc.assign) {
      case AssignAlgorithm::Lca: return lca_assign_channels(tree, levels, channels);
      case AssignAlgorithm::Ascending: return ascending_assignment(tree, channels);
      case AssignAlgorithm::Heuristic: break;
    }
    return heuristic_assignment(tree, net, {channels, sc.delta, sc.neighbor_radius});
  });
}

SimMetrics simulate(const Scenario& sc, const MeshNetwork& net, const MulticastTree& tree,
                    const ChannelAssignment& assignment) {
  return step(sc, "simulate", [&] {
    SimConfig cfg = sc.sim.value_or(SimConfig{});
    cfg.interference.delta = sc.delta;
    return simulate_multicast(net, tree, assignment, cfg);
  });
}

}  // namespace

MetricsRow metrics_row(const Scenario& sc, const std::string& scenario_id, TreeAlgorithm tree, int channels,
                       const MulticastTree& built, const SimMetrics& metrics) {
  MetricsRow row;
  row.scenario_id = scenario_id;
  row.algorithm = std::string(to_string(tree)) + "+" + std::string(to_string(sc.assign));
  row.channels = channels;
  row.delta = sc.delta;
  row.throughput = metrics.throughput;
  row.avg_delay = metrics.avg_delay;
  row.conflict_losses = metrics.conflict_losses;
  row.relay_count = built.relays().size();
  return row;
}

PipelineResult run_pipeline(const Scenario& sc, const RunOptions& options) {
  auto net = resolve_network(sc, options);
  auto levels = step(sc, "levels", [&] { return bfs_levels(net); });
  const auto mesh = step(sc, "tree_mesh", [&] { return build_tree_mesh(net, levels); });
  auto tree = build_tree(sc, sc.tree, net, mesh);
  auto assignment = assign_channels(sc, sc.channels, net, tree, levels);
  PipelineResult out{std::move(net), std::move(levels), std::move(tree), std::move(assignment), std::nullopt, {}};
  if (sc.sim) out.metrics = simulate(sc, out.network, out.tree, out.assignment);
  if (sc.shortest_path) {
    step(sc, "shortest_path", [&] {
      ShortestPathQuery q = *sc.shortest_path;
      if (sc.goal_label) {
        const auto id = out.network.find_label(*sc.goal_label);
        if (!id) throw Error(ErrorCode::ValidationError, "no node labelled \"" + *sc.goal_label + "\"");
        q.goal = *id;
      }
      const auto graph = mesh_to_weighted(out.network, q.mode, q.goal);
      for (Solver s : q.solvers) {
        switch (s) {
          case Solver::Dijkstra: out.paths.push_back(dijkstra_oracle(graph)); break;
          case Solver::Pcnn: out.paths.push_back(pcnn_shortest_path(graph)); break;
          case Solver::Dspcnn: out.paths.push_back(dspcnn_shortest_path(graph)); break;
        }
      }
      return 0;
    });
  }
  return out;
}

std::vector<MetricsRow> run_sweep(const Scenario& sc, const RunOptions& options) {
  if (!sc.sweep) throw Error(ErrorCode::ValidationError, sc.id + ": scenario has no sweep section");
  const SweepPlan& plan = *sc.sweep;
  std::vector<std::uint64_t> seeds = plan.seeds;
  if (options.seed_override) {
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = *options.seed_override + i;
  }
  const std::size_t per_seed = plan.trees.size() * plan.channels.size();
  std::vector<MetricsRow> rows(seeds.size() * per_seed);

  auto run_one = [&](std::size_t i) {
    Scenario local = sc;
    if (local.generate) local.generate->seed = seeds[i];
    const auto net = resolve_network(local);
    const auto levels = step(local, "levels", [&] { return bfs_levels(net); });
    const auto mesh = step(local, "tree_mesh", [&] { return build_tree_mesh(net, levels); });
    const std::string id = sc.id + "/seed=" + std::to_string(seeds[i]);
    std::size_t slot = i * per_seed;
    for (TreeAlgorithm t : plan.trees) {
      const auto tree = build_tree(local, t, net, mesh);
      for (int c : plan.channels) {
        const auto assignment = assign_channels(local, c, net, tree, levels);
        rows[slot++] = metrics_row(local, id, t, c, tree, simulate(local, net, tree, assignment));
      }
    }
  };

  const auto jobs = static_cast<std::size_t>(std::max(1, options.jobs));
  if (jobs == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) run_one(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(seeds.size());
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < std::min(jobs, seeds.size()); ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < seeds.size(); i = next++) {
        try {
          run_one(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<std::filesystem::path> run_scenario(const Scenario& sc, const std::filesystem::path& out_dir,
                                                const RunOptions& options) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const char* name, const std::string& content) {
    const auto path = out_dir / name;
    write_file_atomic(path, content);
    written.push_back(path);
  };
  const auto result = run_pipeline(sc, options);
  emit("network.json", canonical(to_json(result.network)));
  emit("tree.json", canonical(to_json(result.tree)));
  emit("assignment.json", canonical(to_json(result.assignment)));
  if (result.metrics) {
    emit("metrics.csv", format_metrics_csv({metrics_row(sc, sc.id, sc.tree, sc.channels, result.tree, *result.metrics)}));
  }
  if (!result.paths.empty()) {
    std::ostringstream out;
    for (const auto& p : result.paths) write_path_result(out, p);
    emit("paths.txt", out.str());
  }
  if (sc.sweep) emit("sweep.csv", format_metrics_csv(run_sweep(sc, options)));
  return written;
}

}  // namespace meshcast
