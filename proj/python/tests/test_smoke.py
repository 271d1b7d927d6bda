import json
import math
import pathlib

import pytest

import meshcast

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_level_example_lca_tree():
    net = meshcast.Network.fixture("level_example")
    tree = meshcast.lca_tree(net, 3)
    edges = {(net.label(c), net.label(p)) for c, p in tree.edges}
    assert edges == {("g", "d"), ("d", "b"), ("b", "s"), ("e", "b"), ("f", "c"), ("c", "a"), ("a", "s")}
    levels = meshcast.bfs_levels(net)
    channels = meshcast.lca_channels(net, tree, 4)
    for v, si in channels.si.items():
        assert si == levels[v]


def test_relay_example_mcm_and_ascending():
    net = meshcast.Network.fixture("relay_example")
    tree = meshcast.mcm_tree(net)
    assert {net.label(v) for v in tree.relays} == {"2", "4"}
    a = meshcast.ascending_channels(tree, 3)
    assert a.si[net.find_label("4")] == 2
    assert json.loads(a.to_json())["channels"] == 3


def test_interference_range_values():
    assert meshcast.interference_range(0, 2, 250.0, 0.5) == pytest.approx(62.5, rel=1e-12)
    assert meshcast.interference_range(3, 1, 100.0, 0.8) == pytest.approx(64.0, rel=1e-12)


def test_heuristic_and_simulation():
    net = meshcast.Network.generate(30, 1000.0, 250.0, 5, 42)
    tree = meshcast.mcm_tree(net)
    h = meshcast.heuristic_channels(tree, net, 3, 0.5)
    asc = meshcast.ascending_channels(tree, 3)
    assert meshcast.total_interference(tree, h, net) >= 0.0
    for v in tree.nodes:
        assert tree.depth(v) == meshcast.bfs_levels(net)[v]
    m1 = meshcast.simulate(net, tree, asc, slots=100, seed=3)
    m2 = meshcast.simulate(net, tree, asc, slots=100, seed=3)
    assert m1 == m2
    assert 0.0 <= m1["throughput"] <= 1.0


def test_shortest_path_solvers_agree():
    edges = [(0, 1, 4.0), (0, 2, 1.0), (2, 1, 2.0), (1, 3, 5.0), (2, 3, 8.0)]
    results = [meshcast.shortest_path(4, edges, 0, 3, s) for s in ("dijkstra", "pcnn", "dspcnn")]
    assert all(math.isclose(r["length"], 8.0) for r in results)
    assert results[2]["path"][0] == 0 and results[2]["path"][-1] == 3


def test_errors_carry_codes():
    with pytest.raises(meshcast.MeshcastError, match="INVALID_ARGUMENT|VALIDATION_ERROR"):
        meshcast.Network.fixture("nope")
    with pytest.raises(meshcast.MeshcastError):
        meshcast.shortest_path(2, [(0, 1, 1.0)], 0, 1, "bogus")


def test_run_scenario(tmp_path):
    files = meshcast.run_scenario(str(ROOT / "scenarios" / "relay_example_mcm.json"), str(tmp_path))
    assert any(f.endswith("tree.json") for f in files)
