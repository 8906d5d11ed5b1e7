import os
from pathlib import Path

import networkx as nx
import pytest

from spreadlab.core.config import config, get_cfg_defaults
from spreadlab.graph.graph import Graph


def graph_from_nx(G: nx.Graph) -> Graph:
    """Relabel a networkx graph onto dense ids and wrap it."""
    G = nx.convert_node_labels_to_integers(G, ordering='sorted')
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k23_graph():
    # left side u1=0, u2=1; right side v1=2, v2=3, v3=4
    return Graph.from_edges(5, [(u, v) for u in (0, 1) for v in (2, 3, 4)])


def er_graph(n, p, seed):
    return graph_from_nx(nx.gnp_random_graph(n, p, seed=seed))


def ba_graph(n, m, seed):
    return graph_from_nx(nx.barabasi_albert_graph(n, m, seed=seed))


@pytest.fixture
def path5():
    return path_graph(5)


@pytest.fixture
def path7():
    return path_graph(7)


@pytest.fixture
def star5():
    return star_graph(5)


@pytest.fixture
def triangle():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k23():
    return k23_graph()


@pytest.fixture
def cycle4():
    return cycle_graph(4)


@pytest.fixture
def edge():
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def small_graphs():
    """The N <= 8 fixture set used for exact-versus-sampled checks."""
    return {
        'path': path_graph(5),
        'star': star_graph(5),
        'triangle': complete_graph(3),
        'k23': k23_graph(),
        'cycle': cycle_graph(6),
    }


@pytest.fixture
def ba_small():
    return ba_graph(200, 3, seed=1)


@pytest.fixture
def cfg(tmp_path):
    cfg = get_cfg_defaults()
    cfg.OUTPUT_DIR = str(tmp_path / 'results')
    cfg.EXP_NAME = 'test'
    cfg.SIM.REPLICATIONS = 20
    return cfg


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    from spreadlab.utils import cache_utils
    monkeypatch.setattr(cache_utils.graph_cache, 'cache_dir', tmp_path / 'cache')
    cache_utils.graph_cache.computation_cache.clear()


def dataset_path(name):
    return Path(os.getenv('SPREADLAB_DATA_DIR', config.data_dir)) / name


def write_graph_file(path, g: Graph):
    from spreadlab.graph.graph import write_edge_list
    with open(path, 'w', encoding='utf-8') as sink:
        write_edge_list(g, sink)
    return path
