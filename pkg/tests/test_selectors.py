import itertools

import pytest

from spreadlab.core.exceptions import DomainError
from spreadlab.graph.graph import Graph
from spreadlab.graph.traversal import shortest_distance
from spreadlab.influence.overlap import ri_report
from spreadlab.influence.placement import min_pairwise_distance_rule
from spreadlab.selection.seeds import (
    EXHAUSTED_DEGREE_FILTER,
    NO_FEASIBLE_CANDIDATE,
    REACHED_M,
    SeedSet,
    degree_order,
)
from spreadlab.selection.selectors import (
    SELECTORS,
    dri_capacity,
    select,
    select_ci,
    select_degree,
    select_dri,
    select_dsn,
    select_nc,
    select_nd,
)

from conftest import ba_graph, complete_graph, er_graph, path_graph

CORPUS = [er_graph(200, 0.05, seed=s) for s in range(50)] + [ba_graph(200, 3, seed=s) for s in range(50)]


def triangle_with_pendant():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])


def test_degree_order_breaks_ties_by_id(path5):
    assert degree_order(path5).tolist() == [1, 2, 3, 0, 4]


def test_seed_set_rejects_duplicates():
    with pytest.raises(ValueError):
        SeedSet((1, 1), REACHED_M)


def test_prefix_keeps_reason_when_short():
    seeds = SeedSet((3, 1), NO_FEASIBLE_CANDIDATE, 'dri')
    assert seeds.prefix(1) == SeedSet((3,), REACHED_M, 'dri')
    assert seeds.prefix(5).converged_reason == NO_FEASIBLE_CANDIDATE


# degree

def test_degree_star(star5):
    assert select_degree(star5, 1).nodes == (0,)


def test_degree_path_tie_break():
    assert select_degree(path_graph(3), 2).nodes == (1, 0)


def test_degree_complete():
    assert select_degree(complete_graph(5), 3).nodes == (0, 1, 2)


def test_degree_rejects_large_m(path5):
    with pytest.raises(DomainError):
        select_degree(path5, 6)
    with pytest.raises(DomainError):
        select_degree(path5, 0)


# DRI

def test_dri_single_spreader_is_top_degree(star5, k23):
    assert select_dri(star5, 0.5, 1).nodes == (0,)
    assert select_dri(k23, 0.5, 1).nodes == (0,)


def test_dri_k23():
    from conftest import k23_graph
    seeds = select_dri(k23_graph(), 0.8, 3)
    assert seeds.nodes == (0, 1)
    assert seeds.converged_reason == NO_FEASIBLE_CANDIDATE


def test_dri_triangle(triangle):
    seeds = select_dri(triangle, 0.6, 2)
    assert seeds.nodes == (0, 1)
    assert seeds.converged_reason == REACHED_M


def test_dri_stops_at_degree_one(star5):
    seeds = select_dri(star5, 0.3, 3)
    assert seeds.nodes == (0,)
    assert seeds.converged_reason == EXHAUSTED_DEGREE_FILTER


def test_dri_rejects_bad_beta(path5):
    with pytest.raises(DomainError):
        select_dri(path5, 0.0, 2)


@pytest.mark.parametrize('beta', [0.2, 0.3, 0.4])
def test_dri_never_creates_redundant_influence(beta):
    for g in CORPUS:
        seeds = select_dri(g, beta, 30)
        assert ri_report(g, seeds.nodes, beta).total_ri == pytest.approx(0.0, abs=1e-9)
        assert all(g.degrees[v] >= 2 for v in seeds)


@pytest.mark.parametrize('seed', range(5))
def test_dri_stops_only_when_every_candidate_overflows(seed):
    g = er_graph(60, 0.08, seed=seed)
    seeds = dri_capacity(g, 0.4)
    assert seeds.converged_reason in (NO_FEASIBLE_CANDIDATE, EXHAUSTED_DEGREE_FILTER)
    for c in range(g.node_count):
        if c in seeds.nodes or g.degrees[c] < 2:
            continue
        assert ri_report(g, list(seeds.nodes) + [c], 0.4).total_ri > 0


def test_dri_prefix_matches_smaller_m(ba_small):
    full = select_dri(ba_small, 0.3, 40)
    assert select_dri(ba_small, 0.3, 10).nodes == full.nodes[:10]


# DSN

def test_dsn_star(star5):
    seeds = select_dsn(star5, 2)
    assert seeds.nodes == (0,)
    assert seeds.converged_reason == EXHAUSTED_DEGREE_FILTER


def test_dsn_path(path7):
    assert select_dsn(path7, 2).nodes == (1, 4)


def test_dsn_single(ba_small):
    assert select_dsn(ba_small, 1).nodes == (int(degree_order(ba_small)[0]),)


def test_dsn_spreaders_are_far_apart():
    rule = min_pairwise_distance_rule()
    for g in CORPUS:
        seeds = select_dsn(g, 30)
        assert all(g.degrees[v] >= 2 for v in seeds)
        for u, v in itertools.combinations(seeds.nodes, 2):
            assert shortest_distance(g, u, v, cutoff=rule) >= rule


# NC

def test_nc_scores():
    g = triangle_with_pendant()
    assert select_nc(g, 1).nodes == (0,)
    assert select_nc(g, 4).nodes == (0, 1, 2, 3)


def test_nc_isolated_node_ranks_last():
    g = Graph.from_edges(3, [(0, 1)])
    assert select_nc(g, 3).nodes[-1] == 2


def test_nc_complete(k4):
    assert select_nc(k4, 2).nodes == (0, 1)


# ND

def test_nd_cycle(cycle4):
    assert select_nd(cycle4, 2).nodes == (0, 2)


def test_nd_star(star5):
    seeds = select_nd(star5, 2)
    assert seeds.nodes == (0,)
    assert seeds.converged_reason == NO_FEASIBLE_CANDIDATE


def test_nd_edgeless():
    assert select_nd(Graph([[], [], []]), 3).nodes == (0, 1, 2)


def test_nd_coreness_ranking():
    g = triangle_with_pendant()
    assert select_nd(g, 2, rank_by='coreness').nodes == (0,)
    with pytest.raises(DomainError):
        select_nd(g, 2, rank_by='pagerank')


def test_nd_never_picks_neighbors():
    for g in CORPUS[:20]:
        seeds = select_nd(g, 30)
        for u, v in itertools.combinations(seeds.nodes, 2):
            assert v not in g.adjacency[u]


# CI

def test_ci_path_first_pick(path5):
    assert select_ci(path5, 1, radius=1).nodes == (2,)


def test_ci_complete(k4):
    assert select_ci(k4, 1, radius=1).nodes == (0,)


def test_ci_runs_out_of_edges():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    seeds = select_ci(g, 4, radius=2)
    assert seeds.nodes == (0, 2)
    assert seeds.converged_reason == NO_FEASIBLE_CANDIDATE


def test_ci_rejects_zero_radius(path5):
    with pytest.raises(DomainError):
        select_ci(path5, 1, radius=0)


# registry

def test_registry_dispatch(k23):
    assert set(SELECTORS) == {'degree', 'dri', 'dsn', 'nc', 'nd', 'ci'}
    for algo in SELECTORS:
        seeds = select(algo, k23, 2, beta=0.5)
        assert seeds.algorithm == algo
        assert len(seeds) >= 1


def test_registry_unknown_algorithm(k23):
    with pytest.raises(DomainError):
        select('voterank', k23, 2)


def test_dri_requires_beta(k23):
    with pytest.raises(DomainError):
        select('dri', k23, 2)


def test_selectors_are_deterministic(ba_small):
    for algo in SELECTORS:
        assert select(algo, ba_small, 15, beta=0.3) == select(algo, ba_small, 15, beta=0.3)
