"""
Experiment drivers: spreading curves, (algorithm, m, beta) sweeps, stability
under node removal, spreader properties, network statistics and DRI capacity.

Every driver takes a yacs experiment config, returns a ``Table`` and, when
``write=True``, stores it under ``output_dir_for(cfg)`` with a JSON sidecar
holding the config it was produced from.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats as sp_stats
from tqdm import tqdm

from spreadlab.core.config import output_dir_for
from spreadlab.core.exceptions import ConfigurationError, DomainError, EmptySelectionError, SpreadlabError
from spreadlab.graph.graph import Graph
from spreadlab.graph.stats import STATS_HEADER, epidemic_threshold, network_stats
from spreadlab.graph.structure import k_core_decomposition, largest_connected_component, remove_random_nodes
from spreadlab.influence.overlap import ri_report
from spreadlab.influence.placement import DEFAULT_BOUND, brute_force_maximal, influence_of, maximal_triples
from spreadlab.experiments.outputs import Table, to_plain, write_table
from spreadlab.selection.seeds import NO_FEASIBLE_CANDIDATE, SeedSet
from spreadlab.selection.selectors import dri_capacity, select, select_dsn
from spreadlab.simulation.sir import SpreadParams, aif_normalized, run_replications, simulate
from spreadlab.utils.cache_utils import load_graph

logger = logging.getLogger('experiments')


@dataclass(frozen=True)
class PerturbationSpec:
    fractions: Tuple[float, ...] = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)
    trials: int = 1
    seed: int = 7

    def __post_init__(self):
        if any(not 0 <= f < 1 for f in self.fractions):
            raise DomainError(f"removal fractions must lie in [0, 1), got {list(self.fractions)}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")

    @classmethod
    def from_cfg(cls, cfg) -> 'PerturbationSpec':
        return cls(
            fractions=tuple(float(f) for f in cfg.PERTURBATION.FRACTIONS),
            trials=int(cfg.PERTURBATION.TRIALS),
            seed=int(cfg.PERTURBATION.SEED),
        )


@dataclass(frozen=True)
class PairedTest:
    mean_difference: float
    statistic: float
    p_value: float
    replications: int


def cell_seed(master_seed: int, *key: int) -> int:
    """Seed for the experiment cell ``key``, derived through SeedSequence spawn keys."""
    return int(np.random.SeedSequence(master_seed, spawn_key=tuple(int(k) for k in key)).generate_state(1)[0])


def experiment_graph(cfg, g: Optional[Graph] = None) -> Graph:
    if g is not None:
        return g
    if not cfg.GRAPH.PATH:
        raise ConfigurationError("GRAPH.PATH is required")
    return load_graph(cfg.GRAPH.PATH)


def graph_name(cfg) -> str:
    return cfg.GRAPH.NAME or (Path(cfg.GRAPH.PATH).stem if cfg.GRAPH.PATH else 'graph')


def resolve_betas(cfg, g: Graph) -> List[float]:
    """The absolute beta grid, or beta_c times the relative grid clipped to (0, 1]."""
    if cfg.BETA.MODE == 'absolute':
        return [float(b) for b in cfg.BETA.GRID]
    beta_c = epidemic_threshold(g.degrees)
    if not np.isfinite(beta_c):
        raise ConfigurationError("relative beta grid needs a graph with at least one edge")
    betas = [min(1.0, float(beta_c * r)) for r in cfg.BETA.RELATIVE_GRID]
    logger.info(f"beta_c={beta_c:.4f}, relative grid -> {[round(b, 4) for b in betas]}")
    return betas


def spread_params(cfg, beta: float, master_seed: int) -> SpreadParams:
    return SpreadParams(
        beta=beta,
        replications=int(cfg.SIM.REPLICATIONS),
        max_steps=int(cfg.SIM.MAX_STEPS) or None,
        master_seed=master_seed,
    )


def select_seeds(cfg, algo: str, g: Graph, m: int, beta: float) -> SeedSet:
    return select(algo, g, m, beta=beta, ci_radius=int(cfg.CI.RADIUS), nd_rank_by=cfg.ND.RANK_BY)


def _largest_selection(cfg, algo: str, g: Graph, m_grid: Sequence[int], beta: float) -> SeedSet:
    # every selector is greedy, so the seeds for a smaller m are a prefix of these
    m_max = max(m_grid)
    if algo in ('degree', 'nc') and m_max > g.node_count:
        # ranking every node still leaves the larger m values short
        seeds = select_seeds(cfg, algo, g, g.node_count, beta)
        return SeedSet(seeds.nodes, NO_FEASIBLE_CANDIDATE, seeds.algorithm)
    return select_seeds(cfg, algo, g, m_max, beta)


def _metadata(cfg, **extra) -> dict:
    return {'config': to_plain(cfg), **extra}


def _finish(cfg, table: Table, write: bool, **extra) -> Table:
    if write:
        write_table(table, output_dir_for(cfg), _metadata(cfg, **extra))
    return table


def run_curve(cfg, algo: str, m: int, beta: float, g: Optional[Graph] = None, write: bool = True) -> Table:
    """
    Mean S/I/R and AIF per spreading step for ``algo`` with m spreaders.

    DRI may place fewer than m spreaders; the actual count goes into the
    sidecar as ``seed_count``.
    """
    g = experiment_graph(cfg, g)
    seeds = select_seeds(cfg, algo, g, m, beta)
    if len(seeds) == 0:
        raise EmptySelectionError(f"{algo} selected no spreaders (m={m}, beta={beta})")
    if len(seeds) < m:
        logger.info(f"{algo} identified only {len(seeds)} spreaders for m={m} ({seeds.converged_reason})")

    summary = simulate(g, seeds.nodes, spread_params(cfg, beta, int(cfg.SEED)))
    table = Table(f"curve_{algo}_m{m}_beta{beta:g}", ['step', 'mean_S', 'mean_I', 'mean_R', 'mean_AIF'])
    for row in summary.curve_rows():
        table.append(row)
    return _finish(cfg, table, write, algo=algo, m=m, seed_count=len(seeds),
                   converged_reason=seeds.converged_reason, summary=summary.as_dict())


SWEEP_HEADER = ['algo', 'm', 'beta', 'seed_count', 'converged_reason', 'total_RI', 'AIF', 'AIF_std', 'AIF_star']


def run_sweep(cfg, g: Optional[Graph] = None, write: bool = True) -> Table:
    """
    Total RI, AIF and DRI-normalized AIF for every (algorithm, m, beta) cell.

    All algorithms of one (m, beta) cell share a simulation seed, so their
    AIFs are compared under common random numbers.
    """
    algorithms = list(cfg.ALGORITHMS)
    if 'dri' not in algorithms:
        raise ConfigurationError("run_sweep needs 'dri' in ALGORITHMS as the normalization baseline")
    algorithms = ['dri'] + [a for a in algorithms if a != 'dri']

    g = experiment_graph(cfg, g)
    betas = resolve_betas(cfg, g)
    m_grid = list(cfg.M_GRID)
    table = Table('sweep', SWEEP_HEADER)

    progress = tqdm(total=len(betas) * len(m_grid) * len(algorithms), desc='sweep', leave=False)
    for b_index, beta in enumerate(betas):
        selections = {algo: _largest_selection(cfg, algo, g, m_grid, beta) for algo in algorithms}
        for m_index, m in enumerate(m_grid):
            params = spread_params(cfg, beta, cell_seed(int(cfg.SEED), m_index, b_index))
            aif_dri = None
            for algo in algorithms:
                seeds = selections[algo].prefix(m)
                if len(seeds) == 0:
                    raise EmptySelectionError(f"{algo} selected no spreaders (m={m}, beta={beta})")
                report = ri_report(g, seeds.nodes, beta)
                summary = simulate(g, seeds.nodes, params)
                if algo == 'dri':
                    aif_dri = summary.final_aif_mean
                table.append([
                    algo, m, beta, len(seeds), seeds.converged_reason, report.total_ri,
                    summary.final_aif_mean, summary.final_aif_std,
                    aif_normalized(summary.final_aif_mean, aif_dri),
                ])
                progress.update()
    progress.close()
    return _finish(cfg, table, write, graph=graph_name(cfg), betas=betas)


STABILITY_HEADER = ['fraction', 'trial', 'm', 'beta', 'lcc_nodes', 'seed_count', 'short_of_m', 'AIF', 'AIF_std']


def perturbed_dsn_seeds(g: Graph, fraction: float, removal_seed: int, m: int):
    """
    DSN spreaders picked on the LCC left after random node removal, as ids of ``g``.

    Returns (seed ids in ``g``, LCC size).
    """
    survivors = remove_random_nodes(g, fraction, removal_seed)
    lcc, _ = largest_connected_component(survivors)
    if lcc.node_count == 0:
        return np.zeros(0, dtype=np.int64), 0
    seeds = select_dsn(lcc, m)
    # lcc ids -> survivor ids -> ids of g
    original = survivors.parent_ids[lcc.parent_ids[list(seeds.nodes)]]
    for v, u in zip(seeds.nodes, original.tolist()):
        if g.labels[u] != lcc.labels[v]:
            raise SpreadlabError(f"perturbed spreader {lcc.labels[v]!r} does not map back onto the original graph")
    return original, lcc.node_count


def run_stability(cfg, spec: Optional[PerturbationSpec] = None, g: Optional[Graph] = None,
                  write: bool = True) -> Table:
    """
    AIF of DSN spreaders chosen on a damaged network and spread on the intact one.

    For each fraction and trial, nodes are removed at random, DSN selects on
    the largest surviving component, and the spreaders are simulated on the
    original graph. A (fraction, trial) pair always removes the same nodes,
    and every fraction shares the simulation seed of its (m, beta) cell.
    """
    spec = spec or PerturbationSpec.from_cfg(cfg)
    g = experiment_graph(cfg, g)
    betas = resolve_betas(cfg, g)
    m_grid = list(cfg.M_GRID)
    m_max = max(m_grid)
    table = Table('stability', STABILITY_HEADER)

    cells = [(f_index, fraction, trial) for f_index, fraction in enumerate(spec.fractions) for trial in range(spec.trials)]
    for f_index, fraction, trial in tqdm(cells, desc='stability', leave=False):
        seeds, lcc_nodes = perturbed_dsn_seeds(g, fraction, cell_seed(spec.seed, f_index, trial), m_max)
        for m_index, m in enumerate(m_grid):
            chosen = seeds[:m]
            if len(chosen) == 0:
                raise EmptySelectionError(f"DSN selected no spreaders at removal fraction {fraction}")
            if len(chosen) < m:
                logger.warning(f"fraction={fraction} trial={trial}: only {len(chosen)} spreaders for m={m}")
            for b_index, beta in enumerate(betas):
                summary = simulate(g, chosen.tolist(), spread_params(cfg, beta, cell_seed(int(cfg.SEED), m_index, b_index)))
                table.append([
                    fraction, trial, m, beta, lcc_nodes, len(chosen), len(chosen) < m,
                    summary.final_aif_mean, summary.final_aif_std,
                ])
    return _finish(cfg, table, write, graph=graph_name(cfg), betas=betas, perturbation=spec.__dict__)


PROPERTIES_HEADER = ['algo', 'beta', 'm', 'seed_count', 'avg_degree', 'avg_coreness']


def run_properties(cfg, g: Optional[Graph] = None, write: bool = True) -> Table:
    """
    Mean degree and mean coreness of the spreaders of every algorithm and m.

    Only DRI depends on beta; the other algorithms get one row per m with
    an empty beta column.
    """
    g = experiment_graph(cfg, g)
    betas = resolve_betas(cfg, g)
    coreness = k_core_decomposition(g)
    m_grid = list(cfg.M_GRID)
    table = Table('properties', PROPERTIES_HEADER)

    for algo in cfg.ALGORITHMS:
        algo_betas = betas if algo == 'dri' else [None]
        for beta in algo_betas:
            selection = _largest_selection(cfg, algo, g, m_grid, beta)
            for m in m_grid:
                nodes = list(selection.prefix(m).nodes)
                if not nodes:
                    raise EmptySelectionError(f"{algo} selected no spreaders (m={m})")
                table.append([
                    algo, beta, m, len(nodes),
                    float(np.mean(g.degrees[nodes])), float(np.mean(coreness[nodes])),
                ])
    return _finish(cfg, table, write, graph=graph_name(cfg), betas=betas)


def run_stats(cfg, paths: Iterable, distance_mode: str = 'auto', write: bool = True) -> Table:
    """One network-statistics row per readable edge-list file; failing files are logged and skipped."""
    table = Table('stats', STATS_HEADER)
    for path in paths:
        try:
            g = load_graph(path)
            row = network_stats(g, distance_mode=distance_mode, seed=int(cfg.SEED)).as_row(Path(path).stem)
        except (OSError, UnicodeDecodeError, SpreadlabError) as e:
            logger.error(f"Skipping {path}: {e}")
            continue
        table.append(row)
    return _finish(cfg, table, write, paths=[str(p) for p in paths])


def run_capacity(cfg, g: Optional[Graph] = None, write: bool = True) -> Table:
    """How many spreaders DRI places on its own at each beta."""
    g = experiment_graph(cfg, g)
    table = Table('capacity', ['beta', 'dri_seed_count', 'converged_reason'])
    for beta in resolve_betas(cfg, g):
        seeds = dri_capacity(g, beta)
        table.append([beta, len(seeds), seeds.converged_reason])
    return _finish(cfg, table, write, graph=graph_name(cfg))


def run_table1(cfg, betas: Sequence[float], bound: Optional[int] = None, verify: bool = False,
               write: bool = True) -> Table:
    """
    Maximal placements per beta.

    With ``verify`` the result is checked against an exhaustive scan of every
    triple up to ``bound`` (``DEFAULT_BOUND`` if unset); a mismatch raises.
    """
    table = Table('table1', ['beta', 'x1', 'x2', 'x3', 'I'])
    for beta in betas:
        triples = maximal_triples(beta, bound)
        if verify:
            box = bound or DEFAULT_BOUND
            expected = brute_force_maximal(beta, box)
            inside = [t for t in triples if max(t) <= box]
            if inside != expected:
                raise SpreadlabError(f"maximal placements at beta={beta} disagree with the exhaustive scan")
            logger.info(f"beta={beta}: {len(inside)} placements confirmed by exhaustive scan up to {box}")
        for t in triples:
            table.append([beta, t.x1, t.x2, t.x3, influence_of(t, beta)])
    # x1 = x2 = 0 stays feasible for every x3 and is left out of the rows
    return _finish(cfg, table, write, betas=list(betas), bound=bound, verified=verify, unbounded_ray=True)


def paired_aif_test(g: Graph, seeds_a: Sequence[int], seeds_b: Sequence[int], beta: float,
                    replications: int = 200, master_seed: int = 42) -> PairedTest:
    """
    One-sided paired t-test that spreaders ``a`` reach a larger final AIF than ``b``.

    Replication i of both sets draws from the same generator, so the pairs
    share their random numbers.
    """
    params = SpreadParams(beta=beta, replications=replications, master_seed=master_seed)
    aif_a = np.array([t.final_aif for t in run_replications(g, seeds_a, params)])
    aif_b = np.array([t.final_aif for t in run_replications(g, seeds_b, params)])
    diff = aif_a - aif_b
    if np.all(diff == diff[0]):
        # zero variance, the t statistic is undefined
        statistic = float('inf') if diff[0] > 0 else float('-inf') if diff[0] < 0 else 0.0
        p_value = 0.0 if diff[0] > 0 else 1.0
    else:
        result = sp_stats.ttest_rel(aif_a, aif_b, alternative='greater')
        statistic, p_value = float(result.statistic), float(result.pvalue)
    return PairedTest(float(diff.mean()), statistic, p_value, replications)
