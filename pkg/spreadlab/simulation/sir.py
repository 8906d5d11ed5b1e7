"""
Discrete-time SIR spreading with recovery probability 1.

At step t every node infected at step t-1 makes one Bernoulli(beta) attempt
on each susceptible neighbor, then recovers. A susceptible node with k
infected neighbors therefore becomes infected with probability
1 - (1 - beta)**k, which is how one step is drawn. Spreaders are infected
at t = 0 and the run ends once nobody is infected.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from spreadlab.core.config import config
from spreadlab.core.exceptions import DomainError, EmptySelectionError
from spreadlab.graph.graph import Graph

logger = logging.getLogger('simulation')

# Replications handed to one joblib task
_BATCH_SIZE = 500


@dataclass(frozen=True)
class SpreadParams:
    beta: float
    replications: int = 100
    max_steps: Optional[int] = None
    master_seed: int = 42

    def __post_init__(self):
        if not 0 <= self.beta <= 1:
            raise DomainError(f"beta must lie in [0, 1], got {self.beta}")
        if self.replications < 1:
            raise DomainError(f"replications must be >= 1, got {self.replications}")
        if self.max_steps is not None and self.max_steps < 0:
            raise DomainError(f"max_steps must be >= 0, got {self.max_steps}")

    @property
    def step_limit(self) -> Optional[int]:
        # 0 and None both mean no limit
        return self.max_steps or None


@dataclass
class Trajectory:
    """Compartment sizes at steps 0..T of one run."""

    susceptible: np.ndarray
    infected: np.ndarray
    recovered: np.ndarray
    node_count: int

    @property
    def steps(self) -> int:
        return len(self.infected) - 1

    @property
    def ever_infected_fraction(self) -> np.ndarray:
        return (self.infected + self.recovered) / self.node_count

    @property
    def final_aif(self) -> float:
        return float(self.ever_infected_fraction[-1])


@dataclass
class SpreadSummary:
    beta: float
    replications: int
    seeds: Tuple[int, ...]
    mean_aif: np.ndarray
    mean_susceptible: np.ndarray
    mean_infected: np.ndarray
    mean_recovered: np.ndarray
    final_aif_mean: float
    final_aif_std: float
    mean_steps: float
    final_aifs: np.ndarray = field(repr=False, default=None)

    def curve_rows(self):
        """(step, mean_S, mean_I, mean_R, mean_AIF) for every step."""
        for t in range(len(self.mean_aif)):
            yield (t, float(self.mean_susceptible[t]), float(self.mean_infected[t]),
                   float(self.mean_recovered[t]), float(self.mean_aif[t]))

    def as_dict(self) -> dict:
        return {
            'final_aif_mean': self.final_aif_mean,
            'final_aif_std': self.final_aif_std,
            'reps': self.replications,
            'beta': self.beta,
            'mean_steps': self.mean_steps,
            'seed_count': len(self.seeds),
        }


def replication_rng(master_seed: int, index: int) -> np.random.Generator:
    """Generator for replication ``index``: child ``(index,)`` of SeedSequence(master_seed)."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))


def _check_seed_nodes(g: Graph, seeds) -> np.ndarray:
    nodes = np.asarray([g.check_node(s) for s in seeds], dtype=np.int64)
    if len(nodes) == 0:
        raise EmptySelectionError("cannot simulate spreading from an empty spreader set")
    if len(np.unique(nodes)) != len(nodes):
        raise DomainError(f"spreaders must be distinct, got {nodes.tolist()}")
    return nodes


def _run(csr, node_count: int, seeds: np.ndarray, beta: float, rng, max_steps: Optional[int]) -> Trajectory:
    susceptible = np.ones(node_count, dtype=bool)
    infected = np.zeros(node_count, dtype=bool)
    susceptible[seeds] = False
    infected[seeds] = True

    n_infected = len(seeds)
    s_counts = [node_count - n_infected]
    i_counts = [n_infected]
    r_counts = [0]
    recovered_total = 0

    while n_infected and (max_steps is None or len(i_counts) <= max_steps):
        pressure = csr @ infected.astype(np.int64)
        exposed = np.flatnonzero(susceptible & (pressure > 0))
        if len(exposed):
            p_infect = 1.0 - (1.0 - beta) ** pressure[exposed]
            newly = exposed[rng.random(len(exposed)) < p_infect]
        else:
            newly = exposed

        recovered_total += n_infected
        infected[:] = False
        infected[newly] = True
        susceptible[newly] = False
        n_infected = len(newly)

        s_counts.append(s_counts[-1] - n_infected)
        i_counts.append(n_infected)
        r_counts.append(recovered_total)

    return Trajectory(
        susceptible=np.asarray(s_counts, dtype=np.int64),
        infected=np.asarray(i_counts, dtype=np.int64),
        recovered=np.asarray(r_counts, dtype=np.int64),
        node_count=node_count,
    )


def simulate_once(g: Graph, seeds: Sequence[int], beta: float, rng: np.random.Generator,
                  max_steps: Optional[int] = None) -> Trajectory:
    """One SIR run from ``seeds``; ``max_steps`` truncates it."""
    if not 0 <= beta <= 1:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    nodes = _check_seed_nodes(g, seeds)
    return _run(g.csr, g.node_count, nodes, float(beta), rng, max_steps or None)


def _run_batch(csr, node_count, seeds, beta, master_seed, indices, max_steps):
    return [_run(csr, node_count, seeds, beta, replication_rng(master_seed, i), max_steps) for i in indices]


def _pad(values: np.ndarray, length: int) -> np.ndarray:
    # carry the terminal value forward
    return np.pad(values, (0, length - len(values)), mode='edge')


def run_replications(g: Graph, seeds: Sequence[int], params: SpreadParams):
    """All trajectories of ``params.replications`` runs, in replication order."""
    nodes = _check_seed_nodes(g, seeds)
    csr = g.csr
    indices = range(params.replications)
    batches = [indices[start:start + _BATCH_SIZE] for start in range(0, params.replications, _BATCH_SIZE)]

    results = Parallel(n_jobs=config.n_jobs)(
        delayed(_run_batch)(csr, g.node_count, nodes, float(params.beta), params.master_seed, batch, params.step_limit)
        for batch in batches
    )
    return [trajectory for batch in results for trajectory in batch]


def simulate(g: Graph, seeds: Sequence[int], params: SpreadParams) -> SpreadSummary:
    """
    Monte-Carlo summary over ``params.replications`` independent runs.

    Replication i draws from ``replication_rng(master_seed, i)`` whatever the
    worker count. Curves of different lengths are padded to the longest run
    with their terminal values before averaging.
    """
    trajectories = run_replications(g, seeds, params)
    length = max(len(t.infected) for t in trajectories)

    def mean_curve(attr):
        return np.stack([_pad(getattr(t, attr), length) for t in trajectories]).mean(axis=0)

    mean_s = mean_curve('susceptible')
    mean_i = mean_curve('infected')
    mean_r = mean_curve('recovered')
    final_aifs = np.array([t.final_aif for t in trajectories])
    final_std = float(final_aifs.std(ddof=1)) if len(final_aifs) > 1 else 0.0

    summary = SpreadSummary(
        beta=float(params.beta),
        replications=params.replications,
        seeds=tuple(int(s) for s in seeds),
        mean_aif=(mean_i + mean_r) / g.node_count,
        mean_susceptible=mean_s,
        mean_infected=mean_i,
        mean_recovered=mean_r,
        final_aif_mean=float(final_aifs.mean()),
        final_aif_std=final_std,
        mean_steps=float(np.mean([t.steps for t in trajectories])),
        final_aifs=final_aifs,
    )
    logger.debug(f"SIR beta={params.beta} reps={params.replications} m={len(summary.seeds)}: "
                 f"AIF={summary.final_aif_mean:.4f} +/- {summary.final_aif_std:.4f}")
    return summary


def aif_normalized(aif_x: float, aif_dri: float) -> float:
    """(AIF_X - AIF_DRI) / AIF_DRI."""
    if aif_dri <= 0:
        raise DomainError(f"cannot normalize against a baseline AIF of {aif_dri}")
    return (aif_x - aif_dri) / aif_dri
