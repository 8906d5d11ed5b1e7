import json
import os
from pathlib import Path

import numpy as np
from dotenv import load_dotenv
from yacs.config import CfgNode as CN

from spreadlab.core.exceptions import ConfigurationError

load_dotenv()

# __file__ is spreadlab/core/config.py, the project root sits two levels up
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))


class Config:
    """Centralized runtime configuration"""

    def __init__(self):
        self.project_root_dir = PROJECT_ROOT

        # Base paths, overridable from the environment
        self.output_dir = os.getenv("SPREADLAB_OUTPUT_DIR", os.path.join(PROJECT_ROOT, 'results'))
        self.cache_dir = os.getenv("SPREADLAB_CACHE_DIR", os.path.join(PROJECT_ROOT, 'storage', 'graphs'))
        self.data_dir = os.getenv("SPREADLAB_DATA_DIR", os.path.join(PROJECT_ROOT, 'data'))

        # Runtime config
        self.debug = os.getenv("SPREADLAB_DEBUG", "0") == "1"
        self.n_jobs = int(os.getenv("SPREADLAB_N_JOBS", "1"))
        self.master_seed = int(os.getenv("SPREADLAB_MASTER_SEED", "42"))

        # Numerical constants shared by influence-overlap and placement-optimizer
        self.feasibility_tolerance = 1e-12
        self.influence_range = 3

        # network_stats switches to sampled <d> above this size
        self.exact_distance_max_nodes = 5000
        self.sampled_distance_sources = 1000

# Create a singleton config
config = Config()


# Experiment configuration variables
cfg = CN()

cfg.EXP_NAME = 'default'
cfg.OUTPUT_DIR = ''
cfg.SEED = 42
cfg.ALGORITHMS = ['dri', 'dsn', 'degree', 'nc', 'nd', 'ci']
cfg.M_GRID = list(range(10, 101, 10))

cfg.GRAPH = CN()
cfg.GRAPH.PATH = ''
cfg.GRAPH.NAME = ''

# 'absolute' uses BETA.GRID as is, 'relative' multiplies beta_c by BETA.RELATIVE_GRID
cfg.BETA = CN()
cfg.BETA.MODE = 'absolute'
cfg.BETA.GRID = [0.2, 0.25, 0.3, 0.35, 0.4]
cfg.BETA.RELATIVE_GRID = [2.0, 3.0, 4.0, 5.0, 6.0]

cfg.SIM = CN()
cfg.SIM.REPLICATIONS = 100
cfg.SIM.MAX_STEPS = 0

cfg.CI = CN()
cfg.CI.RADIUS = 2

cfg.ND = CN()
cfg.ND.RANK_BY = 'degree'

cfg.PERTURBATION = CN()
cfg.PERTURBATION.FRACTIONS = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30]
cfg.PERTURBATION.TRIALS = 1
cfg.PERTURBATION.SEED = 7


def get_cfg_defaults():
    """Get a yacs CfgNode object with default values."""
    # Return a clone so that the defaults will not be altered
    return cfg.clone()


def update_cfg(cfg_file):
    """Merge a JSON (or YAML) config file over the defaults."""
    cfg = get_cfg_defaults()
    if Path(cfg_file).suffix == '.json':
        # yacs only reads YAML and .py files
        with open(cfg_file, encoding='utf-8') as handle:
            cfg.merge_from_other_cfg(CN(json.load(handle)))
    else:
        cfg.merge_from_file(cfg_file)
    return cfg.clone()


def validate_cfg(cfg, require_graph=True):
    """Check the invariants every experiment relies on and return cfg."""
    m_grid = list(cfg.M_GRID)
    if not m_grid:
        raise ConfigurationError("M_GRID must not be empty")
    if any(m < 1 for m in m_grid):
        raise ConfigurationError(f"M_GRID entries must be >= 1, got {m_grid}")
    if any(b <= a for a, b in zip(m_grid, m_grid[1:])):
        raise ConfigurationError(f"M_GRID must be strictly increasing, got {m_grid}")

    if cfg.BETA.MODE not in ('absolute', 'relative'):
        raise ConfigurationError(f"BETA.MODE must be 'absolute' or 'relative', got {cfg.BETA.MODE!r}")
    grid = cfg.BETA.GRID if cfg.BETA.MODE == 'absolute' else cfg.BETA.RELATIVE_GRID
    if not grid or any(b <= 0 for b in grid):
        raise ConfigurationError(f"beta grid entries must be > 0, got {list(grid)}")
    if cfg.BETA.MODE == 'absolute' and any(b > 1 for b in grid):
        raise ConfigurationError(f"absolute betas must be <= 1, got {list(grid)}")

    if cfg.SIM.REPLICATIONS < 1:
        raise ConfigurationError(f"SIM.REPLICATIONS must be >= 1, got {cfg.SIM.REPLICATIONS}")
    if cfg.CI.RADIUS < 1:
        raise ConfigurationError(f"CI.RADIUS must be >= 1, got {cfg.CI.RADIUS}")
    if cfg.ND.RANK_BY not in ('degree', 'coreness'):
        raise ConfigurationError(f"ND.RANK_BY must be 'degree' or 'coreness', got {cfg.ND.RANK_BY!r}")

    fractions = np.asarray(cfg.PERTURBATION.FRACTIONS, dtype=float)
    if np.any((fractions < 0) | (fractions >= 1)):
        raise ConfigurationError(f"PERTURBATION.FRACTIONS must lie in [0, 1), got {fractions.tolist()}")

    if require_graph:
        if not cfg.GRAPH.PATH:
            raise ConfigurationError("GRAPH.PATH is required")
        if not Path(cfg.GRAPH.PATH).is_file():
            raise ConfigurationError(f"graph file not found: {cfg.GRAPH.PATH}")
    return cfg


def output_dir_for(cfg):
    """Directory that experiment tables are written to."""
    return Path(cfg.OUTPUT_DIR or config.output_dir) / cfg.EXP_NAME

