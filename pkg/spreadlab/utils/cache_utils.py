import hashlib
import json
import logging
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from spreadlab.core.config import config
from spreadlab.graph.graph import Graph, load_edge_list

logger = logging.getLogger('graph')


class GraphCache:
    """
    Parsed edge lists kept in memory and as compressed ``.npz`` files on disk.

    Entries are keyed by the SHA-256 of the file contents plus the ingestion
    options, so an edited file or a different duplicate policy never hits a
    stale entry.
    """

    def __init__(self, max_memory_entries=8, cache_dir=None):
        self.computation_cache: Dict[str, Graph] = {}
        self.max_memory_entries = max_memory_entries
        self.cache_dir = Path(cache_dir or config.cache_dir)

    def _get_cache_file(self, cache_key: str) -> Path:
        return self.cache_dir / f"{cache_key}.npz"

    def get_cache_key(self, path, **options) -> str:
        """Digest of the file bytes and the normalized ingestion options."""
        digest = hashlib.sha256()
        with open(path, 'rb') as handle:
            for chunk in iter(lambda: handle.read(1 << 20), b''):
                digest.update(chunk)
        normalized = json.dumps(options, sort_keys=True)
        return hashlib.sha256(f"{digest.hexdigest()}:{normalized}".encode()).hexdigest()

    def _save_to_disk(self, cache_key: str, g: Graph) -> Optional[Path]:
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            cache_file = self._get_cache_file(cache_key)
            csr = g.csr
            np.savez_compressed(
                cache_file,
                indptr=csr.indptr,
                indices=csr.indices,
                labels=np.asarray([str(label) for label in g.labels]),
            )
            logger.debug(f"Saved graph to disk cache: {cache_file}")
            return cache_file
        except Exception as e:
            logger.warning(f"Failed to save to disk cache: {e}")
            return None

    def _load_from_disk(self, cache_key: str) -> Optional[Graph]:
        cache_file = self._get_cache_file(cache_key)
        if not cache_file.exists():
            return None
        try:
            with np.load(cache_file) as data:
                indptr = data['indptr']
                indices = data['indices']
                labels = data['labels'].tolist()
            adjacency = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(len(indptr) - 1)]
            logger.debug(f"Loaded graph from disk cache: {cache_file}")
            return Graph(adjacency, labels=labels, validate=False)
        except Exception as e:
            logger.warning(f"Failed to load from disk cache: {e}")
            return None

    def _remember(self, cache_key: str, g: Graph):
        # evict the oldest entry when full
        if cache_key not in self.computation_cache and len(self.computation_cache) >= self.max_memory_entries:
            self.computation_cache.pop(next(iter(self.computation_cache)))
        self.computation_cache.pop(cache_key, None)
        self.computation_cache[cache_key] = g

    def load(self, path, **options) -> Graph:
        """Graph parsed from the edge list at ``path``, from cache when possible."""
        cache_key = self.get_cache_key(path, **options)

        g = self.computation_cache.get(cache_key)
        if g is not None:
            self._remember(cache_key, g)
            return g

        g = self._load_from_disk(cache_key)
        if g is None:
            with open(path, encoding='utf-8') as handle:
                g = load_edge_list(handle, **options)
            self._save_to_disk(cache_key, g)

        self._remember(cache_key, g)
        return g

    def clear_cache(self) -> None:
        """Clear memory and disk caches"""
        self.computation_cache.clear()
        if self.cache_dir.exists():
            for cache_file in self.cache_dir.glob("*.npz"):
                try:
                    cache_file.unlink()
                except Exception as e:
                    logger.warning(f"Failed to delete cache file {cache_file}: {e}")


graph_cache = GraphCache()


def load_graph(path, use_cache=True, **options) -> Graph:
    """Load an edge-list file, going through the shared cache unless told otherwise."""
    if use_cache:
        return graph_cache.load(path, **options)
    with open(path, encoding='utf-8') as handle:
        return load_edge_list(handle, **options)
