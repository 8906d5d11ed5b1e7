"""CSV tables with JSON provenance sidecars."""

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

logger = logging.getLogger('experiments')


@dataclass
class Table:
    name: str
    header: List[str]
    rows: List[list] = field(default_factory=list)

    def append(self, row):
        if len(row) != len(self.header):
            raise ValueError(f"{self.name}: row has {len(row)} fields, header has {len(self.header)}")
        self.rows.append(list(row))

    def column(self, key: str) -> list:
        i = self.header.index(key)
        return [row[i] for row in self.rows]

    def as_dicts(self) -> List[dict]:
        return [dict(zip(self.header, row)) for row in self.rows]


def format_value(value) -> str:
    """Locale-free text for a CSV cell; floats use the shortest round-tripping repr."""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        return repr(value)
    return str(value)


def to_plain(obj):
    """yacs nodes, numpy scalars and tuples turned into JSON-ready builtins."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_csv(table: Table, sink):
    writer = csv.writer(sink, lineterminator='\n')
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])


def write_table(table: Table, directory, metadata: Optional[Dict[str, Any]] = None) -> Path:
    """Write ``<directory>/<name>.csv`` and, with ``metadata``, its ``<name>.json`` sidecar."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{table.name}.csv"
    with open(path, 'w', encoding='utf-8', newline='') as sink:
        write_csv(table, sink)
    if metadata is not None:
        write_sidecar(path, metadata)
    logger.info(f"Wrote {len(table.rows)} rows to {path}")
    return path


def write_sidecar(csv_path, metadata: Dict[str, Any]) -> Path:
    sidecar = Path(csv_path).with_suffix('.json')
    with open(sidecar, 'w', encoding='utf-8') as sink:
        json.dump(to_plain(metadata), sink, indent=2, sort_keys=True)
        sink.write('\n')
    return sidecar
