"""Result tables and their CSV/JSON serialisation.

CSV layout::

    # config: {"canonical":"json"}
    # seed: 1
    # version: movsig 0.1.0
    # <other metadata>: <json>
    col_a,col_b
    1.0000000000000000e+00,...

Every float is written with 17 significant digits so values round-trip
exactly through :meth:`ResultTable.from_csv`.
"""

import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__

_HEADER_ORDER = ("config", "seed", "version")


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def format_float(x):
    return format(float(x), ".16e")


@dataclass
class ResultTable:
    columns: list
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = list(self.columns)
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, len(self.columns))
        self.metadata.setdefault("version", f"movsig {__version__}")

    def column(self, name):
        return self.rows[:, self.columns.index(name)]

    def __len__(self):
        return len(self.rows)

    def _metadata_items(self):
        keys = [k for k in _HEADER_ORDER if k in self.metadata]
        keys += sorted(k for k in self.metadata if k not in _HEADER_ORDER)
        for key in keys:
            value = self.metadata[key]
            yield key, value if key == "version" else canonical_json(value)

    def to_csv(self):
        out = io.StringIO()
        for key, value in self._metadata_items():
            out.write(f"# {key}: {value}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(format_float(x) for x in row) + "\n")
        return out.getvalue()

    def to_json(self):
        doc = {
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": [[float(format_float(x)) for x in row] for row in self.rows],
        }
        return json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n"

    @classmethod
    def from_csv(cls, text):
        metadata, lines = {}, []
        for line in text.splitlines():
            if line.startswith("# "):
                key, _, value = line[2:].partition(": ")
                metadata[key] = value if key == "version" else json.loads(value)
            elif line:
                lines.append(line)
        columns = lines[0].split(",")
        rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
        return cls(columns, np.array(rows, dtype=float).reshape(-1, len(columns)), metadata)
