"""CSV file formats.

Data matrices are stored one point per row (an N x d file), i.e. the
transpose of the in-memory (d, N) layout.  There is no header unless
the caller asks to skip one on read or write one explicitly.  Label,
ranking, and recovery files carry an ``index,...`` header.  All floats
are written with 17 significant digits so that a read-back round-trips
bit-exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .core import DataMatrix, Ranking, TimeLabels
from .errors import LengthMismatchError

FLOAT_FMT = "%.17g"


def load_data_matrix(path: str | Path, header: bool = False) -> DataMatrix:
    """Read an N x d CSV of points (one per row) into a (d, N) DataMatrix."""
    rows = np.loadtxt(path, delimiter=",", skiprows=1 if header else 0, ndmin=2)
    return DataMatrix(rows.T)


def save_data_matrix(path: str | Path, m: DataMatrix) -> None:
    np.savetxt(path, m.values.T, delimiter=",", fmt=FLOAT_FMT)


def save_labels(path: str | Path, t: TimeLabels) -> None:
    """Write ``index,value`` rows, one per point."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["index", "value"])
        for i, v in enumerate(t.angles):
            w.writerow([i, FLOAT_FMT % v])


def save_ranking(path: str | Path, r: Ranking) -> None:
    """Write ``index,value`` rows where value is the rank of point index."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["index", "value"])
        for i, v in enumerate(r.ranks()):
            w.writerow([i, int(v)])


def save_recovery(path: str | Path, t: TimeLabels, r: Ranking) -> None:
    """Write ``index,t_hat,rank`` rows, one per point."""
    ranks = r.ranks()
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["index", "t_hat", "rank"])
        for i in range(len(t)):
            w.writerow([i, FLOAT_FMT % t.angles[i], int(ranks[i])])


def _read_indexed_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise LengthMismatchError(f"{path}: empty file")
    head = rows[0]
    body = rows[1:]
    try:
        float(head[1])
    except (ValueError, IndexError):
        pass  # header line
    else:
        body = rows
        head = [f"c{j}" for j in range(len(rows[0]))]
    data = np.array([[float(x) for x in row] for row in body], dtype=np.float64)
    order = np.argsort(data[:, 0], kind="stable")
    return head, data[order]


def load_labels(path: str | Path) -> TimeLabels:
    """Read labels from an ``index,value`` or ``index,t_hat,rank`` file."""
    _, data = _read_indexed_csv(path)
    return TimeLabels(data[:, 1])


def load_ranking(path: str | Path) -> Ranking:
    """Read a ranking from an ``index,value`` (value = rank) or
    ``index,t_hat,rank`` file."""
    head, data = _read_indexed_csv(path)
    col = 2 if data.shape[1] >= 3 else 1
    return Ranking.from_ranks(np.rint(data[:, col]).astype(np.int64))


def save_square_matrix(path: str | Path, a: np.ndarray) -> None:
    """Dump a square matrix row-major (used for kernel/Laplacian debugging)."""
    np.savetxt(path, np.asarray(a), delimiter=",", fmt=FLOAT_FMT)
