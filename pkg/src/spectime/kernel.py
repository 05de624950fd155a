"""Gaussian-kernel similarity and the two normalized graph Laplacians.

The similarity between points x, y is

    k(x, y) = (sqrt(2*pi) * sigma)^-1 * exp(-||x - y||^2 / (2 * sigma^2))

and the degree of point i is the full row sum of the kernel matrix,
self-term included.  Open curves use the symmetrized random-walk
normalization L = I - K .* (1/(2 d_i) + 1/(2 d_j)); closed loops use the
symmetric normalization L = I - K .* (d_i d_j)^(-1/2), whose exact null
vector is sqrt(d).

The kernel matrix is assembled from the condensed upper triangle
(scipy ``pdist``) and mirrored, so it is bit-exactly symmetric and the
row sums are computed in a fixed order regardless of threading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .core import CurveKind, DataMatrix, KernelParams
from .errors import DimensionMismatchError, ZeroDegreeError


@dataclass(frozen=True)
class KernelMatrix:
    """Symmetric N x N Gaussian similarity matrix with its degree vector."""

    k: np.ndarray
    degrees: np.ndarray
    sigma: float


@dataclass(frozen=True)
class LaplacianMatrix:
    """Symmetric normalized graph Laplacian."""

    l: np.ndarray
    kind: CurveKind
    sigma: float

    @property
    def n(self) -> int:
        return self.l.shape[0]


def gaussian_kernel(x: np.ndarray, y: np.ndarray, p: KernelParams) -> float:
    """Evaluate the Gaussian similarity between two points."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionMismatchError(f"point dimensions differ: {x.shape} vs {y.shape}")
    sq = float(np.dot(x - y, x - y))
    return math.exp(-sq / (2.0 * p.sigma**2)) / (math.sqrt(2.0 * math.pi) * p.sigma)


def build_kernel(z: DataMatrix | np.ndarray, p: KernelParams) -> KernelMatrix:
    """Assemble the full pairwise similarity matrix and degree vector."""
    values = z.values if isinstance(z, DataMatrix) else DataMatrix(z).values
    pref = 1.0 / (math.sqrt(2.0 * math.pi) * p.sigma)
    sq = pdist(values.T, metric="sqeuclidean")
    k = squareform(pref * np.exp(-sq / (2.0 * p.sigma**2)))
    np.fill_diagonal(k, pref)
    degrees = k.sum(axis=1)
    return KernelMatrix(k=k, degrees=degrees, sigma=p.sigma)


def build_laplacian(km: KernelMatrix, kind: CurveKind) -> LaplacianMatrix:
    """Normalized Laplacian for the requested curve topology."""
    deg = km.degrees
    if np.any(deg <= 0.0):
        raise ZeroDegreeError("kernel degree vector has a nonpositive entry")
    if kind is CurveKind.OPEN_CURVE:
        half_inv = 0.5 / deg
        lap = -km.k * (half_inv[:, None] + half_inv[None, :])
    else:
        s = 1.0 / np.sqrt(deg)
        lap = -km.k * np.outer(s, s)
    np.fill_diagonal(lap, 1.0 + lap.diagonal())
    return LaplacianMatrix(l=lap, kind=kind, sigma=km.sigma)
