"""Alignment-invariant evaluation metrics.

Closed-loop labels are identifiable only up to a rotation and a
reflection, so the time-label error minimizes over both:

    err(t, t') = min over r in {+1,-1}, theta   max_i |[r t_i + theta - t'_i]_2pi|

with [.]_2pi the representative in [-pi, pi).  For a fixed reflection
branch the optimal theta is a circular one-center problem, solved
exactly by the largest-gap construction: sort the residuals
d_i = [t'_i - r t_i] on the circle, find the largest gap, and place
theta at the midpoint of the complementary arc; the error is half that
arc's length.  A brute-force theta grid is kept in the test suite as an
independent oracle.

Closed-loop ranking error quotients a cyclic shift n and the reflection
rank -> N - rank, with a modular term j in {0, +-1}; it is minimized by
brute force over all N shifts and both reflections.  Open-curve metrics
restrict to an interior window selected by the *first* argument (the
truth) and minimize only over reflection; they are deliberately not
symmetric in their arguments.

Ranks are 0-based throughout.  The closed-loop reflection is applied
verbatim as N - rank; the cyclic shift absorbs the unit offset from the
0-based convention, so quotient properties hold exactly.  The open-curve
reflected rank is N - 1 - rank, the true 0-based reversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TWO_PI, DataMatrix, Ranking, TimeLabels
from .errors import (
    DimensionMismatchError,
    EmptyInteriorError,
    LengthMismatchError,
    ZeroNormError,
)


@dataclass(frozen=True)
class AlignmentReport:
    """Metric value together with the symmetry element that realized it."""

    error: float
    r: int = 1  # reflection choice, +1 or -1
    theta: float | None = None  # rotation angle, closed-loop time metric only
    shift: int | None = None  # cyclic shift, closed-loop ranking metric only


def _check_lengths(a, b) -> int:
    if len(a) != len(b):
        raise LengthMismatchError(f"length mismatch: {len(a)} vs {len(b)}")
    return len(a)


def _one_center(points: np.ndarray) -> tuple[float, float]:
    """Minimax center of points on the circle via the largest gap.

    Returns (max circular distance at the optimum, optimal center).
    """
    s = np.sort(np.mod(points, TWO_PI))
    gaps = np.diff(s, append=s[0] + TWO_PI)
    j = int(np.argmax(gaps))
    gap = float(gaps[j])
    arc = TWO_PI - gap
    start = s[(j + 1) % s.size]  # first point after the largest gap
    theta = float(np.mod(start + arc / 2.0, TWO_PI))
    return min(math.pi, arc / 2.0), theta


def err_closed_time(t: TimeLabels, t2: TimeLabels) -> AlignmentReport:
    """Rotation/reflection-invariant sup-norm distance between label vectors."""
    _check_lengths(t, t2)
    best: AlignmentReport | None = None
    for r in (1, -1):
        resid = np.mod(t2.angles - r * t.angles, TWO_PI)
        err, center = _one_center(resid)
        if best is None or err < best.error:
            best = AlignmentReport(error=err, r=r, theta=center)
    return best


def err_closed_rank(p: Ranking, p2: Ranking) -> AlignmentReport:
    """Shift/reflection-invariant sup-norm distance between rankings,
    normalized by N."""
    n = _check_lengths(p, p2)
    r1 = p.ranks().astype(np.int64)
    r2 = p2.ranks().astype(np.int64)
    shifts = np.arange(n, dtype=np.int64)[:, None]
    best: AlignmentReport | None = None
    for refl, base in ((1, r1), (-1, n - r1)):
        d = base[None, :] + shifts - r2[None, :]
        cost = np.minimum(np.abs(d), np.minimum(np.abs(d - n), np.abs(d + n)))
        worst = cost.max(axis=1)
        j = int(np.argmin(worst))
        err = float(worst[j]) / n
        if best is None or err < best.error:
            best = AlignmentReport(error=err, r=refl, shift=j)
    return best


def err_open_time(t: TimeLabels, t2: TimeLabels, delta: float) -> AlignmentReport:
    """Reflection-invariant sup-norm label distance on the interior
    delta < t_i < 2*pi - delta, interior selected by the first argument."""
    _check_lengths(t, t2)
    if not 0.0 <= delta < math.pi:
        raise ValueError(f"delta must lie in [0, pi), got {delta}")
    mask = (t.angles > delta) & (t.angles < TWO_PI - delta)
    if not mask.any():
        raise EmptyInteriorError(f"no label inside ({delta}, {TWO_PI - delta})")
    direct = float(np.abs(t.angles[mask] - t2.angles[mask]).max())
    reflected = float(np.abs(TWO_PI - t.angles[mask] - t2.angles[mask]).max())
    if direct <= reflected:
        return AlignmentReport(error=direct, r=1)
    return AlignmentReport(error=reflected, r=-1)


def err_open_rank(p: Ranking, p2: Ranking, delta: float) -> AlignmentReport:
    """Reflection-invariant sup-norm rank distance on the interior
    N*delta <= rank_i <= N*(1-delta), interior selected by the first
    argument.  Unnormalized (counts ranks)."""
    n = _check_lengths(p, p2)
    if not 0.0 <= delta < 0.5:
        raise ValueError(f"delta must lie in [0, 0.5), got {delta}")
    r1 = p.ranks()
    r2 = p2.ranks()
    mask = (r1 >= n * delta) & (r1 <= n * (1.0 - delta))
    if not mask.any():
        raise EmptyInteriorError("no rank inside the interior window")
    direct = float(np.abs(r1[mask] - r2[mask]).max())
    reflected = float(np.abs((n - 1) - r1[mask] - r2[mask]).max())
    if direct <= reflected:
        return AlignmentReport(error=direct, r=1)
    return AlignmentReport(error=reflected, r=-1)


def relative_error(x: DataMatrix, p: Ranking, p2: Ranking) -> float:
    """Frobenius distance between the two column arrangements of x,
    relative to ||x||_F."""
    if len(p) != x.n_points or len(p2) != x.n_points:
        raise LengthMismatchError("ranking length does not match the matrix")
    denom = float(np.linalg.norm(x.values))
    if denom == 0.0:
        raise ZeroNormError("matrix has zero Frobenius norm")
    num = float(np.linalg.norm(x.values[:, p2.perm] - x.values[:, p.perm]))
    return num / denom


def snr(x: DataMatrix, e: DataMatrix) -> float:
    """Signal-to-noise ratio ||X||_F^2 / ||E||_F^2 (+inf for zero noise)."""
    if x.values.shape != e.values.shape:
        raise DimensionMismatchError(
            f"shape mismatch: {x.values.shape} vs {e.values.shape}"
        )
    noise = float(np.linalg.norm(e.values) ** 2)
    if noise == 0.0:
        return math.inf
    return float(np.linalg.norm(x.values) ** 2) / noise


def interior_relative_error(
    x: DataMatrix,
    t_true: TimeLabels,
    t_est: np.ndarray | TimeLabels,
    span: float,
    fraction: float = 0.05,
) -> float:
    """Benchmark-style relative error restricted to the interior window.

    Keeps the points whose true label lies in (fraction*span,
    (1-fraction)*span), arranges them by true and by estimated order, and
    returns the relative Frobenius distance, minimized over the estimate's
    orientation (open-curve recoveries are identifiable only up to
    reflection).  ``t_est`` may be any monotone proxy for estimated time,
    e.g. recovered labels or baseline Fiedler scores.
    """
    est = t_est.angles if isinstance(t_est, TimeLabels) else np.asarray(t_est, dtype=np.float64)
    if len(t_true) != x.n_points or est.size != x.n_points:
        raise LengthMismatchError("labels do not match the matrix")
    mask = (t_true.angles > fraction * span) & (t_true.angles < (1.0 - fraction) * span)
    if not mask.any():
        raise EmptyInteriorError("interior window is empty")
    sub = x.values[:, mask]
    denom = float(np.linalg.norm(sub))
    if denom == 0.0:
        raise ZeroNormError("interior submatrix has zero Frobenius norm")
    true_order = np.argsort(t_true.angles[mask], kind="stable")
    best = math.inf
    for oriented in (est[mask], -est[mask]):
        order = np.argsort(oriented, kind="stable")
        best = min(best, float(np.linalg.norm(sub[:, order] - sub[:, true_order])) / denom)
    return best
