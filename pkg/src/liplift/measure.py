"""Point measures on subspaces and the two doubling-type constants.

``doubling_constant`` is the measure-theoretic constant: the worst ratio of
open-ball masses at radii 2R and R. ``delta_covering_constant`` is the purely
metric one: how many half-radius closed balls are needed to cover any closed
ball. Both suprema are turned into exact finite maxima over candidate radii.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MeasureError
from .metric import FiniteMetricSpace, SubspaceView, _frozen

# Balls with at most this many points get an exhaustive minimum set cover;
# larger balls fall back to greedy and flag the result as an upper bound.
EXACT_COVER_LIMIT = 16


@dataclass(frozen=True, eq=False)
class SubspaceMeasure:
    """Strictly positive point masses on the points of a subspace view."""

    sub: SubspaceView
    mass: np.ndarray

    def __post_init__(self):
        m = np.array(self.mass, dtype=float)
        if m.ndim != 1 or m.shape[0] != self.sub.n_points:
            raise MeasureError(
                f"need one mass per subspace point ({self.sub.n_points}), got shape {m.shape}"
            )
        if not np.isfinite(m).all():
            raise MeasureError("masses must be finite")
        if (m <= 0).any():
            i = int(np.flatnonzero(m <= 0)[0])
            raise MeasureError(
                f"mass {m[i]} at subspace position {i} is not strictly positive; "
                "every ball must carry strictly positive measure"
            )
        object.__setattr__(self, "mass", _frozen(m))

    @property
    def total(self) -> float:
        return float(self.mass.sum())

    def rescaled(self, c: float) -> "SubspaceMeasure":
        if c <= 0:
            raise MeasureError("measure scale factor must be positive")
        return SubspaceMeasure(self.sub, self.mass * c)


class DoublingResult(NamedTuple):
    value: float
    witness: tuple  # (parent center index, radius R)


class DeltaResult(NamedTuple):
    value: int
    exactness: str  # "exact" | "greedy_upper_bound"


def doubling_constant(mu: SubspaceMeasure) -> DoublingResult:
    """sup over centers and R > 0 of mu(B_2R) / mu(B_R), open balls in the subspace.

    The ratio is a step function of R, constant between consecutive candidate
    radii (distances from the center and their halves) and attained at each
    interval's right endpoint, so the supremum is the exact maximum over the
    candidates; beyond the largest candidate the ratio is 1.
    """
    sub = mu.sub
    d = sub.dist
    masses = mu.mass
    n = sub.n_points

    best = 1.0
    wit = (sub.indices[0], (2.0 * float(d.max())) if n > 1 else 1.0)
    for c in range(n):
        row = d[c]
        order = np.argsort(row, kind="stable")
        ds = row[order]
        cum = np.concatenate([[0.0], np.cumsum(masses[order])])
        pos = ds[ds > 0]
        if pos.size == 0:
            continue
        cands = np.unique(np.concatenate([pos / 2, pos]))
        m_r = cum[np.searchsorted(ds, cands, side="left")]
        m_2r = cum[np.searchsorted(ds, 2 * cands, side="left")]
        ratios = m_2r / m_r
        k = int(np.argmax(ratios))
        if ratios[k] > best:
            best = float(ratios[k])
            wit = (sub.indices[c], float(cands[k]))
    return DoublingResult(best, wit)


def _greedy_cover_count(sets: np.ndarray) -> int:
    """Number of sets chosen by largest-gain greedy cover; ties to lowest index."""
    uncovered = np.ones(sets.shape[1], dtype=bool)
    count = 0
    while uncovered.any():
        gains = (sets & uncovered).sum(axis=1)
        pick = int(np.argmax(gains))
        if gains[pick] == 0:
            raise AssertionError("cover instance is infeasible")  # cannot happen
        uncovered &= ~sets[pick]
        count += 1
    return count


def _exact_cover_count(sets: np.ndarray) -> int:
    """Minimum set cover by breadth-first search over covered-subset bitmasks."""
    u = sets.shape[1]
    full = (1 << u) - 1
    weights = 1 << np.arange(u, dtype=np.int64)
    masks = sorted({int((row * weights).sum()) for row in sets}, key=int.bit_count,
                   reverse=True)
    # Dominated sets (subsets of an earlier mask) never help a minimum cover.
    maximal = []
    for m in masks:
        if not any(m | keep == keep for keep in maximal):
            maximal.append(m)
    if maximal and maximal[0] == full:
        return 1
    seen = bytearray(1 << u)
    frontier = [0]
    seen[0] = 1
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for state in frontier:
            for m in maximal:
                s2 = state | m
                if s2 == full:
                    return depth
                if not seen[s2]:
                    seen[s2] = 1
                    nxt.append(s2)
        frontier = nxt
    raise AssertionError("cover instance is infeasible")  # cannot happen


def delta_covering_constant(space: FiniteMetricSpace) -> DeltaResult:
    """Fewest closed half-radius balls needed to cover any closed ball.

    Covering-ball centers are restricted to points of the space. Per center
    only its own row of distances matters as candidate radii: any other radius
    yields the same closed ball with a larger half-radius, which can only make
    the cover smaller.
    """
    d = space.dist
    n = space.n_points
    best = 1
    exact_all = True
    for m in range(n):
        radii = np.unique(d[m][d[m] > 0])
        for r in radii:
            universe = np.flatnonzero(d[m] <= r)
            if universe.size == 1:
                continue
            sets = d[:, universe] <= r / 2
            sets = sets[sets.any(axis=1)]
            if universe.size <= EXACT_COVER_LIMIT:
                count = _exact_cover_count(sets)
            else:
                count = _greedy_cover_count(sets)
                exact_all = False
            if count > best:
                best = count
    return DeltaResult(best, "exact" if exact_all else "greedy_upper_bound")
