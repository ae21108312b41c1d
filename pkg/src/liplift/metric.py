"""Finite metric spaces, subspace views, and Lipschitz seminorms of vector fields.

Distances are stored as a dense n x n matrix; instances are desk-scale
(n up to a couple thousand), so quadratic and cubic brute-force scans are the
norm here. All objects are immutable after construction and every function is
pure, so shared read-only use from several threads is safe.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AsymmetricMatrix,
    EmptySubspace,
    NegativeDistance,
    TriangleViolation,
    ZeroOffDiagonal,
)

# Relative tolerance for the triangle inequality check: coordinate-generated
# matrices pick up rounding at this scale, exact metrics pass with margin.
TRIANGLE_RTOL = 1e-9

TARGET_NORMS = ("l1", "l2", "linf")


def vector_norm(v: np.ndarray, which: str) -> np.ndarray:
    """Norm of vectors along the last axis; ``which`` is one of l1, l2, linf."""
    if which == "l1":
        return np.abs(v).sum(axis=-1)
    if which == "l2":
        return np.sqrt((v * v).sum(axis=-1))
    if which == "linf":
        return np.abs(v).max(axis=-1)
    raise ValueError(f"unknown target norm {which!r}, expected one of {TARGET_NORMS}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """n labeled points with a validated symmetric distance matrix.

    Construct through :func:`validate_metric`; direct construction skips the
    metric axioms and is reserved for provably valid restrictions.
    """

    labels: tuple
    dist: np.ndarray

    @property
    def n_points(self) -> int:
        return len(self.labels)

    @property
    def diameter(self) -> float:
        return float(self.dist.max())

    def distance(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    def rescaled(self, alpha: float) -> "FiniteMetricSpace":
        """The same point set with all distances multiplied by alpha > 0."""
        if alpha <= 0:
            raise ValueError("scale factor must be positive")
        return FiniteMetricSpace(self.labels, _frozen(self.dist * alpha))


def validate_metric(dist, labels: Optional[Sequence] = None) -> FiniteMetricSpace:
    """Check the metric axioms on a square matrix and wrap it as a space.

    Raises AsymmetricMatrix, NegativeDistance, ZeroOffDiagonal (duplicate
    points), or TriangleViolation (reporting the worst triple). Shape problems
    and non-finite entries raise ValueError.
    """
    a = np.array(dist, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        raise ValueError("distance matrix must have at least one point")
    if not np.isfinite(a).all():
        raise ValueError("distance matrix contains non-finite entries")

    if (a < 0).any():
        i, j = np.unravel_index(int(np.argmin(a)), a.shape)
        raise NegativeDistance(f"dist[{i}][{j}] = {a[i, j]} is negative")

    if not np.array_equal(a, a.T):
        bad = np.argwhere(a != a.T)
        i, j = (int(x) for x in bad[0])
        raise AsymmetricMatrix(
            f"dist[{i}][{j}] = {a[i, j]} but dist[{j}][{i}] = {a[j, i]}"
        )

    diag = np.diagonal(a)
    if (diag != 0).any():
        i = int(np.flatnonzero(diag != 0)[0])
        raise ValueError(f"dist[{i}][{i}] = {diag[i]} must be zero")

    off_zero = (a == 0) & ~np.eye(n, dtype=bool)
    if off_zero.any():
        i, j = (int(x) for x in np.argwhere(off_zero)[0])
        raise ZeroOffDiagonal(f"points {i} and {j} are at distance zero (duplicates)")

    # Worst triangle excess max_{i,j,k} d(i,j) - d(i,k) - d(k,j), one O(n^2)
    # pass per intermediate point.
    tol = TRIANGLE_RTOL * float(a.max()) if n > 1 else 0.0
    worst = -np.inf
    worst_triple = None
    buf = np.empty_like(a)
    for k in range(n):
        np.add.outer(a[:, k], a[k, :], out=buf)
        np.subtract(a, buf, out=buf)
        flat = int(np.argmax(buf))
        v = buf.flat[flat]
        if v > worst:
            worst = v
            worst_triple = (flat // n, flat % n, k)
    if worst_triple is not None and worst > tol:
        i, j, k = worst_triple
        raise TriangleViolation(
            f"d({i},{j}) = {a[i, j]} exceeds d({i},{k}) + d({k},{j}) = "
            f"{a[i, k] + a[k, j]} by {worst}",
            triple=(i, j, k),
            excess=float(worst),
        )

    if labels is None:
        labels = tuple(f"p{i}" for i in range(n))
    else:
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} points")
        labels = tuple(labels)
    return FiniteMetricSpace(labels, _frozen(a))


@dataclass(frozen=True, eq=False)
class SubspaceView:
    """An index subset of a parent space, carrying the induced metric."""

    parent: FiniteMetricSpace
    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise EmptySubspace("subspace must contain at least one point")
        n = self.parent.n_points
        if any(i < 0 or i >= n for i in idx):
            raise ValueError(f"subspace index out of range for {n} points")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("subspace indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    @property
    def n_points(self) -> int:
        return len(self.indices)

    @functools.cached_property
    def index_array(self) -> np.ndarray:
        return _frozen(np.array(self.indices, dtype=int)).astype(int)

    @functools.cached_property
    def dist(self) -> np.ndarray:
        """Induced distance matrix (restriction of the parent matrix)."""
        ix = np.array(self.indices, dtype=int)
        return _frozen(self.parent.dist[np.ix_(ix, ix)])

    @functools.cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.indices)

    def __contains__(self, i) -> bool:
        return int(i) in self._member_set

    def position_of(self, i: int) -> int:
        """Local position of parent index ``i`` within this subspace."""
        try:
            return self.indices.index(int(i))
        except ValueError:
            raise KeyError(f"point {i} is not in the subspace") from None

    def as_space(self) -> FiniteMetricSpace:
        """The subspace materialized as a standalone space (metric inherited)."""
        labels = tuple(self.parent.labels[i] for i in self.indices)
        return FiniteMetricSpace(labels, self.dist)


@dataclass(frozen=True, eq=False)
class VectorField:
    """Values in R^k attached to the points of a (sub)space.

    ``target_norm`` selects the norm on the value space: l1, l2, or linf.
    """

    values: np.ndarray
    target_norm: str = "l2"

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or v.shape[1] < 1:
            raise ValueError(f"field values must be (n, k), got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("field values must be finite")
        if self.target_norm not in TARGET_NORMS:
            raise ValueError(
                f"unknown target norm {self.target_norm!r}, expected one of {TARGET_NORMS}"
            )
        object.__setattr__(self, "values", _frozen(v))

    @property
    def n_points(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class NormBoundReport:
    """A measured Lipschitz-ratio against an explicit bound."""

    lipschitz_ratio: float
    bound: float
    witness_pair: Optional[tuple]

    @property
    def within_bound(self) -> bool:
        return self.lipschitz_ratio <= self.bound * (1 + 1e-9)


def _domain_dist(domain) -> np.ndarray:
    if isinstance(domain, FiniteMetricSpace):
        return domain.dist
    if isinstance(domain, SubspaceView):
        return domain.dist
    raise TypeError(f"expected a space or subspace view, got {type(domain)!r}")


def _to_parent_pair(domain, i: int, j: int) -> tuple:
    if isinstance(domain, SubspaceView):
        return (domain.indices[i], domain.indices[j])
    return (i, j)


def lipschitz_seminorm(domain, field: VectorField):
    """Largest ratio ||f(m) - f(m')|| / d(m, m') over distinct pairs.

    Returns ``(L, witness)`` with the witness pair in parent indices when the
    domain is a subspace view. Constant fields give L = 0; a single-point
    domain gives ``(0.0, None)``.
    """
    d = _domain_dist(domain)
    n = d.shape[0]
    vals = field.values
    if vals.shape[0] != n:
        raise ValueError(f"field has {vals.shape[0]} values for {n} points")
    if n == 1:
        return 0.0, None

    best = -1.0
    wit = (0, 1)
    # Blocked pairwise scan keeps the (n, n, k) difference tensor bounded.
    block = max(1, int(4_000_000 // (n * vals.shape[1] + 1)))
    for s in range(0, n, block):
        e = min(n, s + block)
        diffs = vals[s:e, None, :] - vals[None, :, :]
        nrm = vector_norm(diffs, field.target_norm)
        dd = d[s:e, :].copy()
        dd[dd == 0] = np.inf  # diagonal; off-diagonal zeros are rejected upstream
        ratios = nrm / dd
        flat = int(np.argmax(ratios))
        v = float(ratios.flat[flat])
        if v > best:
            best = v
            i = s + flat // n
            j = flat % n
            wit = (min(i, j), max(i, j))
    return max(best, 0.0), _to_parent_pair(domain, *wit)


def distance_to_subset(space: FiniteMetricSpace, sub: SubspaceView, i: int) -> float:
    """min over subspace points m' of d(i, m'); zero exactly on the subspace."""
    if sub.parent is not space:
        raise ValueError("subspace does not view the given space")
    if i < 0 or i >= space.n_points:
        raise ValueError(f"point index {i} out of range")
    return float(space.dist[i, sub.index_array].min())


def critical_radii(space: FiniteMetricSpace, center: int) -> np.ndarray:
    """Sorted unique positive distances from ``center`` together with their halves.

    Open-ball membership as a function of the radius changes only at these
    values or their doubles, which makes suprema over all radii exact finite
    maxima.
    """
    row = space.dist[center]
    pos = row[row > 0]
    if pos.size == 0:
        return np.array([])
    return np.unique(np.concatenate([pos / 2, pos]))
