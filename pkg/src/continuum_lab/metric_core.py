"""Finite metric spaces, Hausdorff distance, and closed neighborhoods.

A :class:`FinitePointSet` is either a set of planar points or a set of
abstract points carrying a validated distance table.  Subsets created with
:meth:`FinitePointSet.subset` remember their parent so that operations can
reject pairs drawn from unrelated ambient spaces.

All distance computations are exact numpy float64 arithmetic; the default
comparison tolerance is ``1e-12``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError

DEFAULT_TOL = 1e-12


class FinitePointSet:
    """A finite metric space given by planar points or a distance table.

    Exactly one of ``points`` / ``matrix`` is set.  Planar sets all live in
    the Euclidean plane and are mutually compatible; matrix-backed sets are
    compatible only with subsets of the same root table.
    """

    def __init__(self, points=None, matrix=None, tol: float = DEFAULT_TOL,
                 _parent: Optional["FinitePointSet"] = None,
                 _indices: Optional[np.ndarray] = None):
        if (points is None) == (matrix is None):
            raise DomainError("provide exactly one of points= or matrix=")
        self._parent = _parent
        self._indices = _indices
        if points is not None:
            pts = np.asarray(points, dtype=float)
            if pts.ndim != 2 or pts.shape[1] != 2:
                raise DomainError("points must have shape (n, 2)")
            if pts.shape[0] == 0:
                raise DomainError("point set must be non-empty")
            self.points = pts
            self.matrix = None
        else:
            m = np.asarray(matrix, dtype=float)
            _validate_distance_table(m, tol)
            self.points = None
            self.matrix = m

    # -- structure ---------------------------------------------------------

    def __len__(self) -> int:
        if self.points is not None:
            return self.points.shape[0]
        return self.matrix.shape[0]

    @property
    def is_planar(self) -> bool:
        return self.points is not None

    def root(self) -> "FinitePointSet":
        node = self
        while node._parent is not None:
            node = node._parent
        return node

    def subset(self, indices: Sequence[int]) -> "FinitePointSet":
        """Restrict to the given point indices (kept in the given order)."""
        idx = np.asarray(indices, dtype=int)
        if idx.size == 0:
            raise DomainError("subset must be non-empty")
        if idx.min() < 0 or idx.max() >= len(self):
            raise DomainError("subset index out of range")
        if self.points is not None:
            sub = FinitePointSet(points=self.points[idx],
                                 _parent=self, _indices=idx)
        else:
            sub = object.__new__(FinitePointSet)
            sub.points = None
            sub.matrix = self.matrix[np.ix_(idx, idx)]
            sub._parent = self
            sub._indices = idx
        return sub

    def _root_indices(self) -> np.ndarray:
        idx = np.arange(len(self))
        node = self
        while node._parent is not None:
            idx = node._indices[idx]
            node = node._parent
        return idx

    def distances_to(self, other: "FinitePointSet") -> np.ndarray:
        """Pairwise distance matrix between self and other (same ambient)."""
        if self.is_planar and other.is_planar:
            diff = self.points[:, None, :] - other.points[None, :, :]
            return np.sqrt((diff ** 2).sum(axis=2))
        if self.is_planar != other.is_planar:
            raise DomainError("cannot mix planar and table-backed point sets")
        ra, rb = self.root(), other.root()
        if ra is not rb:
            raise DomainError("point sets drawn from different distance tables")
        return ra.matrix[np.ix_(self._root_indices(), other._root_indices())]

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        if self.is_planar:
            obj = {"points": [[float(x), float(y)] for x, y in self.points]}
        else:
            obj = {"matrix": [[float(v) for v in row] for row in self.matrix]}
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, tol: float = DEFAULT_TOL) -> "FinitePointSet":
        obj = json.loads(text)
        if "points" in obj:
            return cls(points=obj["points"])
        if "matrix" in obj:
            return cls(matrix=obj["matrix"], tol=tol)
        raise DomainError('JSON object must contain "points" or "matrix"')


def _validate_distance_table(m: np.ndarray, tol: float) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("distance table must be square")
    if m.shape[0] == 0:
        raise DomainError("distance table must be non-empty")
    if not np.all(np.isfinite(m)):
        raise DomainError("distance table entries must be finite")
    if np.any(m < -tol):
        raise DomainError("distance table entries must be non-negative")
    if np.abs(np.diag(m)).max() > tol:
        raise DomainError("distance table diagonal must be zero")
    if np.abs(m - m.T).max() > tol:
        raise DomainError("distance table must be symmetric")
    # triangle inequality: d(i,j) <= d(i,k) + d(k,j) within tol
    n = m.shape[0]
    for k in range(n):
        slack = m[:, k][:, None] + m[k, :][None, :] - m
        if slack.min() < -tol:
            i, j = np.unravel_index(np.argmin(slack), slack.shape)
            raise DomainError(
                f"distance table violates the triangle inequality at "
                f"({i}, {k}, {j})")


@dataclass(frozen=True)
class DistanceReport:
    """Hausdorff distance together with a witness pair attaining it.

    ``witness`` holds indices ``(i, j)`` into the two input sets such that
    point ``i`` of the far set realizes the max-min distance to the near set
    at point ``j``.  ``direction`` records which input was the far set
    (0 = first, 1 = second).  Ties are broken toward the lowest index.
    """

    value: float
    witness: tuple
    direction: int

    def __post_init__(self):
        if self.value < 0:
            raise DomainError("Hausdorff distance cannot be negative")


def _directed_hausdorff(d: np.ndarray):
    """max over rows of min over columns; lowest-index tie breaking."""
    mins = d.min(axis=1)
    i = int(np.argmax(mins))
    j = int(np.argmin(d[i]))
    return float(mins[i]), i, j


def hausdorff_distance(K: FinitePointSet, L: FinitePointSet) -> DistanceReport:
    """Hausdorff distance between two finite sets in a common ambient space."""
    d = K.distances_to(L)
    fwd, i_f, j_f = _directed_hausdorff(d)
    bwd, i_b, j_b = _directed_hausdorff(d.T)
    if fwd >= bwd:
        return DistanceReport(value=fwd, witness=(i_f, j_f), direction=0)
    return DistanceReport(value=bwd, witness=(i_b, j_b), direction=1)


def closed_neighborhood(K: FinitePointSet, eps: float,
                        ambient: FinitePointSet) -> FinitePointSet:
    """Points of ``ambient`` within distance ``eps`` of ``K``, inclusive.

    ``K`` must be a subset of ``ambient`` (by exact point identity for planar
    sets, by table membership otherwise).  The boundary is included: points at
    distance exactly ``eps`` belong to the neighborhood.
    """
    if eps < 0:
        raise DomainError("neighborhood radius must be non-negative")
    _require_subset(K, ambient)
    d = ambient.distances_to(K)
    keep = np.where(d.min(axis=1) <= eps)[0]
    return ambient.subset(keep)


def _require_subset(K: FinitePointSet, ambient: FinitePointSet) -> None:
    if K.is_planar and ambient.is_planar:
        amb = {(float(x), float(y)) for x, y in ambient.points}
        for x, y in K.points:
            if (float(x), float(y)) not in amb:
                raise DomainError(f"point ({x}, {y}) is not in the ambient set")
        return
    if K.is_planar != ambient.is_planar:
        raise DomainError("cannot mix planar and table-backed point sets")
    if K.root() is not ambient.root():
        raise DomainError("K is not drawn from the ambient distance table")
    amb_idx = set(ambient._root_indices().tolist())
    for i in K._root_indices().tolist():
        if i not in amb_idx:
            raise DomainError("K contains points outside the ambient set")
