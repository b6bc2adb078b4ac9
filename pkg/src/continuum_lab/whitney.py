"""Whitney maps on finite hyperspaces.

The size map is built from a point enumeration x_1, x_2, ... of the ambient
space: with f_n(x) = 1 / (1 + d(x_n, x)), each term mu_n(A) = diam f_n(A)
is averaged into mu(A) = sum_n mu_n(A) / 2^n.  Truncating after N terms
changes any value by less than 2^-N.

The module also provides the hyperspace size metric
d_mu(A, B) = max(mu(A | B) - mu(A), mu(A | B) - mu(B)), axiom checkers for
the monotone/subadditive characterisation of Whitney maps, level sets, and
equal-level refinements of decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .continua import GraphContinuum
from .errors import DomainError
from .metric_core import DEFAULT_TOL, FinitePointSet

MuLike = Callable[[FrozenSet[int]], float]


class WhitneyMap:
    """Size map over a finite ambient metric space.

    ``ambient`` is a FinitePointSet or a GraphContinuum (whose embedding
    supplies Euclidean distances).  The enumeration order is breadth-first
    from vertex 0 for graphs and index order for point sets; a non-None
    ``ordering_seed`` applies a seeded permutation instead.  ``truncate``
    keeps only the first N enumeration terms (tail bound 2**-N).
    """

    def __init__(self, ambient, ordering_seed: Optional[int] = None,
                 truncate: Optional[int] = None):
        if isinstance(ambient, GraphContinuum):
            pts = np.array(ambient.pos, dtype=float)
            diff = pts[:, None, :] - pts[None, :, :]
            dist = np.sqrt((diff ** 2).sum(axis=2))
            order = _bfs_order(ambient)
        elif isinstance(ambient, FinitePointSet):
            dist = ambient.distances_to(ambient)
            order = list(range(len(ambient)))
        else:
            raise DomainError("ambient must be a GraphContinuum or FinitePointSet")
        n = dist.shape[0]
        if ordering_seed is not None:
            rng = np.random.default_rng(ordering_seed)
            order = [order[i] for i in rng.permutation(n)]
        self.ambient = ambient
        self.n_points = n
        self.order = list(order)
        self.truncate = n if truncate is None else min(int(truncate), n)
        if self.truncate < 1:
            raise DomainError("truncate must be at least 1")
        # F[k, i] = f_{x_k}(p_i) for the first `truncate` enumeration points
        centers = self.order[:self.truncate]
        self.F = 1.0 / (1.0 + dist[centers, :])
        self.weights = 0.5 ** np.arange(1, self.truncate + 1)
        self._cache: Dict[FrozenSet[int], float] = {}

    @property
    def tail_bound(self) -> float:
        return 0.5 ** self.truncate

    def __call__(self, a: FrozenSet[int]) -> float:
        a = frozenset(a)
        if not a:
            raise DomainError("mu is defined on non-empty sets")
        got = self._cache.get(a)
        if got is not None:
            return got
        idx = np.fromiter(a, dtype=int)
        if idx.min() < 0 or idx.max() >= self.n_points:
            raise DomainError("set contains vertices outside the ambient")
        cols = self.F[:, idx]
        val = float(np.dot(self.weights, cols.max(axis=1) - cols.min(axis=1)))
        self._cache[a] = val
        return val


def _bfs_order(g: GraphContinuum) -> List[int]:
    adj = g.adjacency
    seen = [0]
    mark = {0}
    head = 0
    while head < len(seen):
        for w in sorted(adj[seen[head]]):
            if w not in mark:
                mark.add(w)
                seen.append(w)
        head += 1
    return seen


def build_whitney_map(ambient, ordering_seed: Optional[int] = None,
                      truncate: Optional[int] = None) -> WhitneyMap:
    return WhitneyMap(ambient, ordering_seed=ordering_seed, truncate=truncate)


# ---------------------------------------------------------------------------
# the size metric


def whitney_distance(mu: MuLike, a: FrozenSet[int], b: FrozenSet[int],
                     mode: str = "2X",
                     connected_check: Optional[Callable[[FrozenSet[int]], bool]] = None
                     ) -> float:
    """d_mu(A, B) from the size of the union.

    In "CX" mode the union must stay connected (``connected_check``
    required); the default "2X" mode evaluates mu on arbitrary unions.
    """
    a, b = frozenset(a), frozenset(b)
    u = a | b
    if mode == "CX":
        if connected_check is None:
            raise DomainError("CX mode needs a connected_check predicate")
        if not connected_check(u):
            raise DomainError("union is disconnected; use 2X mode")
    elif mode != "2X":
        raise DomainError(f"unknown mode {mode!r}")
    mu_u = mu(u)
    return max(mu_u - mu(a), mu_u - mu(b))


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    singleton_violations: List[FrozenSet[int]] = field(default_factory=list)
    monotone_violations: List[Tuple[FrozenSet[int], FrozenSet[int]]] = \
        field(default_factory=list)
    subadd_violations: List[Tuple[FrozenSet[int], FrozenSet[int]]] = \
        field(default_factory=list)
    diff_violations: List[Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]] = \
        field(default_factory=list)

    @property
    def singleton_ok(self) -> bool:
        return not self.singleton_violations

    @property
    def monotone_ok(self) -> bool:
        return not self.monotone_violations

    @property
    def subadd_ok(self) -> bool:
        return not self.subadd_violations

    @property
    def diff_ok(self) -> bool:
        return not self.diff_violations

    @property
    def all_ok(self) -> bool:
        return (self.singleton_ok and self.monotone_ok and self.subadd_ok
                and self.diff_ok)


def check_whitney_axioms(mu: MuLike, family: Sequence[FrozenSet[int]],
                         tol: float = DEFAULT_TOL,
                         check_subadd: bool = True,
                         check_diff: bool = True) -> AxiomReport:
    """Check the Whitney axioms over an explicit family of sets.

    (a) singletons have size 0; (b) strict containment gives strictly
    smaller size; (c) union-intersection subadditivity
    mu(A|B) <= mu(A) + mu(B) - mu(A&B) on intersecting pairs; (c')
    difference monotonicity mu(B|C) - mu(A|C) <= mu(B) - mu(A) for A <= B.
    Unions and intersections are evaluated in 2^X mode.
    """
    fam = [frozenset(s) for s in family]
    report = AxiomReport()
    for s in fam:
        if len(s) == 1 and abs(mu(s)) > tol:
            report.singleton_violations.append(s)
    for a in fam:
        for b in fam:
            if a < b and mu(b) - mu(a) <= tol:
                report.monotone_violations.append((a, b))
    if check_subadd:
        for i, a in enumerate(fam):
            for b in fam[i:]:
                inter = a & b
                if not inter:
                    continue
                if mu(a | b) > mu(a) + mu(b) - mu(inter) + tol:
                    report.subadd_violations.append((a, b))
    if check_diff:
        nested = [(a, b) for a in fam for b in fam if a <= b]
        for a, b in nested:
            base = mu(b) - mu(a)
            for c in fam:
                if mu(b | c) - mu(a | c) > base + tol:
                    report.diff_violations.append((a, b, c))
    return report


# ---------------------------------------------------------------------------
# levels and refinements


def min_value_gap(values: Sequence[float]) -> float:
    vals = sorted(set(float(v) for v in values))
    if len(vals) < 2:
        return 0.0
    return min(b - a for a, b in zip(vals, vals[1:]))


def default_level_tolerance(mu: MuLike,
                            family: Sequence[FrozenSet[int]]) -> float:
    """Half the minimal gap between distinct mu-values in the family."""
    return min_value_gap([mu(s) for s in family]) / 2.0


def whitney_level(mu: MuLike, family: Sequence[FrozenSet[int]], t: float,
                  tol: Optional[float] = None) -> List[FrozenSet[int]]:
    """Family members whose size is within ``tol`` of ``t``."""
    if tol is None:
        tol = default_level_tolerance(mu, family)
    return [s for s in family if abs(mu(s) - t) <= tol]


@dataclass
class RefinementPiece:
    member: FrozenSet[int]
    pieces: List[FrozenSet[int]]
    tol: float


def equal_level_refinement(g: GraphContinuum, mu: MuLike,
                           decomposition: Sequence[FrozenSet[int]],
                           t0: float) -> List[RefinementPiece]:
    """Refine each decomposition member into subcontinua of size about t0.

    Preconditions: the members partition the vertex set, each is connected,
    and 0 < t0 <= min member size.  For each member the tolerance is the
    smallest value for which every vertex is covered by some piece within
    tolerance of t0 (so the result is a covering family, not a partition);
    the tolerance used is reported per member.
    """
    members = [frozenset(m) for m in decomposition]
    allv: set = set()
    for m in members:
        if not g.is_connected(m):
            raise DomainError("decomposition members must be connected")
        if allv & m:
            raise DomainError("decomposition members must be disjoint")
        allv |= m
    if allv != set(range(g.n)):
        raise DomainError("decomposition must cover the vertex set")
    if t0 <= 0:
        raise DomainError("t0 must be positive")
    min_size = min(mu(m) for m in members)
    if t0 > min_size + DEFAULT_TOL:
        raise DomainError(
            f"t0 = {t0} exceeds the smallest member size {min_size}")
    out: List[RefinementPiece] = []
    for m in members:
        cands = _connected_subsets(g, m)
        errs = {c: abs(mu(c) - t0) for c in cands}
        tol = 0.0
        for v in m:
            best = min(errs[c] for c in cands if v in c)
            tol = max(tol, best)
        pieces = [c for c in cands if errs[c] <= tol + DEFAULT_TOL]
        out.append(RefinementPiece(member=m, pieces=pieces, tol=tol))
    return out


def _connected_subsets(g: GraphContinuum,
                       inside: FrozenSet[int]) -> List[FrozenSet[int]]:
    seen = set()
    frontier = [frozenset([v]) for v in inside]
    for s in frontier:
        seen.add(s)
    out = list(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            for w in g.neighbors_of_set(s) & inside:
                t = s | {w}
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    out.append(t)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# comparing the two hyperspace metrics


def hyperspace_distance_matrices(g: GraphContinuum, mu: MuLike,
                                 family: Sequence[FrozenSet[int]]
                                 ) -> Tuple[np.ndarray, np.ndarray]:
    """(d_H, d_mu) matrices over the family, using the planar embedding."""
    fam = [frozenset(s) for s in family]
    coords = [g.point_coordinates(sorted(s)) for s in fam]
    k = len(fam)
    dh = np.zeros((k, k))
    dm = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            diff = coords[i][:, None, :] - coords[j][None, :, :]
            d = np.sqrt((diff ** 2).sum(axis=2))
            dh[i, j] = dh[j, i] = max(d.min(axis=1).max(), d.min(axis=0).max())
            dm[i, j] = dm[j, i] = whitney_distance(mu, fam[i], fam[j])
    return dh, dm


def continuity_modulus_table(d_from: np.ndarray, d_to: np.ndarray,
                             eps_values: Sequence[float]
                             ) -> List[Tuple[float, float]]:
    """For each eps: the largest delta with d_from < delta => d_to < eps.

    Positive deltas for every positive eps witness uniform continuity of the
    identity map on a finite family.
    """
    iu = np.triu_indices(d_from.shape[0], k=1)
    df, dt = d_from[iu], d_to[iu]
    out = []
    for eps in eps_values:
        bad = df[dt >= eps]
        delta = float(bad.min()) if bad.size else float("inf")
        out.append((float(eps), delta))
    return out
