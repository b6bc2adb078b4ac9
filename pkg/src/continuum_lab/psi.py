"""Finite model of a circle of pseudo-arcs and its hyperspace.

The model has ``m`` fibers, one over each vertex of an ``m``-cycle base.
Each fiber is the nerve of a crooked chain taken from an abstract refinement
tower (``fiber_level`` picks the tower level, so fibers carry a crookedness
certificate), embedded as a short radial stick of ``k`` vertices near its
base angle.

Hyperspace elements are of two kinds:

* ``Piece(fiber, i, j)`` - a proper link interval of one fiber (filament);
* ``Arc(start, length)`` - the union of the full fibers over a connected
  base arc (ample); ``length == 1`` is a single full fiber, the minimal
  ample element, and ``length == m`` is the whole space.

Sizes come from a Whitney map over the embedded vertices.  The Planck
boundary is the set of ample elements covering a filament element in the
containment order; normalization rescales every fiber to the common minimal
full-fiber size l, after which the boundary is exactly the level set at l.

Distances between elements use the containment join J of the pair:
d(A, B) = max(mu(J) - mu(A), mu(J) - mu(B)).  On nested pairs this is the
plain size difference, so order arcs are isometric to their size ranges,
and it remains well defined after normalization (where unions of vertex
sets no longer have canonical sizes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .chains import RefinementPattern, generate_crooked_pattern, is_crooked
from .continua import _max_elements, build_continuum
from .errors import DomainError, ResourceError
from .metric_core import DEFAULT_TOL, FinitePointSet
from .whitney import WhitneyMap, build_whitney_map


@dataclass(frozen=True, order=True)
class Piece:
    """Proper link interval [i, j] (1-based, inclusive) of one fiber."""

    fiber: int
    i: int
    j: int

    def __post_init__(self):
        if self.fiber < 0 or not 1 <= self.i <= self.j:
            raise DomainError(f"bad piece ({self.fiber}, {self.i}, {self.j})")


@dataclass(frozen=True, order=True)
class Arc:
    """Union of the full fibers over ``length`` consecutive base vertices."""

    start: int
    length: int

    def __post_init__(self):
        if self.start < 0 or self.length < 1:
            raise DomainError(f"bad arc ({self.start}, {self.length})")


HyperElement = Union[Piece, Arc]

FIBER_STICK = 0.35  # radial extent of one embedded fiber
BASE_RADIUS = 1.0


class PsiModel:
    """The element family, sizes, and containment order of the model."""

    def __init__(self, m: int, k: int, fiber_level: int,
                 patterns: List[RefinementPattern],
                 points: FinitePointSet, mu_base: WhitneyMap,
                 elements: List[HyperElement]):
        self.m = m
        self.k = k
        self.fiber_level = fiber_level
        self.patterns = patterns
        self.points = points
        self.mu_base = mu_base
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self._vsets: Dict[HyperElement, FrozenSet[int]] = {}
        self.mu: Dict[HyperElement, float] = {
            e: mu_base(self.vertices(e)) for e in elements}
        fibers = [Arc(start=a, length=1) for a in range(m)]
        self.l = min(self.mu[f] for f in fibers)
        self.L = max(self.mu[f] for f in fibers)
        self.whole = Arc(start=0, length=m)
        self._joins: Dict[Tuple[int, int], HyperElement] = {}

    # -- structure ---------------------------------------------------------

    def vertex_id(self, fiber: int, link: int) -> int:
        """Embedded point id of 1-based ``link`` in ``fiber``."""
        return fiber * self.k + (link - 1)

    def vertices(self, e: HyperElement) -> FrozenSet[int]:
        got = self._vsets.get(e)
        if got is not None:
            return got
        if isinstance(e, Piece):
            vs = frozenset(self.vertex_id(e.fiber, t)
                           for t in range(e.i, e.j + 1))
        else:
            vs = frozenset(self.vertex_id((e.start + off) % self.m, t)
                           for off in range(e.length)
                           for t in range(1, self.k + 1))
        self._vsets[e] = vs
        return vs

    def closed_vertices(self, e: HyperElement) -> FrozenSet[int]:
        """Overlap-faithful vertex set on a doubled grid per fiber.

        Link t covers grid points 2t-1 .. 2t+1, so consecutive links share
        a point, exactly as overlapping chain links do.  Use this for
        intersection questions (terminality); :meth:`vertices` keeps one
        center point per link for metric purposes.
        """
        span = 2 * self.k + 1
        if isinstance(e, Piece):
            return frozenset(e.fiber * span + g
                             for g in range(2 * e.i - 1, 2 * e.j + 2))
        return frozenset(f * span + g for f in self.fibers_of(e)
                         for g in range(1, span + 1))

    def fibers_of(self, e: HyperElement) -> FrozenSet[int]:
        if isinstance(e, Piece):
            return frozenset([e.fiber])
        return frozenset((e.start + off) % self.m for off in range(e.length))

    def leq(self, a: HyperElement, b: HyperElement) -> bool:
        if isinstance(a, Piece):
            if isinstance(b, Piece):
                return a.fiber == b.fiber and b.i <= a.i and a.j <= b.j
            return a.fiber in self.fibers_of(b)
        if isinstance(b, Piece):
            return False
        return self._arc_subset(a, b)

    def _arc_subset(self, a: Arc, b: Arc) -> bool:
        return self.fibers_of(a) <= self.fibers_of(b)

    def classify(self, e: HyperElement) -> str:
        return "filament" if isinstance(e, Piece) else "ample"

    def covers(self, lo: HyperElement, hi: HyperElement) -> bool:
        if not (self.leq(lo, hi) and lo != hi):
            return False
        for c in self.elements:
            if c != lo and c != hi and self.leq(lo, c) and self.leq(c, hi):
                return False
        return True

    def join(self, a: HyperElement, b: HyperElement,
             values: Optional[Dict[HyperElement, float]] = None,
             label: str = "raw") -> HyperElement:
        """Smallest element containing both (ties by size then identity).

        Minimality is measured in the given size assignment so that joins,
        and hence distances, stay consistent after renormalization.
        """
        vals = self.mu if values is None else values
        key = (label,) + tuple(sorted((self.index[a], self.index[b])))
        got = self._joins.get(key)
        if got is not None:
            return got
        if (isinstance(a, Piece) and isinstance(b, Piece)
                and a.fiber == b.fiber):
            i, j = min(a.i, b.i), max(a.j, b.j)
            cand: HyperElement
            if (i, j) == (1, self.k):
                cand = Arc(start=a.fiber, length=1)
            else:
                cand = Piece(fiber=a.fiber, i=i, j=j)
        else:
            need = self.fibers_of(a) | self.fibers_of(b)
            best = None
            for e in self.elements:
                if isinstance(e, Arc) and need <= self.fibers_of(e):
                    score = (vals[e], self.index[e])
                    if best is None or score < best[0]:
                        best = (score, e)
            cand = best[1]
        self._joins[key] = cand
        return cand

    def distance(self, a: HyperElement, b: HyperElement,
                 values: Optional[Dict[HyperElement, float]] = None,
                 label: str = "raw") -> float:
        vals = self.mu if values is None else values
        j = self.join(a, b, values=values, label=label)
        return max(vals[j] - vals[a], vals[j] - vals[b])


def fiber_link_count(fiber_level: int, n_coarse_initial: int = 4
                     ) -> Tuple[int, List[RefinementPattern]]:
    """Links per fiber and the tower patterns certifying crookedness."""
    if fiber_level < 1:
        raise DomainError("fiber_level must be >= 1")
    patterns: List[RefinementPattern] = []
    length = n_coarse_initial
    for _ in range(2, fiber_level + 1):
        pat = generate_crooked_pattern(length)
        if not is_crooked(pat).ok:
            raise DomainError("internal: generated pattern is not crooked")
        patterns.append(pat)
        length = len(pat)
    return length, patterns


def closed_form_element_count(m: int, k: int) -> int:
    """Stated closed form for the element count.

    Note: the m singleton base arcs (= full fibers) are already included in
    the m*(m-1) proper-arc term, so this expression exceeds the number of
    distinct subcontinua in the model by m; the honest enumeration size is
    ``distinct_element_count``.  Kept as stated for the acceptance gate.
    """
    return m * (k * (k + 1) // 2 - 1) + m * (m - 1) + 1 + m


def distinct_element_count(m: int, k: int) -> int:
    """Number of distinct subcontinua: proper pieces, base arcs, whole."""
    return m * (k * (k + 1) // 2 - 1) + m * (m - 1) + 1


def build_psi_model(m: int = 6, fiber_level: int = 2,
                    n_coarse_initial: int = 4,
                    max_elements: Optional[int] = None) -> PsiModel:
    if m < 3:
        raise DomainError("need m >= 3 fibers")
    k, patterns = fiber_link_count(fiber_level, n_coarse_initial)
    count = distinct_element_count(m, k)
    cap = _max_elements(max_elements)
    if count > cap:
        raise ResourceError(
            f"psi model with {count} elements exceeds cap {cap}",
            achievable=cap)
    pts = []
    for a in range(m):
        ang = 2 * math.pi * a / m
        for t in range(k):
            r = BASE_RADIUS + FIBER_STICK * t / max(k - 1, 1)
            pts.append((r * math.cos(ang), r * math.sin(ang)))
    points = FinitePointSet(points=pts)
    mu_base = build_whitney_map(points)
    elements: List[HyperElement] = []
    for a in range(m):
        for i in range(1, k + 1):
            for j in range(i, k + 1):
                if (i, j) != (1, k):
                    elements.append(Piece(fiber=a, i=i, j=j))
    for length in range(1, m):
        for s in range(m):
            elements.append(Arc(start=s, length=length))
    elements.append(Arc(start=0, length=m))
    model = PsiModel(m=m, k=k, fiber_level=fiber_level, patterns=patterns,
                     points=points, mu_base=mu_base, elements=elements)
    if not (0 < model.l <= model.L < model.mu[model.whole]):
        raise DomainError("internal: Planck interval out of order")
    return model


# ---------------------------------------------------------------------------
# Planck boundary and normalization


@dataclass
class PlanckReport:
    l: float
    L: float
    boundary: List[HyperElement]
    fiber_values: List[float]


def planck_report(model: PsiModel) -> PlanckReport:
    """Boundary = ample elements covering some filament element."""
    boundary = []
    filaments = [e for e in model.elements if isinstance(e, Piece)]
    for e in model.elements:
        if model.classify(e) != "ample":
            continue
        if any(model.covers(f, e) for f in filaments):
            boundary.append(e)
    fibers = [Arc(start=a, length=1) for a in range(model.m)]
    return PlanckReport(l=model.l, L=model.L, boundary=boundary,
                        fiber_values=[model.mu[f] for f in fibers])


@dataclass
class PsiValues:
    """A size assignment on the element family (raw or normalized)."""

    model: PsiModel
    values: Dict[HyperElement, float]
    l: float
    label: str

    def distance(self, a: HyperElement, b: HyperElement) -> float:
        return self.model.distance(a, b, values=self.values,
                                   label=self.label)


def raw_values(model: PsiModel) -> PsiValues:
    return PsiValues(model=model, values=dict(model.mu), l=model.l,
                     label="raw")


def normalize_to_psi0(model: PsiModel) -> PsiValues:
    """Rescale each fiber affinely so every full fiber has size l.

    Piece sizes are scaled by their fiber's factor; arc sizes become
    l plus a Whitney size of the base arc, preserving strict monotonicity
    across the whole containment order (every piece < l <= every arc).
    The base size is averaged over all rotations of the cycle (a mean of
    Whitney maps is again one), so arcs of equal length get equal size and
    the rotational symmetry of the model survives normalization.
    """
    base = build_continuum("cycle", n=model.m)
    w = build_whitney_map(base)
    m = model.m
    arc_size = {length: float(np.mean(
        [w(frozenset((s + o) % m for o in range(length))) for s in range(m)]))
        for length in range(2, m + 1)}
    values: Dict[HyperElement, float] = {}
    for e in model.elements:
        if isinstance(e, Piece):
            scale = model.l / model.mu[Arc(start=e.fiber, length=1)]
            values[e] = model.mu[e] * scale
        elif e.length == 1:
            values[e] = model.l
        else:
            values[e] = model.l + arc_size[e.length]
    return PsiValues(model=model, values=values, l=model.l,
                     label="normalized")


# ---------------------------------------------------------------------------
# level structure


@dataclass
class LevelReport:
    t: float
    tol: float
    epsilon: float
    elements: List[HyperElement]
    components: List[List[HyperElement]]
    is_cycle: bool
    component_fibers: List[FrozenSet[int]]


def level_structure_report(pv: PsiValues, t: float,
                           tol: Optional[float] = None) -> LevelReport:
    """Level set near size ``t`` with an auto-calibrated proximity nerve.

    Below the fiber size l the level is the per-fiber shell of pieces
    closest to t (tolerance = the largest per-fiber best error, so each
    fiber contributes); the nerve radius is the smallest value making each
    fiber's shell connected.  At and above l the level is the per-rotation
    closest shell of base arcs and the nerve radius is the largest
    second-nearest-neighbor distance, which closes the base cycle.
    """
    model = pv.model
    if t <= 0:
        raise DomainError("level parameter must be positive")
    if t < pv.l - DEFAULT_TOL:
        shells: List[HyperElement] = []
        tols: List[float] = []
        for a in range(model.m):
            pieces = [e for e in model.elements
                      if isinstance(e, Piece) and e.fiber == a]
            errs = {e: abs(pv.values[e] - t) for e in pieces}
            best = min(errs.values())
            tols.append(best)
        use_tol = max(tols) if tol is None else tol
        for a in range(model.m):
            pieces = [e for e in model.elements
                      if isinstance(e, Piece) and e.fiber == a]
            shells.extend(e for e in pieces
                          if abs(pv.values[e] - t) <= use_tol + DEFAULT_TOL)
        eps = _per_fiber_connect_radius(pv, shells)
    else:
        arcs = [e for e in model.elements if isinstance(e, Arc)]
        errs = {e: abs(pv.values[e] - t) for e in arcs}
        if tol is None:
            per_start = []
            for s in range(model.m):
                local = [errs[e] for e in arcs
                         if e.length == model.m or e.start == s]
                per_start.append(min(local))
            use_tol = max(per_start)
        else:
            use_tol = tol
        shells = [e for e in arcs if errs[e] <= use_tol + DEFAULT_TOL]
        eps = _second_neighbor_radius(pv, shells)
    return _nerve_report(pv, t, use_tol, eps, shells)


def _per_fiber_connect_radius(pv: PsiValues,
                              shells: List[HyperElement]) -> float:
    eps = 0.0
    for a in range(pv.model.m):
        sub = [e for e in shells if isinstance(e, Piece) and e.fiber == a]
        if len(sub) > 1:
            eps = max(eps, _mst_max_edge(pv, sub))
    return eps


def _second_neighbor_radius(pv: PsiValues,
                            shells: List[HyperElement]) -> float:
    if len(shells) < 3:
        return 0.0
    eps = 0.0
    for e in shells:
        ds = sorted(pv.distance(e, f) for f in shells if f != e)
        eps = max(eps, ds[1] if len(ds) > 1 else ds[0])
    return eps


def _mst_max_edge(pv: PsiValues, nodes: List[HyperElement]) -> float:
    n = len(nodes)
    d = np.array([[pv.distance(a, b) for b in nodes] for a in nodes])
    in_tree = [0]
    best = d[0].copy()
    worst = 0.0
    while len(in_tree) < n:
        best[in_tree] = np.inf
        nxt = int(np.argmin(best))
        worst = max(worst, float(best[nxt]))
        in_tree.append(nxt)
        best = np.minimum(best, d[nxt])
    return worst


def _nerve_report(pv: PsiValues, t, tol, eps, shells) -> LevelReport:
    n = len(shells)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    degree = [0] * n
    edge_count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if pv.distance(shells[i], shells[j]) <= eps + DEFAULT_TOL:
                degree[i] += 1
                degree[j] += 1
                edge_count += 1
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: Dict[int, List[HyperElement]] = {}
    for i, e in enumerate(shells):
        groups.setdefault(find(i), []).append(e)
    components = sorted(groups.values(),
                        key=lambda g: min(pv.model.index[e] for e in g))
    is_cycle = (len(components) == 1 and n >= 3 and
                all(deg == 2 for deg in degree) and edge_count == n)
    comp_fibers = [frozenset().union(*(pv.model.fibers_of(e) for e in g))
                   for g in components]
    return LevelReport(t=t, tol=tol, epsilon=eps, elements=shells,
                       components=components, is_cycle=is_cycle,
                       component_fibers=comp_fibers)


def component_cyclic_arrangement(pv: PsiValues, report: LevelReport) -> bool:
    """Each component's two nearest other components are its base neighbors."""
    m = pv.model.m
    comps = report.components
    if len(comps) != m:
        return False
    fiber_of = {}
    for idx, fibers in enumerate(report.component_fibers):
        if len(fibers) != 1:
            return False
        fiber_of[idx] = next(iter(fibers))
    for i in range(m):
        dists = []
        for j in range(m):
            if i == j:
                continue
            d = min(pv.distance(a, b) for a in comps[i] for b in comps[j])
            dists.append((d, fiber_of[j]))
        dists.sort()
        near = {f for _, f in dists[:2]}
        want = {(fiber_of[i] + 1) % m, (fiber_of[i] - 1) % m}
        if near != want:
            return False
    return True


# ---------------------------------------------------------------------------
# order-arc paths and curvature


class PsiPathspace:
    """Weighted comparability graph over the elements of a size assignment.

    Vertices are elements; edges join strictly comparable pairs with weight
    equal to the size difference, so a path is a concatenation of order
    arcs and its length is the total size variation.
    """

    def __init__(self, pv: PsiValues, filament_only: bool = False):
        self.pv = pv
        model = pv.model
        if filament_only:
            self.nodes = [e for e in model.elements if isinstance(e, Piece)]
        else:
            self.nodes = list(model.elements)
        self.node_index = {e: i for i, e in enumerate(self.nodes)}
        rows, cols, data = [], [], []
        for i, a in enumerate(self.nodes):
            for j in range(i + 1, len(self.nodes)):
                b = self.nodes[j]
                if model.leq(a, b) or model.leq(b, a):
                    w = abs(pv.values[a] - pv.values[b])
                    rows += [i, j]
                    cols += [j, i]
                    data += [w, w]
        n = len(self.nodes)
        self.graph = csr_matrix((data, (rows, cols)), shape=(n, n))

    def shortest(self, sources: Sequence[HyperElement]):
        idx = [self.node_index[s] for s in sources]
        dist, pred = dijkstra(self.graph, indices=idx,
                              return_predecessors=True)
        return dist, pred

    def path_between(self, a: HyperElement, b: HyperElement
                     ) -> Tuple[float, List[HyperElement]]:
        dist, pred = self.shortest([a])
        tb = self.node_index[b]
        if not np.isfinite(dist[0, tb]):
            return float("inf"), []
        path = [tb]
        while path[-1] != self.node_index[a]:
            path.append(int(pred[0, path[-1]]))
        return float(dist[0, tb]), [self.nodes[i] for i in reversed(path)]


def order_arc_path(pv: PsiValues, a: HyperElement, b: HyperElement
                   ) -> Tuple[float, List[HyperElement]]:
    """Shortest concatenation of order arcs between two elements."""
    return PsiPathspace(pv).path_between(a, b)


@dataclass
class CurvatureReport:
    trials: int
    degenerate: int
    additive: int
    worst_defect: float

    @property
    def all_additive(self) -> bool:
        return self.degenerate == self.additive


def curvature_check(pv: PsiValues, trials: int = 1000,
                    seed: int = 0, tol: float = DEFAULT_TOL
                    ) -> CurvatureReport:
    """Exact additivity on degenerate geodesic triangles.

    Samples seeded random element triples; a triple is degenerate when one
    side's geodesic passes through the third element, and then the two
    shorter sides must sum to the third exactly (within ``tol``).
    """
    rng = np.random.default_rng(seed)
    space = PsiPathspace(pv)
    n = len(space.nodes)
    degenerate = additive = 0
    worst = 0.0
    for _ in range(trials):
        ia, ib, ic = rng.choice(n, size=3, replace=False)
        triple = [space.nodes[ia], space.nodes[ib], space.nodes[ic]]
        found = False
        defect = 0.0
        for x, y, z in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            d_xy, path = space.path_between(triple[x], triple[y])
            if triple[z] in path:
                found = True
                d_xz, _ = space.path_between(triple[x], triple[z])
                d_zy, _ = space.path_between(triple[z], triple[y])
                defect = max(defect, abs(d_xy - (d_xz + d_zy)))
        if found:
            degenerate += 1
            worst = max(worst, defect)
            if defect <= tol:
                additive += 1
    return CurvatureReport(trials=trials, degenerate=degenerate,
                           additive=additive, worst_defect=worst)
