"""Geometric realization of crooked chain towers on a cell grid.

Links are unions of grid-cell rectangles.  A coarse chain is a straight row
of columns; each finer chain threads the previous level as a snake: every
monotone run of the refinement pattern gets its own transverse lane, links
are short bars along their lane, turns descend to the next lane through a
transverse stub placed in the overlap window of the two coarse links, and
at right-angle bends of the carrier tube lanes turn as nested L-blocks
around the inner corner (which keeps distinct lanes disjoint).

Lane bookkeeping is bottom-up: the transverse thickness of a level-n link
equals the tube width the level-(n+1) routing needs, so all cell counts are
fixed by the patterns alone; the physical cell size then follows from the
requested endpoints.  Meshes, adjacency, closures, and containment are all
verified on the grid after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .chains import (Chain, Link, Rect, RefinementPattern,
                     generate_crooked_pattern, is_crooked, rects_contain,
                     verify_chain)
from .errors import DomainError, ResourceError
from .metric_core import FinitePointSet

MAX_LEVELS = 3
MAX_LINKS_PER_LEVEL = 2000
MAX_GRID_CELLS = 5_000_000


# ---------------------------------------------------------------------------
# pattern combinatorics


@dataclass(frozen=True)
class Run:
    start: int  # 0-based, inclusive
    end: int
    direction: int


def pattern_runs(assignment: Sequence[int]) -> List[Run]:
    """Maximal monotone stretches; a turn apex ends its run."""
    p = list(assignment)
    runs: List[Run] = []
    s, d = 0, 0
    for i in range(1, len(p)):
        step = p[i] - p[i - 1]
        if step == 0:
            continue
        step = 1 if step > 0 else -1
        if d == 0:
            d = step
        elif step != d:
            runs.append(Run(s, i - 1, d))
            s, d = i, step
    runs.append(Run(s, len(p) - 1, d if d else 1))
    return runs


def _turn_junctions(p: Sequence[int], runs: List[Run]) -> List[int]:
    """Coarse adjacency id (1-based) hosting each turn's stub."""
    out = []
    for r in runs[:-1]:
        out.append(min(p[r.end], p[r.end + 1]))
    return out


def _crossings(p: Sequence[int], runs: List[Run]) -> List[Tuple[int, int]]:
    """(coarse adjacency id, run index) pairs where a run crosses over."""
    out = []
    for idx, r in enumerate(runs):
        lo, hi = min(p[r.start], p[r.end]), max(p[r.start], p[r.end])
        for c in range(lo, hi):
            out.append((c, idx))
    return out


# ---------------------------------------------------------------------------
# tube segments


@dataclass
class Segment:
    rect: Rect
    axis: str          # 'h': longitudinal = columns; 'v': longitudinal = rows
    link_id: int       # 1-based owner link in its own chain
    entry: float       # longitudinal coordinate where the tube comes in
    exit: float
    band_start: Dict[int, int] = field(default_factory=dict)

    @property
    def direction(self) -> int:
        return 1 if self.exit >= self.entry else -1

    @property
    def long0(self) -> int:
        return self.rect.c0 if self.axis == "h" else self.rect.r0

    @property
    def long1(self) -> int:
        return self.rect.c1 if self.axis == "h" else self.rect.r1

    @property
    def trans0(self) -> int:
        return self.rect.r0 if self.axis == "h" else self.rect.c0

    @property
    def trans1(self) -> int:
        return self.rect.r1 if self.axis == "h" else self.rect.c1

    def band_rect(self, run: int, bh: int, lo: int, hi: int) -> Rect:
        """Bar of thickness ``bh`` on this run's lane over [lo, hi)."""
        t = self.band_start[run]
        if self.axis == "h":
            return Rect(lo, hi, t, t + bh)
        return Rect(t, t + bh, lo, hi)


def _transfer_bands(a: Segment, b: Segment, bh: int) -> None:
    """Propagate lane positions across a junction of two segments."""
    if a.axis == b.axis:
        b.band_start.update(a.band_start)
        return
    # right-angle bend: lanes keep their distance from the inner corner.
    # inner side on a's transverse axis faces +direction of b; inner side
    # on b's transverse axis faces -direction of a.
    if b.direction > 0:
        ranked = sorted(a.band_start, key=lambda r: -a.band_start[r])
    else:
        ranked = sorted(a.band_start, key=lambda r: a.band_start[r])
    for rank, run in enumerate(ranked):
        if a.direction > 0:
            b.band_start[run] = b.trans0 + 1 + rank * (bh + 1)
        else:
            b.band_start[run] = b.trans1 - 1 - rank * (bh + 1) - bh


# ---------------------------------------------------------------------------
# sizing


@dataclass
class _Plan:
    n1: int
    levels: int
    q2: Optional[RefinementPattern]
    q3: Optional[RefinementPattern]
    runs2: List[Run]
    runs3: List[Run]
    band2: int                 # transverse thickness of a level-2 link
    band3: int
    height: int                # level-1 column height
    meet2_w: Dict[int, int]    # straight level-2 adjacency -> window width
    corner2: set                # level-2 adjacencies realized as bends
    ov1: List[int]             # level-1 window widths


def _plan_tower(n1: int, levels: int) -> _Plan:
    q2 = generate_crooked_pattern(n1) if levels >= 2 else None
    runs2 = pattern_runs(q2.assignment) if q2 else []
    q3 = None
    runs3: List[Run] = []
    if levels >= 3:
        if len(q2) > 8:
            raise ResourceError(
                f"level-3 pattern over {len(q2)} coarse links is too large",
                achievable=2)
        q3 = generate_crooked_pattern(len(q2))
        if len(q3) > MAX_LINKS_PER_LEVEL:
            raise ResourceError("level-3 chain has too many links",
                                achievable=2)
        runs3 = pattern_runs(q3.assignment)
    band3 = 1
    band2 = (2 * len(runs3) + 1) if q3 else 1
    height = (len(runs2) * (band2 + 1) + 1) if q2 else 3

    corner2 = set()
    if q2:
        p2 = q2.assignment
        for r in runs2[:-1]:
            corner2.add(r.end + 1)  # 1-based adjacency (apex, apex + 1)

    meet2_w: Dict[int, int] = {}
    stubs3: Dict[int, int] = {}
    meets3: Dict[int, int] = {}
    if q3:
        for c in _turn_junctions(q3.assignment, runs3):
            stubs3[c] = stubs3.get(c, 0) + 1
        for c, _ in _crossings(q3.assignment, runs3):
            meets3[c] = meets3.get(c, 0) + 1
    if q2:
        for c in range(1, len(q2)):
            if c in corner2:
                continue
            meet2_w[c] = (2 + stubs3.get(c, 0) * (band3 + 1)
                          + max(meets3.get(c, 1), 1) * 3)

    ov1 = []
    if q2:
        stubs2: Dict[int, int] = {}
        for j in _turn_junctions(q2.assignment, runs2):
            stubs2[j] = stubs2.get(j, 0) + 1
        where: Dict[int, List[int]] = {}
        p2 = q2.assignment
        for c in range(1, len(q2)):
            if c in corner2:
                continue
            j = min(p2[c - 1], p2[c])
            where.setdefault(j, []).append(c)
        for j in range(1, n1):
            w = 2 + sum(meet2_w[c] + 1 for c in where.get(j, []))
            w += stubs2.get(j, 0) * (band2 + 1)
            ov1.append(max(w, 4))
    else:
        ov1 = [4] * (n1 - 1)
    return _Plan(n1=n1, levels=levels, q2=q2, q3=q3, runs2=runs2,
                 runs3=runs3, band2=band2, band3=band3, height=height,
                 meet2_w=meet2_w, corner2=corner2, ov1=ov1)


# ---------------------------------------------------------------------------
# slot allocation


class _Allocator:
    """Hands out disjoint longitudinal intervals inside a window."""

    def __init__(self, lo: int, hi: int):
        self.lo, self.hi = lo, hi
        self.next = lo + 1

    def take(self, width: int) -> Tuple[int, int]:
        iv = (self.next, self.next + width)
        self.next += width + 1
        if self.next > self.hi:
            raise DomainError("internal: window overflow in slot allocation")
        return iv


# ---------------------------------------------------------------------------
# routing


def _route_row(plan: _Plan, cols: List[Rect], windows: List[Rect]
               ) -> Tuple[List[Link], List[Segment],
                          Dict[int, Tuple[int, int]], Dict[int, int]]:
    """Realize the level-2 pattern inside the straight column row.

    Returns the links, the tube segments for the next level, the meet
    window per straight adjacency, and the lane row per run.
    """
    q2, runs = plan.q2, plan.runs2
    p = q2.assignment
    bh = plan.band2
    lane_row = {idx: 1 + idx * (bh + 1) for idx in range(len(runs))}
    run_of = {}
    for idx, r in enumerate(runs):
        for t in range(r.start, r.end + 1):
            run_of[t] = idx

    allocs = {j: _Allocator(windows[j - 1].c0, windows[j - 1].c1)
              for j in range(1, plan.n1)}
    meet_iv: Dict[int, Tuple[int, int]] = {}
    stub_iv: List[Tuple[int, int]] = []
    p2 = p
    for c in range(1, len(q2)):
        if c not in plan.corner2:
            j = min(p2[c - 1], p2[c])
            meet_iv[c] = allocs[j].take(plan.meet2_w[c])
    for turn, j in enumerate(_turn_junctions(p, runs)):
        stub_iv.append(allocs[j].take(bh))

    gw = cols[-1].c1
    links: List[Link] = []
    segments: List[Segment] = []
    for t in range(len(p)):
        rho = run_of[t]
        row = lane_row[rho]
        anchors: List[Tuple[int, int]] = []
        rects: List[Rect] = []
        if t == 0:
            anchors.append((1, 3))
        else:
            c = t  # adjacency between links t and t+1, 1-based
            if c in plan.corner2:
                anchors.append(stub_iv[rho - 1])  # stub of the turn into us
            else:
                anchors.append(meet_iv[c])
        if t == len(p) - 1:
            anchors.append((gw - 3, gw - 1))
        else:
            c = t + 1
            if c in plan.corner2:
                anchors.append(stub_iv[rho])
                s0, s1 = stub_iv[rho]
                rects.append(Rect(s0, s1, row, lane_row[rho + 1] + bh))
            else:
                anchors.append(meet_iv[c])
        lo = min(a for a, _ in anchors)
        hi = max(b for _, b in anchors)
        bar = Rect(lo, hi, row, row + bh)
        links.append(Link(index=t + 1, rects=tuple([bar] + rects)))
        entry, exit_ = (sum(anchors[0]) / 2, sum(anchors[1]) / 2)
        segments.append(Segment(rect=bar, axis="h", link_id=t + 1,
                                entry=entry, exit=exit_))
        if rects:
            stub = rects[0]
            segments.append(Segment(rect=stub, axis="v", link_id=t + 1,
                                    entry=stub.r0, exit=stub.r1 - 1))
    return links, segments, meet_iv, lane_row


def _route_tube(plan: _Plan, segments: List[Segment],
                meet_iv: Dict[int, Tuple[int, int]], grid_w: int
                ) -> List[Link]:
    """Realize the level-3 pattern inside the level-2 snake."""
    q3, runs = plan.q3, plan.runs3
    p = q3.assignment
    bh = plan.band3
    run_of = {}
    for idx, r in enumerate(runs):
        for t in range(r.start, r.end + 1):
            run_of[t] = idx

    # lane positions: seed the first segment, then push through junctions
    first = segments[0]
    for idx in range(len(runs)):
        first.band_start[idx] = first.trans0 + 1 + idx * (bh + 1)
    for a, b in zip(segments, segments[1:]):
        _transfer_bands(a, b, bh)

    seg_of_link: Dict[int, List[int]] = {}
    for i, s in enumerate(segments):
        seg_of_link.setdefault(s.link_id, []).append(i)

    # slots inside the straight junction windows
    stub_slot: List[Tuple[int, int]] = [None] * (len(runs) - 1)
    meet_slot: Dict[Tuple[int, int], Tuple[int, int]] = {}
    allocs = {c: _Allocator(*meet_iv[c]) for c in meet_iv}
    for c, rho in _crossings(p, runs):
        if c in meet_iv:
            meet_slot[(c, rho)] = allocs[c].take(2)
    for turn, c in enumerate(_turn_junctions(p, runs)):
        if c in meet_iv:
            stub_slot[turn] = allocs[c].take(bh)

    gw = grid_w

    def interface(t_from: int, t_to: int):
        """Anchors for the junction between child t_from and t_to.

        Returns (anchor_for_from, anchor_for_to, extra_rect_for_from,
        seg_index_for_from, seg_index_for_to) in the longitudinal
        coordinates of each child's terminal segment.
        """
        a_link, b_link = p[t_from], p[t_to]
        rho_a, rho_b = run_of[t_from], run_of[t_to]
        c = min(a_link, b_link)
        # the two tube segments that actually meet at this junction
        ia = seg_of_link[a_link]
        ib = seg_of_link[b_link]
        if max(ia) < min(ib):
            i_a, i_b = max(ia), min(ib)
        else:
            i_a, i_b = min(ia), max(ib)
        sa, sb = segments[i_a], segments[i_b]
        if sa.axis == sb.axis:
            if rho_a == rho_b:
                iv = meet_slot[(c, rho_a)]
                return iv, iv, None, i_a, i_b
            s0, s1 = stub_slot[min(rho_a, rho_b)]
            rows = sorted([sa.band_start[rho_a], sa.band_start[rho_b]])
            stub = Rect(s0, s1, rows[0], rows[1] + bh)
            return (s0, s1), (s0, s1), stub, i_a, i_b
        # bend: each side extends to the other's lane interval
        ta = sb.band_start[rho_b]
        tb = sa.band_start[rho_a]
        return (ta, ta + bh), (tb, tb + bh), None, i_a, i_b

    # interfaces per child: entry (toward t-1) and exit (toward t+1)
    entry_anchor: List[Tuple[int, int]] = [None] * len(p)
    exit_anchor: List[Tuple[int, int]] = [None] * len(p)
    entry_seg: List[int] = [None] * len(p)
    exit_seg: List[int] = [None] * len(p)
    extra: List[List[Rect]] = [[] for _ in range(len(p))]
    entry_anchor[0] = (2, 3)
    entry_seg[0] = seg_of_link[p[0]][0]
    exit_anchor[-1] = (gw - 3, gw - 2)
    exit_seg[-1] = seg_of_link[p[-1]][0]
    for t in range(len(p) - 1):
        av, bv, stub, i_a, i_b = interface(t, t + 1)
        exit_anchor[t], exit_seg[t] = av, i_a
        entry_anchor[t + 1], entry_seg[t + 1] = bv, i_b
        if stub is not None:
            extra[t].append(stub)

    links: List[Link] = []
    for t in range(len(p)):
        rho = run_of[t]
        lo_i, hi_i = sorted((entry_seg[t], exit_seg[t]))
        segs = segments[lo_i:hi_i + 1]
        if entry_seg[t] > exit_seg[t]:
            segs = list(reversed(segs))
        rects = list(extra[t])
        # anchor of each internal bend, then stitch bars between anchors
        marks: List[List[Tuple[int, int]]] = [[] for _ in segs]
        marks[0].append(entry_anchor[t])
        marks[-1].append(exit_anchor[t])
        for i in range(len(segs) - 1):
            sa, sb = segs[i], segs[i + 1]
            marks[i].append((sb.band_start[rho], sb.band_start[rho] + bh))
            marks[i + 1].append((sa.band_start[rho], sa.band_start[rho] + bh))
        for seg, mk in zip(segs, marks):
            lo = min(a for a, _ in mk)
            hi = max(b for _, b in mk)
            rects.append(seg.band_rect(rho, bh, lo, hi))
        links.append(Link(index=t + 1, rects=tuple(rects)))
    return links


# ---------------------------------------------------------------------------
# towers


@dataclass
class LevelDiagnostics:
    level: int
    mesh: float
    eps: float
    chain_ok: bool
    nested_in_previous: Optional[bool] = None
    hausdorff_to_previous: Optional[float] = None
    hausdorff_bound: Optional[float] = None


@dataclass
class ChainTower:
    """Nested chain cover of an arc from x to y, one chain per level."""

    levels: List[Chain]
    patterns: List[RefinementPattern]
    endpoints: Tuple[Tuple[float, float], Tuple[float, float]]
    cell_size: float
    x_cell: Tuple[int, int]
    y_cell: Tuple[int, int]
    grid_shape: Tuple[int, int]   # (rows, cols)
    origin: Tuple[float, float]
    rotation: float
    diagnostics: List[LevelDiagnostics]

    def cell_center(self, cell: Tuple[int, int]) -> Tuple[float, float]:
        dc = cell[0] - self.x_cell[0]
        dr = cell[1] - self.x_cell[1]
        ca, sa = math.cos(self.rotation), math.sin(self.rotation)
        return (self.origin[0] + self.cell_size * (ca * dc - sa * dr),
                self.origin[1] + self.cell_size * (sa * dc + ca * dr))


def _column_rects(plan: _Plan) -> Tuple[List[Rect], List[Rect]]:
    cols: List[Rect] = []
    start = 0
    for k in range(plan.n1):
        ovl = 2 if k == 0 else plan.ov1[k - 1]
        ovr = 2 if k == plan.n1 - 1 else plan.ov1[k]
        width = ovl + 3 + ovr
        cols.append(Rect(start, start + width, 0, plan.height))
        start = start + width - (ovr if k < plan.n1 - 1 else 0)
    windows = [Rect(cols[j + 1].c0, cols[j].c1, 0, plan.height)
               for j in range(plan.n1 - 1)]
    return cols, windows


def _mask(rect_lists: Sequence[Sequence[Rect]], shape) -> np.ndarray:
    m = np.zeros(shape, dtype=bool)
    for rects in rect_lists:
        for r in rects:
            m[r.r0:r.r1, r.c0:r.c1] = True
    return m


def _grid_hausdorff(a: np.ndarray, b: np.ndarray, cell: float) -> float:
    da = ndimage.distance_transform_edt(~a)
    db = ndimage.distance_transform_edt(~b)
    return float(max(da[b].max(initial=0.0), db[a].max(initial=0.0))) * cell


def _closure_mask(m: np.ndarray) -> np.ndarray:
    return ndimage.binary_dilation(m, structure=np.ones((3, 3), bool))


def build_tower(n_coarse_initial: int, levels: int,
                x: Tuple[float, float], y: Tuple[float, float]) -> ChainTower:
    """Nested crooked chain cover of an arc from x to y.

    Level n is a 2^-n-chain; each refinement pattern is crooked and its
    closure containment is verified cell-exactly on the grid.  The two
    endpoints sit in the first and last link of every level.  Endpoints too
    far apart for the mesh bounds, or towers too deep to realize, raise a
    resource error carrying the deepest achievable level count.
    """
    if levels < 1:
        raise DomainError("levels must be >= 1")
    if n_coarse_initial < 1:
        raise DomainError("need at least one coarse link")
    if tuple(x) == tuple(y):
        raise DomainError("endpoints must differ")
    if levels > MAX_LEVELS:
        raise ResourceError(
            f"towers beyond {MAX_LEVELS} levels are not realizable here",
            achievable=_deepest(n_coarse_initial, x, y, MAX_LEVELS))
    try:
        return _build_tower(n_coarse_initial, levels, x, y)
    except ResourceError as err:
        if err.achievable is None or err.achievable >= levels:
            err.achievable = _deepest(n_coarse_initial, x, y, levels - 1)
        raise


def _deepest(n1, x, y, cap) -> int:
    for lv in range(cap, 0, -1):
        try:
            _build_tower(n1, lv, x, y)
            return lv
        except (ResourceError, DomainError):
            continue
    return 0


def _build_tower(n1: int, levels: int, x, y) -> ChainTower:
    plan = _plan_tower(n1, levels)
    cols, windows = _column_rects(plan)
    shape = (plan.height, cols[-1].c1)
    if shape[0] * shape[1] > MAX_GRID_CELLS:
        raise ResourceError("grid too large", achievable=None)

    level1 = [Link(index=k + 1, rects=(cols[k],)) for k in range(n1)]
    chains: List[List[Link]] = [level1]
    patterns: List[RefinementPattern] = []

    meet_iv: Dict[int, Tuple[int, int]] = {}
    segments: List[Segment] = []
    if levels >= 2:
        links2, segments, meet_iv, lane_row = _route_row(plan, cols, windows)
        chains.append(links2)
    if levels >= 3:
        chains.append(_route_tube(plan, segments, meet_iv, cols[-1].c1))

    # endpoint cells
    gw = cols[-1].c1
    if levels == 1:
        x_cell = (2, plan.height // 2)
        y_cell = (gw - 3, plan.height // 2)
    else:
        x_row = (segments[0].band_start[0] if levels >= 3
                 else 1)
        if levels >= 3:
            last_seg = max((s for s in segments if s.link_id == len(plan.q2)),
                           key=lambda s: s.rect.c1)
            y_row = last_seg.band_start[len(plan.runs3) - 1]
        else:
            y_row = 1 + (len(plan.runs2) - 1) * (plan.band2 + 1)
        x_cell = (2, x_row)
        y_cell = (gw - 3, y_row)

    dx, dy = y[0] - x[0], y[1] - x[1]
    dist = math.hypot(dx, dy)
    gc, gr = y_cell[0] - x_cell[0], y_cell[1] - x_cell[1]
    cell = dist / math.hypot(gc, gr)
    rotation = math.atan2(dy, dx) - math.atan2(gr, gc)

    level_chains = [Chain(links=links, cell_size=cell) for links in chains]

    # membership of the endpoints in first/last links of every level
    for lc in level_chains:
        for cell_pt, link in ((x_cell, lc.links[0]), (y_cell, lc.links[-1])):
            inside = any(r.c0 <= cell_pt[0] < r.c1 and
                         r.r0 <= cell_pt[1] < r.r1 for r in link.rects)
            if not inside:
                raise DomainError("internal: endpoint outside terminal link")

    # verify chains, patterns, containment
    diags: List[LevelDiagnostics] = []
    prev_mask = None
    prev_mesh = None
    for n, lc in enumerate(level_chains, start=1):
        eps = 2.0 ** (-n)
        report = verify_chain(lc, eps)
        if report.failures and report.mesh < eps:
            raise DomainError(
                f"internal: level {n} chain invalid: {report.failures[:3]}")
        if report.mesh >= eps:
            raise ResourceError(
                f"level {n} mesh {report.mesh:.4f} exceeds {eps}",
                achievable=None)
        mask = _mask([l.rects for l in lc.links], shape)
        diag = LevelDiagnostics(level=n, mesh=report.mesh, eps=eps,
                                chain_ok=report.ok)
        if prev_mask is not None:
            closure = _closure_mask(prev_mask)
            diag.nested_in_previous = bool((mask & ~closure).sum() == 0)
            diag.hausdorff_to_previous = _grid_hausdorff(
                _closure_mask(mask), closure, cell)
            diag.hausdorff_bound = prev_mesh
        prev_mask, prev_mesh = mask, report.mesh
        diags.append(diag)

    for n in range(1, len(level_chains)):
        coarse, fine = level_chains[n - 1], level_chains[n]
        q = plan.q2 if n == 1 else plan.q3
        flags = []
        for t, link in enumerate(fine.links):
            parent = coarse.links[q.assignment[t] - 1]
            closure = [r.dilate(1) for r in link.rects]
            flags.append(rects_contain(closure, parent.rects))
        pat = RefinementPattern(assignment=q.assignment,
                                n_coarse=len(coarse.links),
                                containment=tuple(flags))
        if not all(flags):
            raise DomainError("internal: containment violated on the grid")
        if not is_crooked(pat).ok:
            raise DomainError("internal: realized pattern is not crooked")
        patterns.append(pat)

    return ChainTower(levels=level_chains, patterns=patterns,
                      endpoints=(tuple(x), tuple(y)), cell_size=cell,
                      x_cell=x_cell, y_cell=y_cell, grid_shape=shape,
                      origin=tuple(x), rotation=rotation, diagnostics=diags)


# ---------------------------------------------------------------------------
# standalone realizations


def realize_pattern(pattern: RefinementPattern, cell_size: float = 1.0
                    ) -> Tuple[Chain, Chain, RefinementPattern]:
    """Realize one refinement pattern inside a straight row of columns.

    Returns the coarse row, the fine snake, and the pattern with its
    containment flags re-verified on the grid.
    """
    plan = _plan_tower(pattern.n_coarse, 2)
    if plan.q2.assignment != pattern.assignment:
        plan = _plan_for_pattern(pattern)
    cols, windows = _column_rects(plan)
    level1 = Chain(links=[Link(index=k + 1, rects=(cols[k],))
                          for k in range(plan.n1)], cell_size=cell_size)
    links2, _, _, _ = _route_row(plan, cols, windows)
    fine = Chain(links=links2, cell_size=cell_size)
    flags = []
    for t, link in enumerate(fine.links):
        parent = level1.links[pattern.assignment[t] - 1]
        flags.append(rects_contain([r.dilate(1) for r in link.rects],
                                   parent.rects))
    verified = RefinementPattern(assignment=pattern.assignment,
                                 n_coarse=pattern.n_coarse,
                                 containment=tuple(flags))
    return level1, fine, verified


def _plan_for_pattern(pattern: RefinementPattern) -> _Plan:
    runs2 = pattern_runs(pattern.assignment)
    plan = _plan_tower(pattern.n_coarse, 1)
    plan.q2 = pattern
    plan.runs2 = runs2
    plan.band2 = 1
    plan.height = len(runs2) * 2 + 1
    plan.corner2 = {r.end + 1 for r in runs2[:-1]}
    plan.meet2_w = {c: 5 for c in range(1, len(pattern))
                    if c not in plan.corner2}
    stubs2: Dict[int, int] = {}
    for j in _turn_junctions(pattern.assignment, runs2):
        stubs2[j] = stubs2.get(j, 0) + 1
    where: Dict[int, List[int]] = {}
    p2 = pattern.assignment
    for c in range(1, len(pattern)):
        if c not in plan.corner2:
            where.setdefault(min(p2[c - 1], p2[c]), []).append(c)
    plan.ov1 = [max(2 + sum(plan.meet2_w[c] + 1 for c in where.get(j, []))
                    + stubs2.get(j, 0) * 2, 4)
                for j in range(1, pattern.n_coarse)]
    plan.levels = 2
    return plan


def chain_point_sets(chain: Chain) -> List[FinitePointSet]:
    """Cell-center point set of every link, in physical units."""
    out = []
    for link in chain.links:
        pts = [((c + 0.5) * chain.cell_size, (r + 0.5) * chain.cell_size)
               for rect in link.rects for c, r in rect.cells()]
        out.append(FinitePointSet(points=pts))
    return out


def realize_planar(obj, cell_size: float = 1.0):
    """Point-set realization of a chain, pattern, or tower per link."""
    if isinstance(obj, ChainTower):
        return [chain_point_sets(level) for level in obj.levels]
    if isinstance(obj, Chain):
        return chain_point_sets(obj)
    if isinstance(obj, RefinementPattern):
        _, fine, _ = realize_pattern(obj, cell_size)
        return chain_point_sets(fine)
    raise DomainError("cannot realize this object")


def tower_to_json(tower: ChainTower) -> dict:
    from .chains import pattern_to_json
    return {
        "levels": [c.to_json() for c in tower.levels],
        "patterns": [pattern_to_json(p) for p in tower.patterns],
        "endpoints": [list(tower.endpoints[0]), list(tower.endpoints[1])],
        "cell_size": tower.cell_size,
        "grid_shape": list(tower.grid_shape),
        "diagnostics": [
            {"level": d.level, "mesh": d.mesh, "eps": d.eps,
             "chain_ok": d.chain_ok,
             "nested_in_previous": d.nested_in_previous,
             "hausdorff_to_previous": d.hausdorff_to_previous,
             "hausdorff_bound": d.hausdorff_bound}
            for d in tower.diagnostics],
    }
