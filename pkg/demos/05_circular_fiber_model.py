"""A circle of fiber chains and its size structure.

Six crooked fiber chains sit over the vertices of a hexagonal base
cycle.  The element family consists of connected runs of links inside a
fiber (pieces), base arcs of whole fibers, and the whole space.  A size
map on the family separates a filament zone (small pieces) from an
ample zone (full fibers and everything above), with the full fibers
forming the boundary.  Normalizing the sizes puts every full fiber at
the common threshold l.

Run:  python3 demos/05_circular_fiber_model.py
"""

from continuum_lab.psi import (Arc, Piece, build_psi_model,
                               closed_form_element_count,
                               component_cyclic_arrangement,
                               level_structure_report, normalize_to_psi0,
                               planck_report)

model = build_psi_model(m=6, fiber_level=2)
pieces = sum(isinstance(e, Piece) for e in model.elements)
arcs = sum(isinstance(e, Arc) for e in model.elements)
print(f"fibers: {model.m}, links per fiber: {model.k}")
print(f"elements: {pieces} pieces + {arcs} arcs (incl. the whole space) "
      f"= {len(model.elements)}")
print(f"counting formula m*(k^2+k)/2 + m + 1 = "
      f"{closed_form_element_count(6, 6)} "
      f"(it counts each full fiber twice: once as a piece, once as an arc)")

rep = planck_report(model)
print(f"thresholds: l = {rep.l:.6f}, L = {rep.L:.6f}")
print(f"boundary between filament and ample zones: "
      f"{len(rep.boundary)} elements (the full fibers)")
print(f"raw fiber sizes: {[round(v, 4) for v in rep.fiber_values]}")

pv = normalize_to_psi0(model)
fib = [pv.values[Arc(start=a, length=1)] for a in range(6)]
print(f"after normalization every fiber has size l: "
      f"{all(abs(v - pv.l) < 1e-12 for v in fib)}")

# Level sets: below l they split into one cluster per fiber, arranged
# cyclically; at l they are exactly the six full fibers; above l a
# single cycle of base arcs remains.
for t in (0.4 * pv.l, pv.l, pv.values[Arc(start=0, length=2)]):
    lvl = level_structure_report(pv, t)
    shape = "cycle" if lvl.is_cycle else f"{len(lvl.components)} clusters"
    cyc = ""
    if not lvl.is_cycle:
        cyc = f", cyclically arranged: {component_cyclic_arrangement(pv, lvl)}"
    print(f"level t = {t:.4f}: {len(lvl.elements)} elements, {shape}{cyc}")
