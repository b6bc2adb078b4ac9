"""Whitney-style size maps on discretized continua.

A size map assigns every subcontinuum a number: zero on points, strictly
monotone under containment, and compatible with unions.  The induced
metric d(A, B) = max(mu(A|B) - mu(A), mu(A|B) - mu(B)) turns the
hyperspace into a metric space in which nested chains are isometric to
intervals.

Run:  python3 demos/02_size_maps.py
"""

from continuum_lab.continua import build_continuum, enumerate_subcontinua
from continuum_lab.whitney import (build_whitney_map, check_whitney_axioms,
                                   whitney_distance, whitney_level)

g = build_continuum("path", n=10)
subs = enumerate_subcontinua(g)
mu = build_whitney_map(g)
print(f"arc with {g.n} vertices has {len(subs)} subcontinua")
print(f"mu(whole) = {mu(frozenset(range(g.n)))}")

rep = check_whitney_axioms(mu, subs)
print(f"axioms: singletons={rep.singleton_ok} monotone={rep.monotone_ok} "
      f"subadd={rep.subadd_ok} difference={rep.diff_ok}")

# The induced metric: distance from a set to any of its points is the size
# of the set itself.
a = frozenset([3, 4, 5])
print(f"d(A, point of A) = {whitney_distance(mu, a, frozenset([4]))} "
      f"= mu(A) = {mu(a)}")

# A level set collects all subcontinua of (approximately) one size.
t = mu(frozenset([4, 5]))
level = whitney_level(mu, subs, t)
print(f"level at t={t:.4f}: {sorted(sorted(s) for s in level)}")

# On an arc, every nested chain of subcontinua maps isometrically into the
# value axis: distances along the chain are plain value differences.
chain = [frozenset(range(4, 5 + w)) for w in range(5)]
for small, big in zip(chain, chain[1:]):
    d = whitney_distance(mu, small, big)
    assert d == mu(big) - mu(small)
print("nested chain is isometric to its value interval")
