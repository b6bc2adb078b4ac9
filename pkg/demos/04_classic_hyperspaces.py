"""Coordinates on two classical hyperspaces.

The subcontinua of an interval are the closed subintervals [a, b] with
a <= b, so the hyperspace of [0, 1] is the triangle a <= b — a disk.
The subcontinua of a circle are its closed arcs plus the whole circle,
which glue into a disk as well: arcs map by (midpoint, 1 - width/2pi)
in polar form, and the whole circle collapses to the center.

Run:  python3 demos/04_classic_hyperspaces.py
"""

import math
import random

from continuum_lab.continua import (circle_arc_to_disk, disk_to_circle_arc,
                                    interval_arc_to_triangle,
                                    triangle_to_interval_arc)

# The interval hyperspace: degenerate arcs sit on the diagonal edge and
# the whole interval at the apex of the triangle.
print("interval [0, 1]:")
print(f"  {{0.3}}      -> {interval_arc_to_triangle(0.3, 0.3)}")
print(f"  [0.2, 0.8] -> {interval_arc_to_triangle(0.2, 0.8)}")
print(f"  [0, 1]     -> {interval_arc_to_triangle(0.0, 1.0)}")

# Round trips are exact to floating point.
rng = random.Random(7)
worst = 0.0
for _ in range(10_000):
    a = rng.random()
    b = a + rng.random() * (1.0 - a)
    u, v = interval_arc_to_triangle(a, b)
    a2, b2 = triangle_to_interval_arc(u, v)
    worst = max(worst, abs(a - a2), abs(b - b2))
print(f"  10000 round trips, worst error {worst:.2e}")

# The circle hyperspace: points on the rim, the full circle at the center.
print("circle:")
print(f"  point at angle 1      -> {circle_arc_to_disk(1.0, 1.0)}")
print(f"  half circle from 0    -> {circle_arc_to_disk(0.0, math.pi)}")
print(f"  whole circle          -> {circle_arc_to_disk(0.0, 2 * math.pi)}")

worst = 0.0
for _ in range(10_000):
    alpha = rng.random() * 2 * math.pi
    width = rng.random() * 6.0
    x, y = circle_arc_to_disk(alpha, alpha + width)
    a2, b2 = disk_to_circle_arc(x, y)
    w2 = b2 - a2
    mid = alpha + width / 2.0
    mid2 = a2 + w2 / 2.0
    worst = max(worst, abs(width - w2),
                abs(math.remainder(mid - mid2, 2 * math.pi)))
print(f"  10000 round trips, worst error {worst:.2e}")
