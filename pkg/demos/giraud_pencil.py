"""
Pencils of bisectors
====================

Two bisectors of three points span a pencil whose determinant is a binary
cubic.  Its three real roots are the three bisectors of the triangle.
When the focus of one bisector lies on the other, two roots merge.
"""

import numpy as np

from equiloci.bisector import bisector_matrix, same_bisector
from equiloci.hermitian_core import inner, random_point
from equiloci.linear_families import giraud_pencil, maps_with_focus

rng = np.random.default_rng(1)
p1, p2, p3 = (random_point(rng) for _ in range(3))
h12, h23, h13 = bisector_matrix(p1, p2), bisector_matrix(p2, p3), bisector_matrix(p1, p3)

pencil = giraud_pencil(h12, h23)
print("cubic coefficients (x^3, x^2 y, x y^2, y^3):", np.round(pencil.coefficients, 6))
for (xy, mult), member in zip(pencil.roots, pencil.members):
    names = [n for n, h in (("h12", h12), ("h23", h23), ("h13", h13)) if same_bisector(member, h)]
    print(f"root {np.round(xy, 6)} multiplicity {mult} -> {names}")

# h12 + h23 = h13 exactly, which is why (1:1) is always a root.
print("telescoping residual:", np.abs(h12 + h23 - h13).max())

# Now take a map whose focus is a point of the bisector h12: walk from a
# random point along p1 - p2 until <h12 x, x> = 0.
y = p1 - p2
while True:
    x = random_point(rng)
    a, b, c = inner(h12 @ y, y).real, inner(h12 @ x, y).real, inner(h12 @ x, x).real
    if b * b - a * c >= 0:
        f = x + (-b + np.sqrt(b * b - a * c)) / a * y
        break
other = sum(rng.normal() * m for m in maps_with_focus(f))
print("focus on bisector ->", giraud_pencil(h12, other).alternative)
