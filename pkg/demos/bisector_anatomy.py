"""
Anatomy of a bisector
=====================

Build the bisector of two points of the ball, look at its focus and
spines, and check that sampled points really are equidistant.
"""

import numpy as np

from equiloci.bisector import (bisector_from_points, bisector_from_spine, meridian_through,
                               real_spine, same_bisector, slice_through)
from equiloci.hermitian_core import distance, inner

# The form is diag(1, 1, -1); (0, 0, 1) is the centre of the ball and the
# second point sits at distance 1 from it.
centre = np.array([0, 0, 1], dtype=complex)
other = np.array([np.sinh(1), 0, np.cosh(1)], dtype=complex)
b = bisector_from_points(centre, other)
print("kind:", b.kind.value)
print("focus:", np.round(b.focus, 6))
print("h (unit Frobenius norm):")
print(np.round(b.h, 4))

# The midpoint of the two points is on the bisector.  The line through it
# and the focus is a slice; its polar point lies on the real spine.
mid = np.array([np.sinh(0.5), 0, np.cosh(0.5)], dtype=complex)
s = slice_through(b, mid)
print("slice polar point:", np.round(s.polar, 6))

# The real spine is a geodesic, and it determines the bisector again.
spine = real_spine(b)
print("spine Gram matrix:")
print(np.round(spine.gram().real, 6))
print("rebuilt from spine:", same_bisector(bisector_from_spine(spine), b))

# A meridian is an R-plane through the spine; moving along the cone from
# the midpoint towards the focus gives a point off the complex spine.
m = meridian_through(b, mid + 0.5j * b.focus)
print("meridian Gram imaginary part:", np.abs(m.gram().imag).max())

# Points of the meridian are equidistant from the two original points.
rng = np.random.default_rng(0)
for coeffs in rng.normal(size=(5, 3)):
    q = coeffs @ np.array(m.basis)
    if inner(q, q).real < 0:
        print(f"d(q, centre) = {distance(q, centre):.12f}   d(q, other) = {distance(q, other):.12f}")
