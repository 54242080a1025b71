"""
Points equidistant from four points
===================================

Four points of the ball in general position determine a three-dimensional
family of bisectors.  Its base is the locus of points equidistant from
all four.  We trace that curve, check the distances and recover the
family from the traced points alone.
"""

import numpy as np

from equiloci.cubics import classify_cubic
from equiloci.equitant_loci import (base_biquadratic, classify_equitant, cubic_EW,
                                    equitant_instance, focal_curve, irreducibility_report,
                                    make_equitant, recover_family, trace_base)
from equiloci.linear_families import subspace_distance

fam = equitant_instance([1.3, 1.1, 1.0, 0.7], seed=2)
print("dependence coefficients a:", np.round(fam.a, 6))
print("case:", classify_equitant(fam), "/ cubic of degenerate members:",
      classify_cubic(cubic_EW(fam)).value)
print("r00, r01, r10, r11:", np.round(base_biquadratic(fam), 5))
print("base curve:", irreducibility_report(fam).mechanism)

records, skipped = trace_base(fam, 200)
negative = [r for r in records if r.signature == "Negative"]
print(f"traced {len(records)} points ({skipped} parameter values without real points)")
print(f"{len(negative)} of them in the ball, worst distance spread "
      f"{max(r.distance_spread for r in negative):.2e}")

# The family is the space of maps vanishing on the traced points.
rec = recover_family([r.q for r in records[::5]])
print("recovered dimension:", rec.dim, " distance to the family:",
      f"{subspace_distance(rec.maps, fam.basis):.1e}")

# Foci of degenerate members lie on a plane cubic.
fc = focal_curve(fam, 30)
print(f"cubic through 30 foci: residual {fc.residual:.1e}, next singular value {fc.gap:.2e}")

# The same construction for four points at right angles around the centre
# degenerates: the degenerate members form three lines.
s, c = np.sinh(1), np.cosh(1)
cross = make_equitant([[s, 0, c], [0, s, c], [-s, 0, c], [0, -s, c]])
print("cross:", classify_equitant(cross), np.round(base_biquadratic(cross), 12))
