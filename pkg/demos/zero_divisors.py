"""
Zero divisors of three-dimensional algebras
===========================================

The determinant of left multiplication is a plane cubic.  When every zero
divisor has rank two, sending a left zero divisor to its right partner is
a map of cubics, which may or may not be linear.
"""

from equiloci.algebra_isotopy import (algebra_from_forms, cubic_type, det_cubic, is_generic,
                                      line_plus_double_line_form, line_plus_double_line_variant,
                                      multiplication_kernel, phi_projectivity_test,
                                      random_integer_algebra, sl2_algebra, triple_line_form)

examples = {
    "sl2 (commutator)": sl2_algebra(),
    "triple line": algebra_from_forms(triple_line_form),
    "line plus double line": algebra_from_forms(line_plus_double_line_form),
    "random integer tensor": random_integer_algebra(0),
}
for name, alg in examples.items():
    cubic = det_cubic(alg)
    gen = is_generic(alg)
    line = f"{name:24s} det = {cubic.format():30s} {cubic_type(alg).value:16s} generic={gen.generic}"
    if gen.generic:
        rep = phi_projectivity_test(alg)
        line += f"  K_dim={multiplication_kernel(alg).dim}  projective={rep.projective}"
        line += f" (residual {rep.residual:.1e})"
    print(line)

# Flipping one sign in the line-plus-double-line form adds a cross term.
print("variant:", det_cubic(algebra_from_forms(line_plus_double_line_variant)).format())
