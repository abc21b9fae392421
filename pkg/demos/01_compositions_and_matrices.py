"""Compositions in display order and the matrices they label.

The whole subject starts from one combinatorial family: the ordered tuples
of nonnegative integers with a fixed sum.  This script walks through their
enumeration order, the part-shift bijection onto proper compositions, and
the matrices the tuples label.
"""

from compdet import (
    build_general,
    build_integer,
    build_proper,
    enumerate_proper,
    enumerate_weak,
    format_canonical,
    proper_to_weak,
    specialize,
)

# Weak 3-part compositions of 5, grouped by ascending last coordinate.
print("weak compositions of 5 into 3 parts, display order:")
for alpha in enumerate_weak(5, 3):
    print("  ", alpha)

# Proper compositions (every part >= 1) biject onto weak ones of n - p by
# subtracting 1 from every part; the ordering is inherited through the shift.
print("\nproper compositions of 5 into 3 parts and their weak shadows:")
for alpha in enumerate_proper(5, 3):
    print("  ", alpha, "->", proper_to_weak(alpha))

# The general matrix for (n, p) has entry prod_j (x_j + alpha_j)^beta_j at
# row alpha, column beta.  For (1, 2) it is tiny enough to show whole.
m = build_general(1, 2)
print("\ngeneral matrix for (1,2):")
for row in m.entries:
    print("  ", [format_canonical(e) for e in row])

# Setting x = 0 gives the integer matrix alpha^beta (0^0 = 1).
print("\ninteger matrix for (2,2):")
for row in build_integer(2, 2).entries:
    print("  ", row)

# The same specialization is available for any integer point.
print("\ngeneral (2,2) matrix specialized at (3, 4):")
for row in specialize(build_general(2, 2), (3, 4)).entries:
    print("  ", row)

# Proper compositions label a smaller matrix; for p > n it is empty (0x0).
print("\nproper matrix for (3,2):")
for row in build_proper(3, 2).entries:
    print("  ", [format_canonical(e) for e in row])
print("proper matrix for (2,3) has dimension", build_proper(2, 3).dim)
