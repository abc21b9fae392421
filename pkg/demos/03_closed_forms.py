"""The closed product formulas and how they specialize into one another.

One multivariate product formula sits at the top; identifying all variables
gives the single-variable form, evaluating at zero gives the two integer
forms, and restricting to proper compositions gives a product with
per-variable linear factors.
"""

from compdet import (
    delta_int_flat,
    delta_int_nested,
    delta_multivariate,
    delta_proper,
    delta_proper_int,
    delta_univariate,
    format_canonical,
    proper_from_weak,
)

n, p = 3, 2

top = delta_multivariate(n, p)
print(f"multivariate ({n},{p}):   ", format_canonical(top))
print("identified variables:    ", format_canonical(top.identify_vars(), varnames=["x"]))
print("univariate formula:      ", format_canonical(delta_univariate(n, p), varnames=["x"]))
print("value at x = 0:          ", top.eval((0,) * p))
print("flat integer form:       ", format_canonical(delta_int_flat(n, p)),
      "=", delta_int_flat(n, p).to_int())
print("nested integer form:     ", format_canonical(delta_int_nested(n, p)),
      "=", delta_int_nested(n, p).to_int())

# The two integer forms are equal for every (n, p); at large sizes the values
# have billions of digits, so equality is checked on prime signatures.
big = delta_int_flat(25, 25)
sign, signature = big.prime_signature()
digits = sum(e for e in signature.values())
print(f"\n(25,25): {len(signature)} distinct primes, {digits} prime factors with multiplicity")
assert delta_int_nested(25, 25).prime_signature() == (sign, signature)
print("nested and flat forms agree at (25,25) on prime signatures")

# Proper compositions: the determinant factors with per-variable pieces, and
# the same product falls out of shifting the weak determinant by one.
print("\nproper determinant (3,2):", format_canonical(delta_proper(3, 2)))
print("assembled via the shift: ", format_canonical(proper_from_weak(3, 2)))
print("proper integer (3,2):    ", delta_proper_int(3, 2).to_int())
