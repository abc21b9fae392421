"""Exact integer combinatorics and executable summation identities.

Everything here works on arbitrary-precision Python ints; nothing is ever
rounded or truncated.  The one non-standard piece is ``binomial_ext``, which
extends the binomial coefficient to a = -1 with the corner value
C(-1,-1) = 1.  That value is not a convention taken on faith: the closed
product formulas evaluated in :mod:`compdet.formulas` hit the index pair
(-1,-1) at their boundary cases, and only this value makes them agree with
brute-force determinants (see tests).
"""

import math


def factorial(m: int) -> int:
    """m! for m >= 0."""
    if m < 0:
        raise ValueError(f"factorial of negative integer {m}")
    return math.factorial(m)


def binomial(a: int, b: int) -> int:
    """C(a, b) for a >= 0, with value 0 outside 0 <= b <= a."""
    if a < 0:
        raise ValueError(f"binomial requires a >= 0, got a={a} (use binomial_ext)")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def binomial_ext(a: int, b: int) -> int:
    """C(a, b) extended to a = -1, where C(-1,-1) = 1 and C(-1,b) = 0 otherwise.

    Exponents in the closed product formulas reach (a,b) = (-1,-1) exactly at
    their boundary cases (single-part compositions), and the determinants they
    must reproduce force the value 1 there.
    """
    if a < -1:
        raise ValueError(f"binomial_ext requires a >= -1, got a={a}")
    if a == -1:
        return 1 if b == -1 else 0
    return binomial(a, b)


def multinomial(m: int, parts) -> int:
    """m! / prod(parts_i!) for nonnegative parts summing to m."""
    parts = tuple(parts)
    if any(q < 0 for q in parts):
        raise ValueError(f"multinomial parts must be nonnegative, got {parts}")
    if sum(parts) != m:
        raise ValueError(f"multinomial parts {parts} do not sum to {m}")
    out = factorial(m)
    for q in parts:
        out //= factorial(q)
    return out


def check_vandermonde(a: int, b: int, c: int, d: int) -> bool:
    """sum_k C(a,c+k)*C(b,d-k) == C(a+b,c+d), summed over the finite support."""
    lhs = sum(binomial(a, c + k) * binomial(b, d - k) for k in range(-c - d, a + b + 1))
    return lhs == binomial(a + b, c + d)


def check_parallel_sum(a: int, n: int) -> bool:
    """sum_{k=0..n} C(a+k,a) == sum_{k=0..n} C(a+k,k) == C(n+a+1,a+1)."""
    s1 = sum(binomial(a + k, a) for k in range(n + 1))
    s2 = sum(binomial(a + k, k) for k in range(n + 1))
    rhs = binomial(n + a + 1, a + 1)
    return s1 == rhs and s2 == rhs


def check_weighted_sum(n: int, a: int) -> bool:
    """sum_{r=1..n} r*C(n+a-r,a) == C(n+a+1,a+2) for n >= 1."""
    if n < 1:
        raise ValueError(f"check_weighted_sum requires n >= 1, got {n}")
    lhs = sum(r * binomial(n + a - r, a) for r in range(1, n + 1))
    return lhs == binomial(n + a + 1, a + 2)
