"""Closed-form product formulas for the power-composition determinants.

Every function returns a :class:`~compdet.poly.FactoredForm`; nothing is
expanded unless the caller asks.  Two independent product formulas cover the
integer determinant (a nested double product and a flat single product), one
covers the single-variable matrix, one the general multivariate matrix, and
two the proper-composition variants; ``proper_from_weak`` rebuilds the proper
determinant from the shifted weak one to cross-check the factor counting.

The extended binomial convention C(-1,-1) = 1 (see
:func:`compdet.numeric.binomial_ext`) is load-bearing in ``delta_int_nested``
and the proper formulas; with the plain zero convention they stop matching
brute-force determinants at single-part/boundary cases.
"""

from dataclasses import dataclass

from .compositions import enumerate_weak
from .numeric import binomial, binomial_ext
from .poly import FactoredForm, MultiPoly


def delta_int_nested(n, p):
    """Integer determinant as the nested product over k = 1..min(n,p).

    prod_k ( n^C(n-1,k) * prod_{i=1..n-k+1} i^((n-i+1) C(n-i-1,k-2)) )^C(p,k).
    """
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    factors = []
    for k in range(1, min(n, p) + 1):
        outer = binomial(p, k)
        if outer == 0:
            continue
        factors.append((n, binomial(n - 1, k) * outer))
        for i in range(1, n - k + 2):
            e = (n - i + 1) * binomial_ext(n - i - 1, k - 2)
            factors.append((i, e * outer))
    return FactoredForm(0, 1, factors)


def delta_int_flat(n, p):
    """Integer determinant as the flat product
    n^C(n+p-1,p) * prod_{i=1..n} i^((n-i+1) C(n+p-i-1,p-2))."""
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    factors = [(n, binomial(n + p - 1, p))]
    for i in range(1, n + 1):
        factors.append((i, (n - i + 1) * binomial(n + p - i - 1, p - 2)))
    return FactoredForm(0, 1, factors)


def delta_univariate(n, p):
    """Single-variable determinant:
    (p*x + n)^C(n+p-1,p) * prod_{i=1..n} i^((p-1) C(n+p-i-1,p-1))."""
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    base = MultiPoly(1, {(1,): p, (0,): n})
    factors = [(base, binomial(n + p - 1, p))]
    for i in range(1, n + 1):
        factors.append((i, (p - 1) * binomial(n + p - i - 1, p - 1)))
    return FactoredForm(1, 1, factors)


def delta_multivariate(n, p):
    """General determinant:
    (x1+..+xp + n)^C(n+p-1,p) * prod_{i=1..n} i^((p-1) C(n+p-i-1,p-1))."""
    if n < 0 or p < 1:
        raise ValueError(f"need n >= 0 and p >= 1, got n={n}, p={p}")
    factors = [(MultiPoly.var_sum(p, p, n), binomial(n + p - 1, p))]
    for i in range(1, n + 1):
        factors.append((i, (p - 1) * binomial(n + p - i - 1, p - 1)))
    return FactoredForm(p, 1, factors)


def delta_proper_int(n, p):
    """Integer determinant over proper compositions:
    n^C(n-1,p) * prod_{i=1..n-p+1} i^((n-i+1) C(n-i-1,p-2)); 1 when p > n."""
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    if p > n:
        return FactoredForm(0, 1, ())
    factors = [(n, binomial(n - 1, p))]
    for i in range(1, n - p + 2):
        factors.append((i, (n - i + 1) * binomial_ext(n - i - 1, p - 2)))
    return FactoredForm(0, 1, factors)


def delta_proper(n, p):
    """Proper-composition determinant:

    (x1+..+xp + n)^C(n-1,p)
      * prod_{i=1..n-p+1} prod_{j=1..p} (x_j + i)^C(n-i-1,p-2)
      * prod_{i=1..n-p} i^((p-1) C(n-i-1,p-1));

    1 (the 0x0 determinant) when p > n.
    """
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    if p > n:
        return FactoredForm(p, 1, ())
    factors = [(MultiPoly.var_sum(p, p, n), binomial(n - 1, p))]
    for i in range(1, n - p + 2):
        e = binomial_ext(n - i - 1, p - 2)
        if e:
            for j in range(1, p + 1):
                factors.append((MultiPoly.var(p, j) + i, e))
    for i in range(1, n - p + 1):
        factors.append((i, (p - 1) * binomial(n - i - 1, p - 1)))
    return FactoredForm(p, 1, factors)


def proper_from_weak(n, p):
    """The proper determinant assembled from the weak one via the part shift.

    Shifting every part down by 1 maps proper p-part compositions of n onto
    weak p-part compositions of n-p, so the proper determinant equals the
    weak determinant at x+1 times prod_{alpha} prod_j (x_j + 1 + alpha_j),
    with the linear factors enumerated literally and merged.  Must equal
    :func:`delta_proper` factor for factor.
    """
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got n={n}, p={p}")
    shifted = delta_multivariate(n - p, p).shift_all(1)
    factors = list(shifted.factors)
    for alpha in enumerate_weak(n - p, p):
        for j, a in enumerate(alpha, start=1):
            factors.append((MultiPoly.var(p, j) + (1 + a), 1))
    return FactoredForm(p, shifted.constant, factors)


@dataclass
class EquivalenceReport:
    """Grid comparison of the two integer closed forms."""

    nmax: int
    pmax: int
    mismatches: list

    @property
    def ok(self):
        return not self.mismatches


def check_equivalence(nmax, pmax):
    """Compare the nested and flat integer forms over 1 <= n <= nmax, 1 <= p <= pmax.

    Equality is decided on prime signatures of the factored values, which is
    exact integer equality without constructing numbers that would run to
    terabytes at the top of the grid; to_int() cross-checks the small cells.
    """
    if nmax < 1 or pmax < 1:
        raise ValueError("bounds must be >= 1")
    mismatches = []
    for n in range(1, nmax + 1):
        for p in range(1, pmax + 1):
            a = delta_int_nested(n, p)
            b = delta_int_flat(n, p)
            if a.prime_signature() != b.prime_signature():
                mismatches.append((n, p))
            elif n + p <= 10 and a.to_int() != b.to_int():
                mismatches.append((n, p))
    return EquivalenceReport(nmax, pmax, mismatches)
