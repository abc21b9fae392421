"""Independent exact determinant engines and the block-triangulation route.

Four ways to a determinant live here, deliberately sharing as little code as
possible so they can cross-check each other:

* ``det_cofactor`` — division-free Laplace expansion (the brute-force
  oracle; guarded to small dimensions),
* ``det_bareiss`` — fraction-free elimination, the scalable engine for
  integer and polynomial matrices alike,
* ``det_block_recursive`` — evaluates the determinant as a factored product
  via the recursion over trailing-part blocks, cancelling numerator and
  denominator factors in an exponent ledger,
* ``column_reduce`` — the literal column-elimination that block-triangulates
  the matrix over rational-function entries, returning the reduced matrix
  plus a report on the block structure.

Supporting cast: the two-variable shifted-power matrices D(r, n) with entry
(i,j) = (y-i)^(n-j) (z+i)^j (y, z print as x1, x2), their closed-form
determinant, and the table of pivot ratios f_r(i,j) obeying

    f_0(i,j) = (z+i)^j,
    f_{r+1}(i,j) = f_r(i,j)                                   for j <= r,
    f_{r+1}(i,j) = f_r(i,j)
        - ((y-i)/(y-r))^(j-r) f_r(i,r) f_r(r,j) / f_r(r,r)    for j > r,

whose diagonal values have the closed form (y+z)^r r! / prod_{i<r}(y-i).
"""

import math
from dataclasses import dataclass, field

from . import _fastmul
from .compositions import enumerate_weak
from .matrices import IntMatrix, PolyMatrix, build_general
from .numeric import binomial, multinomial
from .poly import FactoredForm, MultiPoly, RationalFn, exact_div

COFACTOR_MAX_DIM = 10
COLUMN_REDUCE_MAX = (3, 3)
_FUSED_STEP_CUTOFF = 2_000


class DimensionTooLarge(ValueError):
    """Matrix exceeds the guard for a deliberately small-scale engine."""


class ResidualDenominator(ArithmeticError):
    """A denominator base survived the block-recursion cancellation (engine bug)."""


class BlockNotZero(ArithmeticError):
    """Column reduction left a nonzero super-diagonal block (engine bug)."""


def _matrix_parts(M):
    if isinstance(M, IntMatrix):
        return [list(row) for row in M.entries], 0, 1
    if isinstance(M, PolyMatrix):
        zero = MultiPoly.zero(M.nvars)
        return [list(row) for row in M.entries], zero, MultiPoly.const(M.nvars, 1)
    raise TypeError(f"expected IntMatrix or PolyMatrix, got {type(M).__name__}")


def det_cofactor(M):
    """Determinant by Laplace expansion along rows (memoized; dim <= 10)."""
    rows, zero, one = _matrix_parts(M)
    d = len(rows)
    if d > COFACTOR_MAX_DIM:
        raise DimensionTooLarge(f"cofactor expansion guarded to {COFACTOR_MAX_DIM}, got {d}")
    memo = {}

    def expand(cols):
        if not cols:
            return one
        got = memo.get(cols)
        if got is not None:
            return got
        r = d - len(cols)
        row = rows[r]
        total = zero
        sign = 1
        for idx, c in enumerate(cols):
            e = row[c]
            if e:
                term = e * expand(cols[:idx] + cols[idx + 1 :])
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[cols] = total
        return total

    return expand(tuple(range(d)))


def det_bareiss(M, stats=None):
    """Determinant by fraction-free elimination.

    Every division is exact (by the previous pivot); a zero pivot triggers a
    row swap with sign tracking, and a fully zero pivot column means the
    determinant is zero.  Works on IntMatrix and PolyMatrix alike.
    """
    rows, zero, one = _matrix_parts(M)
    d = len(rows)
    if d == 0:
        return one
    is_int = isinstance(M, IntMatrix)
    sign = 1
    prev = None
    peak = 1
    for k in range(d - 1):
        if not rows[k][k]:
            for i in range(k + 1, d):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = rows[k][k]
        fused = False
        if not is_int:
            widest = max(
                len(rows[i][j].terms) for i in range(k + 1, d) for j in range(k + 1, d)
            )
            fused = len(piv.terms) * widest > _FUSED_STEP_CUTOFF
        if fused:
            # One shared digit geometry per step; pivot, previous pivot, and
            # the pivot row/column are packed once and reused by every update.
            nvars = M.nvars
            active = range(k + 1, d)
            step = _fastmul.step_geometry(
                [piv.terms, prev.terms if prev is not None else {}],
                [rows[i][j].terms for i in active for j in active],
                [rows[i][k].terms for i in active],
                [rows[k][j].terms for j in active],
                nvars,
            )
            p_int = step.pack_operand(piv.terms)
            prev_int = step.pack_operand(prev.terms) if prev is not None else None
            c_ints = {j: step.pack_operand(rows[k][j].terms) for j in active}
            for i in active:
                r_int = step.pack_operand(rows[i][k].terms)
                row_i = rows[i]
                for j in active:
                    row_i[j] = MultiPoly(
                        nvars,
                        step.update(p_int, row_i[j].terms, r_int, c_ints[j], prev_int),
                        _clean=False,
                    )
                    if stats is not None:
                        t = len(row_i[j].terms)
                        if t > peak:
                            peak = t
        else:
            for i in range(k + 1, d):
                rik = rows[i][k]
                row_i = rows[i]
                row_k = rows[k]
                for j in range(k + 1, d):
                    num = piv * row_i[j] - rik * row_k[j]
                    if prev is None:
                        row_i[j] = num
                    elif is_int:
                        q, r = divmod(num, prev)
                        if r:
                            raise ArithmeticError(
                                "inexact division in integer elimination"
                            )
                        row_i[j] = q
                    else:
                        row_i[j] = exact_div(num, prev)
                    if stats is not None and not is_int:
                        t = len(row_i[j].terms)
                        if t > peak:
                            peak = t
        prev = piv
    if stats is not None:
        stats["peak_terms"] = peak
    out = rows[d - 1][d - 1]
    return out if sign > 0 else -out


# -- the two-variable shifted-power family ---------------------------------


def shift_power_matrix(r, n):
    """(r+1)x(r+1) matrix with entry (i,j) = (y-i)^(n-j) (z+i)^j, 0 <= r <= n."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    rows = [
        [
            MultiPoly.shifted_power(2, (-i, i), (n - j, j))
            for j in range(r + 1)
        ]
        for i in range(r + 1)
    ]
    return PolyMatrix(2, rows, None)


def shift_power_det(r, n):
    """Closed form (y+z)^C(r+1,2) prod_{i=0..r}(y-i)^(n-r) prod_{i=1..r} i^(r-i+1)."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    y_plus_z = MultiPoly.var_sum(2, 2, 0)
    factors = [(y_plus_z, binomial(r + 1, 2))]
    for i in range(r + 1):
        factors.append((MultiPoly.var(2, 1) - i, n - r))
    for i in range(1, r + 1):
        factors.append((i, r - i + 1))
    return FactoredForm(2, 1, factors)


# -- pivot ratio table ------------------------------------------------------


@dataclass
class PivotTable:
    """Pivot ratios f_r(i,j) from the elimination recurrence, by (r, i, j)."""

    rmax: int
    imax: int
    jmax: int
    values: dict

    def value(self, r, i, j):
        return self.values[(r, i, j)]


def _yz_candidates(rmax):
    y = MultiPoly.var(2, 1)
    cands = [MultiPoly.var_sum(2, 2, 0)]
    cands.extend(y - c for c in range(rmax + 1))
    return cands


def pivot_table(rmax, jmax, imax=None):
    """Compute the full pivot-ratio table by the literal recurrence.

    Stored values are reduced by cancelling shared linear factors and integer
    content (exact division, not gcd), which keeps denominators as products
    of (y - i) factors.
    """
    if rmax < 0 or jmax < 0:
        raise ValueError("rmax and jmax must be nonnegative")
    if imax is None:
        imax = max(rmax, jmax)
    cands = _yz_candidates(max(rmax, imax))
    z = MultiPoly.var(2, 2)
    y = MultiPoly.var(2, 1)
    values = {}
    for i in range(imax + 1):
        for j in range(jmax + 1):
            values[(0, i, j)] = RationalFn((z + i) ** j)
    for r in range(rmax):
        den_r = values.get((r, r, r))
        for i in range(imax + 1):
            for j in range(jmax + 1):
                if j <= r:
                    values[(r + 1, i, j)] = values[(r, i, j)]
                    continue
                ratio = RationalFn((y - i) ** (j - r), (y - r) ** (j - r))
                corr = ratio * values[(r, i, r)] * values[(r, r, j)] / den_r
                values[(r + 1, i, j)] = (values[(r, i, j)] - corr).reduce_with(cands)
    return PivotTable(rmax, imax, jmax, values)


def pivot_diagonal_closed(r):
    """Closed form of the r-th diagonal pivot: (y+z)^r r! / prod_{i<r}(y-i)."""
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    y_plus_z = MultiPoly.var_sum(2, 2, 0)
    y = MultiPoly.var(2, 1)
    num = y_plus_z**r * math.factorial(r)
    den = MultiPoly.const(2, 1)
    for i in range(r):
        den = den * (y - i)
    return RationalFn(num, den)


# -- recursive block factorization -----------------------------------------


def det_block_recursive(n, p):
    """The general determinant as a factored product, by block recursion.

    Splitting the matrix by the last part of the labeling compositions gives
    det(n, p) = prod_{r=0..n} det(n-r, p-1) * f_r(r,r)^C(n-r+p-2, p-2) with
    the pivot instantiated at y = x1+..+x_{p-1}+n, z = x_p.  The recursion is
    evaluated in an exponent ledger keyed by base, so the cancellation of
    every denominator factor x1+..+x_{p-1}+c is checked exactly rather than
    assumed; a survivor raises ResidualDenominator.
    """
    if n < 0 or p < 1:
        raise ValueError(f"need n >= 0 and p >= 1, got n={n}, p={p}")
    ledger = {}
    _block_ledger(n, p, ledger, {})
    factors = []
    for key, exp in ledger.items():
        if exp == 0:
            continue
        kind = key[0]
        if kind == "sum":
            _, upto, c = key
            if upto != p:
                raise ResidualDenominator(
                    f"factor x1+..+x{upto}+{c} survived cancellation with exponent {exp}"
                )
            if exp < 0:
                raise ResidualDenominator(
                    f"negative exponent {exp} on x1+..+x{upto}+{c}"
                )
            factors.append((MultiPoly.var_sum(p, upto, c), exp))
        else:
            _, value = key
            if exp < 0:
                raise ResidualDenominator(f"negative exponent {exp} on {value}")
            factors.append((value, exp))
    return FactoredForm(p, 1, factors)


def _bump(ledger, key, exp):
    newv = ledger.get(key, 0) + exp
    if newv:
        ledger[key] = newv
    else:
        ledger.pop(key, None)


def _block_ledger(n, p, ledger, cache, mult=1):
    """Accumulate mult * (exponent ledger of det(n, p, x1..xp)) into ledger."""
    sub = cache.get((n, p))
    if sub is None:
        sub = {}
        if p == 1:
            if n:
                sub[("sum", 1, n)] = n
        elif p == 2:
            e = binomial(n + 1, 2)
            if e:
                sub[("sum", 2, n)] = e
            for i in range(2, n + 1):
                sub[("int", i)] = n - i + 1
        else:
            for r in range(n + 1):
                # diagonal block r: sub-determinant once, pivot scale f_r(r,r)
                # raised to the block dimension C(n-r+p-2, p-2)
                m = binomial(n - r + p - 2, p - 2)
                _block_ledger(n - r, p - 1, sub, cache)
                if r:
                    _bump(sub, ("sum", p, n), r * m)
                    for i in range(2, r + 1):
                        _bump(sub, ("int", i), m)
                    for i in range(r):
                        _bump(sub, ("sum", p - 1, n - i), -m)
        cache[(n, p)] = sub
    for key, exp in sub.items():
        _bump(ledger, key, exp * mult)


# -- literal column reduction ------------------------------------------------


@dataclass
class ColumnReduceReport:
    """What the column elimination produced and which structure checks passed."""

    n: int
    p: int
    block_sizes: list
    offdiag_zero: bool
    diagonal_scaled: bool
    pivots_match_closed: bool
    det_match: bool
    block_dets: list = field(default_factory=list)

    def all_ok(self):
        return (
            self.offdiag_zero
            and self.diagonal_scaled
            and self.pivots_match_closed
            and self.det_match
        )


def _x_candidates(n, p):
    cands = [MultiPoly.var_sum(p, p, n)]
    cands.extend(MultiPoly.var_sum(p, p - 1, n - i) for i in range(n + 1))
    return cands


def _x_pivot_table(n, p, cands):
    # The pivot recurrence instantiated directly in x: y -> x1+..+x_{p-1}+n,
    # z -> x_p.
    xp = MultiPoly.var(p, p)
    values = {}
    for i in range(n + 1):
        for j in range(n + 1):
            values[(0, i, j)] = RationalFn((xp + i) ** j)
    for r in range(n):
        den_r = values[(r, r, r)]
        for i in range(n + 1):
            for j in range(n + 1):
                if j <= r:
                    values[(r + 1, i, j)] = values[(r, i, j)]
                    continue
                num = MultiPoly.var_sum(p, p - 1, n - i) ** (j - r)
                den = MultiPoly.var_sum(p, p - 1, n - r) ** (j - r)
                corr = RationalFn(num, den) * values[(r, i, r)] * values[(r, r, j)] / den_r
                values[(r + 1, i, j)] = (values[(r, i, j)] - corr).reduce_with(cands)
    return values


def _det_cofactor_ratfn(rows):
    d = len(rows)
    if d == 0:
        raise ValueError("empty block")
    if d == 1:
        return rows[0][0]
    total = None
    sign = 1
    for c in range(d):
        e = rows[0][c]
        if e:
            minor = [[row[cc] for cc in range(d) if cc != c] for row in rows[1:]]
            term = e * _det_cofactor_ratfn(minor)
            term = term if sign > 0 else -term
            total = term if total is None else total + term
        sign = -sign
    if total is None:
        nv = rows[0][0].nvars
        return RationalFn(MultiPoly.zero(nv), MultiPoly.const(nv, 1))
    return total


def column_reduce(n, p):
    """Block-triangulate the general matrix by literal column elimination.

    For each stage r and each column labeled beta with last part j > r, every
    column labeled gamma with last part r and gamma_k >= beta_k (k < p) is
    added scaled by

        -(x1+..+x_{p-1}+n-r)^-(j-r) * multinomial(j-r; gamma-beta) * f_r(r,j)/f_r(r,r).

    Returns the reduced matrix (RationalFn entries) and a report verifying
    that all super-diagonal blocks vanished, that each diagonal block equals
    the untouched leading-part block scaled by f_r(r,r), that those pivots
    match their closed form, and that the product of diagonal block
    determinants reproduces the Bareiss determinant.
    """
    if p < 2:
        raise ValueError(f"column reduction needs p >= 2, got {p}")
    if n > COLUMN_REDUCE_MAX[0] or p > COLUMN_REDUCE_MAX[1]:
        raise DimensionTooLarge(
            f"column_reduce guarded to (n, p) <= {COLUMN_REDUCE_MAX}, got ({n}, {p})"
        )
    labels = enumerate_weak(n, p)
    dim = len(labels)
    cands = _x_candidates(n, p)
    pivots = _x_pivot_table(n, p, cands)
    matrix = [
        [RationalFn(MultiPoly.shifted_power(p, alpha, beta)) for beta in labels]
        for alpha in labels
    ]
    for r in range(n + 1):
        stage_cols = [
            (b, beta) for b, beta in enumerate(labels) if beta[-1] > r
        ]
        source_cols = [
            (g, gamma) for g, gamma in enumerate(labels) if gamma[-1] == r
        ]
        den_r = pivots[(r, r, r)]
        base = RationalFn(MultiPoly.var_sum(p, p - 1, n - r))
        for b, beta in stage_cols:
            j = beta[-1]
            scale = (base ** (j - r)) * den_r
            for g, gamma in source_cols:
                delta = tuple(x - y for x, y in zip(gamma[:-1], beta[:-1]))
                if any(d < 0 for d in delta):
                    continue
                mn = multinomial(j - r, delta)
                mult = (RationalFn(MultiPoly.const(p, -mn)) * pivots[(r, r, j)]) / scale
                for i in range(dim):
                    if matrix[i][g]:
                        matrix[i][b] = (matrix[i][b] + matrix[i][g] * mult).reduce_with(cands)
    # block structure checks
    block_of = [alpha[-1] for alpha in labels]
    block_sizes = [block_of.count(r) for r in range(n + 1)]
    offdiag_zero = True
    diagonal_scaled = True
    for i, alpha in enumerate(labels):
        for jx, beta in enumerate(labels):
            bi, bj = block_of[i], block_of[jx]
            entry = matrix[i][jx]
            if bj > bi and not entry.is_zero():
                raise BlockNotZero(
                    f"entry ({alpha}, {beta}) in block ({bi}, {bj}) is {entry}"
                )
            if bj == bi:
                head = MultiPoly.shifted_power(p, alpha, beta[:-1] + (0,))
                expect = RationalFn(head) * pivots[(bi, bi, bi)]
                if entry != expect:
                    diagonal_scaled = False
    pivots_match_closed = True
    for r in range(n + 1):
        closed_num = MultiPoly.var_sum(p, p, n) ** r * math.factorial(r)
        closed_den = MultiPoly.const(p, 1)
        for i in range(r):
            closed_den = closed_den * MultiPoly.var_sum(p, p - 1, n - i)
        if pivots[(r, r, r)] != RationalFn(closed_num, closed_den):
            pivots_match_closed = False
    # determinant from diagonal blocks vs the fraction-free engine
    block_dets = []
    for r in range(n + 1):
        idx = [i for i in range(dim) if block_of[i] == r]
        rows = [[matrix[i][j] for j in idx] for i in idx]
        block_dets.append(_det_cofactor_ratfn(rows).reduce_with(cands))
    product = block_dets[0]
    for bd in block_dets[1:]:
        product = product * bd
    direct = det_bareiss(build_general(n, p))
    det_match = product == RationalFn(direct)
    report = ColumnReduceReport(
        n=n,
        p=p,
        block_sizes=block_sizes,
        offdiag_zero=offdiag_zero,
        diagonal_scaled=diagonal_scaled,
        pivots_match_closed=pivots_match_closed,
        det_match=det_match,
        block_dets=block_dets,
    )
    return matrix, report
