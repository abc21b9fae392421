"""Packed big-integer kernels for large polynomial multiply / exact divide.

A polynomial with per-variable degree bounds is packed into one integer
whose fixed-width digits (base 2^(8*nb)) are the coefficients laid out in a
row-major exponent box.  Products, elimination updates, and exact quotients
then ride on GMP integer arithmetic, which beats dict-based term convolution
by orders of magnitude once term counts grow.

Signed coefficients are handled by biasing every digit slot by half the
digit range, so packing and unpacking are plain byte operations with no
carry propagation.  Digit widths come from provable coefficient bounds (the
convolution bound for products, Gelfond's factor height inequality for
quotients), so decoded results are exact; standalone divisions are
additionally confirmed by a packed re-multiplication so non-divisible inputs
are rejected rather than mis-decoded.
"""

import math
from itertools import product as _iproduct

import numpy as _np
from gmpy2 import mpz

# log2(e), rounded up a touch: Gelfond's inequality bounds the height of a
# factor by e^(sum of the product's per-variable degrees) times the
# product's height (divided here by the known cofactor's height).
_LOG2_E = 1.4427


def _max_degrees(terms, nvars):
    degs = [0] * nvars
    for exps in terms:
        for i, e in enumerate(exps):
            if e > degs[i]:
                degs[i] = e
    return degs


def _max_abs(terms):
    return max(abs(c) for c in terms.values())


class _Geometry:
    """Digit layout for one exponent box: strides, width, bias, unrank table."""

    __slots__ = (
        "dims", "nvars", "nb", "half", "pat", "strides", "slots", "bias",
        "_table", "_patrow",
    )

    def __init__(self, dims, bits):
        self.dims = tuple(dims)
        self.nvars = len(dims)
        nb = (bits + 7) // 8
        self.nb = nb
        self.half = 1 << (8 * nb - 1)
        self.pat = self.half.to_bytes(nb, "little")
        strides = [1] * self.nvars
        for i in range(self.nvars - 2, -1, -1):
            strides[i] = strides[i + 1] * dims[i + 1]
        self.strides = strides
        self.slots = strides[0] * dims[0] if dims else 1
        self.bias = int.from_bytes(self.pat * self.slots, "little")
        self._table = None
        self._patrow = _np.frombuffer(self.pat, dtype=_np.uint8)

    def table(self):
        # Row-major exponent tuples in slot order, built at C speed.
        if self._table is None:
            self._table = list(_iproduct(*map(range, self.dims)))
        return self._table

    def pack(self, terms):
        nb = self.nb
        half = self.half
        strides = self.strides
        buf = bytearray(self.pat * self.slots)
        for exps, coeff in terms.items():
            k = 0
            for e, s in zip(exps, strides):
                k += e * s
            buf[k * nb : (k + 1) * nb] = (coeff + half).to_bytes(nb, "little")
        return int.from_bytes(buf, "little") - self.bias

    def unpack(self, value):
        nb = self.nb
        buf = (value + self.bias).to_bytes(self.slots * nb, "little")
        arr = _np.frombuffer(buf, dtype=_np.uint8).reshape(self.slots, nb)
        hits = _np.nonzero((arr != self._patrow).any(axis=1))[0]
        table = self.table()
        half = self.half
        terms = {}
        for k in hits.tolist():
            terms[table[k]] = int.from_bytes(buf[k * nb : (k + 1) * nb], "little") - half
        return terms


def mul_terms(ta, tb, nvars):
    """Product of two term dicts (both nonempty, nvars >= 1)."""
    da = _max_degrees(ta, nvars)
    db = _max_degrees(tb, nvars)
    dims = [x + y + 1 for x, y in zip(da, db)]
    bound = _max_abs(ta) * _max_abs(tb) * min(len(ta), len(tb))
    geo = _Geometry(dims, bound.bit_length() + 2)
    return geo.unpack(int(mpz(geo.pack(ta)) * mpz(geo.pack(tb))))


def fused_update(tP, tA, tR, tC, tprev, nvars):
    """One fraction-free elimination update, (P*A - R*C) / prev, fully packed.

    Products, subtraction, and exact division happen on packed integers; only
    the quotient is decoded.  The digit width is chosen so the numerator's
    coefficients provably fit and, via the Gelfond bound, so do the
    quotient's — no verification pass is needed.  ``tprev`` may be None on
    the first elimination step.  An inexact division means a broken Bareiss
    invariant upstream and raises ArithmeticError.
    """
    step = step_geometry([tP, tprev or {}], [tA], [tR], [tC], nvars)
    return step.update(
        step.pack_operand(tP),
        tA,
        step.pack_operand(tR),
        step.pack_operand(tC),
        step.pack_operand(tprev),
    )


class _StepGeometry:
    """Shared geometry for all updates of one elimination step."""

    __slots__ = ("geo",)

    def __init__(self, geo):
        self.geo = geo

    def pack(self, terms):
        return self.geo.pack(terms) if terms else 0

    def pack_operand(self, terms):
        return mpz(self.geo.pack(terms)) if terms else None

    def update(self, p_int, tA, r_int, c_int, prev_int):
        num = mpz(0)
        if p_int is not None and tA:
            num += p_int * mpz(self.geo.pack(tA))
        if r_int is not None and c_int is not None:
            num -= r_int * c_int
        if prev_int:
            quot, rem = divmod(num, prev_int)
            if rem:
                raise ArithmeticError("inexact division in fused elimination update")
            num = quot
        if not num:
            return {}
        return self.geo.unpack(int(num))


def step_geometry(pivots, actives, rows, cols, nvars):
    """Build one shared geometry covering every update of a step.

    ``pivots`` holds the pivot and previous pivot term dicts; ``actives``,
    ``rows``, ``cols`` the candidate A, R, C operands.  Dimensions cover the
    worst product P*A / R*C; digit width covers the numerator bound and the
    Gelfond quotient bound.
    """
    def group_stats(group):
        degs = [0] * nvars
        mc = 0
        mt = 1
        for terms in group:
            if not terms:
                continue
            d = _max_degrees(terms, nvars)
            for i in range(nvars):
                if d[i] > degs[i]:
                    degs[i] = d[i]
            c = _max_abs(terms)
            if c > mc:
                mc = c
            if len(terms) > mt:
                mt = len(terms)
        return degs, mc, mt

    dP, mcP, mtP = group_stats(pivots[:1])
    dA, mcA, mtA = group_stats(actives)
    dR, mcR, mtR = group_stats(rows)
    dC, mcC, mtC = group_stats(cols)
    dims = [
        max(dP[i] + dA[i], dR[i] + dC[i]) + 1 for i in range(nvars)
    ]
    bound = mcP * mcA * min(mtP, mtA) + mcR * mcC * min(mtR, mtC)
    bits = bound.bit_length() + 2
    prev = pivots[1] if len(pivots) > 1 else None
    if prev:
        prev_height = _max_abs(prev).bit_length()
        gelfond_q = (
            bound.bit_length()
            - prev_height
            + math.ceil(_LOG2_E * sum(d - 1 for d in dims))
            + 4
        )
        bits = max(bits, prev_height + 2, gelfond_q)
    return _StepGeometry(_Geometry(dims, bits))


def _div_attempt(tf, tg, nvars, dims, bits):
    geo = _Geometry(dims, bits)
    quot, rem = divmod(mpz(geo.pack(tf)), mpz(geo.pack(tg)))
    if rem:
        return None
    return geo.unpack(int(quot)) or None


def _verified(tq, tf, tg, nvars, df, maxf, maxg):
    # Integer divisibility does not by itself imply polynomial divisibility
    # (and an undersized digit width garbles decoding), so a candidate
    # quotient counts only if q*g == f under an exact packed multiplication.
    dq = _max_degrees(tq, nvars)
    dg = _max_degrees(tg, nvars)
    vdims = [x + y + 1 for x, y in zip(dq, dg)]
    if any(x >= d for x, d in zip(df, vdims)):
        return False
    vbound = _max_abs(tq) * maxg * min(len(tq), len(tg))
    vbits = max(vbound.bit_length(), maxf.bit_length()) + 2
    geo = _Geometry(vdims, vbits)
    return int(mpz(geo.pack(tq)) * mpz(geo.pack(tg))) == geo.pack(tf)


def divexact_terms(tf, tg, nvars):
    """Quotient term dict for tf / tg, or None when no polynomial quotient exists.

    In an integral domain per-variable degrees add under multiplication, so
    the numerator's degree box accommodates the quotient.  Digit width is
    tried optimistically first, with Gelfond's bound as the provable
    fallback; either way the decoded quotient is confirmed by a packed
    re-multiplication, so a wrong guess costs a retry, never correctness.
    """
    df = _max_degrees(tf, nvars)
    dg = _max_degrees(tg, nvars)
    if any(y > x for x, y in zip(df, dg)):
        return None
    dims = [x + 1 for x in df]
    maxf = _max_abs(tf)
    maxg = _max_abs(tg)
    floor_bits = max(maxf.bit_length(), maxg.bit_length()) + 3
    cheap = floor_bits + 32
    gelfond = math.ceil(_LOG2_E * sum(df)) + floor_bits
    for bits in (cheap, gelfond) if cheap < gelfond else (gelfond,):
        tq = _div_attempt(tf, tg, nvars, dims, bits)
        if tq is None:
            return None
        if _verified(tq, tf, tg, nvars, df, maxf, maxg):
            return tq
    return None
