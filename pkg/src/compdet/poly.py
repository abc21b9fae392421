"""Sparse multivariate polynomial arithmetic over exact integers.

Polynomials are stored as a map from exponent tuples to nonzero int
coefficients, so structural equality is semantic equality.  The module also
provides rational functions (equality by cross-multiplication, no gcd),
factored product forms (the output shape of the closed determinant
formulas), exact division, and canonical text/JSON serialization.

Monomial order everywhere (display, leading terms, exact division) is graded
lexicographic with x1 > x2 > ... .  The scalar convention 0^0 = 1 is used
throughout.
"""

import math
import re

from . import _fastmul

# Dict-based multiplication is quadratic in term counts; above these budgets
# the packed big-integer path in _fastmul wins (measured crossovers).
_MUL_PACKED_CUTOFF = 2_000
_DIV_PACKED_CUTOFF = 96


class NotDivisible(ArithmeticError):
    """Exact polynomial division was requested but no polynomial quotient exists."""


class PolyParseError(ValueError):
    """Malformed canonical polynomial/factored text; carries the bad position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables with int coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None, _clean=True):
        if nvars < 0:
            raise ValueError(f"nvars must be nonnegative, got {nvars}")
        self.nvars = nvars
        if terms is None:
            terms = {}
        if _clean:
            cleaned = {}
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(
                        f"monomial {exps} has {len(exps)} exponents, expected {nvars}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in monomial {exps}")
                if coeff:
                    cleaned[exps] = coeff
            terms = cleaned
        self.terms = terms
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {}, _clean=False)

    @classmethod
    def const(cls, nvars, c):
        c = int(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, _clean=False)

    @classmethod
    def var(cls, nvars, j):
        """The variable x_j (1-based index)."""
        if not 1 <= j <= nvars:
            raise ValueError(f"variable index {j} out of range 1..{nvars}")
        exps = tuple(1 if i == j - 1 else 0 for i in range(nvars))
        return cls(nvars, {exps: 1}, _clean=False)

    @classmethod
    def var_sum(cls, nvars, upto, c=0):
        """x_1 + ... + x_upto + c."""
        if not 0 <= upto <= nvars:
            raise ValueError(f"upto={upto} out of range 0..{nvars}")
        terms = {}
        for j in range(upto):
            exps = tuple(1 if i == j else 0 for i in range(nvars))
            terms[exps] = 1
        if c:
            terms[(0,) * nvars] = int(c)
        return cls(nvars, terms, _clean=False)

    @classmethod
    def shifted_power(cls, nvars, offsets, exps):
        """prod_j (x_j + offsets[j])^exps[j], expanded.

        Built directly from the binomial theorem; offsets may be negative.
        """
        if len(offsets) != nvars or len(exps) != nvars:
            raise ValueError("offsets/exps length must equal nvars")
        terms = {(): 1}
        for a, b in zip(offsets, exps):
            if b < 0:
                raise ValueError(f"negative power {b}")
            factor = [(k, math.comb(b, k) * a ** (b - k)) for k in range(b + 1)]
            terms = {
                head + (k,): coeff * c
                for head, coeff in terms.items()
                for k, c in factor
                if c
            }
        return cls(nvars, terms, _clean=False)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        """The integer value of a constant polynomial."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            exps, coeff = next(iter(self.terms.items()))
            if not any(exps):
                return coeff
        raise ValueError(f"{self} is not constant")

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def max_degrees(self):
        """Per-variable maximum exponents (all zeros for constants)."""
        degs = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e > degs[i]:
                    degs[i] = e
        return degs

    def sorted_terms(self):
        """Terms as (exps, coeff) pairs, graded-lex descending."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=0)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, int):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        out = dict(big)
        for exps, coeff in small.items():
            s = out.get(exps, 0) + coeff
            if s:
                out[exps] = s
            else:
                del out[exps]
        return MultiPoly(self.nvars, out, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(
            self.nvars, {e: -c for e, c in self.terms.items()}, _clean=False
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ta, tb = self.terms, other.terms
        if not ta or not tb:
            return MultiPoly.zero(self.nvars)
        if len(ta) == 1:
            return other._mul_monomial(ta)
        if len(tb) == 1:
            return self._mul_monomial(tb)
        if len(ta) * len(tb) > _MUL_PACKED_CUTOFF:
            return MultiPoly(
                self.nvars, _fastmul.mul_terms(ta, tb, self.nvars), _clean=False
            )
        out = {}
        if len(ta) > len(tb):
            ta, tb = tb, ta
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                key = tuple(map(sum, zip(ea, eb))) if ea != () else ()
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return MultiPoly(self.nvars, out, _clean=False)

    __rmul__ = __mul__

    def _mul_monomial(self, mono_terms):
        ((me, mc),) = mono_terms.items()
        if not any(me):
            return MultiPoly(
                self.nvars, {e: c * mc for e, c in self.terms.items()}, _clean=False
            )
        out = {
            tuple(map(sum, zip(e, me))): c * mc for e, c in self.terms.items()
        }
        return MultiPoly(self.nvars, out, _clean=False)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError(f"negative power {n}")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == MultiPoly.const(self.nvars, other).terms
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation and substitution ----------------------------------------

    def eval(self, point):
        """Exact integer value at an integer point."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        total = 0
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e:
                    v *= x**e
            total += v
        return total

    def shift_all(self, c):
        """Substitute x_j -> x_j + c for every variable, expanded."""
        c = int(c)
        if c == 0 or self.nvars == 0:
            return self
        out = MultiPoly.zero(self.nvars)
        for exps, coeff in self.terms.items():
            out = out + MultiPoly.shifted_power(self.nvars, (c,) * self.nvars, exps) * coeff
        return out

    def identify_vars(self):
        """Collapse all variables to a single one: x_j -> x."""
        out = {}
        for exps, coeff in self.terms.items():
            key = (sum(exps),)
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return MultiPoly(1, out, _clean=False)

    def embed(self, nvars):
        """Reinterpret in a larger variable set (new trailing variables unused)."""
        if nvars < self.nvars:
            raise ValueError(f"cannot embed {self.nvars} vars into {nvars}")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly(
            nvars, {e + pad: c for e, c in self.terms.items()}, _clean=False
        )

    def permute_vars(self, perm):
        """Apply x_j -> x_perm[j] (perm is a 0-based permutation of variables)."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.nvars - 1}")
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] = e
            out[tuple(new)] = coeff
        return MultiPoly(self.nvars, out, _clean=False)

    def __repr__(self):
        return f"MultiPoly({format_canonical(self)!r})"

    def __str__(self):
        return format_canonical(self)


def exact_div(f, g):
    """The polynomial quotient f / g; raises NotDivisible if none exists."""
    if not isinstance(f, MultiPoly) or not isinstance(g, MultiPoly):
        raise TypeError("exact_div expects MultiPoly arguments")
    if f.nvars != g.nvars:
        raise ValueError(f"variable count mismatch: {f.nvars} vs {g.nvars}")
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return f
    if g.is_const():
        gc = g.const_value()
        out = {}
        for exps, coeff in f.terms.items():
            q, r = divmod(coeff, gc)
            if r:
                raise NotDivisible(f"coefficient {coeff} not divisible by {gc}")
            out[exps] = q
        return MultiPoly(f.nvars, out, _clean=False)
    if len(f.terms) > _DIV_PACKED_CUTOFF:
        q_terms = _fastmul.divexact_terms(f.terms, g.terms, f.nvars)
        if q_terms is None:
            raise NotDivisible("no polynomial quotient exists")
        return MultiPoly(f.nvars, q_terms, _clean=False)
    return _long_division(f, g)


def _long_division(f, g):
    # Single-divisor division in graded-lex order.  When g | f every leading
    # term of the running remainder is divisible by lt(g), so any failure
    # proves non-divisibility immediately.
    ge, gc = g.leading_term()
    rem = dict(f.terms)
    quot = {}
    nvars = f.nvars
    while rem:
        re_ = max(rem, key=_grlex_key)
        rc = rem[re_]
        qe = tuple(a - b for a, b in zip(re_, ge))
        if any(e < 0 for e in qe):
            raise NotDivisible("leading monomial not divisible")
        qc, r = divmod(rc, gc)
        if r:
            raise NotDivisible("leading coefficient not divisible")
        quot[qe] = qc
        for e, c in g.terms.items():
            key = tuple(map(sum, zip(qe, e))) if qe != () else ()
            s = rem.get(key, 0) - qc * c
            if s:
                rem[key] = s
            elif key in rem:
                del rem[key]
    return MultiPoly(nvars, quot, _clean=False)


class RationalFn:
    """Quotient of two MultiPoly values.

    No gcd normalization is performed; equality is decided by
    cross-multiplication.  A zero numerator is stored as 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = MultiPoly.const(den.nvars if den is not None else 0, num)
        if den is None:
            den = MultiPoly.const(num.nvars, 1)
        elif isinstance(den, int):
            den = MultiPoly.const(num.nvars, den)
        if num.nvars != den.nvars:
            raise ValueError(f"variable count mismatch: {num.nvars} vs {den.nvars}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = MultiPoly.const(num.nvars, 1)
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, MultiPoly):
            return RationalFn(other)
        if isinstance(other, int):
            return RationalFn(MultiPoly.const(self.nvars, other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.terms == other.den.terms:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RationalFn(self.den, self.num) ** (-n)
        return RationalFn(self.num**n, self.den**n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ratfn_equal(self, other)

    def __hash__(self):
        raise TypeError("RationalFn is unhashable (equality is not structural)")

    def reduce_with(self, candidates):
        """Cancel integer content and any common factors from ``candidates``.

        Opportunistic exact-division cancellation (not a gcd); used by the
        elimination tables to keep denominators in product-of-linear-factor
        shape.
        """
        num, den = self.num, self.den
        if num.is_zero():
            return RationalFn(num, MultiPoly.const(num.nvars, 1))
        for cand in candidates:
            while True:
                try:
                    n2 = exact_div(num, cand)
                    d2 = exact_div(den, cand)
                except NotDivisible:
                    break
                num, den = n2, d2
        cont = math.gcd(math.gcd(*num.terms.values(), 0), math.gcd(*den.terms.values(), 0))
        lead_den = den.leading_term()[1]
        if lead_den < 0:
            cont = -cont
        if cont not in (0, 1):
            num = exact_div(num, MultiPoly.const(num.nvars, cont))
            den = exact_div(den, MultiPoly.const(den.nvars, cont))
        return RationalFn(num, den)

    def __repr__(self):
        return f"RationalFn({format_canonical(self.num)!r}, {format_canonical(self.den)!r})"

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return format_canonical(self.num)
        return f"({format_canonical(self.num)}) / ({format_canonical(self.den)})"


def ratfn_equal(f, g):
    """True iff f.num*g.den == g.num*f.den as polynomials."""
    return f.num * g.den == g.num * f.den


def _base_sort_key(base):
    # Constant bases first (ascending by value), then linear bases ordered by
    # their term sequence: higher monomials first, coefficients ascending.
    if base.is_const():
        return (0, base.const_value(), ())
    seq = tuple(
        ((-sum(e), tuple(-x for x in e)), c) for e, c in base.sorted_terms()
    )
    return (1, 0, seq)


class FactoredForm:
    """A product ``constant * prod base_i^exp_i`` kept unexpanded.

    Bases are either constant polynomials with value >= 2 or polynomials of
    total degree 1; equal bases are merged, exponent-zero factors dropped,
    and factors kept in a canonical order, so structural equality of
    canonical forms is meaningful.
    """

    __slots__ = ("nvars", "constant", "factors")

    def __init__(self, nvars, constant=1, factors=()):
        self.nvars = nvars
        merged = {}
        order = []
        const = int(constant)
        for base, exp in factors:
            if isinstance(base, int):
                base = MultiPoly.const(nvars, base)
            if base.nvars != nvars:
                raise ValueError(
                    f"base has {base.nvars} variables, expected {nvars}"
                )
            if exp < 0:
                raise ValueError(f"negative exponent {exp} in factored form")
            if exp == 0:
                continue
            if base.is_const():
                v = base.const_value()
                if v == 1:
                    continue
                if v in (0, -1) or v < -1:
                    # Fold signs/zeros into the constant rather than keeping
                    # an invalid base.
                    const *= v**exp
                    continue
                base = MultiPoly.const(nvars, v)
            elif base.total_degree() != 1:
                raise ValueError(
                    f"factored-form base must be constant or degree 1: {base}"
                )
            merged[base] = merged.get(base, 0) + exp
            if base not in order:
                order.append(base)
        pairs = [(b, merged[b]) for b in order if merged[b]]
        pairs.sort(key=lambda p: _base_sort_key(p[0]))
        self.constant = const
        self.factors = tuple(pairs)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, 1, ())

    def __mul__(self, other):
        if isinstance(other, FactoredForm):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return FactoredForm(
                self.nvars,
                self.constant * other.constant,
                self.factors + other.factors,
            )
        if isinstance(other, int):
            return FactoredForm(self.nvars, self.constant * other, self.factors)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("factored form power must be a nonnegative int")
        return FactoredForm(
            self.nvars,
            self.constant**n,
            tuple((b, e * n) for b, e in self.factors),
        )

    def __eq__(self, other):
        if not isinstance(other, FactoredForm):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.constant == other.constant
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.nvars, self.constant, self.factors))

    def expand(self):
        """The fully expanded MultiPoly value of the product."""
        out = MultiPoly.const(self.nvars, self.constant)
        for base, exp in self.factors:
            out = out * base**exp
        return out

    def to_int(self):
        """Exact integer value; requires every base to be constant."""
        out = self.constant
        for base, exp in self.factors:
            out *= base.const_value() ** exp
        return out

    def eval(self, point):
        """Exact integer value at an integer point, without expanding."""
        out = self.constant
        for base, exp in self.factors:
            out *= base.eval(point) ** exp
        return out

    def prime_signature(self):
        """Map prime -> exponent of the (all-constant) product, plus sign.

        Lets two astronomically large factored integers be compared exactly
        without constructing them.
        """
        sign = 1 if self.constant >= 0 else -1
        sig = {}

        def add(value, exp):
            nonlocal sign
            if value < 0:
                sign = -sign if exp % 2 else sign
                value = -value
            if value == 0:
                raise ValueError("zero value in prime signature")
            d = 2
            while d * d <= value:
                while value % d == 0:
                    sig[d] = sig.get(d, 0) + exp
                    value //= d
                d += 1
            if value > 1:
                sig[value] = sig.get(value, 0) + exp

        if abs(self.constant) != 1:
            add(self.constant, 1)
        for base, exp in self.factors:
            add(base.const_value(), exp)
        return sign, {p: e for p, e in sig.items() if e}

    def total_degree(self):
        return sum(base.total_degree() * exp for base, exp in self.factors)

    def shift_all(self, c):
        """Substitute x_j -> x_j + c in every base."""
        return FactoredForm(
            self.nvars,
            self.constant,
            tuple((base.shift_all(c), exp) for base, exp in self.factors),
        )

    def identify_vars(self):
        """Collapse all variables to one in every base."""
        return FactoredForm(
            1,
            self.constant,
            tuple((base.identify_vars(), exp) for base, exp in self.factors),
        )

    def embed(self, nvars):
        return FactoredForm(
            nvars,
            self.constant,
            tuple((base.embed(nvars), exp) for base, exp in self.factors),
        )

    def __repr__(self):
        return f"FactoredForm({format_canonical(self)!r})"

    def __str__(self):
        return format_canonical(self)


# -- canonical text -------------------------------------------------------


def _format_monomial(exps, coeff, varnames):
    parts = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        name = varnames[i] if varnames else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    if not parts:
        return str(abs(coeff))
    body = "*".join(parts)
    if abs(coeff) == 1:
        return body
    return f"{abs(coeff)}*{body}"


def format_canonical(obj, varnames=None, compact=False):
    """Canonical text for a MultiPoly or FactoredForm.

    Variables print as x1..xv unless ``varnames`` overrides them.  Monomials
    appear in graded-lex descending order; factored forms as
    ``c*(base)^e*...`` with constant bases first and compact bases.
    ``compact`` drops the spaces around '+'/'-'.
    """
    if isinstance(obj, FactoredForm):
        return _format_factored(obj, varnames)
    if not isinstance(obj, MultiPoly):
        raise TypeError(f"cannot format {type(obj).__name__}")
    if obj.is_zero():
        return "0"
    plus, minus, lead_minus = (" + ", " - ", "-") if not compact else ("+", "-", "-")
    out = []
    for i, (exps, coeff) in enumerate(obj.sorted_terms()):
        text = _format_monomial(exps, coeff, varnames)
        if i == 0:
            out.append(lead_minus + text if coeff < 0 else text)
        else:
            out.append((minus if coeff < 0 else plus) + text)
    return "".join(out)


def _format_factored(form, varnames=None):
    parts = []
    if form.constant == -1 and form.factors:
        prefix = "-"
    elif form.constant != 1 or not form.factors:
        parts.append(str(form.constant))
        prefix = ""
    else:
        prefix = ""
    for base, exp in form.factors:
        if base.is_const():
            body = str(base.const_value())
        else:
            body = f"({format_canonical(base, varnames, compact=True)})"
        parts.append(body if exp == 1 else f"{body}^{exp}")
    return prefix + "*".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>x(?P<idx>\d+)?)|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos
            while bad < len(text) and text[bad].isspace():
                bad += 1
            if bad == len(text):
                break
            raise PolyParseError(f"unexpected character {text[bad]!r}", bad)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start()))
        elif m.group("var") is not None:
            idx = m.group("idx")
            tokens.append(("var", int(idx) if idx is not None else 1, m.start()))
        else:
            tokens.append((m.group("op"), None, m.start()))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse_poly_terms(self, stop_at_paren=False):
        """Parse ``term (('+'|'-') term)*``; returns list of (coeff, {var: exp})."""
        terms = []
        sign = 1
        kind, _, pos = self.peek()
        if kind == "-":
            self.take()
            sign = -1
        elif kind == "+":
            self.take()
        while True:
            terms.append(self.parse_term(sign))
            kind, _, pos = self.peek()
            if kind == "+":
                self.take()
                sign = 1
            elif kind == "-":
                self.take()
                sign = -1
            elif kind == "end" or (stop_at_paren and kind == ")"):
                return terms
            else:
                raise PolyParseError(f"expected '+' or '-', found {kind!r}", pos)

    def parse_term(self, sign):
        coeff = sign
        powers = {}
        saw_factor = False
        while True:
            kind, value, pos = self.peek()
            if kind == "int":
                self.take()
                if self.peek()[0] == "^":
                    self.take()
                    etok = self.take("int")
                    coeff *= value ** etok[1]
                else:
                    coeff *= value
            elif kind == "var":
                self.take()
                exp = 1
                if self.peek()[0] == "^":
                    self.take()
                    exp = self.take("int")[1]
                powers[value] = powers.get(value, 0) + exp
            else:
                raise PolyParseError(f"expected a coefficient or variable", pos)
            saw_factor = True
            if self.peek()[0] == "*":
                self.take()
                continue
            return coeff, powers


def parse_canonical(text, nvars=None):
    """Parse canonical polynomial text back into a MultiPoly.

    The variable count defaults to the highest index that appears (``x`` with
    no index counts as x1); pass ``nvars`` to embed in a wider ring.
    """
    parser = _Parser(text)
    raw = parser.parse_poly_terms()
    parser.take("end")
    seen = max((max(p, default=0) for _, p in raw), default=0)
    if nvars is None:
        nvars = seen
    elif seen > nvars:
        raise PolyParseError(f"variable x{seen} exceeds nvars={nvars}", 0)
    terms = {}
    for coeff, powers in raw:
        exps = tuple(powers.get(j + 1, 0) for j in range(nvars))
        terms[exps] = terms.get(exps, 0) + coeff
    return MultiPoly(nvars, terms)


def parse_factored(text, nvars=None):
    """Parse ``c*(base)^e*...`` text into a FactoredForm."""
    parser = _Parser(text)
    constant = 1
    factors = []
    if parser.peek()[0] == "-":
        parser.take()
        constant = -1
    while True:
        kind, value, pos = parser.peek()
        if kind == "int":
            parser.take()
            exp = 1
            if parser.peek()[0] == "^":
                parser.take()
                exp = parser.take("int")[1]
            factors.append((value, exp))
        elif kind == "(":
            parser.take()
            raw = parser.parse_poly_terms(stop_at_paren=True)
            parser.take(")")
            exp = 1
            if parser.peek()[0] == "^":
                parser.take()
                exp = parser.take("int")[1]
            factors.append((raw, exp))
        else:
            raise PolyParseError("expected an integer or '(' base", pos)
        nxt = parser.peek()
        if nxt[0] == "*":
            parser.take()
            continue
        parser.take("end")
        break
    seen = 0
    for base, _ in factors:
        if isinstance(base, list):
            for _, powers in base:
                seen = max(seen, max(powers, default=0))
    if nvars is None:
        nvars = seen
    built = []
    for base, exp in factors:
        if isinstance(base, int):
            built.append((MultiPoly.const(nvars, base), exp))
        else:
            terms = {}
            for coeff, powers in base:
                exps = tuple(powers.get(j + 1, 0) for j in range(nvars))
                terms[exps] = terms.get(exps, 0) + coeff
            built.append((MultiPoly(nvars, terms), exp))
    return FactoredForm(nvars, constant, built)


# -- JSON forms ------------------------------------------------------------


def poly_to_json(f):
    """JSON-ready dict with arbitrary-precision coefficients as strings."""
    return {
        "nvars": f.nvars,
        "terms": [
            {"exps": list(exps), "coeff": str(coeff)}
            for exps, coeff in f.sorted_terms()
        ],
    }


def poly_from_json(data):
    nvars = data["nvars"]
    terms = {}
    for item in data["terms"]:
        exps = tuple(item["exps"])
        terms[exps] = terms.get(exps, 0) + int(item["coeff"])
    return MultiPoly(nvars, terms)


def factored_to_json(form):
    return {
        "constant": str(form.constant),
        "factors": [
            {"base": poly_to_json(base), "exp": exp} for base, exp in form.factors
        ],
    }


def factored_from_json(data):
    factors = [
        (poly_from_json(item["base"]), item["exp"]) for item in data["factors"]
    ]
    nvars = factors[0][0].nvars if factors else 0
    return FactoredForm(nvars, int(data["constant"]), factors)
