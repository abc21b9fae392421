"""Enumeration and indexing of integer compositions in display order.

A composition is a plain tuple of nonnegative ints.  The display order lists
compositions by ascending last part, recursing on the leading parts — i.e.
ascending lexicographic order of the reversed tuples.  For example the weak
3-part compositions of 5 start (5,0,0), (4,1,0), (3,2,0), ... and end
(0,0,5).  Proper compositions (every part >= 1) are ordered by applying the
all-parts +1 shift to the weak list they biject onto, which keeps one
ordering code path.
"""

from .numeric import binomial


class CompositionNotFound(KeyError):
    """Composition not present in a CompositionList."""


class CompositionList:
    """An ordered list of distinct compositions with O(1) position lookup."""

    __slots__ = ("items", "index")

    def __init__(self, items):
        self.items = list(items)
        self.index = {alpha: i for i, alpha in enumerate(self.items)}
        if len(self.index) != len(self.items):
            raise ValueError("compositions must be pairwise distinct")

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __eq__(self, other):
        if not isinstance(other, CompositionList):
            return NotImplemented
        return self.items == other.items

    def __repr__(self):
        return f"CompositionList({self.items!r})"

    def index_of(self, alpha):
        """Position of ``alpha``; raises CompositionNotFound if absent."""
        alpha = tuple(alpha)
        try:
            return self.index[alpha]
        except KeyError:
            raise CompositionNotFound(alpha) from None

    def to_json(self):
        return [list(alpha) for alpha in self.items]


def _weak(n, p):
    if p == 1:
        yield (n,)
        return
    for last in range(n + 1):
        for head in _weak(n - last, p - 1):
            yield head + (last,)


def enumerate_weak(n, p):
    """All weak p-part compositions of n in display order."""
    if p < 1:
        raise ValueError(f"need at least one part, got p={p}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    out = CompositionList(_weak(n, p))
    assert len(out) == binomial(n + p - 1, p - 1)
    return out


def enumerate_proper(n, p):
    """All p-part compositions of n with every part >= 1; empty when p > n."""
    if p < 1 or n < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    if p > n:
        return CompositionList([])
    out = CompositionList(
        weak_to_proper(alpha) for alpha in enumerate_weak(n - p, p)
    )
    assert len(out) == binomial(n - 1, p - 1)
    return out


def proper_to_weak(alpha):
    """Subtract 1 from every part (requires all parts >= 1)."""
    if any(a < 1 for a in alpha):
        raise ValueError(f"{tuple(alpha)} is not a proper composition")
    return tuple(a - 1 for a in alpha)


def weak_to_proper(alpha):
    """Add 1 to every part."""
    return tuple(a + 1 for a in alpha)
