"""Power-composition matrices and their specializations.

The general matrix for (n, p) is indexed on both axes by the weak p-part
compositions of n in display order, with entry at (alpha, beta) equal to
prod_j (x_j + alpha_j)^beta_j (0^0 = 1).  Variants: a single shared variable
x, the integer specialization x = 0, and the restriction to proper
compositions.  Entries are stored fully expanded so the determinant engines
can use ring operations and canonical equality directly.
"""

from .compositions import CompositionList, enumerate_proper, enumerate_weak
from .poly import MultiPoly, format_canonical


class PolyMatrix:
    """Square matrix of MultiPoly entries labeled by one composition list."""

    __slots__ = ("dim", "nvars", "entries", "labels")

    def __init__(self, nvars, entries, labels):
        self.dim = len(entries)
        self.nvars = nvars
        self.entries = entries
        self.labels = labels
        for row in entries:
            if len(row) != self.dim:
                raise ValueError("matrix must be square")
            for e in row:
                if e.nvars != nvars:
                    raise ValueError("entries must share a variable count")
        if labels is not None and len(labels) != self.dim:
            raise ValueError("label count must equal dimension")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def permuted(self, order):
        """Simultaneous row/column reordering by index list ``order``."""
        if sorted(order) != list(range(self.dim)):
            raise ValueError("order must be a permutation of row indices")
        rows = [[self.entries[i][j] for j in order] for i in order]
        return PolyMatrix(self.nvars, rows, None)

    def to_json(self):
        return {
            "dim": self.dim,
            "nvars": self.nvars,
            "labels": self.labels.to_json() if self.labels is not None else None,
            "entries": [[format_canonical(e) for e in row] for row in self.entries],
        }


class IntMatrix:
    """Square matrix of exact integers."""

    __slots__ = ("dim", "entries", "labels")

    def __init__(self, entries, labels=None):
        self.dim = len(entries)
        self.entries = entries
        self.labels = labels
        for row in entries:
            if len(row) != self.dim:
                raise ValueError("matrix must be square")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.entries == other.entries

    def to_json(self):
        return {
            "dim": self.dim,
            "labels": self.labels.to_json() if self.labels is not None else None,
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def _poly_entry(nvars, alpha, beta):
    return MultiPoly.shifted_power(nvars, alpha, beta)


def build_general(n, p):
    """The matrix over x1..xp with entry prod_j (x_j + alpha_j)^beta_j."""
    labels = enumerate_weak(n, p)
    rows = [
        [_poly_entry(p, alpha, beta) for beta in labels] for alpha in labels
    ]
    return PolyMatrix(p, rows, labels)


def build_univariate(n, p):
    """The one-variable matrix with entry prod_j (x + alpha_j)^beta_j."""
    labels = enumerate_weak(n, p)

    def entry(alpha, beta):
        out = MultiPoly.const(1, 1)
        for a, b in zip(alpha, beta):
            if b:
                out = out * MultiPoly.shifted_power(1, (a,), (b,))
        return out

    rows = [[entry(alpha, beta) for beta in labels] for alpha in labels]
    return PolyMatrix(1, rows, labels)


def build_integer(n, p):
    """The x = 0 specialization with integer entry prod_j alpha_j^beta_j."""
    labels = enumerate_weak(n, p)

    def entry(alpha, beta):
        v = 1
        for a, b in zip(alpha, beta):
            v *= a**b
        return v

    rows = [[entry(alpha, beta) for beta in labels] for alpha in labels]
    return IntMatrix(rows, labels)


def build_proper(n, p):
    """The matrix restricted to proper compositions; 0x0 when p > n."""
    if p > n:
        return PolyMatrix(p, [], CompositionList([]))
    labels = enumerate_proper(n, p)
    rows = [
        [_poly_entry(p, alpha, beta) for beta in labels] for alpha in labels
    ]
    return PolyMatrix(p, rows, labels)


def specialize(matrix, point):
    """Entrywise exact evaluation of a PolyMatrix at an integer point."""
    point = tuple(point)
    rows = [[e.eval(point) for e in row] for row in matrix.entries]
    return IntMatrix(rows, matrix.labels)
