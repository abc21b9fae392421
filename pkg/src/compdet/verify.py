"""Cross-verification harness over engines, formulas, and identities.

Each check becomes a report cell with a pass/fail status and, on failure, a
witness carrying both sides in canonical text (truncated, with a hash of the
full value).  All arithmetic is exact, so a failing cell reproduces
deterministically from the same arguments and seed.

Random-point verification draws integer points from Python's ``random.Random``
(the Mersenne Twister), which is seeded, platform-independent, and stable
across runs; symbolic grids stay the authoritative check at small sizes while
random points extend coverage to dimensions where full expansion is
impractical.

Report JSON is byte-deterministic for fixed arguments: cells are sorted by
(n, p, check) and per-cell timings are emitted as null unless explicitly
requested (wall-clock times are the one nondeterministic ingredient).
"""

import hashlib
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import numeric
from .engines import (
    column_reduce,
    det_bareiss,
    det_block_recursive,
    pivot_diagonal_closed,
    pivot_table,
    shift_power_det,
    shift_power_matrix,
)
from .formulas import (
    delta_int_flat,
    delta_int_nested,
    delta_multivariate,
    delta_proper,
)
from .matrices import build_general, build_proper, specialize
from .numeric import binomial
from .poly import format_canonical

GRID_MAX_DIM = 40
_WITNESS_LIMIT = 4096


@dataclass
class Cell:
    n: int
    p: int
    check: str
    status: str
    witness: Optional[str] = None
    ms: Optional[float] = None

    def to_json(self, include_timings=False):
        return {
            "n": self.n,
            "p": self.p,
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "ms": self.ms if include_timings else None,
        }


@dataclass
class VerifyReport:
    cells: list

    @property
    def pass_count(self):
        return sum(1 for c in self.cells if c.status == "pass")

    @property
    def fail_count(self):
        return sum(1 for c in self.cells if c.status == "fail")

    @property
    def ok(self):
        return self.fail_count == 0

    def sorted_cells(self):
        return sorted(self.cells, key=lambda c: (c.n, c.p, c.check))

    def to_json(self, include_timings=False):
        return {
            "cells": [c.to_json(include_timings) for c in self.sorted_cells()],
            "pass": self.pass_count,
            "fail": self.fail_count,
        }

    def to_json_text(self, include_timings=False):
        return json.dumps(self.to_json(include_timings), indent=2, sort_keys=True)

    def summary(self):
        total = len(self.cells)
        return f"pass {self.pass_count}/{total}"

    @classmethod
    def merged(cls, reports):
        cells = []
        for r in reports:
            cells.extend(r.cells)
        return cls(cells)


def _truncate(text):
    if len(text) <= _WITNESS_LIMIT:
        return text
    digest = hashlib.sha256(text.encode()).hexdigest()
    return f"{text[:_WITNESS_LIMIT]}...[sha256:{digest}]"


def _witness(left, right):
    return f"{_truncate(left)} != {_truncate(right)}"


def _threads():
    raw = os.environ.get("COMPDET_THREADS", "1")
    try:
        v = int(raw)
    except ValueError:
        return 1
    return max(v, 1)


def _run_cells(tasks):
    """Evaluate callables returning Cell, optionally on a small thread pool."""
    workers = _threads()
    if workers == 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _timed_cell(n, p, check, compute):
    def run():
        t0 = time.perf_counter()
        ok, witness = compute()
        ms = (time.perf_counter() - t0) * 1000.0
        return Cell(n, p, check, "pass" if ok else "fail", witness, ms)

    return run


def _compare(left, right):
    if left == right:
        return True, None
    return False, _witness(format_canonical(left), format_canonical(right))


def grid_symbolic(nmax, pmax, proper=False, skip_oversize=False):
    """Expand closed forms against the elimination engine over a full grid.

    Weak grids also check the recursive block factorization; every matrix
    dimension is guarded to stay <= 40.  With ``skip_oversize`` the guard
    drops oversized cells instead of raising, so callers can mix a symbolic
    grid with random-point coverage of the larger cells.
    """
    tasks = []
    for n in range(0 if not proper else 1, nmax + 1):
        for p in range(1, pmax + 1):
            if proper:
                dim = binomial(n - 1, p - 1) if p <= n else 0
            else:
                dim = binomial(n + p - 1, p - 1)
            if dim > GRID_MAX_DIM:
                if skip_oversize:
                    continue
                raise ValueError(
                    f"grid cell ({n},{p}) has dimension {dim} > {GRID_MAX_DIM}"
                )
            if proper:
                tasks.append(
                    _timed_cell(
                        n,
                        p,
                        "proper_formula_vs_bareiss",
                        lambda n=n, p=p: _compare(
                            delta_proper(n, p).expand(),
                            det_bareiss(build_proper(n, p)),
                        ),
                    )
                )
            else:
                tasks.append(
                    _timed_cell(
                        n,
                        p,
                        "formula_vs_bareiss",
                        lambda n=n, p=p: _compare(
                            delta_multivariate(n, p).expand(),
                            det_bareiss(build_general(n, p)),
                        ),
                    )
                )
                tasks.append(
                    _timed_cell(
                        n,
                        p,
                        "blockrec_vs_formula",
                        lambda n=n, p=p: _compare(
                            det_block_recursive(n, p), delta_multivariate(n, p)
                        ),
                    )
                )
    return VerifyReport(_run_cells(tasks))


def random_point_check(n, p, count, seed, proper=False):
    """Compare integer determinants at seeded random points with the formula.

    Points have coordinates uniform in [-1000, 1000]; the factored closed
    form is evaluated directly (no expansion), the matrix is specialized
    entrywise and eliminated exactly.
    """
    rng = random.Random(seed)
    points = [
        tuple(rng.randint(-1000, 1000) for _ in range(p)) for _ in range(count)
    ]
    matrix = build_proper(n, p) if proper else build_general(n, p)
    form = delta_proper(n, p) if proper else delta_multivariate(n, p)
    tasks = []
    for idx, pt in enumerate(points):
        def compute(pt=pt):
            lhs = det_bareiss(specialize(matrix, pt))
            rhs = form.eval(pt)
            if lhs == rhs:
                return True, None
            return False, _witness(f"det{pt} = {lhs}", f"formula{pt} = {rhs}")

        tasks.append(_timed_cell(n, p, f"point_value_{idx}", compute))
    return VerifyReport(_run_cells(tasks))


# -- fixed identity suites ---------------------------------------------------


def _suite_ci():
    def conv():
        bad = [
            (a, b, c, d)
            for a in range(11)
            for b in range(11)
            for c in range(11)
            for d in range(11)
            if not numeric.check_vandermonde(a, b, c, d)
        ]
        return not bad, None if not bad else _witness(f"failures {bad[:10]}", "[]")

    def parallel():
        bad = [
            (a, n)
            for a in range(11)
            for n in range(13)
            if not numeric.check_parallel_sum(a, n)
        ]
        return not bad, None if not bad else _witness(f"failures {bad[:10]}", "[]")

    def weighted():
        bad = [
            (n, a)
            for n in range(1, 13)
            for a in range(11)
            if not numeric.check_weighted_sum(n, a)
        ]
        return not bad, None if not bad else _witness(f"failures {bad[:10]}", "[]")

    return [
        _timed_cell(10, 10, "convolution_grid", conv),
        _timed_cell(10, 12, "parallel_sum_grid", parallel),
        _timed_cell(12, 10, "weighted_sum_grid", weighted),
    ]


def _suite_xy(rnmax=4):
    tasks = []
    for n in range(rnmax + 1):
        for r in range(n + 1):
            tasks.append(
                _timed_cell(
                    r,
                    n,
                    "shift_power_closed",
                    lambda r=r, n=n: _compare(
                        shift_power_det(r, n).expand(),
                        det_bareiss(shift_power_matrix(r, n)),
                    ),
                )
            )
    return tasks


def _suite_rec(rmax=6, jmax=8):
    table = pivot_table(rmax, jmax)

    def zeros(r):
        def compute():
            bad = [
                j
                for j in range(r + 1, jmax + 1)
                if not table.value(r + 1, r, j).is_zero()
            ]
            return not bad, None if not bad else _witness(f"nonzero at j={bad}", "[]")

        return compute

    def closed(r):
        def compute():
            got = table.value(r, r, r)
            want = pivot_diagonal_closed(r)
            if got == want:
                return True, None
            return False, _witness(str(got), str(want))

        return compute

    tasks = []
    for r in range(min(rmax, 5) + 1):
        if r + 1 <= rmax:
            tasks.append(_timed_cell(r, jmax, "pivot_rows_vanish", zeros(r)))
    for r in range(rmax + 1):
        tasks.append(_timed_cell(r, r, "pivot_diagonal_closed", closed(r)))
    return tasks


def _suite_equiv(nmax=25, pmax=25):
    tasks = []
    for n in range(1, nmax + 1):
        for p in range(1, pmax + 1):
            def compute(n=n, p=p):
                a = delta_int_nested(n, p)
                b = delta_int_flat(n, p)
                if a.prime_signature() == b.prime_signature():
                    return True, None
                return False, _witness(format_canonical(a), format_canonical(b))

            tasks.append(_timed_cell(n, p, "int_forms_agree", compute))
    return tasks


def _suite_colreduce(cases=((1, 2), (2, 2), (2, 3), (3, 3))):
    tasks = []
    for n, p in cases:
        def compute(n=n, p=p):
            _, rep = column_reduce(n, p)
            if rep.all_ok():
                return True, None
            return False, _witness(
                f"offdiag_zero={rep.offdiag_zero} diagonal_scaled={rep.diagonal_scaled} "
                f"pivots_match_closed={rep.pivots_match_closed} det_match={rep.det_match}",
                "all True",
            )

        tasks.append(_timed_cell(n, p, "column_reduce_blocks", compute))
    return tasks


SUITES = ("ci", "xy", "rec", "equiv", "colreduce")


def identity_suite(suites=SUITES):
    """Run the fixed identity suites and aggregate one report."""
    tasks = []
    for name in suites:
        if name == "ci":
            tasks.extend(_suite_ci())
        elif name == "xy":
            tasks.extend(_suite_xy())
        elif name == "rec":
            tasks.extend(_suite_rec())
        elif name == "equiv":
            tasks.extend(_suite_equiv())
        elif name == "colreduce":
            tasks.extend(_suite_colreduce())
        else:
            raise ValueError(f"unknown identity suite {name!r}")
    return VerifyReport(_run_cells(tasks))
