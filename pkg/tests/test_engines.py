"""Determinant engines: mutual agreement, closed forms, block structure."""

import random

import pytest

import compdet.engines as engines
from compdet.engines import (
    ColumnReduceReport,
    DimensionTooLarge,
    column_reduce,
    det_bareiss,
    det_block_recursive,
    det_cofactor,
    pivot_diagonal_closed,
    pivot_table,
    shift_power_det,
    shift_power_matrix,
)
from compdet.matrices import (
    IntMatrix,
    PolyMatrix,
    build_general,
    build_integer,
    build_proper,
    build_univariate,
)
from compdet.numeric import binomial
from compdet.poly import MultiPoly, RationalFn, format_canonical


def test_cofactor_anchor_values():
    assert det_cofactor(build_integer(2, 2)) == 16
    x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert det_cofactor(build_general(1, 2)) == x1 + x2 + 1
    assert det_cofactor(PolyMatrix(2, [], None)) == 1
    assert det_cofactor(IntMatrix([])) == 1


def test_cofactor_guard():
    with pytest.raises(DimensionTooLarge):
        det_cofactor(build_integer(11, 2))


def test_bareiss_anchor_values():
    assert det_bareiss(build_integer(2, 2)) == 16
    want = 2 * MultiPoly.var_sum(2, 2, 2) ** 3
    assert det_bareiss(build_general(2, 2)) == want


def test_bareiss_zero_determinant_with_equal_rows():
    m = IntMatrix([[1, 2, 3], [4, 5, 6], [1, 2, 3]])
    assert det_bareiss(m) == 0
    x = MultiPoly.var(1, 1)
    pm = PolyMatrix(1, [[x, x + 1], [x, x + 1]], None)
    assert det_bareiss(pm).is_zero()


def test_bareiss_row_swap_sign():
    m = IntMatrix([[0, 1], [1, 0]])
    assert det_bareiss(m) == -1
    m3 = IntMatrix([[0, 2, 1], [1, 0, 0], [0, 1, 1]])
    assert det_bareiss(m3) == det_cofactor(m3) == -1


def test_engines_agree_on_small_grids():
    for n in range(4):
        for p in range(1, 4):
            for build in (build_general, build_integer, build_univariate):
                m = build(n, p)
                if m.dim <= 8:
                    assert det_cofactor(m) == det_bareiss(m), (n, p, build.__name__)
    for n in range(1, 7):
        for p in range(1, n + 1):
            m = build_proper(n, p)
            if m.dim <= 8:
                assert det_cofactor(m) == det_bareiss(m), (n, p, "proper")


def test_determinant_invariant_under_simultaneous_permutation():
    rng = random.Random(31)
    for n in range(1, 4):
        for p in (2, 3):
            m = build_general(n, p)
            base = det_bareiss(m)
            order = list(range(m.dim))
            rng.shuffle(order)
            assert det_bareiss(m.permuted(order)) == base
            lex = sorted(range(m.dim), key=lambda i: m.labels[i])
            assert det_bareiss(m.permuted(lex)) == base


def test_fused_and_dict_paths_agree(monkeypatch):
    m = build_general(2, 3)
    want = det_bareiss(m)
    monkeypatch.setattr(engines, "_FUSED_STEP_CUTOFF", 0)
    assert det_bareiss(build_general(2, 3)) == want
    monkeypatch.setattr(engines, "_FUSED_STEP_CUTOFF", 10**12)
    assert det_bareiss(build_general(2, 3)) == want


class TestShiftPowerFamily:
    def test_matrix_examples(self):
        y, z = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
        m = shift_power_matrix(1, 1)
        assert m.entries == [[y, z], [y - 1, z + 1]]
        assert shift_power_matrix(0, 0).entries == [[MultiPoly.const(2, 1)]]
        assert shift_power_matrix(0, 3).entries == [[y**3]]
        with pytest.raises(ValueError):
            shift_power_matrix(3, 2)

    def test_closed_form_examples(self):
        y, z = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
        assert shift_power_det(1, 1).expand() == y + z
        assert shift_power_det(0, 4).expand() == y**4
        assert shift_power_det(2, 2).expand() == 2 * (y + z) ** 3
        # oracle: cofactor on the 3x3 matrix
        assert det_cofactor(shift_power_matrix(2, 2)) == 2 * (y + z) ** 3

    def test_closed_form_full_grid(self):
        for n in range(6):
            for r in range(n + 1):
                assert shift_power_det(r, n).expand() == det_bareiss(
                    shift_power_matrix(r, n)
                ), (r, n)


@pytest.fixture(scope="module")
def table():
    return pivot_table(6, 8)


class TestPivotTable:

    def test_level_zero(self, table):
        z = MultiPoly.var(2, 2)
        assert table.value(0, 2, 1) == RationalFn(z + 2)
        assert table.value(0, 3, 2) == RationalFn((z + 3) ** 2)

    def test_first_level_value(self, table):
        y, z = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
        assert table.value(1, 1, 1) == RationalFn(y + z, y)

    def test_eliminated_rows_vanish(self, table):
        for r in range(6):
            for j in range(r + 1, 9):
                assert table.value(r + 1, r, j).is_zero(), (r, j)

    def test_levels_freeze_below_diagonal(self, table):
        for r in range(6):
            for i in range(7):
                for j in range(r + 1):
                    assert table.value(r + 1, i, j) == table.value(r, i, j)

    def test_diagonal_closed_form(self, table):
        for r in range(7):
            assert table.value(r, r, r) == pivot_diagonal_closed(r), r

    def test_diagonal_closed_examples(self):
        y, z = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
        assert pivot_diagonal_closed(0) == RationalFn(MultiPoly.const(2, 1))
        assert pivot_diagonal_closed(1) == RationalFn(y + z, y)
        assert pivot_diagonal_closed(2) == RationalFn(2 * (y + z) ** 2, y * (y - 1))

    def test_denominators_are_shift_products(self, table):
        # stored denominators factor fully into (y - c) pieces
        y = MultiPoly.var(2, 1)
        from compdet.poly import NotDivisible, exact_div

        for (r, i, j), v in table.values.items():
            den = v.den
            for c in range(9):
                while True:
                    try:
                        den = exact_div(den, y - c)
                    except NotDivisible:
                        break
            assert den.is_const(), (r, i, j, format_canonical(v.den))

    def test_quotient_of_leading_minors(self):
        # det of the (r+1) leading minor over the r leading minor equals
        # (y-r)^(n-r) * f_r(r,r)
        y = MultiPoly.var(2, 1)
        for n in range(1, 5):
            m = shift_power_matrix(n, n)
            for r in range(1, min(n, 3) + 1):
                top = det_bareiss(
                    PolyMatrix(2, [row[: r + 1] for row in m.entries[: r + 1]], None)
                )
                bot = det_bareiss(
                    PolyMatrix(2, [row[:r] for row in m.entries[:r]], None)
                )
                f_rr = pivot_diagonal_closed(r)
                lhs = RationalFn(top, bot)
                rhs = RationalFn((y - r) ** (n - r)) * f_rr
                assert lhs == rhs, (n, r)


class TestBlockRecursive:
    def test_single_variable_case(self):
        x1 = MultiPoly.var(1, 1)
        for n in range(7):
            form = det_block_recursive(n, 1)
            assert form.expand() == (x1 + n) ** n

    def test_anchor_cases(self):
        assert det_block_recursive(2, 2).expand() == 2 * MultiPoly.var_sum(2, 2, 2) ** 3
        for p in range(1, 5):
            assert det_block_recursive(0, p).expand() == 1

    def test_matches_bareiss(self):
        for n in range(5):
            for p in range(1, 4):
                assert det_block_recursive(n, p).expand() == det_bareiss(
                    build_general(n, p)
                ), (n, p)

    def test_telescoping_factor_count(self):
        # the full-sum base survives with exponent C(n+p-1, p); no shorter
        # prefix-sum base survives at all (enforced by construction)
        for n in range(7):
            for p in range(1, 5):
                form = det_block_recursive(n, p)
                full = MultiPoly.var_sum(p, p, n)
                exps = {b: e for b, e in form.factors}
                assert exps.get(full, 0) == binomial(n + p - 1, p)
                for base in exps:
                    if not base.is_const():
                        assert base == full


class TestColumnReduce:
    @pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (2, 3), (3, 3)])
    def test_cases_produce_clean_block_structure(self, n, p):
        matrix, report = column_reduce(n, p)
        assert isinstance(report, ColumnReduceReport)
        assert report.offdiag_zero
        assert report.diagonal_scaled
        assert report.pivots_match_closed
        assert report.det_match
        assert report.all_ok()
        sizes = [binomial(n - r + p - 2, p - 2) for r in range(n + 1)]
        assert report.block_sizes == sizes

    def test_2_2_block_scalars(self):
        matrix, report = column_reduce(2, 2)
        assert report.block_sizes == [1, 1, 1]
        product = report.block_dets[0]
        for bd in report.block_dets[1:]:
            product = product * bd
        want = 2 * MultiPoly.var_sum(2, 2, 2) ** 3
        assert product == RationalFn(want)

    def test_guard(self):
        with pytest.raises(DimensionTooLarge):
            column_reduce(4, 3)
        with pytest.raises(ValueError):
            column_reduce(2, 1)
