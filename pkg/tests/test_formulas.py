"""Closed-form formulas: anchor values, cross-engine equality, coherence."""

from compdet.engines import det_bareiss, det_block_recursive, det_cofactor
from compdet.formulas import (
    check_equivalence,
    delta_int_flat,
    delta_int_nested,
    delta_multivariate,
    delta_proper,
    delta_proper_int,
    delta_univariate,
    proper_from_weak,
)
from compdet.matrices import (
    build_general,
    build_integer,
    build_proper,
    build_univariate,
    specialize,
)
from compdet.numeric import binomial, binomial_ext
from compdet.poly import MultiPoly, format_canonical


class TestIntegerForms:
    def test_nested_anchors(self):
        assert delta_int_nested(2, 1).to_int() == 4
        assert delta_int_nested(2, 2).to_int() == 16
        assert delta_int_nested(3, 2).to_int() == 8748

    def test_flat_anchors(self):
        assert delta_int_flat(2, 2).to_int() == 16
        assert delta_int_flat(3, 2).to_int() == 8748 == 3**6 * 12
        for n in range(1, 7):
            assert delta_int_flat(n, 1).to_int() == n**n

    def test_match_brute_force(self):
        for n in range(1, 5):
            for p in range(1, 4):
                m = build_integer(n, p)
                if m.dim <= 10:
                    want = det_cofactor(m)
                    assert delta_int_nested(n, p).to_int() == want, (n, p)
                    assert delta_int_flat(n, p).to_int() == want, (n, p)

    def test_equivalence_grid(self):
        rep = check_equivalence(12, 12)
        assert rep.ok

    def test_equivalence_grid_detects_mutation(self, monkeypatch):
        # with the plain zero convention at (-1,-1) the nested form loses a
        # factor n^p exactly when k=1 reaches i=n, i.e. for every n >= 2
        import compdet.formulas as formulas

        def plain(a, b):
            return binomial(a, b) if a >= 0 else 0

        monkeypatch.setattr(formulas, "binomial_ext", plain)
        rep = check_equivalence(5, 4)
        assert set(rep.mismatches) == {
            (n, p) for n in range(2, 6) for p in range(1, 5)
        }


class TestUnivariate:
    def test_examples(self):
        assert format_canonical(delta_univariate(1, 2), varnames=["x"]) == "(2*x+1)"
        want = det_cofactor(build_univariate(2, 2))
        assert delta_univariate(2, 2).expand() == want
        x = MultiPoly.var(1, 1)
        assert want == 2 * (2 * x + 2) ** 3

    def test_zero_point_reduces_to_flat_form(self):
        for n in range(1, 6):
            for p in range(1, 5):
                assert delta_univariate(n, p).eval((0,)) == delta_int_flat(n, p).to_int()

    def test_matches_bareiss(self):
        for n in range(1, 5):
            for p in range(1, 4):
                assert delta_univariate(n, p).expand() == det_bareiss(
                    build_univariate(n, p)
                ), (n, p)


class TestMultivariate:
    def test_examples(self):
        assert delta_multivariate(1, 2).expand() == MultiPoly.var_sum(2, 2, 1)
        assert delta_multivariate(2, 2).expand() == 2 * MultiPoly.var_sum(2, 2, 2) ** 3
        for p in range(1, 5):
            assert delta_multivariate(0, p).expand() == 1

    def test_matches_bareiss(self):
        for n in range(5):
            for p in range(1, 4):
                assert delta_multivariate(n, p).expand() == det_bareiss(
                    build_general(n, p)
                ), (n, p)

    def test_identified_variables_give_univariate_form(self):
        for n in range(1, 7):
            for p in range(1, 5):
                assert delta_multivariate(n, p).identify_vars() == delta_univariate(n, p)

    def test_zero_point_gives_flat_form(self):
        for n in range(1, 7):
            for p in range(1, 5):
                assert delta_multivariate(n, p).eval((0,) * p) == delta_int_flat(
                    n, p
                ).to_int()

    def test_total_degree(self):
        for n in range(6):
            for p in range(1, 4):
                assert delta_multivariate(n, p).total_degree() == binomial(n + p - 1, p)

    def test_exponent_coherence(self):
        # (n-i+1) C(n+p-i-1, p-2) == (p-1) C(n+p-i-1, p-1)
        for n in range(1, 21):
            for p in range(1, 8):
                for i in range(1, n + 1):
                    lhs = (n - i + 1) * binomial_ext(n + p - i - 1, p - 2)
                    rhs = (p - 1) * binomial(n + p - i - 1, p - 1)
                    assert lhs == rhs, (n, p, i)

    def test_agrees_with_block_recursion(self):
        for n in range(7):
            for p in range(1, 5):
                assert det_block_recursive(n, p) == delta_multivariate(n, p)


class TestProper:
    def test_integer_anchors(self):
        assert delta_proper_int(3, 2).to_int() == 12
        assert delta_proper_int(2, 2).to_int() == 1
        for n in range(1, 7):
            assert delta_proper_int(n, 1).to_int() == n**n
        assert delta_proper_int(2, 3).to_int() == 1  # 0x0 determinant

    def test_integer_matches_brute_force(self):
        for n in range(1, 7):
            for p in range(1, n + 1):
                m = specialize(build_proper(n, p), (0,) * p)
                if m.dim <= 10:
                    assert delta_proper_int(n, p).to_int() == det_cofactor(m), (n, p)

    def test_symbolic_examples(self):
        assert (
            format_canonical(delta_proper(3, 2))
            == "(x1+x2+3)*(x1+1)*(x1+2)*(x2+1)*(x2+2)"
        )
        x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
        assert delta_proper(2, 2).expand() == (x1 + 1) * (x2 + 1)
        for p in range(1, 5):
            one_each = delta_proper(p, p).expand()
            want = MultiPoly.const(p, 1)
            for j in range(1, p + 1):
                want = want * (MultiPoly.var(p, j) + 1)
            assert one_each == want

    def test_matches_bareiss(self):
        for n in range(1, 7):
            for p in range(1, n + 1):
                assert delta_proper(n, p).expand() == det_bareiss(
                    build_proper(n, p)
                ), (n, p)

    def test_reduction_identity(self):
        assert (
            format_canonical(proper_from_weak(3, 2))
            == "(x1+x2+3)*(x1+1)*(x1+2)*(x2+1)*(x2+2)"
        )
        assert proper_from_weak(2, 2) == delta_proper(2, 2)
        for n in range(1, 8):
            for p in range(1, n + 1):
                assert proper_from_weak(n, p) == delta_proper(n, p), (n, p)

    def test_p_equals_one_needs_corner_convention(self):
        # the per-variable product reaches C(-1,-1) at i=n when p=1
        x1 = MultiPoly.var(1, 1)
        for n in range(1, 6):
            assert delta_proper(n, 1).expand() == (x1 + n) ** n
