"""Matrix builders: entry rules, specializations, label symmetry."""

import pytest

from compdet.compositions import enumerate_weak
from compdet.matrices import (
    build_general,
    build_integer,
    build_proper,
    build_univariate,
    specialize,
)
from compdet.numeric import binomial
from compdet.poly import MultiPoly


def test_general_1_2():
    m = build_general(1, 2)
    x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert m.entries == [[x1 + 1, x2], [x1, x2 + 1]]


def test_general_0_3_single_one():
    m = build_general(0, 3)
    assert m.dim == 1 and m.entries[0][0] == 1


def test_general_2_2_corner_entries():
    m = build_general(2, 2)
    x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert m[0, 0] == (x1 + 2) ** 2
    assert m[2, 2] == (x2 + 2) ** 2


def test_univariate_entries():
    m = build_univariate(1, 2)
    x = MultiPoly.var(1, 1)
    assert m.entries == [[x + 1, x], [x, x + 1]]
    assert build_univariate(0, 2).entries[0][0] == 1
    assert build_univariate(2, 1).entries[0][0] == (x + 2) ** 2


def test_integer_entries():
    assert build_integer(2, 2).entries == [[4, 0, 0], [1, 1, 1], [0, 0, 4]]
    assert build_integer(0, 1).entries == [[1]]
    m = build_integer(1, 3)
    assert m.dim == 3
    assert sorted(map(tuple, m.entries)) == sorted(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    )


def test_proper_3_2_entries():
    m = build_proper(3, 2)
    x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert m.entries == [
        [(x1 + 2) ** 2 * (x2 + 1), (x1 + 2) * (x2 + 1) ** 2],
        [(x1 + 1) ** 2 * (x2 + 2), (x1 + 1) * (x2 + 2) ** 2],
    ]


def test_proper_degenerate_cases():
    assert build_proper(2, 3).dim == 0
    m = build_proper(2, 2)
    x1, x2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert m.entries == [[(x1 + 1) * (x2 + 1)]]


def test_specialize_examples():
    assert specialize(build_general(1, 2), (0, 0)).entries == [[1, 0], [0, 1]]
    assert specialize(build_general(2, 2), (0, 0)) == build_integer(2, 2)
    assert specialize(build_univariate(1, 2), (3,)).entries == [[4, 3], [3, 4]]
    with pytest.raises(ValueError):
        specialize(build_general(1, 2), (1,))


def test_zero_specialization_matches_integer_grid():
    for n in range(6):
        for p in range(1, 5):
            assert specialize(build_general(n, p), (0,) * p) == build_integer(n, p)


def test_univariate_equals_identified_general():
    for n in range(5):
        for p in range(1, 4):
            gen = build_general(n, p)
            uni = build_univariate(n, p)
            for i in range(gen.dim):
                for j in range(gen.dim):
                    assert gen[i, j].identify_vars() == uni[i, j]


def test_dimensions():
    for n in range(6):
        for p in range(1, 5):
            assert build_general(n, p).dim == binomial(n + p - 1, p - 1)
    for n in range(1, 7):
        for p in range(1, 7):
            want = binomial(n - 1, p - 1) if p <= n else 0
            assert build_proper(n, p).dim == want


def test_row_and_column_labels_are_the_same_list():
    m = build_general(3, 2)
    assert m.labels is not None
    assert [tuple(a) for a in m.labels] == list(enumerate_weak(3, 2))


def test_variable_permutation_symmetry():
    # permuting variables and composition coordinates together permutes
    # rows/columns by the induced label map
    for n in range(4):
        for p in (2, 3):
            m = build_general(n, p)
            labels = m.labels
            perm = list(range(p - 1, -1, -1))  # reverse the variables
            mapped = [labels.index_of(tuple(a[perm.index(i)] for i in range(p))) for a in labels]
            for i, a in enumerate(labels):
                for j, b in enumerate(labels):
                    assert m[i, j].permute_vars(perm) == m[mapped[i], mapped[j]]


def test_matrix_json_dump():
    m = build_general(1, 2)
    data = m.to_json()
    assert data["dim"] == 2
    assert data["labels"] == [[1, 0], [0, 1]]
    assert data["entries"][0] == ["x1 + 1", "x2"]
    mi = build_integer(2, 2)
    assert mi.to_json()["entries"][0] == ["4", "0", "0"]
