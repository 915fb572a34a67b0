import pytest
from hypothesis import given, strategies as st

from torusmcg import dcat
from torusmcg.dcat import OY, OG, Ox, PsiOx
from torusmcg.mcg import MCGContext


def test_hom_table_values_n3():
    n = 3
    for i in range(1, 4):
        assert dcat.hom_total(n, PsiOx(i), Ox(i)) == 2
        assert dcat.hom_total(n, PsiOx(i), OY) == 1
        assert dcat.hom_total(n, PsiOx(i), OG(i, -1)) == 1
        assert dcat.hom_total(n, PsiOx(i), OG(i, 0)) == 3
        assert dcat.hom_total(n, OG(i, -1), OY) == 0
        for j in range(1, 4):
            if j != i:
                assert dcat.hom_total(n, PsiOx(i), Ox(j)) == 0
                assert dcat.hom_total(n, OG(i, -1), Ox(j)) == 0
                # at n = 3 every pair of distinct components is adjacent
                assert dcat.hom_total(n, PsiOx(i), OG(j, -1)) == 1


def test_hom_table_adjacency_n5():
    n = 5
    assert dcat.hom_total(n, PsiOx(1), OG(2, -1)) == 1
    assert dcat.hom_total(n, PsiOx(1), OG(5, -1)) == 1
    assert dcat.hom_total(n, PsiOx(1), OG(3, -1)) == 0
    assert dcat.hom_total(n, PsiOx(2), OG(4, -1)) == 0


def test_hom_not_tabulated():
    with pytest.raises(dcat.HomNotTabulated):
        dcat.hom_total(3, Ox(1), Ox(2))
    with pytest.raises(dcat.HomNotTabulated):
        dcat.hom_total(3, PsiOx(1), OG(2, 0))
    with pytest.raises(dcat.HomNotTabulated):
        dcat.hom_total(2, PsiOx(1), OG(2, -1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dictionary_matches_geometry(n):
    ctx = MCGContext.get(n)
    for E, F in dcat.tabulated_pairs(n):
        assert dcat.check_dictionary(ctx, E, F), (E, F)


def test_tag_validation():
    ctx = MCGContext.get(3)
    with pytest.raises(ValueError):
        dcat.curve_of(ctx, Ox(4))
    with pytest.raises(ValueError):
        dcat.curve_of(ctx, OG(0, -1))


@pytest.mark.parametrize("n", range(2, 9))
def test_form_kernel_is_all_ones_line(n):
    m = dcat.in_fiber_form(n)
    basis = dcat.form_kernel(n)
    assert len(basis) == 1
    assert basis[0] == [1] * n
    # verify it really is in the kernel of the symmetric form
    for row in m:
        assert sum(a * b for a, b in zip(row, basis[0])) == 0


def test_in_fiber_form_shape():
    assert dcat.in_fiber_form(2) == [[-2, 2], [2, -2]]
    assert dcat.in_fiber_form(4) == [
        [-2, 1, 0, 1],
        [1, -2, 1, 0],
        [0, 1, -2, 1],
        [1, 0, 1, -2],
    ]
    with pytest.raises(ValueError):
        dcat.in_fiber_form(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_lattice_contains_rows_not_units(n):
    rows = dcat.in_fiber_form(n)
    for row in rows:
        assert dcat.in_restriction_lattice(row)
    combo = [a + 2 * b for a, b in zip(rows[0], rows[-1])]
    assert dcat.in_restriction_lattice(combo)
    e1 = [1] + [0] * (n - 1)
    assert not dcat.in_restriction_lattice(e1)
    assert dcat.in_restriction_lattice([0] * n)


@given(st.integers(3, 6), st.data())
def test_lattice_closed_under_combination(n, data):
    rows = dcat.in_fiber_form(n)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    v = [sum(c * rows[k][j] for k, c in enumerate(coeffs)) for j in range(n)]
    assert dcat.in_restriction_lattice(v)


def test_multidegree_basics():
    assert dcat.multidegree(3, [("x", 2, 1)]) == (0, 1, 0)
    assert dcat.multidegree(3, [("G", 2, 1)]) == (1, -2, 1)
    assert dcat.multidegree(3, [("G", 1, 1)]) == (-2, 1, 1)
    assert dcat.multidegree(4, [("G", 1, 2), ("x", 3, -1)]) == (-4, 2, -1, 2)
    # the full cycle of restrictions has multidegree zero
    n = 5
    assert dcat.multidegree(n, [("G", i, 1) for i in range(1, n + 1)]) == (0,) * n
    with pytest.raises(ValueError):
        dcat.multidegree(3, [("x", 0, 1)])
    with pytest.raises(ValueError):
        dcat.multidegree(3, [("z", 1, 1)])


def test_multidegree_of_restriction_lies_in_lattice():
    for n in range(2, 7):
        for i in range(1, n + 1):
            v = dcat.multidegree(n, [("G", i, 1)])
            assert dcat.in_restriction_lattice(list(v))
