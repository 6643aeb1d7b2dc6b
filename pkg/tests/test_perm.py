import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SLUGS
from pqverify.chartables import load_fixture
from pqverify.perm import (
    CapExceeded,
    Permutation,
    PermutationError,
    PermutationGroup,
    element_order,
    enumerate_elements,
    load_group,
    parse_generators,
    spectrum,
)

permutations = st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(lambda xs: Permutation(tuple(xs)))
)


def test_cycle_notation_round_trip():
    g = Permutation.from_cycles([[1, 2, 3], [4, 5]], 6)
    assert str(g) == "(1,2,3)(4,5)"
    assert g.cycles() == [(1, 2, 3), (4, 5)]
    assert element_order(g) == 6
    assert str(Permutation.identity(4)) == "()"


def test_product_applies_left_first():
    a = Permutation.from_cycles([[1, 2]], 3)
    b = Permutation.from_cycles([[2, 3]], 3)
    assert (a * b)(1) == 3  # 1 -> 2 under a, then 2 -> 3 under b


def test_parse_generators_with_comments_and_order():
    text = "# A5 on five points\n(1,2,3,4,5); (1,2)(3,4)\norder=60\n"
    G = parse_generators(text, "A5")
    assert G.declared_order == 60
    assert G.degree == 5
    assert len(enumerate_elements(G)) == 60


@pytest.mark.parametrize("bad", ["(1,2", "(1,a)", "(1,1)", "1,2", "(0,1)"])
def test_malformed_generators(bad):
    with pytest.raises(PermutationError):
        parse_generators(bad)


def test_declared_order_mismatch():
    with pytest.raises(PermutationError):
        enumerate_elements(parse_generators("(1,2,3)\norder=6"))


def test_cap():
    G = parse_generators("(1,2,3,4,5,6,7);(1,2)")
    with pytest.raises(CapExceeded):
        enumerate_elements(G, cap=100)
    with pytest.raises(ValueError):
        enumerate_elements(G, cap=0)


def test_mixed_degrees_rejected():
    with pytest.raises(PermutationError):
        PermutationGroup("x", [Permutation.identity(3), Permutation.identity(4)])


def test_symmetric_group_spectrum():
    s = spectrum(parse_generators("(1,2,3,4,5);(1,2)"))
    assert s.orders == {1, 2, 3, 4, 5, 6}
    assert s.counts == {1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20}
    assert s.group_order == 120


def test_trivial_group():
    s = spectrum(PermutationGroup("1", [], None))
    assert s.orders == {1}


@pytest.mark.parametrize("slug", SLUGS)
def test_shipped_groups_match_table_spectra(slug):
    t = load_fixture(slug)
    s = spectrum(load_group(slug))
    assert s.group_order == t.group_order
    counts = {}
    for c in t.classes:
        counts[c.element_order] = counts.get(c.element_order, 0) + c.size
    assert s.counts == dict(sorted(counts.items()))


@settings(max_examples=80, deadline=None)
@given(permutations)
def test_order_kills_the_permutation(g):
    n = element_order(g)
    assert (g**n).is_identity()
    assert all(not (g**k).is_identity() for k in range(1, n))


@settings(max_examples=80, deadline=None)
@given(permutations, st.data())
def test_inverse_and_associativity(g, data):
    h = data.draw(st.permutations(list(range(1, g.degree + 1))).map(lambda xs: Permutation(tuple(xs))))
    assert (g * g.inverse()).is_identity()
    assert (g * h).inverse() == h.inverse() * g.inverse()
    assert g ** -1 == g.inverse()
    assert Permutation.from_cycles(g.cycles(), g.degree) == g
