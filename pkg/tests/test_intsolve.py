import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqverify.intsolve import (
    AffineLattice,
    CongruenceScreen,
    ConstraintSystem,
    UnboundedSystem,
    brute_force_points,
    enumerate_integer_points,
    homogeneous_basis,
    lll,
    lp_bounds,
)

BOX = 4


@st.composite
def bounded_systems(draw):
    """Random systems confined to [-BOX, BOX]^k by explicit box forms."""
    k = draw(st.integers(min_value=1, max_value=4))
    S = ConstraintSystem(list(range(k)))
    for i in range(k):
        e = [0] * k
        e[i] = 1
        S.add_form(e, BOX, upper=2 * BOX)
    for _ in range(draw(st.integers(min_value=0, max_value=4))):
        den = draw(st.sampled_from([1, 2, 3, 4, 6]))
        coeffs = [Fraction(draw(st.integers(-5, 5)), den) for _ in range(k)]
        const = Fraction(draw(st.integers(-6, 6)), den)
        S.add_form(coeffs, const, nonneg=draw(st.booleans()))
    if draw(st.booleans()):
        S.add_equality([draw(st.integers(-2, 2)) for _ in range(k)], draw(st.integers(-3, 3)))
    return S


@settings(max_examples=150, deadline=None)
@given(bounded_systems())
def test_matches_brute_force_box(S):
    assert enumerate_integer_points(S) == brute_force_points(S, [(-BOX, BOX)] * S.dim)


@settings(max_examples=60, deadline=None)
@given(bounded_systems())
def test_cached_basis_gives_same_points(S):
    basis = homogeneous_basis(S)
    if basis is None:
        assert enumerate_integer_points(S) == []
    else:
        assert enumerate_integer_points(S, basis) == enumerate_integer_points(S)


def test_simplex_two_dimensional():
    # 1/2 x + 1/3 y must be an integer, 0 <= x, y <= 6, x + y <= 7
    S = ConstraintSystem(["x", "y"])
    S.add_form([Fraction(1, 2), Fraction(1, 3)], 0)
    S.add_form([1, 0], 0, upper=6)
    S.add_form([0, 1], 0, upper=6)
    S.add_form([-1, -1], 7)
    pts = enumerate_integer_points(S)
    assert pts == brute_force_points(S, [(0, 6), (0, 6)])
    assert (2, 3) in pts and (1, 0) not in pts


def test_unbounded_direction_is_reported():
    S = ConstraintSystem(["x", "y"])
    S.add_form([1, 0], 0)
    S.add_form([0, 1], 0)
    with pytest.raises(UnboundedSystem):
        enumerate_integer_points(S)


def test_infeasible_integrality():
    S = ConstraintSystem(["x"])
    S.add_form([2], Fraction(1, 2))
    assert enumerate_integer_points(S) == []
    assert homogeneous_basis(S) is None


def test_equality_only_point():
    S = ConstraintSystem(["x", "y"])
    S.add_equality([1, 1], 1)
    S.add_equality([1, -1], 3)
    S.add_form([1, 0], 0, nonneg=False)
    assert enumerate_integer_points(S) == [(2, -1)]


def test_lp_bounds_triangle():
    # x >= 0, y >= 0, 2x + 3y <= 6 written as G t <= h
    bounds = lp_bounds([[-1, 0], [0, -1], [2, 3]], [0, 0, 6])
    assert bounds == [(0, 3), (0, 2)]


def test_lp_bounds_infeasible():
    assert lp_bounds([[1], [-1]], [-1, -1]) is None


def test_affine_lattice_congruences():
    lat = AffineLattice(2)
    assert lat.impose_integral([Fraction(1, 2), Fraction(1, 2)], Fraction(0))
    assert lat.impose_equality([1, 0], 3)
    lat.reduce()
    for t in itertools.product(range(-2, 3), repeat=lat.rank):
        x = lat.point(t)
        assert x[0] == 3 and (x[0] + x[1]) % 2 == 0


def test_lll_keeps_lattice_and_shortens():
    basis = [[1, 0, 0], [4, 1, 0], [9, 7, 1]]
    red = lll([list(b) for b in basis])
    assert max(sum(v * v for v in b) for b in red) <= 3
    det = lambda m: round(
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    assert abs(det(red)) == abs(det(basis))


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from([2, 4, 6, 8, 9, 12, 24]).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.integers(1, 3).flatmap(
                lambda k: st.lists(st.lists(st.integers(0, n - 1), min_size=k, max_size=k), min_size=1, max_size=5)
            ),
            st.lists(st.integers(0, n - 1), min_size=5, max_size=5),
        )
    )
)
def test_congruence_screen_matches_brute_force(args):
    n, A, c = args
    c = c[: len(A)] + [0] * (len(A) - len(c))
    k = len(A[0])
    brute = any(
        all((sum(a * y for a, y in zip(row, ys)) + ci) % n == 0 for row, ci in zip(A, c))
        for ys in itertools.product(range(n), repeat=k)
    )
    assert CongruenceScreen(A, n).feasible(c) == brute


def test_form_constant_along_a_lattice_direction_is_unbounded():
    S = ConstraintSystem(["x", "y"])
    S.add_equality([1, 1], 1)
    S.add_form([1, 1], 0, upper=1)
    with pytest.raises(UnboundedSystem):
        enumerate_integer_points(S)
