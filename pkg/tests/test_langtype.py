from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from field import DomainError, Scalar, q_power
from langtype import (
    Coset,
    IntPoly,
    check_cyclic_axioms,
    coset_decompose,
    coset_points,
    echelon,
    gamma_points,
    lang_check,
    nf_bound,
    reduce_base,
)
from tests.strategies import small_ints

# (polynomial, arity, expected cosets as (base, generators), N_f)
CORPUS = [
    ("x1 - q^3*x2", 2, [((3, 0), ((1, 1),))], 2),
    ("x1^2*x2 - q", 2, [((0, 1), ((-1, 2),))], 9),
    ("x1*x2*x3 - 1", 3, [((0, 0, 0), ((-1, 0, 1), (-1, 1, 0)))], 9),
    ("x1*x2 - 1", 2, [((0, 0), ((-1, 1),))], 4),
    ("x1 - 1", 1, [((0,), ())], 1),
    ("x1 - 2", 1, [], 1),
    ("(x1 - 1)*(x1 - q)", 1, [((0,), ()), ((1,), ())], 6),
]


@pytest.mark.parametrize("text,arity,cosets,bound", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus(text, arity, cosets, bound):
    f = IntPoly.parse(text, arity)
    assert nf_bound(f) == bound
    decomposition = coset_decompose(gamma_points(f, 12))
    assert [(c.base, c.generators) for c in decomposition.cosets] == cosets
    assert len(decomposition.cosets) <= bound


@pytest.mark.parametrize("text,arity", [(c[0], c[1]) for c in CORPUS])
def test_cosets_cover_the_points_exactly(text, arity):
    points = gamma_points(IntPoly.parse(text, arity), 5)
    decomposition = coset_decompose(points)
    assert decomposition.union() == set(points.points)


def test_singleton_cosets_do_not_overlap():
    points = gamma_points(IntPoly.parse("(x1 - 1)*(x1 - q)", 1), 12)
    assert points.points == ((0,), (1,))
    assert coset_decompose(points).overlaps == ()


@pytest.mark.parametrize("text,arity", [("x1*x2 - q^3", 2), ("x1 - q^3*x2", 2), ("x1^2*x2 - q", 2)])
def test_points_are_monotone_in_the_window(text, arity):
    f = IntPoly.parse(text, arity)
    small, large = gamma_points(f, 4), gamma_points(f, 7)
    assert set(small.points) <= set(large.points)
    assert large.restrict(4).points == small.points


def test_nf_bound():
    assert nf_bound(IntPoly.parse("x1*x2 - q^3", 2)) == 4
    assert nf_bound(IntPoly.parse("3", 2)) == 0
    with pytest.raises(DomainError):
        nf_bound(IntPoly(2, {}))


def test_constants_have_no_points():
    result = lang_check(IntPoly.parse("3", 2), 3)
    assert result.points == []
    assert result.cosets == []
    assert result.passed


def test_lang_check_report():
    result = lang_check(IntPoly.parse("x1*x2 - 1", 2), 6)
    assert result.poly == "x1*x2 - 1"
    assert len(result.points) == 13
    assert result.nf_bound == 4
    assert result.passed
    assert result.render().splitlines()[-1] == "cosets: 1 <= N_f = 4: PASS"
    assert "coset base=(0, 0) generators=(-1, 1)" in result.render()


def test_polynomial_parsing():
    f = IntPoly.parse("x1^2*x2 - u0*x2 + 1", 2)
    assert f.monomials[(2, 1)] == Scalar(1)
    assert f.monomials[(0, 1)] == -Scalar.symbol("u0")
    assert f.degree() == 3
    assert sorted(f.total_degrees()) == [0, 1, 3]
    assert f.at_gamma((1, -2)) == 2 - Scalar.symbol("u0") * q_power(-2)
    assert f.to_scalar() == Scalar.symbol("x1") ** 2 * Scalar.symbol("x2") - Scalar.symbol("u0") * Scalar.symbol("x2") + 1


def test_polynomial_errors():
    with pytest.raises(DomainError):
        IntPoly.parse("x3 - 1", 2)
    with pytest.raises(DomainError):
        IntPoly.parse("1/(x1 - 1)", 1)
    with pytest.raises(DomainError):
        IntPoly(0, {})
    with pytest.raises(DomainError):
        IntPoly(1, {(-1,): Scalar(1)})
    with pytest.raises(DomainError):
        gamma_points(IntPoly(1, {}), 3)
    with pytest.raises(DomainError):
        gamma_points(IntPoly.parse("x1 - 1", 1), 0)


def test_echelon_is_triangular():
    basis = echelon([(2, 4), (1, 3), (0, 0)], 2)
    assert basis == [(1, 1), (2, 0)]
    assert echelon([(0, 0, 0)], 3) == []


vectors = st.tuples(small_ints(3), small_ints(3), small_ints(3))


@given(st.lists(vectors, max_size=3), vectors, st.lists(small_ints(3), min_size=3, max_size=3))
def test_reduce_base_is_constant_on_cosets(generators, point, coefficients):
    basis = echelon(generators, 3)
    shifted = list(point)
    for c, row in zip(coefficients, basis):
        shifted = [a + c * b for a, b in zip(shifted, row)]
    assert reduce_base(shifted, basis) == reduce_base(point, basis)


@given(st.lists(vectors, max_size=3))
def test_echelon_pivots(generators):
    basis = echelon(generators, 3)
    pivots = [max(i for i, e in enumerate(row) if e) for row in basis]
    assert pivots == sorted(pivots, reverse=True)
    assert len(set(pivots)) == len(pivots)
    assert all(row[p] > 0 for row, p in zip(basis, pivots))


def test_coset_points():
    points = coset_points((0, 1), [(-1, 2)], 3)
    assert points == [(-1, 3), (0, 1), (1, -1), (2, -3)]
    assert Coset((0, 1), ((-1, 2),)).points(3) == points
    assert Coset((5,), ()).points(3) == []


def test_cyclic_axioms():
    report = check_cyclic_axioms(4)
    assert report.passed
    assert report.check("cyclic index of q^(kZ) is k").checked == 4


@pytest.mark.parametrize(
    "text,arity,solves",
    [
        ("x1*x2 - 1", 2, lambda k: k[0] + k[1] == 0),
        ("x1 - q^3*x2", 2, lambda k: k[0] == k[1] + 3),
        ("x1 - 2", 1, lambda k: False),
        ("x1^2*x2 - q", 2, lambda k: 2 * k[0] + k[1] == 1),
        ("x1*x2*x3 - 1", 3, lambda k: sum(k) == 0),
    ],
)
def test_points_solve_the_exponent_equation(text, arity, solves):
    points = gamma_points(IntPoly.parse(text, arity), 12)
    expected = tuple(k for k in product(range(-12, 13), repeat=arity) if solves(k))
    assert points.points == expected
