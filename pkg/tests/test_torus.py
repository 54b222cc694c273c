from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bundle import BasePoint, Fiber, GammaBundlePoint, LineBundlePoint, Sort, act
from field import Scalar, q_power
from pairing import PairingValue, pair
from qalgebra import Generator
from tests.strategies import laurent_monomials, small_ints
from torus import (
    TorusStructure,
    TransferMap,
    check_psi,
    compose_transfer,
    default_structure,
    expected_action,
    mutate,
    sample_scalars,
    transfer_point,
    transfer_u,
    transfer_v,
    transport,
    verify_transfer,
    verify_transport,
)


def failing(report):
    return {c.name.split()[0] for c in report.checks if c.status == "FAIL"}


def test_default_structure_passes(structure):
    report = check_psi(structure)
    assert report.passed
    assert report.title == "psi-check window=3"
    skipped = [c for c in report.checks if c.status == "SKIP"]
    assert [c.name for c in skipped] == ["clause-1 algebraically closed"]
    assert len(report.checks) == 9


def test_reduct_skips_the_pairing(structure):
    report = check_psi(structure, reduct=True)
    assert report.passed
    assert report.title == "psi-check window=3 reduct"
    assert report.check("clause-8 pairing axioms").reason == "reduct has no pairing"


def _add_with_torsion(a, b):
    total = a + b
    return Scalar(0) if total == 7 else total


def _projection_doubling_labels(p):
    return Fiber(p.base.label(2 * p.k), p.base)


def _v_moves_up(g, p):
    if g is Generator.V and p.base.sort is Sort.U:
        return LineBundlePoint(p.x * Scalar.symbol(p.base.v_sym), p.k + 1, p.base)
    return act(g, p)


def _negated_pairing(a, b):
    return PairingValue(-pair(a, b).exponent)


MUTATIONS = {
    "characteristic-7": (dict(add=_add_with_torsion), {"clause-1"}),
    "q-is-one": (dict(q=Scalar(1)), {"clause-2", "clause-3"}),
    "gamma-doubled": (dict(gamma=lambda n: q_power(2 * n)), {"clause-3"}),
    "projection-doubled": (dict(projection=_projection_doubling_labels), {"clause-4"}),
    "gamma-action-doubled": (
        dict(gamma_action=lambda n, p: GammaBundlePoint(p.c + 2 * n, p.k, p.base)),
        {"clause-5"},
    ),
    "scale-squared": (
        dict(scale=lambda s, p: LineBundlePoint(s * s * p.x, p.k, p.base)),
        {"clause-6"},
    ),
    "v-moves-up": (dict(action=_v_moves_up), {"clause-7"}),
    "negated-pairing": (dict(pairing=_negated_pairing), {"clause-8"}),
}


@pytest.mark.parametrize("components,broken", MUTATIONS.values(), ids=list(MUTATIONS))
def test_mutations_are_caught_by_their_clause(structure, components, broken):
    report = check_psi(mutate(structure, **components))
    assert not report.passed
    assert failing(report) == broken
    assert report.exit_code == 1


def test_characteristic_witness(structure):
    report = check_psi(mutate(structure, add=_add_with_torsion))
    assert report.check("clause-1 characteristic zero").witness == "7*1 = 0"


def test_pairing_mutation_is_ignored_by_the_reduct(structure):
    assert check_psi(mutate(structure, pairing=_negated_pairing), reduct=True).passed


def test_structure_validation():
    with pytest.raises(ValueError):
        TorusStructure(window=0)
    with pytest.raises(ValueError):
        TorusStructure(pairs=())
    with pytest.raises(ValueError):
        TorusStructure(pairs=(("u0", "v0"), ("u0", "v1")))
    T = default_structure(2)
    assert T.with_window(4).window == 4
    assert len(T.bases) == 4
    assert T.gamma_element(-2) == q_power(-2)


def test_sample_scalars_are_nonzero():
    assert all(not s.is_zero() for s in sample_scalars("u0", "v0"))


@given(laurent_monomials(), small_ints(), st.sampled_from(list(Sort)))
def test_expected_action_agrees_with_act(x, k, sort):
    base = BasePoint("u0", "v0", sort)
    p = LineBundlePoint(x, k, base)
    for g in Generator:
        assert act(g, p) == expected_action(g, p)


def test_transfer_formulas():
    m = TransferMap(2, 3)
    assert transfer_u(m, 1) == (1 * 3 + 2 * 3, 3)
    assert transfer_v(m, 1) == (-2, 4)


@pytest.mark.parametrize("s,t", [(0, 0), (2, 3), (-1, 4), (3, -2)])
def test_transfer_is_an_isomorphism(s, t):
    report = verify_transfer(TransferMap(s, t), 3)
    assert report.passed
    assert report.title == f"transfer-check s={s} t={t} window=3"


@given(small_ints(3), small_ints(3), small_ints(3), small_ints(3), small_ints())
def test_transfers_compose_up_to_a_uniform_factor(s1, t1, s2, t2, k):
    first, second = TransferMap(s1, t1), TransferMap(s2, t2)
    combined, offset = compose_transfer(first, second)
    for sort in Sort:
        p = LineBundlePoint(Scalar.symbol("u0"), k, BasePoint("u0", "v0", sort))
        stepwise = transfer_point(second, transfer_point(first, p, ("ua", "va")), ("ug", "vg"))
        direct = transfer_point(combined, p, ("ug", "vg"))
        assert stepwise == LineBundlePoint(direct.x * q_power(offset), direct.k, direct.base)


def test_transfer_rewrites_coordinates():
    p = LineBundlePoint(Scalar.symbol("v0"), 0, BasePoint("u0", "v0", Sort.U))
    image = transfer_point(TransferMap(1, 2), p)
    assert image.base == BasePoint("ug", "vg", Sort.U)
    assert image.k == 1
    assert image.x == q_power(2 + 2) * Scalar.symbol("vg")


def test_transport():
    report = verify_transport(3)
    assert report.passed
    assert report.title == "transport-check u0,v0 -> u1,v1 window=3"
    p = LineBundlePoint(Scalar.symbol("u0") * q_power(2), 1, BasePoint("u0", "v0", Sort.V))
    moved = transport(p, {"u0": "u1", "v0": "v1"})
    assert moved == LineBundlePoint(Scalar.symbol("u1") * q_power(2), 1, BasePoint("u1", "v1", Sort.V))


@pytest.mark.parametrize("s", range(-4, 5))
@pytest.mark.parametrize("t", range(-4, 5))
def test_transfer_grid(s, t):
    assert verify_transfer(TransferMap(s, t), 6).passed


def test_transfer_composition_on_the_grid():
    span = range(-3, 4)
    for s1, t1, s2, t2 in product(span, repeat=4):
        first, second = TransferMap(s1, t1), TransferMap(s2, t2)
        combined, offset = compose_transfer(first, second)
        for k in range(-6, 7):
            for step in (transfer_u, transfer_v):
                outer1, label1 = step(first, k)
                outer2, label2 = step(second, label1)
                outer, label = step(combined, k)
                assert (outer1 + outer2, label2) == (outer + offset, label)


def test_default_window_passes_with_one_skip():
    report = check_psi(default_structure(6))
    assert report.passed
    assert report.title == "psi-check window=6"
    assert [c.status for c in report.checks].count("SKIP") == 1


def test_psi_check_is_monotone_in_the_window():
    T = default_structure(6)
    assert check_psi(T).passed
    for window in range(1, 6):
        assert check_psi(T.with_window(window)).passed, window
