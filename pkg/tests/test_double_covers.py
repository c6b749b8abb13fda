import random

import pytest
import sympy as sp

from enriques_bench.ohashi import (
    OrderBoundError,
    THREE_PARAMS,
    SIX_PARAMS,
    deck_map,
    eighth_root_map,
    identity_map,
    map_order,
    order_four_map,
    preserves_equation,
    six_parameter_family,
    specialization_field,
    specialize,
    specialize_and_check,
    three_parameter_family,
)
from enriques_bench.scalars import Cyclotomic
from oracles import six_parameter_rhs, three_parameter_rhs, w_linear_power, w_linear_residual

y, z = sp.symbols("y z")
P6 = sp.symbols("A B C D E F")
P3 = sp.symbols("A B D")
ZETA8 = sp.exp(sp.I * sp.pi / 4)


@pytest.fixture(scope="module")
def S6():
    return six_parameter_family()


@pytest.fixture(scope="module")
def S3():
    return three_parameter_family()


# ------------------------------------------------------ symbolic oracle


def test_oracle_confirms_both_maps_preserve_their_equations():
    rhs6 = lambda Y, Z: six_parameter_rhs(Y, Z, *P6)
    assert w_linear_residual(rhs6, sp.I / (y**2 * z**3), 1 / y, 1 / z, y, z) == 0
    rhs3 = lambda Y, Z: three_parameter_rhs(Y, Z, *P3, ZETA8**2)
    assert sp.expand(w_linear_residual(rhs3, ZETA8 * y**3 / z**4, y / z, y**2 / z, y, z)) == 0


def test_oracle_orders():
    s, Y, Z = w_linear_power(sp.I / (y**2 * z**3), 1 / y, 1 / z, y, z, 2)
    assert (s, Y, Z) == (-1, y, z)
    scale, Y2, Z2 = ZETA8 * y**3 / z**4, y / z, y**2 / z
    assert w_linear_power(scale, Y2, Z2, y, z, 4) == (-1, y, z)
    s8 = w_linear_power(scale, Y2, Z2, y, z, 8)
    assert sp.simplify(s8[0] - 1) == 0 and s8[1:] == (y, z)


# ------------------------------------------------- identities in the parameters


def test_maps_preserve_equations_identically(S6, S3):
    assert S6.nonsquare_certified and S3.nonsquare_certified
    assert preserves_equation(S6, order_four_map(S6))
    assert preserves_equation(S3, eighth_root_map(S3))
    assert preserves_equation(S6, deck_map(S6))


def test_perturbed_family_is_not_preserved(S6):
    bumped = S6.with_extra_term("G", {"y": 5, "z": 1})
    assert not preserves_equation(bumped, order_four_map(bumped))


def test_orders(S6, S3):
    g1 = order_four_map(S6)
    assert map_order(g1) == 4
    assert g1.power(2) == deck_map(S6)
    assert map_order(deck_map(S6)) == 2
    assert map_order(identity_map(S6)) == 1
    g2 = eighth_root_map(S3)
    assert map_order(g2) == 8
    assert g2.power(4) == deck_map(S3)
    with pytest.raises(OrderBoundError):
        map_order(g2, bound=4)
    with pytest.raises(ValueError):
        map_order(g1, bound=0)


def test_square_of_g2_is_the_order_four_formula(S3):
    # the oracle finds g2^2 = (i w / (y^2 z^3), 1/y, 1/z) with i = zeta8^2
    g2 = eighth_root_map(S3)
    i = S3.field.primitive_root_of_unity(8) ** 2
    assert g2.power(2) == order_four_map(S3, i=i)


def test_compositions_stay_in_the_quotient_and_preserve(S3):
    g2 = eighth_root_map(S3)
    for k in (2, 3, 5):
        m = g2.power(k)
        assert preserves_equation(S3, m)


def test_bad_roots_of_unity_are_rejected(S6, S3):
    with pytest.raises(ValueError):
        order_four_map(S6, i=1)
    with pytest.raises(ValueError):
        eighth_root_map(S3, zeta8=S3.field.primitive_root_of_unity(8) ** 2)
    with pytest.raises(ValueError):
        three_parameter_family(Cyclotomic(8), i=1)


# ------------------------------------------------------ finite fields


def _points(p):
    return [(a, b) for a in range(1, p) for b in range(1, p)]


def _g1_holds_everywhere(p, i, params):
    inv = lambda x: pow(x, -1, p)
    for a, b in _points(p):
        lhs = i * i * six_parameter_rhs(a, b, *params) * inv(a**4 * b**6)
        rhs = six_parameter_rhs(inv(a), inv(b), *params)
        if (lhs - rhs) % p:
            return False
    return True


def _g2_holds_everywhere(p, zeta, params):
    inv = lambda x: pow(x, -1, p)
    i = zeta * zeta % p
    for a, b in _points(p):
        lhs = zeta**2 * a**6 * three_parameter_rhs(a, b, *params, i) * inv(b**8)
        rhs = three_parameter_rhs(a * inv(b), a * a * inv(b), *params, i)
        if (lhs - rhs) % p:
            return False
    return True


def test_g1_over_f5_against_evaluation_oracle(S6):
    assert specialize_and_check(S6, order_four_map(S6), [1] * 6, 5)
    assert all(_g1_holds_everywhere(5, i, [1] * 6) for i in (2, 3))
    bumped = S6.with_extra_term("G", {"y": 5, "z": 1})
    assert not specialize_and_check(bumped, order_four_map(bumped), [1] * 7, 5)


def test_g2_over_f17_against_evaluation_oracle(S3):
    assert specialize_and_check(S3, eighth_root_map(S3), [1, 1, 1], 17)
    roots = [x for x in range(1, 17) if pow(x, 4, 17) == 16]
    assert len(roots) == 4
    assert all(_g2_holds_everywhere(17, zeta, [1, 1, 1]) for zeta in roots)


def test_evaluation_oracle_detects_a_wrong_pairing():
    # i = zeta^2 is required: the other square root of -1 fails
    zeta = 2  # 2^4 = 16 = -1 in F_17
    inv = lambda x: pow(x, -1, 17)
    i_wrong = (-zeta * zeta) % 17
    bad = False
    for a, b in _points(17):
        lhs = zeta**2 * a**6 * three_parameter_rhs(a, b, 1, 1, 1, i_wrong) * inv(b**8)
        rhs = three_parameter_rhs(a * inv(b), a * a * inv(b), 1, 1, 1, i_wrong)
        bad |= bool((lhs - rhs) % 17)
    assert bad


@pytest.mark.parametrize("family,p", [("g1", 5), ("g1", 13), ("g2", 17), ("g2", 41)])
def test_random_specializations(family, p, S6, S3):
    rng = random.Random(p)
    S, m = (S6, order_four_map(S6)) if family == "g1" else (S3, eighth_root_map(S3))
    for _ in range(50):
        params = [rng.randrange(p) for _ in S.params]
        assert specialize_and_check(S, m, params, p)
    # the same identity holds pointwise for every choice of root
    params = [rng.randrange(p) for _ in S.params]
    roots = [x for x in range(1, p) if pow(x, 4 if family == "g1" else 8, p) == 1 and pow(x, 2 if family == "g1" else 4, p) != 1]
    check = _g1_holds_everywhere if family == "g1" else _g2_holds_everywhere
    assert roots and all(check(p, r, params) for r in roots)


def test_extension_fields_for_missing_roots(S6, S3):
    with pytest.raises(ValueError):
        specialization_field(S6, 7)
    F = specialization_field(S6, 7, extend=True)
    assert F.order == 49
    assert specialize_and_check(S6, order_four_map(S6), [1, 2, 3, 4, 5, 6], 7, extend=True)
    assert specialization_field(S3, 3, extend=True).order == 9


def test_specialization_errors(S6):
    g1 = order_four_map(S6)
    for p in (1, 2, 4, 9):
        with pytest.raises(ValueError):
            specialization_field(S6, p)
    with pytest.raises(ValueError):
        specialize(S6, g1, {"A": 1}, 5)
    with pytest.raises(ZeroDivisionError):
        S6.element(1, 0, 0)


def test_parameter_names():
    assert SIX_PARAMS == tuple(str(s) for s in P6)
    assert THREE_PARAMS == tuple(str(s) for s in P3)
