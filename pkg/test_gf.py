#!/usr/bin/env python3
"""
Finite field tests.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import DivisionByZero, InvalidParameter, NotPrimePower, ZeroArgument
from src.gf import (dlog, field_arithmetic, is_prime_power, make_field, nonsquares, nonzero_squares,
                    prime_power_decomposition, primitive_elements, relative_norm, relative_trace)

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27]
SMALL_PRIME_POWERS = [q for q in range(2, 50) if is_prime_power(q)]
ODD_PRIME_POWERS = [q for q in range(3, 122, 2) if is_prime_power(q)]


def test_prime_power_decomposition():
    assert prime_power_decomposition(27) == (3, 3)
    assert prime_power_decomposition(12) is None
    assert prime_power_decomposition(1) is None
    assert is_prime_power(49) and not is_prime_power(6)


def test_make_field_rejects_non_prime_powers():
    with pytest.raises(NotPrimePower):
        make_field(6)
    with pytest.raises(NotPrimePower):
        make_field(1)


def test_gf7_arithmetic():
    F = make_field(7)
    three, five = F.element(3), F.element(5)
    assert F.code(field_arithmetic(F, three, five, 'mul')) == 1
    assert F.code(field_arithmetic(F, three, five, 'add')) == 1
    assert F.code(field_arithmetic(F, three, None, 'inv')) == 5
    assert F.code(F.theta) == 3


def test_gf4_element_order():
    F = make_field(4)
    assert F.modulus == (1, 1, 1)
    assert [F.code(x) for x in F.elements()] == [0, 1, 2, 3]


@pytest.mark.parametrize('q', FIELD_ORDERS)
def test_theta_is_primitive(q):
    F = make_field(q)
    powers = {F.code(F.theta_power(k)) for k in range(q - 1)}
    assert powers == set(range(1, q))


@pytest.mark.parametrize('q', FIELD_ORDERS)
def test_inverse_and_distributivity(q):
    F = make_field(q)
    elems = F.elements()
    for a in F.nonzero_elements():
        assert F.mul(a, F.inv(a)) == F.one
    for a in elems[:6]:
        for b in elems[:6]:
            for c in elems[:6]:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_division_by_zero():
    F = make_field(9)
    with pytest.raises(DivisionByZero):
        F.inv(F.zero)
    with pytest.raises(ZeroDivisionError):
        F.div(F.one, F.zero)


def test_dlog():
    F = make_field(11)
    for k in range(10):
        assert dlog(F, F.theta_power(k)) == k
    with pytest.raises(ZeroArgument):
        dlog(F, F.zero)


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13, 25, 27])
def test_squares_split_evenly(q):
    F = make_field(q)
    squares, others = nonzero_squares(F), nonsquares(F)
    assert len(squares) == len(others) == (q - 1) // 2
    assert not squares & others


def test_minus_one_is_nonsquare_when_q_is_3_mod_4():
    for q in (3, 7, 11, 19, 23, 27):
        F = make_field(q)
        assert F.neg(F.one) in nonsquares(F)


@pytest.mark.parametrize('q', ODD_PRIME_POWERS)
def test_minus_one_is_square_iff_q_is_1_mod_4(q):
    F = make_field(q)
    assert (F.neg(F.one) in nonzero_squares(F)) == (q % 4 == 1)


def operation_tables(F):
    elems = F.elements()
    add = np.array([[F.code(F.add(a, b)) for b in elems] for a in elems])
    mul = np.array([[F.code(F.mul(a, b)) for b in elems] for a in elems])
    return add, mul


@pytest.mark.parametrize('q', SMALL_PRIME_POWERS)
def test_field_axioms_exhaustive(q):
    F = make_field(q)
    add, mul = operation_tables(F)
    codes = np.arange(q)
    zero, one = F.code(F.zero), F.code(F.one)
    a, b, c = codes[:, None, None], codes[None, :, None], codes[None, None, :]
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
    assert (add[zero] == codes).all() and (mul[one] == codes).all()
    assert all(zero in row for row in add)
    assert all(one in row for k, row in enumerate(mul) if k != zero)


def test_relative_norm_is_onto_subfield_units():
    F = make_field(9)
    small = {F.code(F.one), F.code(F.neg(F.one))}
    norms = [F.code(relative_norm(F, x, 3)) for x in F.nonzero_elements()]
    assert set(norms) == small
    assert all(norms.count(v) == 4 for v in small)
    assert relative_norm(F, F.zero, 3) == F.zero


def test_relative_norm_is_multiplicative():
    F = make_field(16)
    for x in F.nonzero_elements():
        for y in F.nonzero_elements()[:5]:
            assert relative_norm(F, F.mul(x, y), 4) == F.mul(relative_norm(F, x, 4), relative_norm(F, y, 4))


def test_relative_maps_reject_non_subfields():
    F = make_field(8)
    with pytest.raises(InvalidParameter):
        relative_norm(F, F.one, 4)
    with pytest.raises(InvalidParameter):
        relative_trace(F, F.one, 1)


def test_unknown_field_operation():
    F = make_field(5)
    with pytest.raises(InvalidParameter):
        field_arithmetic(F, F.one, F.one, 'pow')


def test_primitive_elements_count():
    assert len(primitive_elements(make_field(7))) == 2
    assert len(primitive_elements(make_field(13))) == 4


def test_relative_trace_lands_in_subfield():
    F = make_field(8)
    values = {relative_trace(F, x, 2) for x in F.elements()}
    assert values == {F.zero, F.one}
    zeros = [x for x in F.nonzero_elements() if F.is_zero(relative_trace(F, x, 2))]
    assert len(zeros) == 3


@given(st.sampled_from(FIELD_ORDERS), st.data())
def test_field_axioms_random(q, data):
    F = make_field(q)
    a = F.from_code(data.draw(st.integers(0, q - 1)))
    b = F.from_code(data.draw(st.integers(0, q - 1)))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.sub(F.add(a, b), b) == a
    if not F.is_zero(b):
        assert F.mul(F.div(a, b), b) == a
