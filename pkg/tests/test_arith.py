import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nnvar.arith import (
    ONE,
    ZERO,
    PosReal,
    conjugate,
    nn_add,
    nn_div,
    nn_inv,
    nn_mul,
    nn_neg,
    nn_pow,
    nn_sub,
    unconjugate,
)
from nnvar.errors import DomainError, RangeError, ZeroDivisorError

E = math.e
pos = st.floats(min_value=1e-3, max_value=1e3)


def lc(x, y, atol=1e-12):
    return abs(math.log(x) - math.log(y)) <= atol


def test_posreal_rejects_nonpositive_and_nonfinite():
    with pytest.raises(DomainError):
        PosReal(0.0)
    with pytest.raises(DomainError):
        PosReal(-2)
    with pytest.raises(RangeError):
        PosReal(math.inf)
    with pytest.raises(RangeError):
        PosReal(math.nan)
    assert PosReal(2.5) == 2.5


@pytest.mark.parametrize("x", [0.3, 1.0, 7.0])
def test_add_examples(x):
    assert nn_add(2, 3) == 6
    assert nn_add(x, 1) == x
    assert lc(nn_add(5, 1 / 5), 1)


def test_sub_examples():
    assert nn_sub(6, 3) == 2
    assert nn_sub(4.2, 4.2) == 1
    assert nn_sub(1, 4) == 0.25


def test_mul_examples():
    assert lc(nn_mul(3.7, E), 3.7)
    assert nn_mul(1, 42.0) == 1
    # oracle exp(ln x ln y) = exp(2 * 3)
    assert lc(nn_mul(E**2, E**3), math.exp(6.0))


def test_div_examples():
    assert lc(nn_div(E**6, E**3), E**2)
    assert lc(nn_div(3.7, E), 3.7)
    with pytest.raises(ZeroDivisorError):
        nn_div(5, 1)
    with pytest.raises(ZeroDivisorError):
        nn_div(np.array([2.0, 3.0]), np.array([2.0, 1.0]))


def test_conjugation_examples():
    assert conjugate(1) == 0
    assert conjugate(E) == 1
    assert lc(unconjugate(conjugate(9.25)), 9.25)


def test_range_errors():
    with pytest.raises(RangeError):
        nn_add(1e200, 1e200)
    with pytest.raises(RangeError):
        nn_mul(1e-300, 1e300)
    with pytest.raises(RangeError):
        unconjugate(1000.0)
    with pytest.raises(DomainError):
        nn_add(-1.0, 2.0)


def test_identities_and_inverses():
    assert ZERO == 1 and ONE == E
    assert lc(nn_add(4.0, nn_neg(4.0)), 1)
    assert lc(nn_mul(4.0, nn_inv(4.0)), E)
    assert lc(nn_pow(E**2, 3), math.exp(8.0))
    assert lc(nn_pow(3.0, 1), 3.0)


def test_arrays_elementwise():
    x = np.array([1.0, 2.0, 5.0])
    r = nn_mul(x, np.full(3, E))
    assert isinstance(r, np.ndarray)
    np.testing.assert_allclose(np.log(r), np.log(x), atol=1e-15)


@settings(max_examples=300)
@given(pos, pos, pos)
def test_field_axioms(x, y, z):
    assert lc(nn_add(x, y), nn_add(y, x))
    assert lc(nn_mul(x, y), nn_mul(y, x))
    assert lc(nn_add(nn_add(x, y), z), nn_add(x, nn_add(y, z)))
    assert lc(nn_mul(nn_mul(x, y), z), nn_mul(x, nn_mul(y, z)))
    assert lc(nn_mul(x, nn_add(y, z)), nn_add(nn_mul(x, y), nn_mul(x, z)))
    assert lc(nn_add(x, ZERO), x)
    assert lc(nn_mul(x, ONE), x)


@given(pos, pos)
def test_conjugate_is_a_homomorphism(x, y):
    assert abs(conjugate(nn_add(x, y)) - (conjugate(x) + conjugate(y))) <= 1e-12
    assert abs(conjugate(nn_mul(x, y)) - conjugate(x) * conjugate(y)) <= 1e-12
