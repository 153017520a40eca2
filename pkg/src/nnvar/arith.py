"""Arithmetic of the non-Newtonian field (R+, (+), (.)).

Addition is ordinary multiplication, multiplication is ``x ** ln(y)``.  The
natural logarithm is a field isomorphism onto (R, +, *); :func:`conjugate` and
:func:`unconjugate` expose it.

All operations accept Python floats or numpy arrays (elementwise).  Complex
inputs with positive real part are tolerated so that complex-step
differentiation can be pushed through expressions; positivity is then
checked on the real part.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, RangeError, ZeroDivisorError

__all__ = [
    "PosReal",
    "ZERO",
    "ONE",
    "nn_add",
    "nn_sub",
    "nn_mul",
    "nn_div",
    "nn_pow",
    "nn_neg",
    "nn_inv",
    "conjugate",
    "unconjugate",
    "log_close",
]


class PosReal(float):
    """A strictly positive, finite float."""

    def __new__(cls, value):
        value = float(value)
        if not math.isfinite(value):
            raise RangeError(f"PosReal must be finite, got {value!r}")
        if value <= 0.0:
            raise DomainError(f"PosReal must be > 0, got {value!r}")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"PosReal({float(self)!r})"


#: additive identity of the field
ZERO = PosReal(1.0)
#: multiplicative identity of the field
ONE = PosReal(math.e)


def _operand(x, name="operand"):
    a = np.asarray(x)
    re = a.real
    if not np.all(np.isfinite(a)):
        raise RangeError(f"{name} is not finite")
    if not np.all(re > 0):
        raise DomainError(f"{name} must be strictly positive")
    return a


def _result(r, like):
    r = np.asarray(r)
    if not np.all(np.isfinite(r)):
        raise RangeError("result overflowed the floating-point range")
    if not np.all(r.real > 0):
        raise RangeError("result underflowed to zero")
    return _shape_like(r, like)


def _shape_like(r, like):
    if r.ndim == 0 and not any(isinstance(v, np.ndarray) for v in like):
        if np.iscomplexobj(r):
            return complex(r)
        return PosReal(r)
    return r


def _log(a):
    with np.errstate(all="ignore"):
        return np.log(a)


def _exp(a):
    with np.errstate(all="ignore"):
        return np.exp(a)


def nn_add(x, y):
    """x (+) y = x * y."""
    a, b = _operand(x), _operand(y)
    with np.errstate(all="ignore"):
        return _result(a * b, (x, y))


def nn_sub(x, y):
    """x (-) y = x / y."""
    a, b = _operand(x), _operand(y)
    with np.errstate(all="ignore"):
        return _result(a / b, (x, y))


def nn_mul(x, y):
    """x (.) y = exp(ln x * ln y)."""
    a, b = _operand(x), _operand(y)
    return _result(_exp(_log(a) * _log(b)), (x, y))


def nn_div(x, y):
    """x (/) y = exp(ln x / ln y); undefined for y == 1."""
    a, b = _operand(x), _operand(y)
    if np.any(b == 1):
        raise ZeroDivisorError("non-Newtonian division by 1, the additive zero")
    with np.errstate(all="ignore"):
        return _result(_exp(_log(a) / _log(b)), (x, y))


def nn_pow(x, k: int):
    """k-fold non-Newtonian product x (.) x (.) ... (.) x = exp((ln x)**k)."""
    if k < 1:
        raise DomainError("nn_pow needs k >= 1")
    r = x
    for _ in range(k - 1):
        r = nn_mul(r, x)
    return r if k > 1 else nn_mul(x, ONE)


def nn_neg(x):
    """Additive inverse: 1/x."""
    return nn_sub(ZERO, x)


def nn_inv(x):
    """Multiplicative inverse: exp(1/ln x)."""
    return nn_div(ONE, x)


def conjugate(x):
    """Map R+ onto R (natural logarithm)."""
    a = _operand(x)
    r = _log(a)
    if r.ndim == 0 and not isinstance(x, np.ndarray):
        return complex(r) if np.iscomplexobj(r) else float(r)
    return r


def unconjugate(r):
    """Inverse of :func:`conjugate` (exponential)."""
    a = np.asarray(r)
    if not np.all(np.isfinite(a)):
        raise RangeError("unconjugate needs a finite argument")
    return _result(_exp(a), (r,))


def log_close(x, y, atol: float) -> bool:
    """Compare positive values by absolute difference of logarithms."""
    return bool(np.all(np.abs(np.log(np.asarray(x, float)) - np.log(np.asarray(y, float))) <= atol))
