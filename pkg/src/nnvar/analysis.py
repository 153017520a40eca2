"""Bigeometric differentiation and integration.

Every operation is defined through the logarithmic conjugation ``tau = ln t``,
``xi = ln f``::

    d~f/d~t = exp(d xi / d tau)            (= exp(t f'(t) / f(t)))
    int~ f d~t = exp(int ln f(e**tau) d tau)

and evaluated numerically in the conjugated coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from .arith import PosReal, nn_add, nn_mul
from .errors import DomainError, InvariantError

__all__ = [
    "DEFAULT_STEP",
    "ScalarCurve",
    "TernaryField",
    "nn_derivative",
    "nn_second_derivative",
    "nn_partial",
    "nn_total_derivative",
    "nn_integral",
    "log_slope",
]

DEFAULT_STEP = 1e-4
COMPLEX_STEP = 1e-20

_SLOTS = {"t": 0, "x": 1, "v": 2}


def _pos(value, what):
    a = np.asarray(value)
    if not np.all(np.isfinite(a)) or not np.all(a.real > 0):
        raise InvariantError(f"{what} must be strictly positive and finite")
    return value


@dataclass(frozen=True)
class ScalarCurve:
    """A positive function of t on the interval [a, b]."""

    evaluator: Callable
    a: float = 0.0
    b: float = np.inf

    def __post_init__(self):
        if not 0 <= self.a < self.b:
            raise DomainError(f"need 0 <= a < b, got [{self.a}, {self.b}]")

    def __call__(self, t):
        ta = np.asarray(t)
        if np.any(ta.real < self.a) or np.any(ta.real > self.b) or np.any(ta.real <= 0):
            raise DomainError(f"t outside [{self.a}, {self.b}]")
        return _pos(self.evaluator(t), "curve value")


@dataclass(frozen=True)
class TernaryField:
    """A positive map (t, x, v) -> R+, e.g. a Lagrangian or a gauge term."""

    evaluator: Callable

    def __call__(self, t, x, v):
        return _pos(self.evaluator(t, x, v), "field value")

    def log(self, tau, xi, nu):
        """The conjugated field ln F(e**tau, e**xi, e**nu)."""
        return np.log(self(np.exp(tau), np.exp(xi), np.exp(nu)))


def nn_derivative(f, t, step: float = DEFAULT_STEP):
    """Bigeometric derivative of ``f`` at ``t`` by a central difference in ln t."""
    if step <= 0:
        raise DomainError("step must be positive")
    tau = np.log(_pos(t, "t"))
    up = np.log(f(np.exp(tau + step)))
    down = np.log(f(np.exp(tau - step)))
    return _wrap(np.exp((up - down) / (2 * step)), t)


def nn_second_derivative(f, t, step: float = DEFAULT_STEP):
    """Second bigeometric derivative, exp(d^2 ln f / d tau^2)."""
    if step <= 0:
        raise DomainError("step must be positive")
    tau = np.log(_pos(t, "t"))
    up = np.log(f(np.exp(tau + step)))
    mid = np.log(f(np.exp(tau)))
    down = np.log(f(np.exp(tau - step)))
    return _wrap(np.exp((up - 2 * mid + down) / step**2), t)


def nn_partial(F, which: str, point, step: float = DEFAULT_STEP):
    """Bigeometric partial derivative exp(d ln F / d ln u) of a ternary field.

    ``which`` selects u among ``"t"``, ``"x"``, ``"v"``; ``point`` is a triple
    whose entries may be arrays of a common shape.
    """
    if which not in _SLOTS:
        raise DomainError(f"which must be one of t, x, v; got {which!r}")
    if step <= 0:
        raise DomainError("step must be positive")
    logs = [np.log(_pos(p, "point")) for p in point]
    k = _SLOTS[which]
    hi = list(logs)
    lo = list(logs)
    hi[k] = logs[k] + step
    lo[k] = logs[k] - step
    up = np.log(_pos(F(*np.exp(hi)), "field value"))
    down = np.log(_pos(F(*np.exp(lo)), "field value"))
    return _wrap(np.exp((up - down) / (2 * step)), *point)


def nn_total_derivative(F, t, x, xt, xtt, step: float = DEFAULT_STEP):
    """Total bigeometric derivative of F(t, x(t), x~(t)) by the chain rule.

    ``xt`` and ``xtt`` are the first and second bigeometric derivatives of the
    curve at ``t``.  Returns dF/dt (.) e (+) dF/dx (.) x~ (+) dF/dv (.) x~~.
    """
    point = (t, x, xt)
    dt = nn_partial(F, "t", point, step)
    dx = nn_partial(F, "x", point, step)
    dv = nn_partial(F, "v", point, step)
    return nn_add(nn_add(nn_mul(dt, np.e), nn_mul(dx, xt)), nn_mul(dv, xtt))


def nn_integral(f, a, b, nodes: int = 201):
    """Multiplicative integral of ``f`` over [a, b] by composite Simpson in ln t."""
    if not 0 < a < b:
        raise DomainError(f"need 0 < a < b, got a={a}, b={b}")
    if nodes < 2:
        raise DomainError("nodes must be >= 2")
    if nodes % 2 == 0:
        nodes += 1
    tau = np.linspace(np.log(a), np.log(b), nodes)
    values = np.asarray(f(np.exp(tau)), dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise InvariantError("integrand must be strictly positive and finite")
    return PosReal(np.exp(simpson(np.log(values), x=tau)))


def log_slope(fn, logs, index: int, h: float = COMPLEX_STEP):
    """d ln fn / d logs[index] by the complex step.

    ``fn`` receives the exponentials of ``logs`` and must be analytic and
    numpy-vectorised.  Free of subtractive cancellation, so accurate to
    rounding for any ``h`` below ~1e-8.
    """
    args = [np.exp(np.asarray(u, dtype=complex)) for u in logs]
    args[index] = np.exp(np.asarray(logs[index]) + 1j * h)
    return np.angle(fn(*args)) / h


def _wrap(r, *inputs):
    if np.ndim(r) == 0 and not any(isinstance(v, np.ndarray) for v in inputs):
        return PosReal(r)
    return np.asarray(r)
