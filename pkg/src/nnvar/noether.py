"""Symmetry transformations, the invariance test and Noether constants of motion.

A family (t, x) -> (T(t, x, x~, s), X(t, x, x~, s)) is parameterised
multiplicatively: s ranges over R+ and s = 1 is the identity.  Derivatives in
s are taken in ln s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .analysis import DEFAULT_STEP, TernaryField, log_slope, nn_partial
from .arith import nn_add, nn_mul, nn_sub
from .errors import ContractError, DegenerateProblemError, InvariantError
from .expr import Expr, parse, pretty, to_function
from .variational import Trajectory, el_residual, hamiltonian_value, momentum

__all__ = [
    "TransformationFamily",
    "ConservationReport",
    "ProofIdentities",
    "INVARIANCE_TOL",
    "default_probes",
    "invariance_defect",
    "s_partial",
    "noether_quantity",
    "proof_identity_check",
]

INVARIANCE_TOL = 1e-8
PROBE_EXPONENTS = (-1.0, -0.5, 0.5, 1.0, 2.0)
PROBE_SCALE = 1.5


@dataclass(frozen=True)
class TransformationFamily:
    T: Expr
    X: Expr
    gauge: Expr
    label: str = "family"

    def __post_init__(self):
        object.__setattr__(self, "_time", to_function(self.T, ("t", "x", "v", "s")))
        object.__setattr__(self, "_space", to_function(self.X, ("t", "x", "v", "s")))
        object.__setattr__(self, "_gauge", to_function(self.gauge))
        self._check_identity()

    @classmethod
    def from_text(cls, T: str, X: str, gauge: str = "1", label: str = "family"):
        names = ("t", "x", "v", "s")
        return cls(parse(T, names), parse(X, names), parse(gauge, ("t", "x", "v")), label)

    def time(self, t, x, v, s):
        return self._time(t, x, v, s)

    def space(self, t, x, v, s):
        return self._space(t, x, v, s)

    def phi(self, t, x, v):
        r = self._gauge(t, x, v)
        return r * np.ones(np.shape(t)) if np.ndim(r) == 0 and np.ndim(t) else r

    def describe(self):
        return f"T = {pretty(self.T)}, X = {pretty(self.X)}, gauge = {pretty(self.gauge)}"

    def _check_identity(self):
        rng = np.random.default_rng(1918)
        t, x, v = np.exp(rng.uniform(-1.5, 1.5, (3, 32)))
        try:
            dt = np.log(np.asarray(self.time(t, x, v, 1.0), float)) - np.log(t)
            dx = np.log(np.asarray(self.space(t, x, v, 1.0), float)) - np.log(x)
            phi = np.asarray(self.phi(t, x, v), float)
        except (ArithmeticError, ValueError) as exc:
            raise InvariantError(f"family {self.label!r} cannot be evaluated: {exc}") from exc
        if np.any(phi <= 0):
            raise InvariantError(f"gauge term of {self.label!r} must be positive")
        if np.max(np.abs(dt)) > 1e-10 or np.max(np.abs(dx)) > 1e-10:
            raise InvariantError(f"family {self.label!r} is not the identity at s = 1")


@dataclass(frozen=True, eq=False)
class ConservationReport:
    label: str
    t: np.ndarray
    quantity_trace: np.ndarray
    log_mean: float
    max_log_deviation: float
    tolerance: float

    @property
    def log_deviation(self):
        return np.log(self.quantity_trace) - self.log_mean

    @property
    def conserved(self) -> bool:
        return self.max_log_deviation <= self.tolerance

    @property
    def verdict(self) -> str:
        return "conserved" if self.conserved else "not-conserved"


class ProofIdentities(NamedTuple):
    diff_def_qi: np.ndarray
    from_el: np.ndarray
    from_dbr: np.ndarray


def default_probes(problem, nodes: int = 11, step: float = DEFAULT_STEP):
    """Probe curves 1.5 * t**k sampled at ``nodes`` interior points of [a, b]."""
    t = np.exp(np.linspace(np.log(problem.a), np.log(problem.b), nodes + 2))[1:-1]
    return [Trajectory.from_curve(lambda tt, k=k: PROBE_SCALE * tt**k, t, step) for k in PROBE_EXPONENTS]


def describe_probes(nodes: int = 11):
    ks = ", ".join(f"{k:g}" for k in PROBE_EXPONENTS)
    return f"x = {PROBE_SCALE} t^k, k in {{{ks}}}, {nodes} interior nodes"


def _log_total(fn, tau, xi, nu, nup):
    """d/dtau of ln fn(t, x(t), x~(t)) along a curve, by the chain rule."""
    pt = (tau, xi, nu)
    return log_slope(fn, pt, 0) + log_slope(fn, pt, 1) * nu + log_slope(fn, pt, 2) * nup


def invariance_defect(problem, family, probes: Optional[Sequence[Trajectory]] = None,
                      s_step: float = DEFAULT_STEP) -> float:
    """Largest log-space gap between the two sides of the invariance condition.

    Left side: total derivative of the gauge term along each probe curve.
    Right side: d/ds at s = 1 of L(T, X, X~ (/) T~) (.) T~, where ~ marks
    total bigeometric derivatives along the curve at fixed s.
    """
    if probes is None:
        probes = default_probes(problem)
    if s_step <= 0:
        raise ContractError("s_step must be positive")
    gauge = TernaryField(family.phi)
    worst = 0.0
    for probe in probes:
        tau, xi, nu, nup = probe.tau, probe.xi, probe.nu, probe.nu_prime

        def inner(sigma):
            s = np.exp(sigma)

            def big_t(t, x, v):
                return family.time(t, x, v, s)

            def big_x(t, x, v):
                return family.space(t, x, v, s)

            t_hat = np.log(np.asarray(big_t(*np.exp([tau, xi, nu])), float))
            x_hat = np.log(np.asarray(big_x(*np.exp([tau, xi, nu])), float))
            dt_hat = _log_total(big_t, tau, xi, nu, nup)
            dx_hat = _log_total(big_x, tau, xi, nu, nup)
            if np.any(np.abs(dt_hat) < 1e-12):
                raise DegenerateProblemError(
                    f"transformed time of {family.label!r} has zero bigeometric rate at a probe")
            return problem.ell(t_hat, x_hat, dx_hat / dt_hat) * dt_hat

        rhs = (inner(s_step) - inner(-s_step)) / (2 * s_step)
        lhs = _log_total(gauge, tau, xi, nu, nup)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def s_partial(fn, t, x, v, s_step: float = DEFAULT_STEP):
    """Bigeometric s-derivative at s = 1 of fn(t, x, v, s)."""
    up = np.log(np.asarray(fn(t, x, v, np.exp(s_step)), float))
    down = np.log(np.asarray(fn(t, x, v, np.exp(-s_step)), float))
    return np.exp((up - down) / (2 * s_step))


def noether_quantity(problem, traj, family, s_step: float = DEFAULT_STEP, tol: float = 1e-5,
                     step: float = DEFAULT_STEP, el_tol: Optional[float] = 1e-6) -> ConservationReport:
    """Noether constant of motion along ``traj`` for a symmetry ``family``.

    Per node: [L (-) p (.) x~] (.) dT/ds (+) p (.) dX/ds (-) gauge, with
    p = dL/dv.  ``el_tol`` guards the extremal precondition; pass None to
    evaluate on arbitrary curves.
    """
    traj.check_boundary(problem)
    if el_tol is not None:
        worst = float(np.max(np.abs(el_residual(problem, traj, step))))
        if worst > el_tol:
            raise ContractError(f"trajectory is not an extremal (Euler-Lagrange residual {worst:.2e})")
    t, x, v = traj.t, traj.x, traj.nn_velocity
    p = momentum(problem, t, x, v, step)
    energy = hamiltonian_value(problem, t, x, v, p)
    d_time = s_partial(family.time, t, x, v, s_step)
    d_space = s_partial(family.space, t, x, v, s_step)
    q = nn_sub(nn_add(nn_mul(energy, d_time), nn_mul(p, d_space)), family.phi(t, x, v))
    logq = np.log(q)
    mean = float(np.mean(logq))
    return ConservationReport(family.label, t, q, mean, float(np.max(np.abs(logq - mean))), tol)


def proof_identity_check(problem, traj, family, s_step: float = DEFAULT_STEP,
                         step: float = DEFAULT_STEP) -> ProofIdentities:
    """Log-space residuals of the three identities behind the conservation law.

    Total derivatives along the trajectory are grid differences, so each
    trace vanishes to second order in the spacing on extremals.
    """
    t, x, v = traj.t, traj.x, traj.nn_velocity
    tau, nu = traj.tau, traj.nu
    L = problem.lagrangian

    def grad(y):
        return np.gradient(y, tau, edge_order=2)

    ell = np.log(L(t, x, v))
    ell_t, ell_x, ell_v = (np.log(nn_partial(L, w, (t, x, v), step)) for w in "txv")
    t_s = np.log(s_partial(family.time, t, x, v, s_step))
    x_s = np.log(s_partial(family.space, t, x, v, s_step))
    phi = np.log(family.phi(t, x, v))
    dt_s, dx_s = grad(t_s), grad(x_s)

    diff_def_qi = grad(phi) - (ell_t * t_s + ell_x * x_s + ell_v * (dx_s - nu * dt_s) + ell * dt_s)
    from_el = ell_x * x_s + ell_v * dx_s - grad(ell_v * x_s)
    from_dbr = ell_t * t_s + ell * dt_s - ell_v * nu * dt_s - grad((ell - ell_v * nu) * t_s)
    sl = slice(1, -1)
    return ProofIdentities(diff_def_qi[sl], from_el[sl], from_dbr[sl])
