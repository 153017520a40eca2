"""Multiplicative variational problems, their extremals and optimality residuals.

A problem minimises the multiplicative integral of L(t, x, x~) over positive
curves with x(a) = alpha, x(b) = beta.  Under the conjugation tau = ln t,
xi = ln x, nu = ln x~ it becomes the classical problem with Lagrangian
``ell(tau, xi, nu) = ln L(e**tau, e**xi, e**nu)``; everything here is computed
in those coordinates and reported back in R+ (residuals stay in log space,
where 0 stands for the non-Newtonian zero 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from .analysis import (
    DEFAULT_STEP,
    TernaryField,
    log_slope,
    nn_derivative,
    nn_partial,
    nn_second_derivative,
)
from .arith import nn_mul, nn_sub
from .errors import (
    ContractError,
    ConvergenceError,
    DegenerateProblemError,
    DomainError,
    InvariantError,
    NNError,
)
from .expr import parse, pretty, to_function

__all__ = [
    "VariationalProblem",
    "Trajectory",
    "SolverStats",
    "solve_extremal",
    "el_residual",
    "dbr_residual",
    "erdmann_trace",
    "momentum",
    "hamiltonian_value",
    "hamiltonian_dbr_residual",
    "conjugated_jet",
]

_FLAG_ATOL = 1e-10
# half-bandwidth of d(residual)/d(ln x) for the stencils in Trajectory.from_values
_BAND = 3


@dataclass(frozen=True)
class VariationalProblem:
    lagrangian: TernaryField
    a: float
    b: float
    alpha: float
    beta: float
    autonomous: bool = False
    x_free: bool = False
    source: str = ""

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise InvariantError(f"need 0 < a < b, got a={self.a}, b={self.b}")
        if not (self.alpha > 0 and self.beta > 0):
            raise InvariantError("boundary values must be positive")
        if not all(np.isfinite([self.a, self.b, self.alpha, self.beta])):
            raise InvariantError("interval and boundary values must be finite")
        self._spot_check_flags()

    @classmethod
    def from_text(cls, lagrangian: str, a, b, alpha, beta, autonomous=False, x_free=False):
        tree = parse(lagrangian, ("t", "x", "v"))
        return cls(TernaryField(to_function(tree)), float(a), float(b), float(alpha), float(beta),
                   autonomous, x_free, pretty(tree))

    def _spot_check_flags(self):
        if not (self.autonomous or self.x_free):
            return
        rng = np.random.default_rng(20211122)
        t = np.exp(rng.uniform(np.log(self.a), np.log(self.b), (2, 16)))
        x, v = np.exp(rng.uniform(-1.0, 1.0, (2, 16)))
        L = self.lagrangian
        if self.autonomous:
            d = np.log(L(t[0], x, v)) - np.log(L(t[1], x, v))
            if np.max(np.abs(d)) > _FLAG_ATOL:
                raise InvariantError("problem flagged autonomous but L depends on t")
        if self.x_free:
            d = np.log(L(t[0], x, v)) - np.log(L(t[0], x[::-1], v))
            if np.max(np.abs(d)) > _FLAG_ATOL:
                raise InvariantError("problem flagged x_free but L depends on x")

    def ell(self, tau, xi, nu):
        return self.lagrangian.log(tau, xi, nu)


@dataclass(frozen=True)
class SolverStats:
    iterations: int
    residual: float
    tol: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Positive samples of a curve on a log-uniform grid.

    ``nn_velocity`` and ``nn_acceleration`` hold the first and second
    bigeometric derivatives at the nodes.
    """

    t: np.ndarray
    x: np.ndarray
    nn_velocity: np.ndarray
    nn_acceleration: np.ndarray
    stats: Optional[SolverStats] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("t", "x", "nn_velocity", "nn_acceleration"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.ndim != 1 or arr.shape != np.shape(self.t):
                raise InvariantError(f"{name} must be a 1-d array matching t")
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                raise InvariantError(f"{name} must be strictly positive and finite")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_values(cls, t, x, stats=None):
        """Build from samples; derivatives by finite differences in tau."""
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        if t.size < 5:
            raise DomainError("a trajectory needs at least 5 nodes")
        if np.any(x <= 0) or np.any(t <= 0):
            raise InvariantError("trajectory samples must be positive")
        tau = np.log(t)
        h = (tau[-1] - tau[0]) / (t.size - 1)
        if h <= 0 or not np.allclose(np.diff(tau), h, rtol=1e-8, atol=0):
            raise DomainError("grid must be uniform in ln t")
        xi = np.log(x)
        nu = np.empty_like(xi)
        # fourth-order centred differences for the velocity (off-centred next
        # to the ends); the acceleration stays second order, and so does the
        # Euler-Lagrange scheme built on both
        nu[2:-2] = (xi[:-4] - 8 * xi[1:-3] + 8 * xi[3:-1] - xi[4:]) / (12 * h)
        nu[1] = (-3 * xi[0] - 10 * xi[1] + 18 * xi[2] - 6 * xi[3] + xi[4]) / (12 * h)
        nu[-2] = (3 * xi[-1] + 10 * xi[-2] - 18 * xi[-3] + 6 * xi[-4] - xi[-5]) / (12 * h)
        nu[0] = (-25 * xi[0] + 48 * xi[1] - 36 * xi[2] + 16 * xi[3] - 3 * xi[4]) / (12 * h)
        nu[-1] = (25 * xi[-1] - 48 * xi[-2] + 36 * xi[-3] - 16 * xi[-4] + 3 * xi[-5]) / (12 * h)
        acc = np.empty_like(xi)
        acc[1:-1] = (xi[2:] - 2 * xi[1:-1] + xi[:-2]) / h**2
        acc[0] = (2 * xi[0] - 5 * xi[1] + 4 * xi[2] - xi[3]) / h**2
        acc[-1] = (2 * xi[-1] - 5 * xi[-2] + 4 * xi[-3] - xi[-4]) / h**2
        return cls(t, x, np.exp(nu), np.exp(acc), stats)

    @classmethod
    def from_curve(cls, f, t, step: float = DEFAULT_STEP):
        """Sample a vectorised curve, differentiating it with nn_derivative."""
        t = np.asarray(t, dtype=float)
        return cls(t, np.asarray(f(t), dtype=float), nn_derivative(f, t, step),
                   nn_second_derivative(f, t, step))

    @property
    def tau(self):
        return np.log(self.t)

    @property
    def xi(self):
        return np.log(self.x)

    @property
    def nu(self):
        return np.log(self.nn_velocity)

    @property
    def nu_prime(self):
        return np.log(self.nn_acceleration)

    def __len__(self):
        return self.t.size

    def check_boundary(self, problem, atol=1e-10):
        ok = (abs(np.log(self.t[0] / problem.a)) <= atol and abs(np.log(self.t[-1] / problem.b)) <= atol
              and abs(np.log(self.x[0] / problem.alpha)) <= atol
              and abs(np.log(self.x[-1] / problem.beta)) <= atol)
        if not ok:
            raise ContractError("trajectory does not match the problem's interval and boundary values")


class Jet(NamedTuple):
    ell: np.ndarray
    ell_t: np.ndarray
    ell_x: np.ndarray
    ell_v: np.ndarray
    ell_vt: np.ndarray
    ell_vx: np.ndarray
    ell_vv: np.ndarray


def conjugated_jet(problem, tau, xi, nu, step: float = DEFAULT_STEP) -> Jet:
    """Partials of the conjugated Lagrangian needed by the Euler-Lagrange operator.

    First partials use the complex step; second partials are central
    differences of the complex-step d ell / d nu.
    """
    L = problem.lagrangian
    pt = (tau, xi, nu)

    def ell_v(tau, xi, nu):
        return log_slope(L, (tau, xi, nu), 2)

    h = step
    return Jet(
        ell=problem.ell(*pt),
        ell_t=log_slope(L, pt, 0),
        ell_x=log_slope(L, pt, 1),
        ell_v=ell_v(*pt),
        ell_vt=(ell_v(tau + h, xi, nu) - ell_v(tau - h, xi, nu)) / (2 * h),
        ell_vx=(ell_v(tau, xi + h, nu) - ell_v(tau, xi - h, nu)) / (2 * h),
        ell_vv=(ell_v(tau, xi, nu + h) - ell_v(tau, xi, nu - h)) / (2 * h),
    )


def _interior_jet(problem, traj, step):
    sl = slice(1, -1)
    nu = traj.nu[sl]
    jet = conjugated_jet(problem, traj.tau[sl], traj.xi[sl], nu, step)
    return jet, nu, traj.nu_prime[sl]


def el_residual(problem, traj, step: float = DEFAULT_STEP):
    """ln(d~/d~t [dL/dv] (-) dL/dx) at the interior nodes."""
    j, nu, nup = _interior_jet(problem, traj, step)
    d_momentum = j.ell_vt + j.ell_vx * nu + j.ell_vv * nup
    return d_momentum - j.ell_x


def dbr_residual(problem, traj, step: float = DEFAULT_STEP):
    """ln(dL/dt (-) d~/d~t{L (-) dL/dv (.) x~}) at the interior nodes.

    The total derivative of L (-) p (.) x~ is expanded by the product and
    chain rules, term by term, so the x~~ contributions cancel exactly.
    """
    j, nu, nup = _interior_jet(problem, traj, step)
    d_momentum = j.ell_vt + j.ell_vx * nu + j.ell_vv * nup
    d_energy = j.ell_t + j.ell_x * nu + j.ell_v * nup - (d_momentum * nu + j.ell_v * nup)
    return j.ell_t - d_energy


def momentum(problem, t, x, v, step: float = DEFAULT_STEP):
    """Generalised momentum dL/dv (bigeometric partial)."""
    return nn_partial(problem.lagrangian, "v", (t, x, v), step)


def hamiltonian_value(problem, t, x, v, pm):
    """H = L (-) pm (.) v."""
    return nn_sub(problem.lagrangian(t, x, v), nn_mul(pm, v))


def erdmann_trace(problem, traj, step: float = DEFAULT_STEP):
    """L (-) dL/dv (.) x~ at every node; constant on extremals of autonomous problems."""
    if not problem.autonomous:
        raise ContractError("the Erdmann quantity is only defined for autonomous problems")
    t, x, v = traj.t, traj.x, traj.nn_velocity
    return hamiltonian_value(problem, t, x, v, momentum(problem, t, x, v, step))


def hamiltonian_dbr_residual(problem, traj, step: float = DEFAULT_STEP):
    """ln(d~H/d~t (-) dH/dt) at interior nodes, with p frozen to the momentum trace.

    The total derivative uses grid differences, so this vanishes only to
    second order in the grid spacing.
    """
    t, x, v = traj.t, traj.x, traj.nn_velocity
    p = momentum(problem, t, x, v, step)
    log_h = np.log(hamiltonian_value(problem, t, x, v, p))
    total = np.gradient(log_h, traj.tau, edge_order=2)
    field_h = TernaryField(lambda tt, xx, vv: hamiltonian_value(problem, tt, xx, vv, p))
    partial = np.log(nn_partial(field_h, "t", (t, x, v), step))
    return (total - partial)[1:-1]


def solve_extremal(problem, n: int = 201, tol: float = 1e-8, max_iter: int = 50,
                   step: float = DEFAULT_STEP) -> Trajectory:
    """Solve the Euler-Lagrange boundary-value problem on n log-uniform nodes.

    Damped Newton on the interior values of ln x with a banded Jacobian built
    by finite differences; the initial guess is linear in (ln t, ln x).
    """
    if n < 5:
        raise ContractError("need at least 5 grid nodes")
    if tol <= 0:
        raise ContractError("tol must be positive")
    tau = np.linspace(np.log(problem.a), np.log(problem.b), n)
    t = np.exp(tau)
    t[0], t[-1] = problem.a, problem.b
    lo, hi = np.log(problem.alpha), np.log(problem.beta)

    def trajectory(u, stats=None):
        x = np.empty(n)
        x[0], x[-1] = problem.alpha, problem.beta
        x[1:-1] = np.exp(u)
        return Trajectory.from_values(t, x, stats)

    def residual(u):
        return el_residual(problem, trajectory(u), step)

    u = lo + (hi - lo) * (tau[1:-1] - tau[0]) / (tau[-1] - tau[0])
    r = residual(u)
    norm = np.max(np.abs(r))
    it = 0
    while norm > tol:
        if it >= max_iter:
            raise ConvergenceError("Newton iteration did not converge", norm, it)
        it += 1
        du = _newton_step(residual, u, r)
        lam = 1.0
        for _ in range(31):
            try:
                r_new = residual(u + lam * du)
                norm_new = np.max(np.abs(r_new))
            except NNError:
                norm_new = np.inf
            if norm_new < norm:
                break
            lam *= 0.5
        else:
            raise ConvergenceError("damped Newton step failed to reduce the residual", norm, it)
        u = u + lam * du
        r, norm = r_new, norm_new
    return trajectory(u, SolverStats(it, float(norm), tol))


def _newton_step(residual, u, r, delta=1e-6, band=_BAND):
    m = u.size
    width = 2 * band + 1
    ab = np.zeros((width, m))
    for colour in range(width):
        cols = np.arange(colour, m, width)
        up = u.copy()
        up[cols] += delta
        dr = (residual(up) - r) / delta
        for j in cols:
            for i in range(max(j - band, 0), min(j + band + 1, m)):
                ab[band + i - j, j] = dr[i]
    if not np.all(np.isfinite(ab)) or np.any(ab[band] == 0):
        raise DegenerateProblemError("Euler-Lagrange Jacobian is singular")
    try:
        du = solve_banded((band, band), ab, -r)
    except (LinAlgError, ValueError) as exc:
        raise DegenerateProblemError("Euler-Lagrange Jacobian is singular") from exc
    if not np.all(np.isfinite(du)):
        raise DegenerateProblemError("Euler-Lagrange Jacobian is singular")
    return du
