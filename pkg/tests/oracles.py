"""Independent reference computations used by the test-suite.

Nothing here touches the expression parser or the numeric differentiation
of nnvar: conjugated Lagrangians are written by hand in sympy, differentiated
symbolically, and the boundary-value problems are solved with a dense
scipy root finder.
"""

import numpy as np
import sympy as sp
from scipy.optimize import brentq, root

tau_s, xi_s, nu_s = sp.symbols("tau xi nu", real=True)

# ell(tau, xi, nu) = ln L(e^tau, e^xi, e^nu) for each catalog problem
CONJUGATED = {
    "power": nu_s**2,
    "autonomous-energy": nu_s**2 * (1 + xi_s**2),
    "x-free-momentum": nu_s**2 + sp.sin(tau_s) * nu_s,
    "coupled": nu_s**2 + xi_s**2,
}

BOUNDARY = {
    "power": (0.0, 1.0, 0.0, 2.0),
    "autonomous-energy": (0.0, 1.0, 0.0, 1.0),
    "x-free-momentum": (0.0, 1.0, 0.0, 1.0),
    "coupled": (0.0, 1.0, 0.0, 1.0),
}


def _energy_primitive(z):
    # integral of sqrt(1 + z^2) dz
    return 0.5 * (z * np.sqrt(1 + z * z) + np.arcsinh(z))


_XF_SLOPE = 1.5 - np.cos(1.0) / 2


def exact_log_extremal(name, tau):
    """Closed-form ln x(t) of the catalog extremals as a function of tau = ln t."""
    tau = np.asarray(tau, dtype=float)
    if name == "power":
        return 2.0 * tau
    if name == "coupled":
        return np.sinh(tau) / np.sinh(1.0)
    if name == "x-free-momentum":
        # 2 xi'' = -cos(tau)
        return np.cos(tau) / 2 + _XF_SLOPE * tau - 0.5
    if name == "autonomous-energy":
        # nu^2 (1 + xi^2) = const  =>  F(xi) = F(1) tau
        c = _energy_primitive(1.0)
        return np.array([brentq(lambda z: _energy_primitive(z) - c * s, -1.0, 2.0, xtol=1e-15)
                         for s in tau])
    raise KeyError(name)


def _partials(name):
    ell = CONJUGATED[name]
    ell_v = sp.diff(ell, nu_s)
    exprs = [sp.diff(ell, xi_s), sp.diff(ell_v, tau_s), sp.diff(ell_v, xi_s), sp.diff(ell_v, nu_s)]
    return [sp.lambdify((tau_s, xi_s, nu_s), e, "numpy") for e in exprs]


def _bcast(value, like):
    return np.broadcast_to(np.asarray(value, dtype=float), like.shape)


def reference_solution(name, n=201):
    """Solve the conjugated Euler-Lagrange equations with the same stencils as nnvar.

    Returns (tau, xi).
    """
    t0, t1, x0, x1 = BOUNDARY[name]
    tau = np.linspace(t0, t1, n)
    h = tau[1] - tau[0]
    f_x, f_vt, f_vx, f_vv = _partials(name)

    def velocity(xi):
        nu = np.empty(n)
        for i in range(2, n - 2):
            nu[i] = (xi[i - 2] - 8 * xi[i - 1] + 8 * xi[i + 1] - xi[i + 2]) / (12 * h)
        nu[1] = (-3 * xi[0] - 10 * xi[1] + 18 * xi[2] - 6 * xi[3] + xi[4]) / (12 * h)
        nu[n - 2] = (3 * xi[n - 1] + 10 * xi[n - 2] - 18 * xi[n - 3] + 6 * xi[n - 4] - xi[n - 5]) / (12 * h)
        return nu

    def equations(u):
        xi = np.concatenate([[x0], u, [x1]])
        nu = velocity(xi)[1:-1]
        acc = (xi[2:] - 2 * xi[1:-1] + xi[:-2]) / h**2
        tt, xx = tau[1:-1], xi[1:-1]
        return (_bcast(f_vt(tt, xx, nu), tt) + _bcast(f_vx(tt, xx, nu), tt) * nu
                + _bcast(f_vv(tt, xx, nu), tt) * acc - _bcast(f_x(tt, xx, nu), tt))

    guess = x0 + (x1 - x0) * (tau[1:-1] - t0) / (t1 - t0)
    sol = root(equations, guess, method="hybr", options={"xtol": 1e-13})
    if np.max(np.abs(equations(sol.x))) > 1e-8:
        raise RuntimeError(sol.message)
    return tau, np.concatenate([[x0], sol.x, [x1]])


def log_derivative(f, df, t):
    """t f'(t) / f(t) from an analytic derivative."""
    return t * df(t) / f(t)
