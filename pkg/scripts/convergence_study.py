#!/usr/bin/env python3
"""Grid-refinement study for the catalog problems.

For each problem and grid size this prints the sup-norm error of the solved
extremal against its closed form, the Euler-Lagrange residual of the exact
extremal sampled on the same grid, and the ratio of successive residuals.

    python3 scripts/convergence_study.py --grids 51 101 201 401 801
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from nnvar.catalog import catalog_config, catalog_names
from nnvar.variational import Trajectory, el_residual, solve_extremal

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import exact_log_extremal  # noqa: E402


def study(name, grids):
    cfg = catalog_config(name)
    p = cfg.problem()
    tau0, tau1 = np.log(p.a), np.log(p.b)
    rows, prev = [], None
    for n in grids:
        traj = solve_extremal(p, n=n)
        err = np.max(np.abs(traj.xi - exact_log_extremal(name, traj.tau)))
        tau = np.linspace(tau0, tau1, n)
        exact = Trajectory.from_values(np.exp(tau), np.exp(exact_log_extremal(name, tau)))
        res = np.max(np.abs(el_residual(p, exact)))
        ratio = prev / res if prev and res > 0 else float("nan")
        rows.append((n, traj.stats.iterations, err, res, ratio))
        prev = res
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grids", type=int, nargs="+", default=[51, 101, 201, 401, 801])
    ap.add_argument("--problems", nargs="+", default=catalog_names())
    args = ap.parse_args()
    for name in args.problems:
        print(f"\n{name}")
        print(f"{'n':>6} {'newton':>6} {'|xi - exact|':>14} {'EL(exact)':>12} {'ratio':>7}")
        for n, it, err, res, ratio in study(name, args.grids):
            print(f"{n:>6} {it:>6} {err:>14.3e} {res:>12.3e} {ratio:>7.2f}")


if __name__ == "__main__":
    main()
