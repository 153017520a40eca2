"""Command-line front end.

    nnvar solve   --problem power --out results/
    nnvar noether --problem coupled
    nnvar catalog [--show NAME]

Exit status: 0 on success, 2 on configuration or parse errors, 3 when the
solver fails.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .catalog import CATALOG, catalog_config, catalog_names
from .config import load_config
from .errors import ConfigError, NNError
from .noether import describe_probes, invariance_defect, noether_quantity
from .variational import dbr_residual, el_residual, solve_extremal

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

EXTREMAL_HEADER = ("t", "x", "nn_velocity", "el_residual_log", "dbr_residual_log")
NOETHER_HEADER = ("t", "quantity", "log_deviation")


def _fmt(value) -> str:
    return f"{value:.17g}"


def _write_csv(path: Path, header, columns):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([_fmt(v) for v in row])


def _pad(interior):
    """Residuals exist at interior nodes only; endpoints are written as nan."""
    return np.concatenate([[np.nan], interior, [np.nan]])


def write_extremal_csv(path, problem, traj, step):
    _write_csv(Path(path), EXTREMAL_HEADER,
               (traj.t, traj.x, traj.nn_velocity,
                _pad(el_residual(problem, traj, step)), _pad(dbr_residual(problem, traj, step))))


def read_extremal_csv(path):
    """Read back the columns of an ``extremal.csv`` as float arrays."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if tuple(rows[0]) != EXTREMAL_HEADER:
        raise ValueError(f"unexpected header {rows[0]}")
    data = np.array(rows[1:], dtype=float)
    return {name: data[:, i] for i, name in enumerate(EXTREMAL_HEADER)}


def _load(args):
    source = args.problem
    if source in CATALOG:
        cfg = catalog_config(source)
    elif Path(source).is_file():
        cfg = load_config(source)
    else:
        raise ConfigError(f"{source!r} is neither a catalog name ({', '.join(catalog_names())}) nor a file")
    return cfg.with_numeric(grid_n=args.grid, tol=args.tol, max_iter=args.max_iter,
                            fd_step=args.fd_step, s_step=args.s_step)


def _solve(cfg, problem):
    num = cfg.numeric
    return solve_extremal(problem, num.grid_n, num.tol, num.max_iter, num.fd_step)


def cmd_solve(args) -> int:
    try:
        cfg = _load(args)
        problem = cfg.problem()
    except NNError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        traj = _solve(cfg, problem)
    except NNError as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    step = cfg.numeric.fd_step
    write_extremal_csv(out / "extremal.csv", problem, traj, step)
    el = np.max(np.abs(el_residual(problem, traj, step)))
    dbr = np.max(np.abs(dbr_residual(problem, traj, step)))
    print(f"problem     {cfg.name or args.problem}: L = {problem.source}")
    print(f"interval    [{problem.a:.6g}, {problem.b:.6g}], x(a) = {problem.alpha:.6g}, x(b) = {problem.beta:.6g}")
    print(f"grid        {len(traj)} nodes, Newton iterations {traj.stats.iterations}")
    print(f"max |EL residual|   {el:.3e}  (tol {cfg.numeric.tol:.1e})")
    print(f"max |DBR residual|  {dbr:.3e}")
    print(f"wrote {out / 'extremal.csv'}")
    return EXIT_OK


def cmd_noether(args) -> int:
    try:
        cfg = _load(args)
        problem = cfg.problem()
        families = cfg.build_families()
    except NNError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not families:
        print("error: configuration defines no [family ...] sections", file=sys.stderr)
        return EXIT_CONFIG
    num = cfg.numeric
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    traj = None
    rows = []
    for fam in families:
        try:
            defect = invariance_defect(problem, fam, s_step=num.s_step)
        except NNError as exc:
            rows.append((fam.label, float("nan"), float("nan"), f"degenerate ({exc})"))
            continue
        if defect > num.invariance_tol:
            rows.append((fam.label, defect, float("nan"), "not-invariant"))
            continue
        if traj is None:
            try:
                traj = _solve(cfg, problem)
            except NNError as exc:
                print(f"solver failed: {exc}", file=sys.stderr)
                return EXIT_SOLVER
        report = noether_quantity(problem, traj, fam, num.s_step, num.conservation_tol, num.fd_step, el_tol=None)
        _write_csv(out / f"noether_{fam.label}.csv", NOETHER_HEADER,
                   (report.t, report.quantity_trace, report.log_deviation))
        rows.append((fam.label, defect, report.max_log_deviation, report.verdict))

    print(f"problem {cfg.name or args.problem}: L = {problem.source}")
    print(f"probes  {describe_probes()}")
    print(f"{'family':<14} {'defect':>10} {'max log dev':>12}  verdict")
    for label, defect, dev, verdict in rows:
        print(f"{label:<14} {defect:>10.2e} {dev:>12.2e}  {verdict}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.show:
        if args.show not in CATALOG:
            print(f"error: no catalog problem {args.show!r}", file=sys.stderr)
            return EXIT_CONFIG
        print(CATALOG[args.show].strip())
        return EXIT_OK
    for name in catalog_names():
        cfg = catalog_config(name)
        labels = ", ".join(f.label for f in cfg.families)
        print(f"{name:<18} L = {cfg.lagrangian:<40} families: {labels}")
    return EXIT_OK


def _add_common(p):
    p.add_argument("--problem", required=True, help="catalog name or configuration file")
    p.add_argument("--grid", type=int, help="number of grid nodes (default 201)")
    p.add_argument("--tol", type=float, help="Euler-Lagrange residual tolerance (default 1e-8)")
    p.add_argument("--max-iter", type=int, help="Newton iteration cap (default 50)")
    p.add_argument("--fd-step", type=float, help="finite-difference step in log coordinates (default 1e-4)")
    p.add_argument("--s-step", type=float, help="step in ln s for symmetry derivatives (default 1e-4)")
    p.add_argument("--out", default=".", help="output directory for CSV files")


def build_parser():
    parser = argparse.ArgumentParser(prog="nnvar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", help="solve the Euler-Lagrange boundary-value problem")
    _add_common(p)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("noether", help="test symmetry families and trace their conserved quantities")
    _add_common(p)
    p.set_defaults(func=cmd_noether)
    p = sub.add_parser("catalog", help="list built-in problems")
    p.add_argument("--show", metavar="NAME", help="print the configuration of one problem")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
