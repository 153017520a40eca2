"""Problem configuration files.

A configuration is INI-style key/value text::

    [problem]
    lagrangian = v ~* v
    interval = 1, e
    boundary = 1, exp(2)
    autonomous = yes
    x_free = yes

    [numeric]            ; optional, defaults shown in NumericConfig
    grid_n = 201

    [family energy]      ; zero or more, one per symmetry family
    T = t ~+ s
    X = x
    gauge = 1

Numbers may be written as constant expressions (``e``, ``exp(2)``).
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import List, Tuple

from .errors import ConfigError
from .expr import evaluate, parse
from .noether import TransformationFamily
from .variational import VariationalProblem

__all__ = ["NumericConfig", "FamilySpec", "ProblemConfig", "parse_config", "load_config"]


@dataclass(frozen=True)
class NumericConfig:
    grid_n: int = 201
    tol: float = 1e-8
    max_iter: int = 50
    fd_step: float = 1e-4
    s_step: float = 1e-4
    invariance_tol: float = 1e-8
    conservation_tol: float = 1e-5

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ConfigError(f"numeric.{f.name} must be positive")
        if self.grid_n < 5:
            raise ConfigError(f"grid_n must be >= 5, got {self.grid_n}")


@dataclass(frozen=True)
class FamilySpec:
    label: str
    T: str
    X: str
    gauge: str = "1"

    def build(self) -> TransformationFamily:
        return TransformationFamily.from_text(self.T, self.X, self.gauge, self.label)


@dataclass(frozen=True)
class ProblemConfig:
    lagrangian: str
    interval: Tuple[float, float]
    boundary: Tuple[float, float]
    autonomous: bool = False
    x_free: bool = False
    families: List[FamilySpec] = field(default_factory=list)
    numeric: NumericConfig = field(default_factory=NumericConfig)
    name: str = ""

    def __post_init__(self):
        parse(self.lagrangian, ("t", "x", "v"))

    def problem(self) -> VariationalProblem:
        a, b = self.interval
        alpha, beta = self.boundary
        return VariationalProblem.from_text(self.lagrangian, a, b, alpha, beta,
                                            self.autonomous, self.x_free)

    def build_families(self) -> List[TransformationFamily]:
        return [spec.build() for spec in sorted(self.families, key=lambda f: f.label)]

    def with_numeric(self, **overrides) -> "ProblemConfig":
        """Copy with some numeric settings replaced; None values are ignored."""
        kept = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, numeric=replace(self.numeric, **kept))


def _number(text, key):
    try:
        return float(evaluate(parse(text, ()), {}))
    except (ValueError, ArithmeticError) as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _pair(text, key):
    parts = [p for p in text.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"{key} needs two comma-separated values, got {text!r}")
    return tuple(_number(p.strip(), key) for p in parts)


def parse_config(text: str, name: str = "") -> ProblemConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from exc
    if "problem" not in cp:
        raise ConfigError("missing [problem] section")
    sec = cp["problem"]
    for key in ("lagrangian", "interval", "boundary"):
        if key not in sec:
            raise ConfigError(f"[problem] needs a {key!r} entry")
    try:
        autonomous = sec.getboolean("autonomous", False)
        x_free = sec.getboolean("x_free", False)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    numeric = {}
    if "numeric" in cp:
        known = {f.name: f.type for f in fields(NumericConfig)}
        for key, raw in cp["numeric"].items():
            if key not in known:
                raise ConfigError(f"unknown numeric setting {key!r}")
            value = _number(raw, key)
            numeric[key] = int(value) if key in ("grid_n", "max_iter") else value

    families = []
    for section in cp.sections():
        if not section.startswith("family"):
            continue
        label = section[len("family"):].strip()
        if not label:
            raise ConfigError("family sections are named [family <label>]")
        fam = cp[section]
        if "T" not in fam or "X" not in fam:
            raise ConfigError(f"[{section}] needs T and X")
        families.append(FamilySpec(label, fam["T"], fam["X"], fam.get("gauge", "1")))

    return ProblemConfig(sec["lagrangian"], _pair(sec["interval"], "interval"),
                         _pair(sec["boundary"], "boundary"), autonomous, x_free, families,
                         NumericConfig(**numeric), name)


def load_config(path) -> ProblemConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(text, path.stem)
