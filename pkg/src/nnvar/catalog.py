"""Built-in problems and symmetry families."""

from __future__ import annotations

from .config import ProblemConfig, parse_config
from .errors import ConfigError

ENERGY = """
[family energy]
T = t ~+ s
X = x
gauge = 1
"""

MOMENTUM = """
[family momentum]
T = t
X = x ~+ s
gauge = 1
"""

# x -> x^s rescales ln x; not a symmetry of any catalog Lagrangian
SCALING = """
[family scaling]
T = t
X = x ^ s
gauge = 1
"""

CATALOG = {
    "power": """
[problem]
lagrangian = v ~* v
interval = 1, e
boundary = 1, exp(2)
autonomous = yes
x_free = yes
""" + ENERGY + MOMENTUM + SCALING,
    "autonomous-energy": """
[problem]
lagrangian = (v ~* v) ~* (e ~+ x ~* x)
interval = 1, e
boundary = 1, e
autonomous = yes
""" + ENERGY,
    "x-free-momentum": """
[problem]
lagrangian = v ~* v ~+ exp(sin(ln(t))) ~* v
interval = 1, e
boundary = 1, e
x_free = yes
""" + MOMENTUM,
    "coupled": """
[problem]
lagrangian = v ~* v ~+ x ~* x
interval = 1, e
boundary = 1, e
autonomous = yes
""" + ENERGY,
}


def catalog_names():
    return sorted(CATALOG)


def catalog_config(name: str) -> ProblemConfig:
    try:
        text = CATALOG[name]
    except KeyError:
        raise ConfigError(f"no catalog problem named {name!r}; choose from {', '.join(catalog_names())}") from None
    return parse_config(text, name)
