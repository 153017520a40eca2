"""Numerical non-Newtonian calculus of variations and Noether conservation laws."""

from .analysis import ScalarCurve, TernaryField, nn_derivative, nn_integral, nn_partial, nn_second_derivative
from .arith import PosReal, conjugate, nn_add, nn_div, nn_mul, nn_sub, unconjugate
from .expr import evaluate, parse, pretty
from .noether import (
    ConservationReport,
    TransformationFamily,
    invariance_defect,
    noether_quantity,
    proof_identity_check,
)
from .variational import (
    Trajectory,
    VariationalProblem,
    dbr_residual,
    el_residual,
    erdmann_trace,
    hamiltonian_value,
    momentum,
    solve_extremal,
)

__version__ = "0.1.0"
