"""Hypergeometric series for 1/pi and 1/pi^2 derived from singular moduli.

Modules layer as ``precision`` -> ``elliptic`` -> ``modular`` -> ``series``,
with ``recognize`` turning numeric constants into integer polynomials and
``cli`` exposing everything as the ``rpf`` command.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CalibrationError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    PrecisionError,
    RPFError,
)
from .kernels import BACKEND  # noqa: E402
from .precision import BigReal, PrecisionContext, make_context, pi_const  # noqa: E402

__all__ = [
    "BACKEND",
    "BigReal",
    "CalibrationError",
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "PrecisionContext",
    "PrecisionError",
    "RPFError",
    "make_context",
    "pi_const",
]
