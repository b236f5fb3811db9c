"""Exact motives of noncommutative Quot schemes, with series and F_p cross-checks."""

from .laurent import LPoly, NonExactDivision, NonMonicDivisor, HalfIntegerExponent
from .motives import (
    MotiveCache,
    betti_numbers,
    closed_form_d1,
    dimension,
    euler_char,
    gaussian_binomial,
    gl_class,
    ncquot_motive,
    quantum_integer,
    rearranged_identity_check,
)
from .series import TruncSeries, z_series

__all__ = [
    "LPoly",
    "NonExactDivision",
    "NonMonicDivisor",
    "HalfIntegerExponent",
    "MotiveCache",
    "betti_numbers",
    "closed_form_d1",
    "dimension",
    "euler_char",
    "gaussian_binomial",
    "gl_class",
    "ncquot_motive",
    "quantum_integer",
    "rearranged_identity_check",
    "TruncSeries",
    "z_series",
]
