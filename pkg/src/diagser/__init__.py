"""diagser: exact truncated formal power series with combinatorial
Fourier/Legendre transforms and a brute-force Wick-pairing oracle."""

from .context import Caps, Ctx, ctx
from .errors import *  # noqa: F401,F403
from .monomial import Monomial, ONE_M, lam, mono, msym
from .poly import ONE_P, Poly, ZERO_P
from .scalar import I, ONE, Scalar, ZERO, i_power
from .series import (Series, comp_inverse, exact_series, lagrange_solve,
                     laurent_compose, residue_compose_check)

__all__ = [
    "Caps", "Ctx", "ctx", "Monomial", "ONE_M", "lam", "mono", "msym",
    "ONE_P", "Poly", "ZERO_P", "I", "ONE", "Scalar", "ZERO", "i_power",
    "Series", "comp_inverse", "exact_series", "lagrange_solve",
    "laurent_compose", "residue_compose_check",
]
