"""Dunkl-Clifford-Hermite polynomials in exact arithmetic."""
from .clifford import Multivector
from .errors import (ConfigError, DecompositionError, DimensionMismatch, DunklHermiteError,
                     InternalConsistencyError, UnsupportedGroupError)
from .gammaexpr import GammaExpr
from .hermite import HermiteFamily, c_coefficient, hermite_generate
from .monogenic import module_basis, monogenic_kernel, orthonormalize_Z2
from .multipoly import CPoly
from .reflection import ReflectionData, build_group

__all__ = [
    "CPoly", "ConfigError", "DecompositionError", "DimensionMismatch", "DunklHermiteError",
    "GammaExpr", "HermiteFamily", "InternalConsistencyError", "Multivector", "ReflectionData",
    "UnsupportedGroupError", "build_group", "c_coefficient", "hermite_generate", "module_basis",
    "monogenic_kernel", "orthonormalize_Z2",
]
