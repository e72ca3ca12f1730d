"""Exception hierarchy shared by the library and the CLI."""


class DunklHermiteError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(DunklHermiteError, ValueError):
    pass


class InternalConsistencyError(DunklHermiteError, ArithmeticError):
    """An exact identity that must hold by construction failed.

    This signals an arithmetic bug, never bad user input. ``witness`` carries
    whatever object demonstrates the failure (a residual polynomial, a
    remainder, ...).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DecompositionError(DunklHermiteError, ValueError):
    """A polynomial is not of the form sum_j a_j x^j P_n."""


class UnsupportedGroupError(DunklHermiteError, NotImplementedError):
    pass


class ConfigError(DunklHermiteError, ValueError):
    """Invalid user configuration (bad family, multiplicities, ranges)."""
