"""Exception hierarchy.

The library distinguishes three kinds of failure:

* bad input (malformed measures, unsupported quadrature, evaluation on a
  pole or cut) -- ordinary ``ValueError``-style exceptions;
* degeneracy (a measure with too few points of increase makes a leading
  minor vanish) -- reported, recoverable;
* theory violations -- an identity that is a theorem for valid input fails
  in exact arithmetic.  This can only happen if the input data is corrupt
  (e.g. a negative weight smuggled past validation) or the code is wrong,
  so it gets its own class and the CLI maps it to a dedicated exit code.
"""


class CauchybopError(Exception):
    """Base class for all library errors."""


class PrecisionExhaustedError(CauchybopError):
    """Exact arithmetic exceeded the configured bit bound."""


class KernelSingularityError(CauchybopError):
    """Kernel evaluated at a singular point (x + y = 0 for the Cauchy kernel)."""


class InvalidDensityError(CauchybopError):
    """Density evaluated non-positive at a quadrature node."""


class DegenerateMatrixError(CauchybopError):
    """A leading principal minor vanished; the measure has too few points
    of increase for the requested order."""

    def __init__(self, order: int, message: str | None = None):
        self.order = order
        super().__init__(message or f"degenerate bimoment matrix at order {order}")


class TheoryViolationError(CauchybopError):
    """An exact identity that holds for all valid inputs failed."""


class OrderUnderflowError(CauchybopError):
    """Requested window exceeds the truncation order that was built."""


class PoleEvaluationError(CauchybopError):
    """Pointwise evaluation requested on a pole or cut of the function."""
