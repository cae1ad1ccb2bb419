"""Scalar backends.

Two backends run through the whole library:

* exact -- ``fractions.Fraction``, used whenever the input measures carry
  rational data.  Every identity asserted in exact mode is asserted as
  literal equality of rationals.
* float -- IEEE doubles (complex where needed), used for density-backed
  measures after discretization.

User-facing positions and weights are ingested as decimal strings and
parsed to exact rationals, so a literal like "0.1" never picks up binary
noise on the way in.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecisionExhaustedError

#: Bit bound for numerators/denominators in exact mode.  Generous: the bound
#: exists to turn a runaway computation into a clean error instead of an
#: apparent hang.  Adjustable via :func:`set_bit_bound`.
_MAX_BITS = 1 << 20


def set_bit_bound(bits: int) -> None:
    global _MAX_BITS
    if bits < 64:
        raise ValueError("bit bound must be at least 64")
    _MAX_BITS = bits


def get_bit_bound() -> int:
    return _MAX_BITS


def guard_precision(value) -> None:
    """Raise :class:`PrecisionExhaustedError` if an exact value outgrew the bound."""
    if isinstance(value, Fraction):
        if (value.numerator.bit_length() > _MAX_BITS
                or value.denominator.bit_length() > _MAX_BITS):
            raise PrecisionExhaustedError(
                f"precision exhausted: rational exceeds {_MAX_BITS} bits")
    elif isinstance(value, int) and value.bit_length() > _MAX_BITS:
        raise PrecisionExhaustedError(
            f"precision exhausted: integer exceeds {_MAX_BITS} bits")


def parse_exact(text: str) -> Fraction:
    """Parse a decimal string ("1.25", "3", "7/4") to an exact rational."""
    return Fraction(str(text).strip())


def is_exact(x) -> bool:
    """True for scalars that participate in the exact backend."""
    return isinstance(x, (int, Fraction))


def format_scalar(x) -> str:
    """Lossless string form: "p/q" for rationals, repr for floats."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, complex):
        return repr(x)
    return repr(float(x))


def scalar_sqrt(x) -> float:
    """Positive square root as a float (normalized quantities live in the
    float layer only)."""
    value = float(x)
    if value < 0:
        raise ValueError("square root of a negative scalar")
    return value ** 0.5
