"""Positive measures on a half-line.

Two concrete representations:

* :class:`DiscreteMeasure` -- finitely many atoms with strictly positive
  positions and weights.  With rational data the whole downstream pipeline
  runs in exact arithmetic.
* :class:`DensityMeasure` -- a strictly positive density on a compact
  interval [a, b] with 0 <= a < b, reduced to a float
  :class:`DiscreteMeasure` by Gauss-Legendre quadrature before anything
  else touches it.

Reflection about the origin is a flag, not a data rewrite: the measure
``m*`` obtained by reflecting the support shares the atom list with ``m``
and evaluators consult ``orientation``.  Consequently
``moment(reflect(m), j) == (-1)**j * moment(m, j)`` holds exactly.

Measures with unbounded support are handled only through a user-supplied
truncation interval.  The density of polynomials in the associated L2
spaces is an assumption of the construction and is recorded here, not
verified.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidDensityError
from .polys import peval
from .scalars import guard_precision, is_exact, parse_exact


@dataclass(frozen=True)
class Atom:
    """A point mass: position on the (positive) real line and weight."""
    position: Fraction | float
    weight: Fraction | float

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError(f"atom weight must be positive, got {self.weight}")
        if self.position <= 0:
            raise ValueError(
                f"atom position must be strictly positive, got {self.position}")


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many atoms; ``orientation=-1`` marks the reflected copy."""
    atoms: tuple[Atom, ...]
    orientation: int = 1

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a discrete measure needs at least one atom")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        positions = [a.position for a in self.atoms]
        if len(set(positions)) != len(positions):
            raise ValueError("atom positions must be pairwise distinct")
        object.__setattr__(self, "atoms",
                           tuple(sorted(self.atoms, key=lambda a: a.position)))

    # -- basic queries -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return all(is_exact(a.position) and is_exact(a.weight) for a in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def positions(self):
        """Unreflected positions (all > 0), ascending."""
        return tuple(a.position for a in self.atoms)

    def weights(self):
        return tuple(a.weight for a in self.atoms)

    def signed_positions(self):
        """Actual supports: positions with the orientation applied."""
        return tuple(self.orientation * a.position for a in self.atoms)

    def support_hull(self):
        """(min, max) of the actual support."""
        pts = self.signed_positions()
        return min(pts), max(pts)

    def total_mass(self):
        return sum(self.weights())

    def integrate(self, f: Callable):
        """Integrate a callable against the measure (orientation applied)."""
        return sum(a.weight * f(self.orientation * a.position) for a in self.atoms)


@dataclass(frozen=True)
class DensityMeasure:
    """Absolutely continuous measure on [a, b] with strictly positive density.

    The density may be given directly as a callable or as a polynomial
    potential U with scale hbar, meaning density(x) = exp(-U(x)/hbar).
    """
    support: tuple[float, float]
    density: Callable[[float], float] | None = None
    potential: Sequence[float] | None = None   # polynomial coefficients of U
    hbar: float = 1.0
    quadrature: str = "gauss-legendre"
    order: int = 64

    def __post_init__(self):
        a, b = self.support
        if not (0 <= a < b):
            raise ValueError(f"support must satisfy 0 <= a < b, got [{a}, {b}]")
        if (self.density is None) == (self.potential is None):
            raise ValueError("give exactly one of density / potential")
        if self.order < 1:
            raise ValueError("quadrature node count must be >= 1")
        if self.quadrature != "gauss-legendre":
            raise ValueError(f"unsupported quadrature rule {self.quadrature!r}")

    def density_at(self, x: float) -> float:
        if self.density is not None:
            return float(self.density(x))
        return float(np.exp(-peval(tuple(self.potential), x) / self.hbar))


Measure = DiscreteMeasure | DensityMeasure


# -- operations ---------------------------------------------------------------


def moment(m: Measure, j: int):
    """j-th power moment; exact rational for discrete-rational measures."""
    if j < 0:
        raise ValueError("moment order must be nonnegative")
    if isinstance(m, DensityMeasure):
        m = discretize(m)
    total = 0
    for atom in m.atoms:
        total += atom.weight * (m.orientation * atom.position) ** j
        guard_precision(total)
    return total


def reflect(m: Measure) -> Measure:
    """Reflect the support about the origin (an involution on the flag)."""
    if isinstance(m, DensityMeasure):
        raise ValueError("reflect a density measure after discretization")
    return replace(m, orientation=-m.orientation)


def discretize(m: DensityMeasure) -> DiscreteMeasure:
    """Gauss-Legendre reduction to float atoms (node, weight * density(node)).

    Total mass reproduces the integral of the density to the accuracy of
    the rule; for a polynomial density of degree <= 2*order - 1 it is exact
    up to rounding.
    """
    a, b = m.support
    nodes, weights = np.polynomial.legendre.leggauss(m.order)
    half = (b - a) / 2.0
    mid = (b + a) / 2.0
    atoms = []
    for t, w in zip(nodes, weights):
        x = mid + half * t
        rho = m.density_at(x)
        if not rho > 0:
            raise InvalidDensityError(f"invalid density: {rho} at node {x}")
        atoms.append(Atom(float(x), float(w * half * rho)))
    return DiscreteMeasure(tuple(atoms))


def measure_from_strings(pairs: Sequence[tuple[str, str]]) -> DiscreteMeasure:
    """Build an exact discrete measure from (position, weight) decimal strings."""
    return DiscreteMeasure(tuple(Atom(parse_exact(x), parse_exact(w))
                                 for x, w in pairs))
