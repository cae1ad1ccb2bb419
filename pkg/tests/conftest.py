"""Shared fixtures: worked measure pairs and prebuilt apparatus."""

from fractions import Fraction
from random import Random

import pytest

from cauchybop import Atom, DiscreteMeasure, build_apparatus, measure_from_strings


@pytest.fixture(scope="session")
def two_atom_pair():
    alpha = measure_from_strings([("1", "1"), ("2", "1")])
    beta = measure_from_strings([("1", "1"), ("3", "1")])
    return alpha, beta


@pytest.fixture(scope="session")
def six_atom_pair():
    alpha = measure_from_strings(
        [("1", "1"), ("2", "1"), ("3.5", "0.25"), ("4", "2"),
         ("1.25", "0.8"), ("6", "1")])
    beta = measure_from_strings(
        [("0.5", "2"), ("1", "1"), ("3", "1"), ("4.5", "0.125"),
         ("2.25", "1.7"), ("7", "0.3")])
    return alpha, beta


@pytest.fixture(scope="session")
def app6(six_atom_pair):
    """Degree-5 apparatus on the six-atom pair (exact)."""
    return build_apparatus(*six_atom_pair, N=5)


def random_rational_measure(rng: Random, atoms: int) -> DiscreteMeasure:
    """Distinct positive rational atoms with positive rational weights."""
    positions = set()
    while len(positions) < atoms:
        positions.add(Fraction(rng.randint(1, 60), rng.randint(1, 8)))
    return DiscreteMeasure(tuple(
        Atom(p, Fraction(rng.randint(1, 12), rng.randint(1, 6)))
        for p in sorted(positions)))


def rational_points_off(measures, count: int, start: int = 1):
    """Deterministic rational points avoiding every atom and reflected atom."""
    poles = set()
    for m in measures:
        for p in m.signed_positions():
            poles.add(Fraction(p))
            poles.add(-Fraction(p))
    pts = []
    k = start
    while len(pts) < count:
        for cand in (Fraction(2 * k + 1, 7), -Fraction(3 * k + 2, 11),
                     Fraction(k, 13) + 8):
            if cand not in poles and cand != 0 and len(pts) < count:
                pts.append(cand)
        k += 1
    return pts
