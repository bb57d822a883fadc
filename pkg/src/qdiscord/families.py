"""Named one-parameter state families and their closed-form alpha curves.

werner(x) = (I + x (sx sx + sy sy + sz sz)) / 4 with spectrum
{(1+x)/4 triple, (1-3x)/4}; physical for x in [-1, 1/3].

zurek(z) = (|00><00| + |11><11|) / 2 + z (|00><11| + |11><00|) / 2 with
spectrum {(1+z)/2, (1-z)/2, 0, 0}; physical for z in [-1, 1].

Both families have maximally mixed marginals, so their alpha evaluation
exercises the degenerate-eigenbasis search.  The reference formulas below
mirror the known closed forms term by term, so a disagreement between them
and the search is a real diagnostic, not a transcription artifact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ValidationError
from .states import DensityMatrix, validate

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

WERNER_RANGE = (-1.0, 1.0 / 3.0)
ZUREK_RANGE = (-1.0, 1.0)

FAMILY_RANGES = {"werner": WERNER_RANGE, "zurek": ZUREK_RANGE}


@dataclass(frozen=True)
class FamilyPoint:
    """A named family and a parameter value inside its physical range."""

    family: str
    parameter: float

    def __post_init__(self):
        if self.family not in FAMILY_RANGES:
            raise ValidationError(
                "family", 0.0, f"unknown family {self.family!r}; "
                f"choose from {sorted(FAMILY_RANGES)}"
            )
        lo, hi = FAMILY_RANGES[self.family]
        if not lo <= self.parameter <= hi:
            raise ValidationError(
                "parameter",
                float(self.parameter),
                f"{self.family} parameter {self.parameter} outside [{lo:g}, {hi:g}]",
            )


def werner(x: float) -> DensityMatrix:
    """Isotropically correlated two-qubit state at mixing parameter x."""
    if not WERNER_RANGE[0] <= x <= WERNER_RANGE[1]:
        bad = (1.0 - 3.0 * x) / 4.0 if x > WERNER_RANGE[1] else (1.0 + x) / 4.0
        raise ValidationError(
            "positive",
            float(-bad),
            f"werner({x:g}) has negative eigenvalue {bad:g}; "
            f"physical range is [{WERNER_RANGE[0]:g}, {WERNER_RANGE[1]:g}]",
        )
    pauli_dot = (
        linalg.tensor_product(SIGMA_X, SIGMA_X)
        + linalg.tensor_product(SIGMA_Y, SIGMA_Y)
        + linalg.tensor_product(SIGMA_Z, SIGMA_Z)
    )
    return validate((np.eye(4, dtype=complex) + x * pauli_dot) / 4.0, split=(2, 2))


def zurek(z: float) -> DensityMatrix:
    """Two-qubit mixture of |00> and |11> with coherence z between them."""
    if not ZUREK_RANGE[0] <= z <= ZUREK_RANGE[1]:
        raise ValidationError(
            "positive",
            abs(z) - 1.0,
            f"zurek({z:g}) has negative eigenvalue {(1.0 - abs(z)) / 2.0:g}; "
            f"physical range is [{ZUREK_RANGE[0]:g}, {ZUREK_RANGE[1]:g}]",
        )
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = 0.5
    rho[0, 3] = rho[3, 0] = z / 2.0
    return validate(rho, split=(2, 2))


def _term(coefficient: float, argument: float) -> float:
    """coefficient * log2(argument) with the 0 * log 0 convention."""
    if coefficient <= 1e-12:
        return 0.0
    return coefficient * math.log2(argument)


def alpha_werner_reference(x: float) -> float:
    """Closed-form alpha for werner(x), in bits."""
    FamilyPoint("werner", float(x))
    return (
        _term((1.0 + x) / 4.0, (1.0 + x) / 4.0)
        + _term((1.0 - 3.0 * x) / 4.0, (1.0 - 3.0 * x) / 4.0)
        - _term((1.0 - x) / 2.0, (1.0 - x) / 4.0)
    )


def alpha_zurek_reference(z: float) -> float:
    """Closed-form alpha for zurek(z), in bits."""
    FamilyPoint("zurek", float(z))
    return (
        _term((1.0 + z) / 2.0, (1.0 + z) / 2.0)
        + _term((1.0 - z) / 2.0, (1.0 - z) / 2.0)
        + 1.0
    )


def family_state(family: str, parameter: float) -> DensityMatrix:
    point = FamilyPoint(family, float(parameter))
    return werner(point.parameter) if family == "werner" else zurek(point.parameter)


def family_reference(family: str, parameter: float) -> float:
    if family == "werner":
        return alpha_werner_reference(parameter)
    return alpha_zurek_reference(parameter)
