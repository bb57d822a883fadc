"""Physically validated density matrices, entropy, and state constructors.

Entropies are in bits throughout (base-2 logarithm), with the usual
convention 0*log(0) = 0.  Eigenvalues and probabilities below ``PROB_FLOOR``
are treated as exactly zero before taking logs, which absorbs the negative
noise admitted by the PSD tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import linalg
from .errors import DimensionError, ValidationError

if TYPE_CHECKING:
    from .measurement import MeasurementBasis

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """A validated quantum state, optionally with a bipartite split (m, n).

    Construct through :func:`validate`; the matrix array is read-only.
    """

    matrix: np.ndarray
    split: tuple[int, int] | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def validate(matrix, split: tuple[int, int] | None = None) -> DensityMatrix:
    """Check Hermiticity, unit trace, and positivity; return a DensityMatrix.

    Raises :class:`ValidationError` naming the violated invariant and its
    magnitude, or :class:`DimensionError` if the split does not match.
    """
    a = linalg.as_complex_matrix(matrix)
    if split is not None:
        m, n = split
        if m < 1 or n < 1 or m * n != a.shape[0]:
            raise DimensionError(
                f"split ({m}, {n}) does not factor dimension {a.shape[0]}"
            )
        split = (int(m), int(n))
    dev = linalg.hermiticity_deviation(a)
    if dev > HERMITIAN_TOL:
        raise ValidationError(
            "hermitian", dev, f"not Hermitian: max |M - M^dag| = {dev:.3e}"
        )
    tr = complex(np.trace(a))
    tr_dev = abs(tr - 1.0)
    if tr_dev > TRACE_TOL:
        raise ValidationError(
            "trace", tr_dev, f"trace deviates from 1 by {tr_dev:.3e} (trace = {tr:.6g})"
        )
    eigs = linalg.hermitian_eigenvalues(a)
    lo = float(eigs[-1])
    if lo < -PSD_TOL:
        raise ValidationError(
            "positive", -lo, f"negative eigenvalue {lo:.3e} below PSD tolerance"
        )
    a = (a + linalg.dagger(a)) / 2.0
    a.flags.writeable = False
    return DensityMatrix(a, split)


def _xlog2x(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p, dtype=float)
    mask = p > PROB_FLOOR
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def shannon_entropy(probabilities) -> float:
    """-sum p log2 p over a probability vector, in bits."""
    p = np.asarray(probabilities, dtype=float)
    return float(-np.sum(_xlog2x(p)))


def matrix_entropy(matrix) -> float:
    """Entropy in bits of a PSD Hermitian matrix given as a raw array."""
    return shannon_entropy(linalg.hermitian_eigenvalues(matrix))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum lambda_i log2 lambda_i over the spectrum of the state, in bits."""
    return matrix_entropy(rho.matrix)


@dataclass(frozen=True)
class SeparableSpec:
    """Mixing weights p_i and component pairs defining sum_i p_i rhoS_i x rhoA_i."""

    weights: np.ndarray
    components: tuple[tuple[DensityMatrix, DensityMatrix], ...]

    @property
    def dims(self) -> tuple[int, int]:
        s, a = self.components[0]
        return s.dim, a.dim


def separable_spec(weights, components) -> SeparableSpec:
    """Validate weights and component dimensions, returning a SeparableSpec."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(components) != w.size or w.size == 0:
        raise DimensionError("weights and components must be equal-length and nonempty")
    if np.any(w < -PROB_FLOOR):
        raise ValidationError(
            "weights", float(-w.min()), f"negative mixing weight {w.min():.3e}"
        )
    dev = abs(float(w.sum()) - 1.0)
    if dev > 1e-12:
        raise ValidationError(
            "weights", dev, f"mixing weights sum deviates from 1 by {dev:.3e}"
        )
    comps = tuple((s, a) for s, a in components)
    m, n = comps[0][0].dim, comps[0][1].dim
    for s, a in comps:
        if s.dim != m or a.dim != n:
            raise DimensionError("all component pairs must share dimensions (m, n)")
    w = w.copy()
    w.flags.writeable = False
    return SeparableSpec(w, comps)


def assemble_separable(spec: SeparableSpec) -> DensityMatrix:
    """sum_i p_i rhoS_i x rhoA_i as a validated bipartite state."""
    m, n = spec.dims
    acc = np.zeros((m * n, m * n), dtype=complex)
    for w, (s, a) in zip(spec.weights, spec.components):
        acc += w * linalg.tensor_product(s.matrix, a.matrix)
    return validate(acc, split=(m, n))


def classical_classical(
    table, basis_S: "MeasurementBasis", basis_A: "MeasurementBasis"
) -> DensityMatrix:
    """sum_ij p_ij P_i x Q_j for a probability table and two projector sets.

    States of this form carry zero discord by construction; they are the
    natural fixtures for the zero-discord checker.
    """
    p = np.asarray(table, dtype=float)
    if p.ndim != 2:
        raise DimensionError(f"probability table must be 2-D, got shape {p.shape}")
    m, n = p.shape
    if basis_S.dim != m or basis_A.dim != n:
        raise DimensionError(
            f"table shape {p.shape} does not match basis dims "
            f"({basis_S.dim}, {basis_A.dim})"
        )
    if np.any(p < -PROB_FLOOR):
        raise ValidationError(
            "probability", float(-p.min()), f"negative table entry {p.min():.3e}"
        )
    dev = abs(float(p.sum()) - 1.0)
    if dev > 1e-9:
        raise ValidationError(
            "probability", dev, f"table sum deviates from 1 by {dev:.3e}"
        )
    acc = np.zeros((m * n, m * n), dtype=complex)
    for i in range(m):
        for j in range(n):
            if p[i, j] != 0.0:
                acc += p[i, j] * linalg.tensor_product(
                    basis_S.projectors[i], basis_A.projectors[j]
                )
    return validate(acc, split=(m, n))


def random_density(dim: int, rank: int, seed) -> DensityMatrix:
    """GG^dag / Tr(GG^dag) for a dim x rank complex Gaussian G.

    ``seed`` may be an integer or a numpy Generator; output is deterministic
    for a fixed seed.
    """
    if not 1 <= rank <= dim:
        raise DimensionError(f"rank must satisfy 1 <= rank <= dim, got rank={rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ linalg.dagger(g)
    rho /= np.trace(rho).real
    return validate(rho)


def random_separable(m: int, n: int, k_components: int, seed) -> SeparableSpec:
    """Dirichlet(1) weights and full-rank Gaussian component states."""
    if k_components < 1:
        raise DimensionError("k_components must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(k_components))
    components = [
        (random_density(m, m, rng), random_density(n, n, rng))
        for _ in range(k_components)
    ]
    return separable_spec(weights, components)
