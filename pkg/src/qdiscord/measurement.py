"""Rank-1 projective measurement bases and measurement channels.

Qubit bases use the Bloch chart (theta, phi); higher dimensions are reached
by applying products of complex Givens rotations to the computational basis,
which is also the parametrization the optimizers grid over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConsistencyError, DimensionError, ValidationError
from .states import DensityMatrix, shannon_entropy, validate

BASIS_TOL = 1e-10
DEGENERACY_GAP = 1e-8


@dataclass(frozen=True)
class MeasurementBasis:
    """A complete set of rank-1 orthogonal projectors.

    ``vectors`` holds the basis vectors as columns when the basis was built
    from vectors; bases assembled from raw projectors leave it None.
    """

    dim: int
    projectors: np.ndarray  # (dim, dim, dim): projectors[j] = |v_j><v_j|
    vectors: np.ndarray | None = None

    def __post_init__(self):
        p = self.projectors
        if p.shape != (self.dim, self.dim, self.dim):
            raise DimensionError(
                f"need {self.dim} projectors of dim {self.dim}, got shape {p.shape}"
            )
        for j in range(self.dim):
            pj = p[j]
            idem = float(np.max(np.abs(pj @ pj - pj)))
            if idem > BASIS_TOL:
                raise ValidationError(
                    "projector", idem, f"projector {j} not idempotent: {idem:.3e}"
                )
            tr_dev = abs(np.trace(pj) - 1.0)
            if tr_dev > BASIS_TOL:
                raise ValidationError(
                    "projector", float(tr_dev), f"projector {j} not rank-1: {tr_dev:.3e}"
                )
        comp = float(np.max(np.abs(p.sum(axis=0) - np.eye(self.dim))))
        if comp > BASIS_TOL:
            raise ValidationError(
                "completeness", comp, f"projectors do not sum to identity: {comp:.3e}"
            )
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                cross = float(np.max(np.abs(p[i] @ p[j])))
                if cross > BASIS_TOL:
                    raise ValidationError(
                        "orthogonality", cross,
                        f"projectors {i}, {j} not orthogonal: {cross:.3e}",
                    )

    @classmethod
    def from_vectors(cls, columns) -> "MeasurementBasis":
        """Build a basis from a matrix whose columns are the basis vectors."""
        u = linalg.as_complex_matrix(columns)
        d = u.shape[0]
        proj = np.einsum("pj,qj->jpq", u, u.conj())
        u = u.copy()
        u.flags.writeable = False
        proj.flags.writeable = False
        return cls(d, proj, u)

    @classmethod
    def from_projectors(cls, projectors) -> "MeasurementBasis":
        p = np.array([linalg.as_complex_matrix(x) for x in projectors])
        p.flags.writeable = False
        return cls(p.shape[0], p, None)


def computational_basis(dim: int) -> MeasurementBasis:
    return MeasurementBasis.from_vectors(np.eye(dim, dtype=complex))


@dataclass(frozen=True)
class QubitBasisAngles:
    """Bloch angles for a qubit basis: theta in [0, pi], phi in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValidationError(
                "angle", self.theta, f"theta = {self.theta} outside [0, pi]"
            )
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValidationError(
                "angle", self.phi, f"phi = {self.phi} outside [0, 2*pi)"
            )


def qubit_vector(theta: float, phi: float) -> np.ndarray:
    """(cos(theta/2), e^{i phi} sin(theta/2))."""
    return np.array(
        [math.cos(theta / 2.0), np.exp(1j * phi) * math.sin(theta / 2.0)],
        dtype=complex,
    )


def qubit_basis(theta: float, phi: float) -> MeasurementBasis:
    """Basis {|v>, |v_perp>} with |v> at Bloch angles (theta, phi)."""
    angles = QubitBasisAngles(float(theta), float(phi))
    c = math.cos(angles.theta / 2.0)
    s = math.sin(angles.theta / 2.0)
    e = np.exp(1j * angles.phi)
    u = np.array([[c, -np.conj(e) * s], [e * s, c]], dtype=complex)
    return MeasurementBasis.from_vectors(u)


def canonical_qubit_angles(vector) -> tuple[float, float]:
    """Bloch angles (theta in [0, pi], phi in [0, 2*pi)) of a qubit state."""
    v = np.asarray(vector, dtype=complex)
    nx = 2.0 * (np.conj(v[0]) * v[1]).real
    ny = 2.0 * (np.conj(v[0]) * v[1]).imag
    nz = (abs(v[0]) ** 2 - abs(v[1]) ** 2).real
    norm = math.sqrt(nx * nx + ny * ny + nz * nz)
    if norm < 1e-15:
        return 0.0, 0.0
    theta = math.acos(max(-1.0, min(1.0, nz / norm)))
    phi = math.atan2(ny, nx) % (2.0 * math.pi)
    if theta < 1e-12 or math.pi - theta < 1e-12:
        phi = 0.0  # azimuth is gauge at the poles
    return theta, phi


def givens_angle_count(dim: int) -> int:
    """Number of (theta, phi) pairs in the Givens chart of U(dim)."""
    return dim * (dim - 1) // 2


def givens_unitary(dim: int, angles) -> np.ndarray:
    """Product of complex plane rotations over index pairs (i < j).

    ``angles`` is a flat sequence (theta_0, phi_0, theta_1, phi_1, ...) with
    one pair per (i, j) in lexicographic order.  Covers every basis up to
    per-vector phases, which projective measurements do not see.
    """
    pairs = [(i, j) for i in range(dim - 1) for j in range(i + 1, dim)]
    angles = np.asarray(angles, dtype=float)
    if angles.size != 2 * len(pairs):
        raise DimensionError(
            f"dim {dim} needs {2 * len(pairs)} angles, got {angles.size}"
        )
    u = np.eye(dim, dtype=complex)
    for k, (i, j) in enumerate(pairs):
        th, ph = angles[2 * k], angles[2 * k + 1]
        c, s = math.cos(th), math.sin(th)
        e = np.exp(1j * ph)
        g = np.eye(dim, dtype=complex)
        g[i, i] = c
        g[i, j] = -np.conj(e) * s
        g[j, i] = e * s
        g[j, j] = c
        u = u @ g
    return u


def basis_from_angles(dim: int, angles) -> MeasurementBasis:
    return MeasurementBasis.from_vectors(givens_unitary(dim, angles))


def random_basis(dim: int, rng) -> MeasurementBasis:
    """Random measurement basis from uniform Givens angles (seed-driven)."""
    rng = np.random.default_rng(rng)
    k = givens_angle_count(dim)
    angles = np.empty(2 * k)
    angles[0::2] = rng.uniform(0.0, math.pi, size=k)
    angles[1::2] = rng.uniform(0.0, 2.0 * math.pi, size=k)
    return basis_from_angles(dim, angles)


@dataclass(frozen=True)
class EigenbasisResult:
    """Eigenbasis of a state plus which eigenvalues form degenerate blocks."""

    basis: MeasurementBasis
    eigenvalues: np.ndarray
    blocks: tuple[tuple[int, ...], ...]

    @property
    def degenerate(self) -> bool:
        return any(len(b) > 1 for b in self.blocks)


def basis_from_eigendecomposition(rho: DensityMatrix) -> EigenbasisResult:
    """Projectors onto the eigenvectors of a state, flagging degeneracies.

    Eigenvalues closer than ``DEGENERACY_GAP`` are grouped into blocks; any
    rotation inside a block still yields an eigenbasis of the state.
    """
    dec = linalg.hermitian_eigendecomposition(rho.matrix)
    blocks: list[list[int]] = [[0]]
    for i in range(1, dec.eigenvalues.size):
        if dec.eigenvalues[i - 1] - dec.eigenvalues[i] < DEGENERACY_GAP:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return EigenbasisResult(
        MeasurementBasis.from_vectors(dec.eigenvectors),
        dec.eigenvalues,
        tuple(tuple(b) for b in blocks),
    )


def _embedded_projectors(basis: MeasurementBasis, rho: DensityMatrix, side: str):
    """Lift a one-sided basis to the joint space as I x P or P x I."""
    if side == "full":
        if basis.dim != rho.dim:
            raise DimensionError(
                f"basis dim {basis.dim} does not match state dim {rho.dim}"
            )
        return basis.projectors
    if rho.split is None:
        raise DimensionError("one-sided measurement requires a bipartite split")
    m, n = rho.split
    if side == "A":
        if basis.dim != n:
            raise DimensionError(f"A-side basis dim {basis.dim} != {n}")
        eye = np.eye(m, dtype=complex)
        return np.array([linalg.tensor_product(eye, p) for p in basis.projectors])
    if side == "S":
        if basis.dim != m:
            raise DimensionError(f"S-side basis dim {basis.dim} != {m}")
        eye = np.eye(n, dtype=complex)
        return np.array([linalg.tensor_product(p, eye) for p in basis.projectors])
    raise ValueError(f"side must be 'full', 'S' or 'A', got {side!r}")


def measure_channel(
    rho: DensityMatrix, basis: MeasurementBasis, side: str = "full"
) -> DensityMatrix:
    """Apply the projective channel rho -> sum_j P_j rho P_j.

    ``side`` selects a one-sided measurement (projectors implicitly embedded
    as I x P or P x I) when the basis lives on a single factor.
    """
    projectors = _embedded_projectors(basis, rho, side)
    out = np.zeros_like(rho.matrix)
    for p in projectors:
        out += p @ rho.matrix @ p
    tr_dev = abs(np.trace(out).real - 1.0)
    if tr_dev > 1e-12:
        raise ConsistencyError(  # pragma: no cover - channel is trace-preserving
            f"projective channel broke the trace by {tr_dev:.3e}"
        )
    return validate(out, split=rho.split)


def product_basis(basis_S: MeasurementBasis, basis_A: MeasurementBasis) -> MeasurementBasis:
    """All tensor products P_i x Q_j, ordered with the joint index i*n + j."""
    m, n = basis_S.dim, basis_A.dim
    if basis_S.vectors is not None and basis_A.vectors is not None:
        return MeasurementBasis.from_vectors(
            np.kron(basis_S.vectors, basis_A.vectors)
        )
    proj = np.empty((m * n, m * n, m * n), dtype=complex)
    for i in range(m):
        for j in range(n):
            proj[i * n + j] = linalg.tensor_product(
                basis_S.projectors[i], basis_A.projectors[j]
            )
    proj.flags.writeable = False
    return MeasurementBasis(m * n, proj, None)


def outcome_distribution(rho: DensityMatrix, basis: MeasurementBasis) -> np.ndarray:
    """Born probabilities p_j = Tr(P_j rho), clipped of sub-1e-12 noise."""
    if basis.dim != rho.dim:
        raise DimensionError(
            f"basis dim {basis.dim} does not match state dim {rho.dim}"
        )
    if basis.vectors is not None:
        p = np.einsum("kj,kl,lj->j", basis.vectors.conj(), rho.matrix, basis.vectors).real
    else:
        p = np.einsum("jkl,lk->j", basis.projectors, rho.matrix).real
    if p.min() < -1e-12:
        raise ValidationError(
            "probability", float(-p.min()),
            f"outcome probability {p.min():.3e} below clipping floor",
        )
    p = np.clip(p, 0.0, None)
    dev = abs(float(p.sum()) - 1.0)
    if dev > 1e-10:
        raise ValidationError(
            "probability", dev, f"outcome probabilities sum deviates by {dev:.3e}"
        )
    return p


def projected_entropy(rho: DensityMatrix, basis: MeasurementBasis) -> float:
    """Shannon entropy in bits of the outcome distribution.

    Equals the von Neumann entropy of the measured state for complete rank-1
    bases, and never drops below the entropy of the input state.
    """
    return shannon_entropy(outcome_distribution(rho, basis))
