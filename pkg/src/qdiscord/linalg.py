"""Dense complex matrix arithmetic and the spectral primitives built on it.

Index convention: in every bipartite operator the S subsystem is the *left*
tensor factor, so the joint row index is ``i_S * n + j_A``.  The convention
is encoded once, in :func:`bipartite_view`; all bipartite code goes through
it instead of reshaping by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ValidationError

# Jacobi sweep termination: off-diagonal Frobenius norm threshold / sweep cap.
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
HERMITICITY_TOL = 1e-9


def as_complex_matrix(x) -> np.ndarray:
    """Copy ``x`` into a square complex128 array, rejecting NaN/Inf entries."""
    a = np.array(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValidationError("finite", math.inf, "matrix contains NaN or Inf entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a.T)


def hermiticity_deviation(a: np.ndarray) -> float:
    """max |a - a^dagger|, entrywise."""
    return float(np.max(np.abs(a - dagger(a)))) if a.size else 0.0


def bipartite_view(rho: np.ndarray, m: int, n: int) -> np.ndarray:
    """Reshape a joint operator to axes (S row, A row, S col, A col).

    ``rho[i * n + k, j * n + l] == bipartite_view(rho, m, n)[i, k, j, l]``.
    """
    if rho.shape != (m * n, m * n):
        raise DimensionError(
            f"operator of shape {rho.shape} does not match split ({m}, {n})"
        )
    return rho.reshape(m, n, m, n)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with S (the left argument) as the slow index:
    out[i*n + k, j*n + l] = a[i, j] * b[k, l]."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    m, n = a.shape[0], b.shape[0]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(m * n, m * n)


def partial_trace_A(rho, m: int, n: int) -> np.ndarray:
    """Trace out the right (A) factor: out[i, j] = sum_k rho[i*n+k, j*n+k]."""
    r = bipartite_view(as_complex_matrix(rho), m, n)
    return np.einsum("ikjk->ij", r)


def partial_trace_S(rho, m: int, n: int) -> np.ndarray:
    """Trace out the left (S) factor: out[i, j] = sum_k rho[k*n+i, k*n+j]."""
    r = bipartite_view(as_complex_matrix(rho), m, n)
    return np.einsum("kikj->ij", r)


def commutator(a, b) -> np.ndarray:
    """AB - BA."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"commutator of shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (real, descending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermitian_eigendecomposition(matrix) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Deterministic for identical input: pivots run in a fixed cyclic order,
    eigenvalues are sorted descending with a stable sort, and each
    eigenvector is phased so its first significant component is real and
    positive.  Sweeps stop once the off-diagonal Frobenius norm drops below
    ``JACOBI_OFFDIAG_TOL`` (or after ``JACOBI_MAX_SWEEPS``).
    """
    a = as_complex_matrix(matrix)
    dev = hermiticity_deviation(a)
    if dev > HERMITICITY_TOL:
        raise ValidationError(
            "hermitian", dev, f"matrix is not Hermitian: max |M - M^dag| = {dev:.3e}"
        )
    d = a.shape[0]
    work = (a + dagger(a)) / 2.0
    vecs = np.eye(d, dtype=complex)

    diag_mask = ~np.eye(d, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        # Norm of the off-diagonal part alone; subtracting the diagonal from
        # the full Frobenius norm would cancel catastrophically near zero.
        off = math.sqrt(float(np.sum(np.abs(work[diag_mask]) ** 2)))
        if off < JACOBI_OFFDIAG_TOL:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = work[p, q]
                mag = abs(apq)
                if mag < 1e-18:
                    continue
                phase = apq / mag
                tau = (work[q, q].real - work[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Unitary plane rotation: phase alignment then a real Jacobi
                # rotation annihilating the (p, q) entry.
                rot = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex
                )
                idx = [p, q]
                work[:, idx] = work[:, idx] @ rot
                work[idx, :] = dagger(rot) @ work[idx, :]
                vecs[:, idx] = vecs[:, idx] @ rot
                work[p, q] = 0.0
                work[q, p] = 0.0

    vals = np.diag(work).real.copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    for k in range(d):
        lead = int(np.argmax(np.abs(vecs[:, k]) > 1e-8))
        pivot = vecs[lead, k]
        if abs(pivot) > 0.0:
            vecs[:, k] *= np.conj(pivot) / abs(pivot)
    vals.flags.writeable = False
    vecs.flags.writeable = False
    return SpectralDecomposition(vals, vecs)


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues only, descending; same Jacobi path as the full routine."""
    return hermitian_eigendecomposition(matrix).eigenvalues


def eigenvalues_2x2(a: float, b: float, c: complex) -> tuple[float, float]:
    """Closed-form eigenvalues of [[a, c], [conj(c), b]], descending."""
    h = 0.5 * (a + b)
    r = math.hypot(0.5 * (a - b), abs(c))
    return h + r, h - r
