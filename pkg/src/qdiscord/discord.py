"""Information-theoretic measures on bipartite states.

Implements mutual information I, the one-sided conditional entropy and the
asymmetric discord delta (optimized over projective measurements on A), the
two-sided conditional entropy and the symmetric discord alpha, alpha's
closed form at the eigenbases of the reduced states, an independent
brute-force oracle for alpha, and the zero-discord test with a commuting
product-observable witness.

All values are in bits.  delta_opt and alpha_oracle are grid searches with
derivative-free polish; they report upper bounds that are tight at the small
dimensions this package targets (computing the exact optimum is NP-hard in
general).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from . import linalg
from .errors import ConsistencyError, DimensionError
from .measurement import (
    EigenbasisResult,
    MeasurementBasis,
    basis_from_eigendecomposition,
    canonical_qubit_angles,
    givens_angle_count,
    givens_unitary,
    product_basis,
    qubit_basis,
)
from .states import DensityMatrix, PROB_FLOOR, _xlog2x, matrix_entropy, shannon_entropy, validate

LEMMA1_TOL = 1e-9
ZERO_DISCORD_TOL = 1e-9
WITNESS_COMMUTATOR_TOL = 1e-8


@dataclass(frozen=True)
class SearchConfig:
    """Grid resolutions and refinement knobs for the optimizers.

    ``theta_steps`` / ``phi_steps`` set the qubit grid of delta_opt (and the
    per-angle resolution of its Givens grids above dimension 2).
    ``oracle_theta_steps`` / ``oracle_phi_steps`` set the per-side grid of
    the alpha oracle; the phi range is halved because a basis at
    (pi - theta, phi + pi) is the same unordered projector pair.
    ``block_steps`` is the per-angle resolution when minimizing inside
    degenerate eigenvalue blocks; with more than two free angles the joint
    grid is capped at ``joint_budget`` points and refinement makes up the
    difference.
    """

    theta_steps: int = 64
    phi_steps: int = 64
    oracle_theta_steps: int = 48
    oracle_phi_steps: int = 24
    block_steps: int = 64
    joint_budget: int = 4096
    refine_maxiter: int = 200
    refine_tol: float = 1e-10
    refine_starts: int = 4
    oracle_dim_guard: int = 4
    allow_large_oracle: bool = False


DEFAULT_CONFIG = SearchConfig()


@dataclass(frozen=True)
class DeltaOptResult:
    value: float
    basis: MeasurementBasis
    angles: tuple[float, ...]


@dataclass(frozen=True)
class AlphaResult:
    value: float
    basis_S: MeasurementBasis
    basis_A: MeasurementBasis
    degenerate_S: bool
    degenerate_A: bool
    searched: bool


@dataclass(frozen=True)
class OracleResult:
    value: float
    basis_S: MeasurementBasis
    basis_A: MeasurementBasis
    angles_S: tuple[float, ...]
    angles_A: tuple[float, ...]


@dataclass(frozen=True)
class ZeroDiscordVerdict:
    is_zero: bool
    alpha: float
    tol: float
    observable_S: np.ndarray | None = None
    observable_A: np.ndarray | None = None
    commutator_norm: float | None = None


@dataclass(frozen=True)
class DiscordReport:
    """All measures for one state, plus the minimizing bases' diagnostics."""

    mutual_information: float
    delta_opt: DeltaOptResult
    alpha_closed: AlphaResult
    symmetry_gap: float
    zero_discord: ZeroDiscordVerdict
    separability: str
    notes: tuple[str, ...] = ()
    delta_given: tuple[float, MeasurementBasis] | None = None
    alpha_oracle: OracleResult | None = None


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _require_split(rho: DensityMatrix) -> tuple[int, int]:
    if rho.split is None:
        raise DimensionError("this measure requires a bipartite split (m, n)")
    return rho.split


def _marginals(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    m, n = _require_split(rho)
    rho_S = linalg.partial_trace_A(rho.matrix, m, n)
    rho_A = linalg.partial_trace_S(rho.matrix, m, n)
    return rho_S, rho_A


def _basis_vectors(basis: MeasurementBasis) -> np.ndarray | None:
    return basis.vectors


def _conditioned_on_A(rho4: np.ndarray, basis_A: MeasurementBasis, j: int) -> np.ndarray:
    """Unnormalized m x m state of S given A-outcome j."""
    if basis_A.vectors is not None:
        w = basis_A.vectors[:, j]
        return np.einsum("acbd,c,d->ab", rho4, w.conj(), w)
    p = basis_A.projectors[j]
    return np.einsum("acbd,dc->ab", rho4, p)


def _entropy_of_unnormalized(mat: np.ndarray) -> tuple[float, float]:
    """(weight, weight * entropy of mat / weight) for a PSD block."""
    p = float(np.trace(mat).real)
    if p < PROB_FLOOR:
        return max(p, 0.0), 0.0
    if mat.shape[0] == 2:
        lam = linalg.eigenvalues_2x2(
            mat[0, 0].real, mat[1, 1].real, mat[0, 1]
        )
        lam = np.asarray(lam)
    else:
        lam = linalg.hermitian_eigenvalues(mat)
    # sum_i -lam log2 lam + p log2 p  ==  p * H(lam / p)
    h = float(-np.sum(_xlog2x(np.clip(lam, 0.0, None))) + _xlog2x(np.asarray([p]))[0])
    return p, h


def _joint_distribution(rho_matrix: np.ndarray, vs: np.ndarray, va: np.ndarray,
                        m: int, n: int) -> np.ndarray:
    """p[i, j] = Tr[rho (P_i x Q_j)] for basis-vector columns vs, va."""
    b = np.kron(vs, va)
    p = np.einsum("ki,kl,li->i", b.conj(), rho_matrix, b).real
    return np.clip(p, 0.0, None).reshape(m, n)


# ---------------------------------------------------------------------------
# mutual information and one-sided measures
# ---------------------------------------------------------------------------

def mutual_information(rho: DensityMatrix) -> float:
    """I(S:A) = H(S) + H(A) - H(S,A)."""
    rho_S, rho_A = _marginals(rho)
    return matrix_entropy(rho_S) + matrix_entropy(rho_A) - matrix_entropy(rho.matrix)


def conditional_entropy_one_sided(rho: DensityMatrix, basis_A: MeasurementBasis) -> float:
    """sum_j p_j H(rho_{S|j}) for a projective measurement on A.

    Outcomes with probability below 1e-12 contribute nothing.
    """
    m, n = _require_split(rho)
    if basis_A.dim != n:
        raise DimensionError(f"A-side basis dim {basis_A.dim} != {n}")
    rho4 = linalg.bipartite_view(rho.matrix, m, n)
    total = 0.0
    for j in range(n):
        _, h = _entropy_of_unnormalized(_conditioned_on_A(rho4, basis_A, j))
        total += h
    return total


def delta_given(rho: DensityMatrix, basis_A: MeasurementBasis) -> float:
    """Asymmetric discord at a fixed A-side basis: H(A) + H(S|A) - H(S,A)."""
    _, rho_A = _marginals(rho)
    return (
        matrix_entropy(rho_A)
        + conditional_entropy_one_sided(rho, basis_A)
        - matrix_entropy(rho.matrix)
    )


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _qubit_grid(theta_steps: int, phi_steps: int, phi_span: float):
    thetas = np.linspace(0.0, math.pi, theta_steps, endpoint=False)
    phis = np.linspace(0.0, phi_span, phi_steps, endpoint=False)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    th = th.ravel()
    ph = ph.ravel()
    c = np.cos(th / 2.0)
    s = np.sin(th / 2.0)
    e = np.exp(1j * ph)
    u = np.empty((th.size, 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 1, 0] = e * s
    u[:, 0, 1] = -np.conj(e) * s
    u[:, 1, 1] = c
    angles = np.stack([th, ph], axis=1)
    u.flags.writeable = False
    angles.flags.writeable = False
    return u, angles


def _qubit_vectors_from_angles(theta: float, phi: float) -> np.ndarray:
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return np.array([[c, -np.conj(e) * s], [e * s, c]], dtype=complex)


def _givens_grid(dim: int, budget: int):
    """Coarse lexicographic grid over the Givens chart of U(dim)."""
    pairs = givens_angle_count(dim)
    n_angles = 2 * pairs
    r = max(2, int(budget ** (1.0 / n_angles)))
    thetas = np.linspace(0.0, math.pi / 2.0, r, endpoint=False)
    phis = np.linspace(0.0, 2.0 * math.pi, r, endpoint=False)
    grids = [thetas if k % 2 == 0 else phis for k in range(n_angles)]
    combos = np.array(list(itertools.product(*grids)))
    mats = np.array([givens_unitary(dim, x) for x in combos])
    return mats, combos


def _nelder_mead(f, x0, cfg: SearchConfig, step: float):
    x0 = np.asarray(x0, dtype=float)
    simplex = np.vstack([x0] + [x0 + step * e for e in np.eye(x0.size)])
    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": cfg.refine_maxiter,
            "xatol": cfg.refine_tol,
            "fatol": cfg.refine_tol,
            "initial_simplex": simplex,
        },
    )
    return np.asarray(res.x, dtype=float), float(res.fun)


# ---------------------------------------------------------------------------
# delta_opt
# ---------------------------------------------------------------------------

def _cond1_qubit_grid(rho4: np.ndarray, u: np.ndarray, m: int) -> np.ndarray:
    """Vectorized sum_j p_j H(rho_{S|j}) over a stack of qubit A-bases."""
    mats = np.einsum("acbd,gcj,gdj->gjab", rho4, u.conj(), u)
    pj = np.einsum("gjaa->gj", mats).real
    pj = np.clip(pj, 0.0, None)
    if m == 2:
        a = mats[..., 0, 0].real
        b = mats[..., 1, 1].real
        c = mats[..., 0, 1]
        half = 0.5 * (a + b)
        r = np.sqrt(np.maximum(0.25 * (a - b) ** 2 + np.abs(c) ** 2, 0.0))
        lam = np.stack([half + r, half - r], axis=-1)
        lam = np.clip(lam, 0.0, None)
        return -_xlog2x(lam).sum(axis=(1, 2)) + _xlog2x(pj).sum(axis=1)
    out = np.empty(u.shape[0])
    for g in range(u.shape[0]):
        total = 0.0
        for j in range(u.shape[2]):
            p = pj[g, j]
            if p < PROB_FLOOR:
                continue
            lam = np.clip(linalg.hermitian_eigenvalues(mats[g, j]), 0.0, None)
            total += float(-np.sum(_xlog2x(lam)) + _xlog2x(np.asarray([p]))[0])
        out[g] = total
    return out


def _cond1_single(rho4: np.ndarray, vectors: np.ndarray) -> float:
    total = 0.0
    for j in range(vectors.shape[1]):
        w = vectors[:, j]
        mat = np.einsum("acbd,c,d->ab", rho4, w.conj(), w)
        _, h = _entropy_of_unnormalized(mat)
        total += h
    return total


def delta_opt(rho: DensityMatrix, config: SearchConfig | None = None) -> DeltaOptResult:
    """Minimize delta over projective A-side measurements.

    Coarse grid over the basis chart followed by Nelder-Mead polish from the
    best grid point; reports the minimizing basis.  The result is an upper
    bound on the true optimum, tight at small dimensions.
    """
    cfg = config or DEFAULT_CONFIG
    m, n = _require_split(rho)
    rho_S, rho_A = _marginals(rho)
    h_a = matrix_entropy(rho_A)
    h_sa = matrix_entropy(rho.matrix)
    rho4 = linalg.bipartite_view(rho.matrix, m, n)

    if n == 2:
        u, angles = _qubit_grid(cfg.theta_steps, cfg.phi_steps, 2.0 * math.pi)
        cond = _cond1_qubit_grid(rho4, u, m)
        best = int(np.argmin(cond))
        best_val = float(cond[best])
        x0 = angles[best]

        def objective(x):
            return _cond1_single(rho4, _qubit_vectors_from_angles(x[0], x[1]))

        x_ref, val_ref = _nelder_mead(objective, x0, cfg, step=0.5 * math.pi / cfg.theta_steps)
        if val_ref < best_val:
            best_val, x_best = val_ref, x_ref
        else:
            x_best = x0
        theta, phi = canonical_qubit_angles(_qubit_vectors_from_angles(*x_best)[:, 0])
        basis = qubit_basis(theta, phi)
        return DeltaOptResult(h_a + best_val - h_sa, basis, (theta, phi))

    mats, combos = _givens_grid(n, cfg.theta_steps * cfg.phi_steps)
    cond = np.array([_cond1_single(rho4, mats[g]) for g in range(mats.shape[0])])
    best = int(np.argmin(cond))
    best_val = float(cond[best])
    x0 = combos[best]

    def objective(x):
        return _cond1_single(rho4, givens_unitary(n, x))

    x_ref, val_ref = _nelder_mead(objective, x0, cfg, step=0.05)
    if val_ref < best_val:
        best_val, x_best = val_ref, x_ref
    else:
        x_best = x0
    basis = MeasurementBasis.from_vectors(givens_unitary(n, x_best))
    return DeltaOptResult(h_a + best_val - h_sa, basis, tuple(float(v) for v in x_best))


# ---------------------------------------------------------------------------
# two-sided measures
# ---------------------------------------------------------------------------

def two_sided_forms(
    rho: DensityMatrix, basis_A: MeasurementBasis, basis_S: MeasurementBasis
) -> tuple[float, float]:
    """Both routes to H(S|A) under successive measurements on A then S.

    Returns (sequential, difference): the sequential form conditions on each
    A outcome and measures S, the difference form is the projected joint
    entropy minus the projected A-marginal entropy.  They are equal
    mathematically; tests and the verification harness compare them.
    """
    m, n = _require_split(rho)
    if basis_A.dim != n or basis_S.dim != m:
        raise DimensionError(
            f"basis dims ({basis_S.dim}, {basis_A.dim}) do not match split ({m}, {n})"
        )
    rho4 = linalg.bipartite_view(rho.matrix, m, n)

    sequential = 0.0
    for j in range(n):
        mat = _conditioned_on_A(rho4, basis_A, j)
        p = float(np.trace(mat).real)
        if p < PROB_FLOOR:
            continue
        if basis_S.vectors is not None:
            q = np.einsum("ki,kl,li->i", basis_S.vectors.conj(), mat, basis_S.vectors).real
        else:
            q = np.einsum("ikl,lk->i", basis_S.projectors, mat).real
        q = np.clip(q, 0.0, None)
        sequential += p * shannon_entropy(q / p)

    joint = product_basis(basis_S, basis_A)
    h_joint = shannon_entropy(
        np.einsum("jkl,lk->j", joint.projectors, rho.matrix).real.clip(0.0)
        if joint.vectors is None
        else np.einsum("kj,kl,lj->j", joint.vectors.conj(), rho.matrix, joint.vectors).real.clip(0.0)
    )
    _, rho_A = _marginals(rho)
    if basis_A.vectors is not None:
        pa = np.einsum("kj,kl,lj->j", basis_A.vectors.conj(), rho_A, basis_A.vectors).real
    else:
        pa = np.einsum("jkl,lk->j", basis_A.projectors, rho_A).real
    difference = h_joint - shannon_entropy(np.clip(pa, 0.0, None))
    return sequential, difference


def conditional_entropy_two_sided(
    rho: DensityMatrix, basis_A: MeasurementBasis, basis_S: MeasurementBasis
) -> float:
    """Two-sided conditional entropy; cross-checks its two computational routes."""
    sequential, difference = two_sided_forms(rho, basis_A, basis_S)
    if abs(sequential - difference) > LEMMA1_TOL:
        raise ConsistencyError(
            "two-sided conditional entropy routes disagree: "
            f"sequential={sequential!r}, difference={difference!r}"
        )
    return difference


def alpha_given(
    rho: DensityMatrix, basis_A: MeasurementBasis, basis_S: MeasurementBasis
) -> float:
    """Symmetric-discord candidate at fixed bases: H(A) + H(S|A)_{A,S} - H(S,A)."""
    _, rho_A = _marginals(rho)
    return (
        matrix_entropy(rho_A)
        + conditional_entropy_two_sided(rho, basis_A, basis_S)
        - matrix_entropy(rho.matrix)
    )


# ---------------------------------------------------------------------------
# joint-basis grid machinery
# ---------------------------------------------------------------------------

def _objective_table(
    rho4: np.ndarray,
    cand_S: np.ndarray,
    cand_A: np.ndarray,
    marginal_correction: bool,
    chunk: int = 256,
) -> np.ndarray:
    """Projected joint entropy (optionally minus the projected A-marginal
    entropy) for every pair of candidate bases.

    cand_S: (S, m, m) basis-vector columns; cand_A: (A, n, n).
    """
    m = cand_S.shape[1]
    n = cand_A.shape[1]
    n_s = cand_S.shape[0]
    n_a = cand_A.shape[0]
    rho_pq = np.ascontiguousarray(rho4.transpose(0, 2, 1, 3)).reshape(m * m, n * n)
    qa = np.einsum("arj,atj->ajrt", cand_A.conj(), cand_A).reshape(n_a * n, n * n)
    t1 = rho_pq @ qa.T  # (m^2, A*n)
    obj = np.empty((n_s, n_a))
    for s0 in range(0, n_s, chunk):
        block = cand_S[s0 : s0 + chunk]
        ps = np.einsum("spi,sqi->sipq", block.conj(), block).reshape(-1, m * m)
        p = (ps @ t1).real.reshape(block.shape[0], m, n_a, n)
        p = np.clip(p, 0.0, None)
        h = -_xlog2x(p).sum(axis=(1, 3))
        if marginal_correction:
            h -= -_xlog2x(p.sum(axis=1)).sum(axis=2)
        obj[s0 : s0 + chunk] = h
    return obj


def _joint_entropy_single(
    rho_matrix: np.ndarray, vs: np.ndarray, va: np.ndarray, m: int, n: int,
    marginal_correction: bool,
) -> float:
    p = _joint_distribution(rho_matrix, vs, va, m, n)
    h = shannon_entropy(p)
    if marginal_correction:
        h -= shannon_entropy(p.sum(axis=0))
    return h


# ---------------------------------------------------------------------------
# alpha closed form
# ---------------------------------------------------------------------------

def _free_block_layout(eig: EigenbasisResult) -> list[tuple[tuple[int, ...], int]]:
    return [(b, givens_angle_count(len(b))) for b in eig.blocks if len(b) > 1]


def _apply_block_rotations(vectors: np.ndarray, layout, angles: np.ndarray) -> np.ndarray:
    u = np.array(vectors, dtype=complex)
    pos = 0
    for block, pairs in layout:
        take = 2 * pairs
        rot = givens_unitary(len(block), angles[pos : pos + take])
        idx = np.array(block)
        u[:, idx] = u[:, idx] @ rot
        pos += take
    return u


def _block_candidates(vectors: np.ndarray, layout, steps: int):
    """Every combination of per-block rotation angles on one side."""
    n_angles = sum(2 * pairs for _, pairs in layout)
    if n_angles == 0:
        base = np.array(vectors, dtype=complex)
        return base[None, :, :], np.zeros((1, 0))
    thetas = np.linspace(0.0, math.pi / 2.0, steps, endpoint=False)
    phis = np.linspace(0.0, 2.0 * math.pi, steps, endpoint=False)
    grids = [thetas if k % 2 == 0 else phis for k in range(n_angles)]
    combos = np.array(list(itertools.product(*grids)))
    mats = np.array([_apply_block_rotations(vectors, layout, x) for x in combos])
    return mats, combos


def alpha_closed_form(
    rho: DensityMatrix, config: SearchConfig | None = None
) -> AlphaResult:
    """Symmetric discord evaluated at the eigenbases of the reduced states.

    With non-degenerate marginals this is a single closed-form evaluation:
    the projected joint entropy in the product of marginal eigenbases minus
    H(S,A).  A degenerate marginal leaves its eigenbasis free inside each
    degenerate block, so the projected joint entropy is minimized over those
    block rotations (every candidate is still an eigenbasis of the
    marginal); a grid plus Nelder-Mead polish does the minimization.
    """
    cfg = config or DEFAULT_CONFIG
    m, n = _require_split(rho)
    rho_S, rho_A = _marginals(rho)
    eig_S = basis_from_eigendecomposition(validate(rho_S))
    eig_A = basis_from_eigendecomposition(validate(rho_A))
    h_sa = matrix_entropy(rho.matrix)

    if not eig_S.degenerate and not eig_A.degenerate:
        vs = eig_S.basis.vectors
        va = eig_A.basis.vectors
        h_joint = shannon_entropy(_joint_distribution(rho.matrix, vs, va, m, n))
        return AlphaResult(h_joint - h_sa, eig_S.basis, eig_A.basis, False, False, False)

    layout_S = _free_block_layout(eig_S)
    layout_A = _free_block_layout(eig_A)
    n_free = sum(2 * p for _, p in layout_S) + sum(2 * p for _, p in layout_A)
    steps = min(cfg.block_steps, max(3, int(cfg.joint_budget ** (1.0 / n_free))))

    cand_S, combos_S = _block_candidates(eig_S.basis.vectors, layout_S, steps)
    cand_A, combos_A = _block_candidates(eig_A.basis.vectors, layout_A, steps)
    rho4 = linalg.bipartite_view(rho.matrix, m, n)
    table = _objective_table(rho4, cand_S, cand_A, marginal_correction=False)
    s_best, a_best = np.unravel_index(int(np.argmin(table)), table.shape)
    best_val = float(table[s_best, a_best])
    n_s_angles = combos_S.shape[1]
    x0 = np.concatenate([combos_S[s_best], combos_A[a_best]])

    def objective(x):
        vs = _apply_block_rotations(eig_S.basis.vectors, layout_S, x[:n_s_angles])
        va = _apply_block_rotations(eig_A.basis.vectors, layout_A, x[n_s_angles:])
        return _joint_entropy_single(rho.matrix, vs, va, m, n, marginal_correction=False)

    x_ref, val_ref = _nelder_mead(objective, x0, cfg, step=0.25 * math.pi / steps)
    if val_ref < best_val:
        best_val, x_best = val_ref, x_ref
    else:
        x_best = x0
    vs = _apply_block_rotations(eig_S.basis.vectors, layout_S, x_best[:n_s_angles])
    va = _apply_block_rotations(eig_A.basis.vectors, layout_A, x_best[n_s_angles:])
    return AlphaResult(
        best_val - h_sa,
        MeasurementBasis.from_vectors(vs),
        MeasurementBasis.from_vectors(va),
        eig_S.degenerate,
        eig_A.degenerate,
        True,
    )


def alpha_swapped(rho: DensityMatrix, config: SearchConfig | None = None) -> float:
    """alpha with the subsystem roles exchanged (A becomes the left factor)."""
    m, n = _require_split(rho)
    swapped = (
        linalg.bipartite_view(rho.matrix, m, n)
        .transpose(1, 0, 3, 2)
        .reshape(m * n, m * n)
    )
    return alpha_closed_form(validate(swapped, split=(n, m)), config).value


# ---------------------------------------------------------------------------
# alpha oracle
# ---------------------------------------------------------------------------

def _oracle_side_candidates(dim: int, cfg: SearchConfig):
    if dim == 2:
        return _qubit_grid(cfg.oracle_theta_steps, cfg.oracle_phi_steps, math.pi)
    return _givens_grid(dim, cfg.oracle_theta_steps * cfg.oracle_phi_steps)


def _side_vectors_from_x(dim: int, x: np.ndarray) -> np.ndarray:
    if dim == 2:
        return _qubit_vectors_from_angles(x[0], x[1])
    return givens_unitary(dim, x)


def alpha_oracle(rho: DensityMatrix, config: SearchConfig | None = None) -> OracleResult:
    """Brute-force minimum of alpha over both projector spaces.

    Independent of the closed form: grids every pair of candidate bases,
    evaluates H(A) + H(S|A)_{A,S} - H(S,A) for each, and polishes the best
    grid points with Nelder-Mead.  Guarded to small dimensions because the
    grid is exponential in the basis-chart size.
    """
    cfg = config or DEFAULT_CONFIG
    m, n = _require_split(rho)
    if (m > cfg.oracle_dim_guard or n > cfg.oracle_dim_guard) and not cfg.allow_large_oracle:
        raise DimensionError(
            f"oracle guarded to dims <= {cfg.oracle_dim_guard}; "
            "set allow_large_oracle to override"
        )
    _, rho_A = _marginals(rho)
    h_a = matrix_entropy(rho_A)
    h_sa = matrix_entropy(rho.matrix)
    rho4 = linalg.bipartite_view(rho.matrix, m, n)

    cand_S, angles_S = _oracle_side_candidates(m, cfg)
    cand_A, angles_A = _oracle_side_candidates(n, cfg)
    table = _objective_table(rho4, cand_S, cand_A, marginal_correction=True)

    n_sx = angles_S.shape[1]

    def objective(x):
        vs = _side_vectors_from_x(m, x[:n_sx])
        va = _side_vectors_from_x(n, x[n_sx:])
        return _joint_entropy_single(rho.matrix, vs, va, m, n, marginal_correction=True)

    flat = table.ravel()
    starts = min(cfg.refine_starts, flat.size)
    order = np.argpartition(flat, starts - 1)[:starts]
    order = order[np.argsort(flat[order], kind="stable")]
    best_val = float(flat[order[0]])
    s_idx, a_idx = np.unravel_index(int(order[0]), table.shape)
    x_best = np.concatenate([angles_S[s_idx], angles_A[a_idx]])
    for k in order:
        s_k, a_k = np.unravel_index(int(k), table.shape)
        x0 = np.concatenate([angles_S[s_k], angles_A[a_k]])
        x_ref, val_ref = _nelder_mead(
            objective, x0, cfg, step=0.5 * math.pi / cfg.oracle_theta_steps
        )
        if val_ref < best_val:
            best_val, x_best = val_ref, x_ref

    vs = _side_vectors_from_x(m, x_best[:n_sx])
    va = _side_vectors_from_x(n, x_best[n_sx:])
    if m == 2:
        ang_s = canonical_qubit_angles(vs[:, 0])
        vs = _qubit_vectors_from_angles(*ang_s)
    else:
        ang_s = tuple(float(v) for v in x_best[:n_sx])
    if n == 2:
        ang_a = canonical_qubit_angles(va[:, 0])
        va = _qubit_vectors_from_angles(*ang_a)
    else:
        ang_a = tuple(float(v) for v in x_best[n_sx:])
    return OracleResult(
        h_a + best_val - h_sa,
        MeasurementBasis.from_vectors(vs),
        MeasurementBasis.from_vectors(va),
        tuple(ang_s),
        tuple(ang_a),
    )


# ---------------------------------------------------------------------------
# zero discord and the full report
# ---------------------------------------------------------------------------

def zero_discord_check(
    rho: DensityMatrix,
    tol: float = ZERO_DISCORD_TOL,
    config: SearchConfig | None = None,
    closed: AlphaResult | None = None,
) -> ZeroDiscordVerdict:
    """Decide alpha == 0 and produce a commuting product-observable witness.

    When alpha falls below ``tol`` the minimizing bases define observables
    N = sum_i (i+1) P_i and K = sum_j (j+1) Q_j (1-based index weights keep
    every projector in play); [rho, N x K] must then vanish.  A large
    commutator with tiny alpha is an internal inconsistency and raises.
    """
    result = closed if closed is not None else alpha_closed_form(rho, config)
    if result.value >= tol:
        return ZeroDiscordVerdict(False, result.value, tol)
    weights_S = np.arange(1, result.basis_S.dim + 1, dtype=float)
    weights_A = np.arange(1, result.basis_A.dim + 1, dtype=float)
    obs_S = np.einsum("i,ipq->pq", weights_S, result.basis_S.projectors)
    obs_A = np.einsum("j,jpq->pq", weights_A, result.basis_A.projectors)
    comm = linalg.commutator(rho.matrix, linalg.tensor_product(obs_S, obs_A))
    norm = float(np.max(np.abs(comm)))
    if norm >= WITNESS_COMMUTATOR_TOL:
        raise ConsistencyError(
            f"alpha = {result.value:.3e} < {tol:g} but the product observable "
            f"fails to commute (max |[rho, N x K]| = {norm:.3e})"
        )
    return ZeroDiscordVerdict(True, result.value, tol, obs_S, obs_A, norm)


def _partial_transpose_A(rho: DensityMatrix) -> np.ndarray:
    m, n = _require_split(rho)
    return (
        linalg.bipartite_view(rho.matrix, m, n)
        .transpose(0, 3, 2, 1)
        .reshape(m * n, m * n)
    )


def separability_flag(rho: DensityMatrix) -> str:
    """Classify via the partial transpose (exact for 2x2 and 2x3 splits)."""
    m, n = _require_split(rho)
    eigs = linalg.hermitian_eigenvalues(_partial_transpose_A(rho))
    if float(eigs[-1]) < -1e-9:
        return "entangled (negative partial transpose)"
    if m * n <= 6:
        return "separable (positive partial transpose)"
    return "positive partial transpose (separability undetermined)"


def build_report(
    rho: DensityMatrix,
    config: SearchConfig | None = None,
    basis_A: MeasurementBasis | None = None,
    with_oracle: bool = False,
    zero_tol: float = ZERO_DISCORD_TOL,
) -> DiscordReport:
    """Compute every measure for one state and cross-validate the results."""
    cfg = config or DEFAULT_CONFIG
    mi = mutual_information(rho)
    d_opt = delta_opt(rho, cfg)
    a_closed = alpha_closed_form(rho, cfg)
    gap = abs(a_closed.value - alpha_swapped(rho, cfg))
    verdict = zero_discord_check(rho, zero_tol, cfg, closed=a_closed)
    sep = separability_flag(rho)
    notes: list[str] = []
    if sep.startswith("entangled"):
        notes.append(
            "closed-form alpha is guaranteed minimal only for separable "
            "states; run the oracle comparison to cross-check"
        )
    given = (delta_given(rho, basis_A), basis_A) if basis_A is not None else None
    oracle = alpha_oracle(rho, cfg) if with_oracle else None
    if oracle is not None and oracle.value < a_closed.value - 1e-5:
        notes.append(
            "the oracle found a lower alpha than the closed form; for this "
            "state the closed form is an upper bound, not the minimum"
        )

    values = [mi, d_opt.value, a_closed.value, gap]
    if not all(math.isfinite(v) for v in values) or min(values) < -1e-9:
        raise ConsistencyError(f"non-finite or negative measure in report: {values}")
    if a_closed.value < d_opt.value - 1e-7:
        raise ConsistencyError(
            f"alpha ({a_closed.value!r}) fell below delta_opt ({d_opt.value!r})"
        )
    return DiscordReport(
        mutual_information=mi,
        delta_opt=d_opt,
        alpha_closed=a_closed,
        symmetry_gap=gap,
        zero_discord=verdict,
        separability=sep,
        notes=tuple(notes),
        delta_given=given,
        alpha_oracle=oracle,
    )
