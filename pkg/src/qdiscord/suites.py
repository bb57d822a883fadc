"""Seeded verification suites behind `discord verify` and the acceptance tests.

Each suite draws its own deterministic random stream, exercises one
mathematical property across many states, and reports the worst margin seen.
A suite passes when the worst margin respects its tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .discord import (
    SearchConfig,
    alpha_closed_form,
    alpha_oracle,
    alpha_swapped,
    delta_opt,
    two_sided_forms,
    zero_discord_check,
)
from .families import alpha_zurek_reference, zurek
from .measurement import (
    basis_from_eigendecomposition,
    product_basis,
    projected_entropy,
    random_basis,
)
from .states import (
    DensityMatrix,
    assemble_separable,
    classical_classical,
    random_density,
    random_separable,
    validate,
    von_neumann_entropy,
)

DEFAULT_TRIALS = {
    "lemma1": 500,
    "lemma2": 1000,
    "theorem1": 100,
    "theorem2": 100,
    "strongness": 300,
    "zerodiscord": 100,
}

SUITE_NAMES = tuple(DEFAULT_TRIALS)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    trials: int
    worst: float
    detail: str


def _random_bipartite(rng, m: int, n: int) -> DensityMatrix:
    rank = int(rng.integers(1, m * n + 1))
    rho = random_density(m * n, rank, rng)
    return validate(rho.matrix, split=(m, n))


def lemma1_suite(trials: int = 500, seed=1, tol: float = 1e-9,
                 config: SearchConfig | None = None) -> SuiteResult:
    """Both routes to the two-sided conditional entropy agree on random triples."""
    rng = np.random.default_rng(seed)
    dims = [(2, 2), (2, 3), (3, 2), (3, 3)]
    worst = 0.0
    for k in range(trials):
        m, n = dims[k % len(dims)]
        rho = _random_bipartite(rng, m, n)
        sequential, difference = two_sided_forms(
            rho, random_basis(n, rng), random_basis(m, rng)
        )
        worst = max(worst, abs(sequential - difference))
    return SuiteResult(
        "lemma1", worst <= tol, trials, worst,
        f"max |sequential - difference| = {worst:.3e} (tol {tol:g})",
    )


def lemma2_suite(trials: int = 1000, seed=1, tol: float = 1e-10,
                 config: SearchConfig | None = None) -> SuiteResult:
    """Projection never decreases entropy; equality on the state's eigenbasis."""
    rng = np.random.default_rng(seed)
    worst_drop = 0.0
    worst_eq = 0.0
    for k in range(trials):
        d = 2 + k % 3
        rho = random_density(d, int(rng.integers(1, d + 1)), rng)
        h = von_neumann_entropy(rho)
        drop = h - projected_entropy(rho, random_basis(d, rng))
        worst_drop = max(worst_drop, drop)
        own = basis_from_eigendecomposition(rho).basis
        worst_eq = max(worst_eq, abs(projected_entropy(rho, own) - h))
    worst = max(worst_drop, worst_eq)
    return SuiteResult(
        "lemma2", worst <= tol, trials, worst,
        f"max entropy drop = {worst_drop:.3e}, max eigenbasis gap = {worst_eq:.3e} (tol {tol:g})",
    )


def theorem1_suite(trials: int = 100, seed=1, tol: float = 1e-4,
                   config: SearchConfig | None = None) -> SuiteResult:
    """Oracle minimum vs the closed form on random separable 2x2 states.

    Passes only if the oracle never undershoots the closed form by more than
    1e-5 and agrees with it within ``tol``; the projected joint entropies at
    the two argmins must also match within ``tol``.
    """
    rng = np.random.default_rng(seed)
    undershoot = 0.0
    disagree = 0.0
    entropy_gap = 0.0
    for k in range(trials):
        st = assemble_separable(
            random_separable(2, 2, int(rng.integers(2, 6)), rng)
        )
        closed = alpha_closed_form(st, config)
        oracle = alpha_oracle(st, config)
        undershoot = max(undershoot, closed.value - oracle.value)
        disagree = max(disagree, abs(oracle.value - closed.value))
        h_or = projected_entropy(st, product_basis(oracle.basis_S, oracle.basis_A))
        h_cl = projected_entropy(st, product_basis(closed.basis_S, closed.basis_A))
        entropy_gap = max(entropy_gap, abs(h_or - h_cl))
    passed = undershoot <= 1e-5 and disagree <= tol and entropy_gap <= tol
    return SuiteResult(
        "theorem1", passed, trials, max(undershoot, disagree),
        f"max undershoot = {undershoot:.3e} (tol 1e-05), "
        f"max |oracle - closed| = {disagree:.3e} (tol {tol:g}), "
        f"max projected-entropy gap = {entropy_gap:.3e}",
    )


def theorem2_suite(trials: int = 100, seed=1, tol: float = 1e-7,
                   config: SearchConfig | None = None) -> SuiteResult:
    """alpha is symmetric under exchanging the subsystem roles."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(trials):
        m, n = (2, 2) if k % 2 == 0 else (2, 3)
        st = assemble_separable(
            random_separable(m, n, int(rng.integers(2, 6)), rng)
        )
        gap = abs(alpha_closed_form(st, config).value - alpha_swapped(st, config))
        worst = max(worst, gap)
    return SuiteResult(
        "theorem2", worst <= tol, trials, worst,
        f"max |alpha(S:A) - alpha(A:S)| = {worst:.3e} (tol {tol:g})",
    )


def strongness_suite(trials: int = 300, seed=1, tol: float = 1e-6,
                     config: SearchConfig | None = None) -> SuiteResult:
    """alpha_closed_form >= delta_opt on mixed random 2x2 states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(trials):
        if k % 2 == 0:
            st = _random_bipartite(rng, 2, 2)
        else:
            st = assemble_separable(
                random_separable(2, 2, int(rng.integers(1, 5)), rng)
            )
        drop = delta_opt(st, config).value - alpha_closed_form(st, config).value
        worst = max(worst, drop)
    return SuiteResult(
        "strongness", worst <= tol, trials, worst,
        f"max (delta_opt - alpha_closed) = {worst:.3e} (tol {tol:g})",
    )


def zerodiscord_suite(trials: int = 100, seed=1, tol: float = 1e-9,
                      config: SearchConfig | None = None) -> SuiteResult:
    """Classically correlated states in rotated bases have alpha = 0 with a
    commuting product-observable witness; coherent mixtures do not."""
    rng = np.random.default_rng(seed)
    worst_alpha = 0.0
    worst_comm = 0.0
    for k in range(trials):
        m, n = (2, 2) if k % 2 == 0 else (2, 3)
        table = rng.dirichlet(np.ones(m * n)).reshape(m, n)
        st = classical_classical(table, random_basis(m, rng), random_basis(n, rng))
        verdict = zero_discord_check(st, tol, config)
        if not verdict.is_zero:
            return SuiteResult(
                "zerodiscord", False, trials, verdict.alpha,
                f"trial {k}: classically correlated state has alpha = "
                f"{verdict.alpha:.3e} >= tol {tol:g}",
            )
        worst_alpha = max(worst_alpha, verdict.alpha)
        worst_comm = max(worst_comm, verdict.commutator_norm)
    nonzero_ok = True
    lowest = math.inf
    for z in (0.25, 0.5, 0.75):
        a = alpha_closed_form(zurek(z), config).value
        lowest = min(lowest, a)
        nonzero_ok = nonzero_ok and a > 0.01 and abs(a - alpha_zurek_reference(z)) < 1e-7
    return SuiteResult(
        "zerodiscord", nonzero_ok, trials, worst_alpha,
        f"max alpha = {worst_alpha:.3e} (tol {tol:g}), "
        f"max witness commutator = {worst_comm:.3e} (tol 1e-08), "
        f"min coherent-mixture alpha = {lowest:.4f} (> 0.01)",
    )


SUITES = {
    "lemma1": lemma1_suite,
    "lemma2": lemma2_suite,
    "theorem1": theorem1_suite,
    "theorem2": theorem2_suite,
    "strongness": strongness_suite,
    "zerodiscord": zerodiscord_suite,
}


def run_suite(name: str, trials: int | None = None, seed=1, tol: float | None = None,
              config: SearchConfig | None = None) -> list[SuiteResult]:
    """Run one suite (or all of them) and return the results in order."""
    names = list(SUITE_NAMES) if name == "all" else [name]
    results = []
    for suite_name in names:
        if suite_name not in SUITES:
            raise KeyError(f"unknown suite {suite_name!r}; choose from "
                           f"{', '.join(SUITE_NAMES)} or 'all'")
        kwargs = {"seed": seed, "config": config}
        kwargs["trials"] = trials if trials is not None else DEFAULT_TRIALS[suite_name]
        if tol is not None:
            kwargs["tol"] = tol
        results.append(SUITES[suite_name](**kwargs))
    return results
