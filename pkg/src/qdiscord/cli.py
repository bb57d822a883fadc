"""Command-line interface: single-state reports, family sweeps, verification.

Commands
--------
discord compute <file>            full measure report for one state file
discord sweep --family f ...      CSV of measures across a parameter range
discord verify --suite s ...      run a verification suite

Exit codes: 0 success, 1 verification-suite failure, 2 input/validation error.

State files are plain text: a ``dims m n`` line followed by (m*n)^2 matrix
entries in row-major order, each entry a ``real imaginary`` pair; ``#``
starts a comment.  Sweep output is CSV with the fixed column order
parameter, alpha_closed, alpha_reference, delta_opt, mutual_information,
all printed to 9 decimal places (in bits).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .discord import (
    SearchConfig,
    alpha_closed_form,
    build_report,
    delta_opt,
    mutual_information,
)
from .errors import QDiscordError, StateFileError
from .families import FAMILY_RANGES, FamilyPoint, family_reference, family_state
from .states import DensityMatrix, validate
from .suites import DEFAULT_TRIALS, SUITE_NAMES, run_suite


def _fmt(value: float) -> str:
    text = f"{value:.9f}"
    return "0.000000000" if text == "-0.000000000" else text


def parse_state_file(path) -> DensityMatrix:
    """Read a ``dims m n`` header plus (mn)^2 (real, imag) pairs."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise StateFileError(path, 0, f"cannot read file: {exc}") from exc

    dims = None
    numbers: list[float] = []
    last_line = 0
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = text.split()
        if dims is None:
            if tokens[0] != "dims" or len(tokens) != 3:
                raise StateFileError(
                    path, lineno, f"expected 'dims m n' header, got {text!r}"
                )
            try:
                dims = (int(tokens[1]), int(tokens[2]))
            except ValueError:
                raise StateFileError(
                    path, lineno, f"dims must be integers, got {text!r}"
                ) from None
            if dims[0] < 1 or dims[1] < 1:
                raise StateFileError(path, lineno, f"dims must be positive, got {dims}")
            continue
        for token in tokens:
            try:
                numbers.append(float(token))
            except ValueError:
                raise StateFileError(
                    path, lineno, f"expected a number, got {token!r}"
                ) from None
        last_line = lineno
    if dims is None:
        raise StateFileError(path, len(lines) or 1, "missing 'dims m n' header")
    m, n = dims
    need = 2 * (m * n) ** 2
    if len(numbers) != need:
        raise StateFileError(
            path, last_line or len(lines) or 1,
            f"expected {need} numbers for a {m * n}x{m * n} matrix "
            f"((real, imaginary) pairs), got {len(numbers)}",
        )
    values = np.asarray(numbers).reshape(-1, 2)
    matrix = (values[:, 0] + 1j * values[:, 1]).reshape(m * n, m * n)
    return validate(matrix, split=(m, n))


def write_state_file(path, rho: DensityMatrix) -> None:
    """Serialize a bipartite state in the format parse_state_file reads."""
    if rho.split is None:
        raise QDiscordError("state file needs a bipartite split")
    m, n = rho.split
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"dims {m} {n}\n")
        for row in rho.matrix:
            handle.write(
                "  ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row) + "\n"
            )


def _search_config(args) -> SearchConfig:
    if getattr(args, "grid", None) is None:
        return SearchConfig()
    grid = args.grid
    return SearchConfig(
        theta_steps=grid,
        phi_steps=grid,
        oracle_theta_steps=grid,
        oracle_phi_steps=max(2, grid // 2),
        block_steps=grid,
    )


def _angles_text(angles) -> str:
    if len(angles) == 2:
        return f"theta {_fmt(angles[0])}  phi {_fmt(angles[1])}"
    return "  ".join(_fmt(a) for a in angles)


def cmd_compute(args) -> int:
    rho = parse_state_file(args.state_file)
    scale = 1.0 if args.log_base == "2" else math.log(2.0)
    unit = "bits" if args.log_base == "2" else "nats"
    report = build_report(
        rho,
        config=_search_config(args),
        with_oracle=args.entangled,
        zero_tol=args.tol,
    )
    m, n = rho.split
    out = []
    out.append(f"state: dims {m}x{n}, {report.separability}")
    out.append(f"mutual_information   {_fmt(scale * report.mutual_information)} {unit}")
    out.append(f"delta_opt            {_fmt(scale * report.delta_opt.value)} {unit}")
    out.append(f"  argmin basis A     {_angles_text(report.delta_opt.angles)}")
    out.append(f"alpha_closed         {_fmt(scale * report.alpha_closed.value)} {unit}")
    flag = lambda b: "yes" if b else "no"  # noqa: E731
    out.append(
        f"  degenerate marginals: S {flag(report.alpha_closed.degenerate_S)}, "
        f"A {flag(report.alpha_closed.degenerate_A)}"
        + (" (minimized over eigenbasis family)" if report.alpha_closed.searched else "")
    )
    if report.alpha_oracle is not None:
        out.append(f"alpha_oracle         {_fmt(scale * report.alpha_oracle.value)} {unit}")
        out.append(
            f"  oracle - closed    {_fmt(scale * (report.alpha_oracle.value - report.alpha_closed.value))}"
        )
    out.append(f"symmetry_gap         {_fmt(scale * report.symmetry_gap)} {unit}")
    verdict = report.zero_discord
    if verdict.is_zero:
        out.append(
            f"zero_discord         yes (alpha {_fmt(scale * verdict.alpha)} < tol {verdict.tol:g}; "
            f"witness commutator {verdict.commutator_norm:.3e})"
        )
    else:
        out.append(
            f"zero_discord         no (alpha {_fmt(scale * verdict.alpha)} >= tol {verdict.tol:g})"
        )
    for note in report.notes:
        out.append(f"note: {note}")
    print("\n".join(out))
    return 0


def cmd_sweep(args) -> int:
    family = args.family
    lo, hi = FAMILY_RANGES[family]
    for endpoint in (args.start, args.stop):
        FamilyPoint(family, endpoint)  # range check, raises on violation
    if args.steps < 1:
        raise QDiscordError(f"steps must be >= 1, got {args.steps}")
    params = (
        np.asarray([args.start])
        if args.steps == 1
        else np.linspace(args.start, args.stop, args.steps)
    )
    cfg = _search_config(args)
    rows = ["parameter,alpha_closed,alpha_reference,delta_opt,mutual_information"]
    for x in params:
        x = float(x)
        state = family_state(family, x)
        rows.append(
            ",".join(
                (
                    _fmt(x),
                    _fmt(alpha_closed_form(state, cfg).value),
                    _fmt(family_reference(family, x)),
                    _fmt(delta_opt(state, cfg).value),
                    _fmt(mutual_information(state)),
                )
            )
        )
    text = "\n".join(rows) + "\n"
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    print(f"wrote {len(params)} rows to {args.out}")
    return 0


def cmd_verify(args) -> int:
    results = run_suite(
        args.suite,
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
        config=_search_config(args),
    )
    all_passed = True
    for res in results:
        status = "ok  " if res.passed else "FAIL"
        print(f"{status} {res.name:<12} trials={res.trials:<5} {res.detail}")
        all_passed = all_passed and res.passed
    return 0 if all_passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discord",
        description="Discord measures for bipartite density matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--grid", type=int, default=None, metavar="N",
                       help="override grid resolution per angle")
        p.add_argument("--seed", type=int, default=1, metavar="N",
                       help="random seed (verification suites)")

    p_compute = sub.add_parser("compute", help="report all measures for a state file")
    p_compute.add_argument("state_file", help="path to a state file")
    p_compute.add_argument("--log-base", choices=["2", "e"], default="2",
                           help="unit for reported values (default: bits)")
    p_compute.add_argument("--tol", type=float, default=1e-9,
                           help="zero-discord threshold (default 1e-9)")
    p_compute.add_argument("--entangled", action="store_true",
                           help="also run the brute-force oracle and report the gap")
    common(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_sweep = sub.add_parser("sweep", help="sweep a state family into a CSV")
    p_sweep.add_argument("--family", choices=sorted(FAMILY_RANGES), required=True)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=list(SUITE_NAMES) + ["all"], required=True)
    p_verify.add_argument("--trials", type=int, default=None,
                          help="trial count (default: per-suite spec counts: "
                          + ", ".join(f"{k}={v}" for k, v in DEFAULT_TRIALS.items()) + ")")
    p_verify.add_argument("--tol", type=float, default=None,
                          help="override the suite's primary tolerance")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QDiscordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
