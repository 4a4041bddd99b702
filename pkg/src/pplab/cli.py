"""Command-line surface: single verifications, parameter sweeps, structured
reports, and a CI-friendly exit-code contract.

Exit codes: 0 when every requested check passes, 1 when a mathematical
counterexample is found, 2 on usage or parameter errors. Reports are
deterministic for a fixed configuration and seed; only the elapsed_ms field
varies between runs. The environment variable PPLAB_SEED, when set, overrides
the --seed flag.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .jetmap import JetRepReport, exact_sequence_check, verify_jet_representation
from .splitting import (
    jet_transition_matrix,
    splitting_type,
    transition_to_json_dict,
)
from .symspace import binomial, codimension_identity, dim_sym, m_power_subspace
from .jetmap import x0_derivative_matrix

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2

DEFAULT_SWEEP_N = (1, 2, 3)
DEFAULT_SWEEP_DEGREES = (2, 3, 4, 5)


def _theorem_result(report: JetRepReport) -> dict:
    return {
        "kernel_matches": report.kernel_matches,
        "taylor_kernel_matches": report.taylor_kernel_matches,
        "rank_correct": report.rank_correct,
        "equivariance_trials": report.equivariance_trials,
        "equivariance_failures": report.equivariance_failures,
        "quotient_iso_equivariant": report.quotient_iso_equivariant,
        "pass": report.passed,
    }


def _splitting_result(N: int, n: int, k: int) -> dict:
    st = splitting_type(jet_transition_matrix(N, n, k))
    expected = (n - k,) * binomial(N + k, N)
    return {
        "degrees": list(st.degrees),
        "expected_degree": n - k,
        "multiplicity": binomial(N + k, N),
        "pass": st.degrees == expected,
    }


def _report_skeleton(command: str, config: dict) -> dict:
    return {
        "schema": 1,
        "tool_version": __version__,
        "config": {"command": command, **config},
    }


def _emit(report: dict, args: argparse.Namespace, text: str) -> None:
    if args.output == "json":
        payload = json.dumps(report, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(payload + "\n")
        else:
            print(payload)
    else:
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)


def _require_theorem_regime(N: int, n: int, k: int) -> None:
    if N < 1:
        raise ParameterError(f"N must be at least 1 (got N={N})")
    if not 1 <= k < n:
        raise ParameterError(f"parameters must satisfy 1 <= k < n (got k={k}, n={n})")


class ParameterError(Exception):
    pass


def cmd_verify_theorem(args: argparse.Namespace) -> int:
    _require_theorem_regime(args.N, args.n, args.k)
    start = time.monotonic()
    report = verify_jet_representation(
        args.N, args.n, args.k, trials=args.trials, seed=args.seed, height=args.height
    )
    body = _report_skeleton(
        "verify-theorem",
        {
            "N": args.N,
            "n": args.n,
            "k": args.k,
            "trials": args.trials,
            "seed": args.seed,
            "height": args.height,
        },
    )
    body["result"] = _theorem_result(report)
    body["overall_pass"] = report.passed
    if args.verbose:
        phi = x0_derivative_matrix(args.N, args.n, args.k)
        body["phi_matrix"] = [
            [str(phi.entry(i, j)) for j in range(phi.cols)] for i in range(phi.rows)
        ]
    body["elapsed_ms"] = int((time.monotonic() - start) * 1000)
    text = (
        f"N={args.N} n={args.n} k={args.k}  "
        f"kernel {_ok(report.kernel_matches)}  taylor {_ok(report.taylor_kernel_matches)}  "
        f"rank {_ok(report.rank_correct)}  "
        f"equivariance {report.equivariance_trials - report.equivariance_failures}"
        f"/{report.equivariance_trials}  "
        f"quotient {_ok(report.quotient_iso_equivariant)}\n"
        f"overall: {'PASS' if report.passed else 'FAIL'}"
    )
    _emit(body, args, text)
    return EXIT_PASS if report.passed else EXIT_COUNTEREXAMPLE


def cmd_verify_corollary(args: argparse.Namespace) -> int:
    if args.N < 1 or not 0 <= args.k < args.n:
        raise ParameterError(
            f"parameters must satisfy N >= 1 and 0 <= k < n (got N={args.N}, k={args.k}, n={args.n})"
        )
    start = time.monotonic()
    result = _splitting_result(args.N, args.n, args.k)
    body = _report_skeleton(
        "verify-corollary", {"N": args.N, "n": args.n, "k": args.k}
    )
    body["result"] = result
    body["overall_pass"] = result["pass"]
    if args.verbose:
        body["transition"] = transition_to_json_dict(
            jet_transition_matrix(args.N, args.n, args.k)
        )
    body["elapsed_ms"] = int((time.monotonic() - start) * 1000)
    degrees = "{" + ", ".join(str(d) for d in result["degrees"]) + "}"
    text = (
        f"N={args.N} n={args.n} k={args.k}  splitting {degrees} "
        f"{_ok(result['pass'])}\noverall: {'PASS' if result['pass'] else 'FAIL'}"
    )
    _emit(body, args, text)
    return EXIT_PASS if result["pass"] else EXIT_COUNTEREXAMPLE


def cmd_dims(args: argparse.Namespace) -> int:
    _require_theorem_regime(args.N, args.n, args.k)
    start = time.monotonic()
    full = dim_sym(args.N, args.n)
    sub = m_power_subspace(args.N, args.n, args.k).dim
    fiber = binomial(args.k + args.N, args.N)
    identity_ok = codimension_identity(args.N, args.n, args.k)
    body = _report_skeleton("dims", {"N": args.N, "n": args.n, "k": args.k})
    body["result"] = {
        "dim_forms": full,
        "dim_small_x0_subspace": sub,
        "fiber_rank": fiber,
        "identity": identity_ok,
    }
    body["overall_pass"] = identity_ok and full - sub == fiber
    body["elapsed_ms"] = int((time.monotonic() - start) * 1000)
    text = (
        f"dim degree-{args.n} forms      = {full}\n"
        f"dim small-x0 subspace    = {sub}\n"
        f"jet fiber rank           = {fiber}\n"
        f"codimension identity     = {_ok(identity_ok)}\n"
        f"overall: {'PASS' if body['overall_pass'] else 'FAIL'}"
    )
    _emit(body, args, text)
    return EXIT_PASS if body["overall_pass"] else EXIT_COUNTEREXAMPLE


def cmd_splitting_type(args: argparse.Namespace) -> int:
    if args.N < 1 or args.n < 1 or args.k < 0:
        raise ParameterError(
            f"parameters must satisfy N >= 1, n >= 1, k >= 0 (got N={args.N}, n={args.n}, k={args.k})"
        )
    start = time.monotonic()
    st = splitting_type(jet_transition_matrix(args.N, args.n, args.k))
    body = _report_skeleton("splitting-type", {"N": args.N, "n": args.n, "k": args.k})
    body["result"] = {"degrees": list(st.degrees), "rank": st.rank}
    body["overall_pass"] = True
    body["elapsed_ms"] = int((time.monotonic() - start) * 1000)
    degrees = "{" + ", ".join(str(d) for d in st.degrees) + "}"
    text = f"N={args.N} n={args.n} k={args.k}  splitting {degrees}"
    _emit(body, args, text)
    return EXIT_PASS


def cmd_export_transition(args: argparse.Namespace) -> int:
    if args.N < 1 or args.n < 1 or args.k < 0:
        raise ParameterError(
            f"parameters must satisfy N >= 1, n >= 1, k >= 0 (got N={args.N}, n={args.n}, k={args.k})"
        )
    data = jet_transition_matrix(args.N, args.n, args.k)
    payload = json.dumps(transition_to_json_dict(data), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return EXIT_PASS


def run_sweep(
    n_values: list[int],
    degree_values: list[int],
    k_values: list[int] | None,
    trials: int,
    seed: int,
    height: int,
) -> dict:
    """Run all checks over every (N, n, k) with 1 <= k < n inside the ranges.

    The report is assembled in (N, n, k) order, so its JSON form is
    deterministic for a fixed configuration and seed.
    """
    start = time.monotonic()
    results = []
    overall = True
    for N in sorted(set(n_values)):
        for n in sorted(set(degree_values)):
            ks = [k for k in range(1, n) if k_values is None or k in k_values]
            for k in ks:
                theorem = verify_jet_representation(
                    N, n, k, trials=trials, seed=seed, height=height
                )
                sequence_ok = exact_sequence_check(N, n, k)
                dims_ok = codimension_identity(N, n, k)
                split = _splitting_result(N, n, k)
                triple_pass = (
                    theorem.passed and sequence_ok and dims_ok and split["pass"]
                )
                overall = overall and triple_pass
                results.append(
                    {
                        "N": N,
                        "n": n,
                        "k": k,
                        "theorem": _theorem_result(theorem),
                        "sequence_exact": sequence_ok,
                        "dimension_identity": dims_ok,
                        "splitting": split,
                        "pass": triple_pass,
                    }
                )
    report = _report_skeleton(
        "sweep",
        {
            "N": sorted(set(n_values)),
            "n": sorted(set(degree_values)),
            "k": sorted(set(k_values)) if k_values is not None else None,
            "trials": trials,
            "seed": seed,
            "height": height,
        },
    )
    report["results"] = results
    report["overall_pass"] = overall
    report["elapsed_ms"] = int((time.monotonic() - start) * 1000)
    return report


def _sweep_text(report: dict) -> str:
    lines = [
        f"{'N':>3} {'n':>3} {'k':>3}  {'kernel':8} {'rank':6} {'equivariance':>12}  "
        f"{'sequence':8} {'dims':6} splitting"
    ]
    for row in report["results"]:
        t = row["theorem"]
        equiv = f"{t['equivariance_trials'] - t['equivariance_failures']}/{t['equivariance_trials']}"
        degrees = "{" + ",".join(str(d) for d in row["splitting"]["degrees"]) + "}"
        lines.append(
            f"{row['N']:>3} {row['n']:>3} {row['k']:>3}  "
            f"{_ok(t['kernel_matches'] and t['taylor_kernel_matches']):8} "
            f"{_ok(t['rank_correct']):6} {equiv:>12}  "
            f"{_ok(row['sequence_exact']):8} {_ok(row['dimension_identity']):6} "
            f"{degrees} {_ok(row['splitting']['pass'])}"
        )
    lines.append(
        f"overall: {'PASS' if report['overall_pass'] else 'FAIL'} "
        f"({len(report['results'])} triples, {report['elapsed_ms']} ms)"
    )
    return "\n".join(lines)


def cmd_sweep(args: argparse.Namespace) -> int:
    n_values = args.N if args.N else list(DEFAULT_SWEEP_N)
    degree_values = args.n if args.n else list(DEFAULT_SWEEP_DEGREES)
    if not n_values or not degree_values:
        raise ParameterError("sweep ranges must be nonempty")
    if any(N < 1 for N in n_values):
        raise ParameterError("all N values must be at least 1")
    triples = [
        (N, n, k)
        for N in n_values
        for n in degree_values
        for k in range(1, n)
        if args.k is None or k in args.k
    ]
    if not triples:
        raise ParameterError("sweep ranges contain no (N, n, k) with 1 <= k < n")
    report = run_sweep(
        n_values, degree_values, args.k, args.trials, args.seed, args.height
    )
    _emit(report, args, _sweep_text(report))
    return EXIT_PASS if report["overall_pass"] else EXIT_COUNTEREXAMPLE


def _ok(flag: bool) -> str:
    return "ok" if flag else "FAIL"


def _add_common(parser: argparse.ArgumentParser, ranges: bool = False) -> None:
    if ranges:
        parser.add_argument("--N", type=int, nargs="+", default=None, help="ambient dimensions")
        parser.add_argument("--n", type=int, nargs="+", default=None, help="line bundle degrees")
        parser.add_argument("--k", type=int, nargs="+", default=None, help="jet orders (default: all 1 <= k < n)")
    else:
        parser.add_argument("--N", type=int, required=True, help="ambient dimension")
        parser.add_argument("--n", type=int, required=True, help="line bundle degree")
        parser.add_argument("--k", type=int, required=True, help="jet order")
    parser.add_argument("--trials", type=int, default=100, help="random stabilizer trials")
    parser.add_argument("--seed", type=int, default=0, help="random seed (PPLAB_SEED overrides)")
    parser.add_argument("--height", type=int, default=3, help="entry bound for random elements")
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, help="write the report to this path")
    parser.add_argument("--verbose", action="store_true", help="embed full matrices in JSON reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pplab",
        description="Exact-arithmetic verification of jet bundles of line bundles on projective space.",
    )
    parser.add_argument("--version", action="version", version=f"pplab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-theorem", help="kernel, rank and equivariance checks for one (N, n, k)")
    _add_common(p)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("verify-corollary", help="splitting-type check for one (N, n, k)")
    _add_common(p)
    p.set_defaults(func=cmd_verify_corollary)

    p = sub.add_parser("dims", help="dimension counts and the codimension identity")
    _add_common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("splitting-type", help="compute the splitting type of the jet cocycle")
    _add_common(p)
    p.set_defaults(func=cmd_splitting_type)

    p = sub.add_parser("export-transition", help="export the jet cocycle as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_export_transition)

    p = sub.add_parser("sweep", help="run all checks over a parameter grid")
    _add_common(p, ranges=True)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_seed = os.environ.get("PPLAB_SEED")
    if env_seed is not None and hasattr(args, "seed"):
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"error: PPLAB_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
