"""Command-line front end.

Subcommands::

    ecsmes concurrence --mu 1 --nu -1 --p1 0.135 --p2 0.135
    ecsmes concurrence --a 0.5 --b 0.5 --c 0.5 --d -0.5 --p1 0.1 --p2 0.1
    ecsmes sweep --family ecs_pm --n 3 --cut 1 --alpha 0.001:3:50
    ecsmes simulate --scheme cswap --alpha 1 --beta -1
    ecsmes verify --suite all

Modes on the command line are 1-based. Exit codes: 0 success, 1 verification
failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import branch as br
from . import fock as fk
from . import schemes as sc
from .errors import CapacityError, DomainError
from .gates import CrossKerr, Gate
from .measures import SchmidtSpectrum, concurrence_from_spectrum, entanglement_entropy
from .two_branch import (
    FourTermDescriptor,
    TwoBranchDescriptor,
    concurrence_closed_form,
    cross_kerr_descriptor,
    cut_overlaps,
    four_term_analysis,
    multipartite_cut_reduce,
)
from .verification import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SWEEP_TOL = 1e-6
MAX_FOCK_DIM = 2 ** 22
SWEEP_FAMILIES = ("ecs_pm", "odd_scaled", "even_pair", "cross_kerr", "kerr_un", "cascade")
SCHEMES = ("cswap", *sc.BEAMSPLITTER_KINDS, "kerr_un", "w_generation", "cascade")


class UsageError(Exception):
    """Bad command-line input; reported with exit code 2."""


def fmt(x: float) -> str:
    """Fixed 15-significant-digit rendering shared by CSV and JSON output."""
    return repr(float(f"{float(x):.15g}"))


def _round(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_json(obj: Any) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r} (use re+imj form)") from exc


def parse_range(text: str) -> np.ndarray:
    """``start:stop:count``, inclusive of both ends."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range must be start:stop:count, got {text!r}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError("range count must be at least 1")
    return np.linspace(start, stop, count)


def parse_cut(text: str) -> list[int]:
    """Comma-separated 1-based modes, returned 0-based."""
    try:
        modes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cut must be comma-separated mode numbers, got {text!r}") from exc
    if not modes or min(modes) < 1:
        raise argparse.ArgumentTypeError("cut modes are 1-based and nonempty")
    return sorted(set(m - 1 for m in modes))


# concurrence -----------------------------------------------------------------


def cmd_concurrence(args: argparse.Namespace, out) -> int:
    two_branch = [args.mu, args.nu]
    four_term = [args.a, args.b, args.c, args.d]
    if args.p1 is None or args.p2 is None:
        raise UsageError("--p1 and --p2 are required")
    if all(v is not None for v in two_branch) and all(v is None for v in four_term):
        value = concurrence_closed_form(TwoBranchDescriptor(args.mu, args.nu, args.p1, args.p2))
    elif all(v is not None for v in four_term) and all(v is None for v in two_branch):
        f = FourTermDescriptor.normalized(args.a, args.b, args.c, args.d, args.p1, args.p2)
        value = four_term_analysis(f)[1]
    else:
        raise UsageError("give either --mu/--nu or all of --a/--b/--c/--d")
    out.write(fmt(value) + "\n")
    return EXIT_OK


# sweep -------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    """One sweep sample: circuit input, gates and the analytic cut concurrence."""

    state: br.BranchState
    gates: list[Gate]
    analytic_concurrence: float | None
    branch_supported: bool = True


def _coherent_pair(plus: np.ndarray, mu: complex, nu: complex) -> br.BranchState:
    return br.normalize(br.BranchState([mu, nu], np.stack([plus, -plus])))


def _cut_descriptor(plus: np.ndarray, mu: complex, nu: complex, cut: list[int]) -> float:
    p1, p2 = cut_overlaps(br.coherent_overlap(plus, -plus), cut)
    return concurrence_closed_form(TwoBranchDescriptor(mu, nu, p1, p2))


def sweep_point(family: str, alpha: float, n: int, cut: list[int]) -> SweepPoint:
    if family == "ecs_pm":
        plus = np.full(n, alpha, dtype=complex)
        analytic = concurrence_closed_form(multipartite_cut_reduce("ecs_pm", {"alpha": alpha, "n": n}, cut))
        return SweepPoint(_coherent_pair(plus, 1.0, -1.0), [], analytic)
    if family == "odd_scaled":
        plus = np.array([alpha] + [alpha / math.sqrt(2 * n)] * (2 * n), dtype=complex)
        analytic = concurrence_closed_form(multipartite_cut_reduce("odd_scaled", {"alpha": alpha, "n": n}, cut))
        return SweepPoint(_coherent_pair(plus, 1.0, -1.0), [], analytic)
    if family == "even_pair":
        # A = alpha, B = -alpha on each mode
        first = np.array([alpha] * n + [-alpha] * n, dtype=complex)
        overlap = br.coherent_overlap(alpha, -alpha)
        analytic = concurrence_closed_form(multipartite_cut_reduce("even_pair", {"overlap": overlap, "n": n}, cut))
        return SweepPoint(_coherent_pair(first, 1.0, -1.0), [], analytic)
    if family == "cross_kerr":
        if cut != [0]:
            raise DomainError("cross_kerr has two modes; the only cut is 1")
        return SweepPoint(br.coherent_state(alpha, alpha), [CrossKerr(0, 1)], four_term_analysis(cross_kerr_descriptor(alpha, alpha))[1], False)
    if family == "kerr_un":
        state, gates = sc.kerr_un_circuit(alpha, n)
        plus = np.full(n, alpha, dtype=complex)
        return SweepPoint(state, gates, _cut_descriptor(plus, 1.0, 1j, cut))
    if family == "cascade":
        state, gates = sc.cascade_circuit(alpha, n)
        return SweepPoint(state, gates, _cut_descriptor(sc.cascade_labels(alpha, n), 1.0, -1.0, cut))
    raise DomainError(f"unknown family {family!r}; choose from {SWEEP_FAMILIES}")


def _measures(spectrum: SchmidtSpectrum) -> dict[str, float | None]:
    conc = concurrence_from_spectrum(spectrum) if spectrum.rank <= 2 else None
    return {"concurrence": conc, "entropy": entanglement_entropy(spectrum)}


def _entropy_from_concurrence(c: float) -> float:
    root = math.sqrt(max(0.0, 1.0 - c * c))
    return entanglement_entropy([(1 + root) / 2, (1 - root) / 2])


def _fock_measures(point: SweepPoint, cut: list[int], modes: int) -> dict[str, float | None] | None:
    largest = max(1e-300, float(np.max(np.abs(point.state.labels))))
    cutoff = fk.choose_cutoff(largest)
    rest = [k for k in range(modes) if k not in cut]
    keep = cut if len(cut) <= len(rest) else rest
    if cutoff ** modes > MAX_FOCK_DIM or cutoff ** len(keep) > fk.MAX_KEPT_DIM:
        return None
    try:
        v = fk.apply_gates(fk.synthesize(point.state, cutoff), point.gates)
        return _measures(fk.reduced_density(v, keep).spectrum())
    except CapacityError:
        return None


def run_sweep(family: str, alphas: Sequence[float], n: int, cut: list[int], fock: bool = True) -> tuple[list[tuple], int]:
    """CSV rows (alpha, measure, value, backend) and the number of out-of-tolerance oracle rows."""
    rows: list[tuple] = []
    failures = 0
    for alpha in alphas:
        point = sweep_point(family, float(alpha), n, cut)
        modes = point.state.modes
        if cut[-1] >= modes or len(cut) >= modes:
            raise DomainError(f"cut {[c + 1 for c in cut]} is not a proper subset of {modes} modes")
        analytic: dict[str, float | None] = {"concurrence": None, "entropy": None}
        if point.analytic_concurrence is not None:
            analytic = {
                "concurrence": point.analytic_concurrence,
                "entropy": _entropy_from_concurrence(point.analytic_concurrence),
            }
        backends = [("analytic", analytic)]
        if point.branch_supported:
            out = br.apply_gates(point.state, point.gates)
            backends.append(("branch", _measures(br.schmidt_across_cut(out, cut))))
        if fock:
            fock_values = _fock_measures(point, cut, modes)
            if fock_values is not None:
                backends.append(("fock", fock_values))
        for measure in ("concurrence", "entropy"):
            reference = analytic[measure]
            for backend, values in backends:
                value = values[measure]
                if value is None:
                    continue
                rows.append((alpha, measure, value, backend))
                if backend != "analytic" and reference is not None and abs(value - reference) > SWEEP_TOL:
                    failures += 1
    return rows, failures


def cmd_sweep(args: argparse.Namespace, out) -> int:
    n = args.n if args.n is not None else (1 if args.family in ("odd_scaled", "even_pair") else 2)
    cut = args.cut if args.cut is not None else [0]
    rows, failures = run_sweep(args.family, args.alpha, n, cut, fock=not args.no_fock)
    lines = ["alpha,measure,value,backend"]
    lines += [f"{fmt(a)},{m},{fmt(v)},{b}" for a, m, v, b in rows]
    _emit("\n".join(lines) + "\n", args.output, out)
    if failures:
        sys.stderr.write(f"{failures} oracle row(s) differ from the analytic value by more than {SWEEP_TOL:g}\n")
        return EXIT_FAIL
    return EXIT_OK


# simulate ------------------------------------------------------------------------


def _load_state(path: str | None, label: complex | None, name: str) -> br.BranchState:
    if path is not None:
        try:
            return br.BranchState.from_json(Path(path).read_text())
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read state file {path!r}: {exc}") from exc
    if label is None:
        raise UsageError(f"cswap needs --{name} or --{name}-state")
    return br.coherent_state(label)


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"this scheme needs {flag}")
    return value


def cmd_simulate(args: argparse.Namespace, out) -> int:
    scheme = args.scheme
    if scheme == "cswap":
        report = sc.run_cswap(_load_state(args.alpha_state, args.alpha, "alpha"), _load_state(args.beta_state, args.beta, "beta"))
    elif scheme in sc.BEAMSPLITTER_KINDS:
        report = sc.run_beamsplitter_scheme(scheme, _need(args.alpha, "--alpha"), args.beta)
    elif scheme == "kerr_un":
        report = sc.run_kerr_un(_need(args.alpha, "--alpha"), _need(args.n, "--n"))
    elif scheme == "w_generation":
        report = sc.run_w_generation(_need(args.n, "--n"))
    else:
        report = sc.run_cascade(_need(args.alpha, "--alpha"), _need(args.n, "--n"))
    _emit(dump_json(report.to_dict()), args.output, out)
    return EXIT_OK


# verify --------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, out) -> int:
    try:
        checks = run_suite(args.suite)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(dump_json([c.to_dict() for c in checks]), args.output, out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def _emit(text: str, path: str | None, out) -> None:
    if path is None:
        out.write(text)
    else:
        Path(path).write_text(text, newline="\n")


# parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecsmes", description="Entanglement of two-branch nonorthogonal states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concurrence", help="closed-form concurrence of a two-branch or four-term descriptor")
    for flag in ("mu", "nu", "a", "b", "c", "d", "p1", "p2"):
        p.add_argument(f"--{flag}", type=parse_complex)
    p.set_defaults(handler=cmd_concurrence)

    p = sub.add_parser("sweep", help="tabulate concurrence and entropy against alpha")
    p.add_argument("--family", required=True, choices=SWEEP_FAMILIES)
    p.add_argument("--n", type=int, help="mode count (pairs for even_pair, 2n+1 modes for odd_scaled)")
    p.add_argument("--cut", type=parse_cut, help="1-based modes on one side, e.g. 1 or 1,2 (default 1)")
    p.add_argument("--alpha", type=parse_range, required=True, help="start:stop:count, inclusive")
    p.add_argument("--no-fock", action="store_true", help="skip the Fock backend")
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("simulate", help="run a generation scheme and print its report as JSON")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--alpha", type=parse_complex)
    p.add_argument("--beta", type=parse_complex)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha-state", help="JSON state file for the first cswap input")
    p.add_argument("--beta-state", help="JSON state file for the second cswap input")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--suite", default="all", help="'all' or comma-separated criterion numbers")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.handler(args, out)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"ecsmes: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
