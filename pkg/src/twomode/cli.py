"""Command-line front end: figure data as CSV with ``#`` provenance headers.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
import tempfile
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .dynamics import cat_generation_run, critical_omega, jz_values
from .entanglement import bonding_state, cat_state, localized_state, mes_state, mode_entropy
from .errors import InvalidParameterError, NumericalFailureError
from .fock import dimer_basis
from .observables import ground_sweep_atom_molecule, ground_sweep_josephson, molecular_threshold

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

THRESHOLD_DEFINITION = "delta/omega at which <n_a>/N_atm first falls through 0.5 (grid bracket + bisection)"


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """17 significant digits, '.' separator."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _mlabel(m: float) -> str:
    return str(int(m)) if float(m).is_integer() else format(m, "g")


def _provenance(args: argparse.Namespace) -> str:
    flags = " ".join(f"--{k.replace('_', '-')}={v}" for k, v in sorted(vars(args).items()) if k not in ("func", "command"))
    return f"# twomode {__version__} {args.command} {flags}"


def _render(header: Iterable[str], columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file in the same directory and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".twomode-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        write_atomic(args.out, text)


def _check_out(out: str | None) -> None:
    if out in (None, "-"):
        return
    directory = os.path.dirname(os.path.abspath(out))
    if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
        raise UsageError(f"output directory {directory!r} does not exist or is not writable")


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError("ratio bounds must be finite")
    if not lo < hi:
        raise UsageError(f"--ratio-min must be < --ratio-max (got {lo} and {hi})")
    if steps < 2:
        raise UsageError(f"--steps must be >= 2 (got {steps})")
    return np.linspace(lo, hi, steps)


def cmd_ground_sweep(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1 (got {args.n})")
    if args.ratio_min < 0:
        raise UsageError("E_J/K ratios must be >= 0")
    _check_out(args.out)
    ratios = _grid(args.ratio_min, args.ratio_max, args.steps)
    records = ground_sweep_josephson(args.n, ratios, workers=args.workers)
    header = [
        _provenance(args),
        "# system=josephson dmu=0 K=1 ratio=E_J/K entropy_units=bits",
        f"# N={args.n} max_entropy={fmt(math.log2(args.n + 1))}",
        f"# degenerate_points={sum(r.extra['degenerate'] for r in records)}",
    ]
    rows = ((r.ratio, r.entropy, r.extra["degenerate"]) for r in records)
    _emit(args, _render(header, ["ratio", "entropy", "degenerate"], rows))
    return EXIT_OK


def cmd_dynamics(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1 (got {args.n})")
    if not (math.isfinite(args.chi) and args.chi > 0):
        raise UsageError(f"--chi must be > 0 (got {args.chi})")
    if args.t_max is not None and not (math.isfinite(args.t_max) and args.t_max > 0):
        raise UsageError(f"--t-max must be > 0 (got {args.t_max})")
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2 (got {args.steps})")
    if args.omega == "critical":
        omega = critical_omega(args.n, args.chi)
    else:
        try:
            omega = float(args.omega)
        except ValueError:
            raise UsageError(f"--omega must be a number or 'critical' (got {args.omega!r})") from None
        if not math.isfinite(omega):
            raise UsageError("--omega must be finite")
    _check_out(args.out)
    run = cat_generation_run(args.n, args.chi, args.t_max, args.steps, omega=omega)
    k = run.tc_index
    header = [
        _provenance(args),
        "# hamiltonian=chi*Jz^2-omega*Jx initial=minimal_Jx_weight time_units=hbar entropy_units=bits",
        f"# N={args.n} j={fmt(args.n / 2)} chi={fmt(args.chi)} omega={fmt(omega)} ratio_2omega_over_chiN={fmt(2 * omega / (args.chi * args.n))}",
        f"# t_c={run.t_c:.4f} t_c_exact={fmt(run.t_c)}",
        f"# tc_row={k} tc_row_time={fmt(run.times[k])}",
    ]
    columns = ["t", "entropy"] + [f"P({_mlabel(m)})" for m in jz_values(args.n)]
    rows = ([t, s, *p] for t, s, p in zip(run.times, run.entropies, run.distributions))
    _emit(args, _render(header, columns, rows))
    return EXIT_OK


def cmd_atom_molecule(args: argparse.Namespace) -> int:
    if args.n_atm < 1:
        raise UsageError(f"--n-atm must be >= 1 (got {args.n_atm})")
    _check_out(args.out)
    ratios = _grid(args.ratio_min, args.ratio_max, args.steps)
    records = ground_sweep_atom_molecule(args.n_atm, ratios, workers=args.workers)
    threshold = molecular_threshold(args.n_atm, records)
    header = [
        _provenance(args),
        "# system=atom-molecule omega=1 ratio=delta/omega entropy_units=bits",
        "# mean_atoms_scaled=<n_a>/N_atm theta_scaled=<a^dag a^dag b + b^dag a a>/N_atm",
        f"# N_atm={args.n_atm} max_entropy={fmt(math.log2(args.n_atm // 2 + 1))}",
        f"# threshold_estimate={fmt(threshold)}",
        f"# threshold_definition={THRESHOLD_DEFINITION}",
    ]
    rows = ((r.ratio, r.entropy, r.extra["mean_atoms"], r.extra["theta"]) for r in records)
    _emit(args, _render(header, ["ratio", "entropy", "mean_atoms_scaled", "theta_scaled"], rows))
    return EXIT_OK


def _named_state(N: int, name: str):
    if name == "mes":
        return mes_state(dimer_basis(N))
    if name == "localized":
        return localized_state(N)
    if name == "bonding":
        return bonding_state(N)
    if name == "antibonding":
        return bonding_state(N, anti=True)
    if name.startswith("cat:"):
        try:
            D = int(name[4:])
        except ValueError:
            raise UsageError(f"cat state needs an integer D, as in cat:2 (got {name!r})") from None
        return cat_state(N, D)
    raise UsageError(f"unknown state {name!r}; choose mes, localized, bonding, antibonding or cat:D")


def cmd_states(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1 (got {args.n})")
    _check_out(args.out)
    psi = _named_state(args.n, args.state)
    header = [
        _provenance(args),
        f"# state={args.state} N={args.n}",
        f"# entropy={fmt(mode_entropy(psi))}",
    ]
    rows = ((a, b, c.real, c.imag) for (a, b), c in zip(psi.basis.labels, psi.amplitudes))
    _emit(args, _render(header, ["n_a", "n_b", "re", "im"], rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twomode", description="Mode entanglement in two-mode condensates.")
    parser.add_argument("--version", action="version", version=f"twomode {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground-sweep", help="Josephson ground-state entropy versus E_J/K")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ratio-min", type=float, default=0.0)
    p.add_argument("--ratio-max", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ground_sweep)

    p = sub.add_parser("dynamics", help="entropy and J_z distribution versus time")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--chi", type=float, default=0.1)
    p.add_argument("--omega", default="critical", help="number, or 'critical' for chi*N/2")
    p.add_argument("--t-max", type=float, default=None, help="default 2.4 t_c")
    p.add_argument("--steps", type=int, default=512)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("atom-molecule", help="atom-molecule ground-state sweep versus delta/omega")
    p.add_argument("--n-atm", type=int, required=True)
    p.add_argument("--ratio-min", type=float, default=0.0)
    p.add_argument("--ratio-max", type=float, default=30.0)
    p.add_argument("--steps", type=int, default=300)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_atom_molecule)

    p = sub.add_parser("states", help="amplitudes and entropy of a named state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--state", required=True, help="mes | localized | bonding | antibonding | cat:D")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_states)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidParameterError) as exc:
        print(f"twomode {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailureError as exc:
        print(f"twomode {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
