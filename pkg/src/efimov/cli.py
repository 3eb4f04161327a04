"""Command-line front end.

Every command produces a :class:`Table` that is written either as CSV
(comma separated, ``#`` lines for provenance and summary) or as JSON with the
same field names.  Numbers carry 12 significant digits.  Exit codes: 0 on
success, 2 for usage or validation errors, 3 for domain failures (no bound
state, subcritical mass ratio, no successful scan point).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bo3body import (
    BOValidityWarning,
    MassConfig,
    build_curve,
    efimov_s0,
    inverse_square_strength,
    yukawa_tail,
)
from .exceptions import NoBoundStateError, SubcriticalMassRatioError
from .observables import (
    ATOMIC_MASS_UNIT,
    BOHR_RADIUS,
    GasParams,
    next_resonance,
    read_c_table,
    recombination_length,
    recombination_rate,
)
from .semiclassical import count_states_semiclassical
from .spectrum import (
    InverseSquareProblem,
    count_states_direct,
    count_states_formula,
    spectrum_asymptotic,
    spectrum_bessel,
    spectrum_shooting,
)
from .twobody import (
    binding_from_coupling,
    bound_wavefunction,
    coupling_from_binding,
    critical_coupling,
    YamaguchiPotential,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

SIG_DIGITS = 12


class DomainFailure(Exception):
    """Raised by a command when the physics has no answer for valid inputs."""


@dataclass(frozen=True)
class RunConfig:
    """A parsed, validated invocation."""

    command: str
    params: dict
    output_format: str = "csv"
    output_path: Path | None = None


@dataclass
class Table:
    columns: list
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, tuple):
        return " ".join(_fmt(v) for v in value)
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        # adding 0.0 turns -0.0 into 0.0
        return f"{float(value) + 0.0:.{SIG_DIGITS}g}"
    return str(value)


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, tuple):
        return [_json_value(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(f"{value + 0.0:.{SIG_DIGITS}g}")


def render(config: RunConfig, table: Table) -> str:
    """Serialize ``table`` with a provenance header; output is deterministic."""
    if config.output_format == "json":
        doc = {
            "program": "efimov",
            "version": __version__,
            "command": config.command,
            "inputs": {k: _json_value(v) for k, v in sorted(config.params.items())},
            "columns": list(table.columns),
            "rows": [{c: _json_value(v) for c, v in zip(table.columns, row)}
                     for row in table.rows],
            "summary": {k: _json_value(v) for k, v in table.summary.items()},
        }
        return json.dumps(doc, indent=2) + "\n"

    buf = io.StringIO()
    buf.write(f"# efimov {__version__}\n")
    buf.write(f"# command: {config.command}\n")
    for key, value in sorted(config.params.items()):
        buf.write(f"# input {key} = {_fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    for key, value in table.summary.items():
        buf.write(f"# {key} = {_fmt(value)}\n")
    return buf.getvalue()


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_two_body(p: dict) -> Table:
    beta = p.get("beta")
    if not beta > 0:
        raise ValueError("--beta must be positive")
    if p.get("kappa0") is not None:
        if p.get("kappa0") < 0:
            raise ValueError("--kappa0 must be non-negative")
        pot = coupling_from_binding(p.get("kappa0"), beta)
    else:
        if not p.get("lambda") > 0:
            raise ValueError("--lambda must be positive")
        pot = YamaguchiPotential(p.get("lambda"), beta)
    dimer = binding_from_coupling(pot)
    solution = {
        "beta": beta,
        "lambda": pot.lam,
        "lambda_critical": critical_coupling(beta),
        "kappa0": dimer.kappa0,
        "binding_energy": dimer.binding_energy,
        "scattering_length": dimer.scattering_length,
        "norm_const": dimer.norm_const,
    }
    grid = p.get("wavefunction_grid")
    if grid is None:
        return Table(list(solution), [list(solution.values())])
    r_min, r_max, n = grid
    if not (0 < r_min < r_max) or n < 2 or n != int(n):
        raise ValueError("--wavefunction-grid needs 0 < RMIN < RMAX and an integer N >= 2")
    if dimer.kappa0 == 0:
        raise NoBoundStateError("zero-energy state is not normalizable; no wave function")
    rs = np.linspace(r_min, r_max, int(n))
    rows = [[r, bound_wavefunction(dimer, pot, r)] for r in rs]
    return Table(["r", "psi"], rows, solution)


def cmd_bo_scan(p: dict) -> Table:
    kappa0, beta = p.get("kappa0"), p.get("beta")
    if not beta > 0:
        raise ValueError("--beta must be positive")
    if not 0 <= kappa0 < beta:
        raise ValueError("--kappa0 must satisfy 0 <= kappa0 < beta")
    if not 0 < p.get("r_min") < p.get("r_max"):
        raise ValueError("need 0 < --r-min < --r-max")
    if p.get("points") < 1:
        raise ValueError("--points must be at least 1")
    if not p.get("tol") > 0:
        raise ValueError("--tol must be positive")
    masses = MassConfig(p.get("mass_ratio"))
    pot = coupling_from_binding(kappa0, beta)
    dimer = binding_from_coupling(pot)
    if p.get("points") == 1:
        grid = [p.get("r_min")]
    else:
        grid = np.geomspace(p.get("r_min"), p.get("r_max"), p.get("points"))
    curve = build_curve(dimer, pot, masses, grid, tol=p.get("tol"))
    with_tail = kappa0 > 0
    columns = ["R", "kappa", "epsilon", "xi_R", "shift"]
    if with_tail:
        columns.append("yukawa")
    columns += ["region", "status"]
    rows = []
    for pt in curve.points:
        row = [pt.R, pt.kappa, pt.epsilon, pt.xi * pt.R, pt.shift]
        if with_tail:
            row.append(yukawa_tail(pt.R, dimer.scattering_length, masses))
        row += [pt.region.value, pt.status]
        rows.append(row)
    n_ok = sum(pt.ok for pt in curve.points)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BOValidityWarning)
        summary = {
            "points_ok": n_ok,
            "points_failed": len(curve) - n_ok,
            "inverse_square_strength": inverse_square_strength(masses),
        }
    if masses.mass_ratio < 1:
        print("warning: mass ratio below 1, adiabatic picture unreliable", file=sys.stderr)
    if n_ok == 0:
        raise DomainFailure("no scan point could be solved")
    return Table(columns, rows, summary)


_SPECTRUM_ROUTES = {
    "bessel": spectrum_bessel,
    "shooting": spectrum_shooting,
    "asymptotic": spectrum_asymptotic,
}


def _s0_from(p: dict) -> float:
    if p.get("s0") is not None:
        if not p.get("s0") > 0:
            raise ValueError("--s0 must be positive")
        return p.get("s0")
    return efimov_s0(MassConfig(p.get("mass_ratio")))


def _padded(values, n):
    values = list(values)[:n]
    return values + [math.nan] * (n - len(values))


def cmd_spectrum(p: dict) -> Table:
    s0 = _s0_from(p)
    if not p.get("rc") > 0:
        raise ValueError("--rc must be positive")
    n = p.get("n")
    if n < 1:
        raise ValueError("--n must be at least 1")
    prob = InverseSquareProblem(s0, p.get("rc"))
    methods = list(_SPECTRUM_ROUTES) if p.get("method") == "all" else [p.get("method")]
    # one extra state so that every reported level has a ratio to the next
    results = {m: _SPECTRUM_ROUTES[m](prob, n + 1) for m in methods}
    kappas = {m: _padded(r.kappas, n + 1) for m, r in results.items()}
    summary = {"s0": s0, "scaling_factor": math.exp(math.pi / s0)}

    if len(methods) == 1:
        k = kappas[methods[0]]
        rows = [[i + 1, k[i], -k[i] ** 2, k[i] / k[i + 1]] for i in range(n)]
        summary["truncated"] = results[methods[0]].truncated
        return Table(["n", "kappa", "energy", "ratio"], rows, summary)

    columns = ["n"]
    columns += [f"kappa_{m}" for m in methods]
    columns += [f"energy_{m}" for m in methods]
    columns += [f"ratio_{m}" for m in methods]
    rows = []
    for i in range(n):
        row = [i + 1]
        row += [kappas[m][i] for m in methods]
        row += [-kappas[m][i] ** 2 for m in methods]
        row += [kappas[m][i] / kappas[m][i + 1] for m in methods]
        rows.append(row)
    kb = np.array(kappas["bessel"][:n])
    ks = np.array(kappas["shooting"][:n])
    ka = np.array(kappas["asymptotic"][:n])
    summary["max_rel_deviation_bessel_shooting"] = float(np.max(np.abs(ks / kb - 1)))
    summary["max_rel_deviation_bessel_asymptotic"] = float(np.max(np.abs(ka / kb - 1)))
    return Table(columns, rows, summary)


_COUNT_METHODS = ("formula", "direct", "semiclassical")


def cmd_count(p: dict) -> Table:
    s0, ratio = p.get("s0"), p.get("a_over_r0")
    if not s0 > 0:
        raise ValueError("--s0 must be positive")
    if not ratio > 1:
        raise ValueError("--a-over-r0 must exceed 1")
    methods = _COUNT_METHODS if p.get("method") == "all" else (p.get("method"),)
    counts = {}
    for m in methods:
        if m == "formula":
            counts[m] = count_states_formula(s0, ratio, 1.0)
        elif m == "direct":
            counts[m] = count_states_direct(InverseSquareProblem(s0, 1.0, ratio))
        else:
            counts[m] = count_states_semiclassical(s0, 0.0, 1.0, ratio)
    columns = [f"N_{m}" for m in methods]
    row = list(counts.values())
    for m1, m2 in itertools.combinations(methods, 2):
        columns.append(f"diff_{m1}_{m2}")
        row.append(float(counts[m1] - counts[m2]))
    return Table(columns, [row])


def cmd_observables(p: dict) -> Table:
    if p.get("c_table") is not None:
        a_vals, c_vals = read_c_table(p.get("c_table"))
    elif p.get("c") is not None:
        if p.get("a") is None:
            raise ValueError("--a is required with --c")
        a_vals, c_vals = np.array([p.get("a")]), np.array([p.get("c")])
    else:
        raise ValueError("no C(a) source: give --c or --c-table")
    if np.any(c_vals < 0):
        raise ValueError("C(a) must be non-negative")
    with_rate = p.get("density") is not None or p.get("mass") is not None
    if with_rate and (p.get("density") is None or p.get("mass") is None):
        raise ValueError("--density and --mass must be given together")
    columns = ["a_bohr", "C", "rho3_bohr"]
    if with_rate:
        columns.append("rate_per_m3_s")
    rows = []
    for a, c in zip(a_vals, c_vals):
        row = [a, c, recombination_length(c, a)]
        if with_rate:
            gas = GasParams(p.get("density"), p.get("mass") * ATOMIC_MASS_UNIT, a * BOHR_RADIUS, c)
            row.append(recombination_rate(gas))
        rows.append(row)
    summary = {}
    if len(rows) == 1:
        summary["next_resonance_bohr"] = next_resonance(float(a_vals[0]))
    return Table(columns, rows, summary)


_COMMANDS = {
    "two-body": cmd_two_body,
    "bo-scan": cmd_bo_scan,
    "spectrum": cmd_spectrum,
    "count": cmd_count,
    "observables": cmd_observables,
}


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", type=Path, default=None,
                        help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="efimov", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"efimov {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("two-body", parents=[common],
                       help="Yamaguchi coupling <-> dimer binding")
    p.add_argument("--beta", type=float, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--kappa0", type=float)
    g.add_argument("--lambda", dest="lambda", type=float)
    p.add_argument("--wavefunction-grid", type=float, nargs=3, metavar=("RMIN", "RMAX", "N"))

    p = sub.add_parser("bo-scan", parents=[common], help="adiabatic potential on a log grid")
    p.add_argument("--kappa0", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--mass-ratio", type=float, required=True)
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-14,
                   help="root tolerance in ln(xi) (default %(default)g)")

    p = sub.add_parser("spectrum", parents=[common], help="inverse-square bound states")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--s0", type=float)
    g.add_argument("--mass-ratio", type=float)
    p.add_argument("--rc", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["bessel", "shooting", "asymptotic", "all"],
                   default="bessel")

    p = sub.add_parser("count", parents=[common], help="number of shallow states")
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--a-over-r0", type=float, required=True)
    p.add_argument("--method", choices=["formula", "direct", "semiclassical", "all"],
                   default="all")

    p = sub.add_parser("observables", parents=[common], help="recombination length and rate")
    p.add_argument("--a", type=float, help="scattering length in Bohr radii")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--c", type=float)
    g.add_argument("--c-table", type=Path)
    p.add_argument("--density", type=float, help="number density in m^-3")
    p.add_argument("--mass", type=float, help="atom mass in amu")
    return parser


def parse_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "format", "output") and v is not None}
    for key, value in params.items():
        if isinstance(value, Path):
            params[key] = str(value)
        elif isinstance(value, list):
            params[key] = tuple(value)
    return RunConfig(args.command, params, args.format, args.output)


def _fail(code: int, message: str) -> int:
    print(f"efimov: error: {message}", file=sys.stderr)
    return code


def run(config: RunConfig) -> int:
    handler = _COMMANDS[config.command]
    try:
        table = handler(config.params)
    except SubcriticalMassRatioError as exc:
        return _fail(EXIT_DOMAIN, str(exc))
    except NoBoundStateError as exc:
        return _fail(EXIT_DOMAIN, f"no bound state: {exc}")
    except DomainFailure as exc:
        return _fail(EXIT_DOMAIN, str(exc))
    except (ValueError, OSError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    text = render(config, table)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
