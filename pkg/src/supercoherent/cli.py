"""Command-line front end for the collective-spin toolkit.

Five subcommands cover the standard experiments: ``spectrum`` (collective
Hamiltonian levels and degeneracies), ``paths`` (angular-momentum addition
paths and multiplicities), ``selection`` (selection-rule audit),
``lindblad`` (thermal leakage-rate sweep), and ``fidelity`` (gate
speed/noise tradeoff).  Parameters come from flags or a flat JSON config
file (flags win); results go to stdout or ``--out`` as CSV or JSON.

Outputs are deterministic: the same invocation produces byte-identical
files.  Exit codes: 0 success, 2 usage error, 3 numerical failure,
1 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .basis import enumerate_paths, irrep_table
from .lindblad import (
    EstimationError,
    IntegrationError,
    build_model,
    leakage_rate,
    thermal_occupation,
)
from .logical import encode, fidelity_grid_optimum, optimal_delta
from .operators import AXES, SystemSpec, collective_hamiltonian, single_spin_operator
from .selection import (
    FORBIDDEN_ATOL,
    IDENTITY_ATOL,
    error_detection_check,
    exchange_conjugation_check,
    ground_block,
    selection_rule_scan,
    step_identity_residual,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# a two-qubit error block must deviate from a multiple of the identity by
# at least this much for the "not detected" demonstration to count
TWO_QUBIT_BLOCK_MIN = 1e-3


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


# per-subcommand parameter schemas: canonical name -> coercion for config files
def _as_int(value, key):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"config key {key!r} must be an integer, got {value!r}")
    return value


def _as_float(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"config key {key!r} must be a number, got {value!r}")
    return float(value)


def _as_float_list(value, key):
    if isinstance(value, str):
        return _float_list(value)
    if not isinstance(value, (list, tuple)) or not value:
        raise ValueError(f"config key {key!r} must be a non-empty list of numbers")
    return tuple(_as_float(v, key) for v in value)


_SCHEMAS: dict[str, dict[str, object]] = {
    "spectrum": {"n": _as_int, "delta": _as_float},
    "paths": {"n": _as_int, "j": _as_float},
    "selection": {"n": _as_int},
    "lindblad": {
        "n": _as_int,
        "delta": _as_float,
        "beta": _as_float,
        "beta_list": _as_float_list,
        "g": _as_float,
        "gamma0": _as_float,
        "t_final": _as_float,
        "dt": _as_float,
        "state": _as_float_list,
    },
    "fidelity": {"beta_list": _as_float_list, "delta_grid": _as_float, "gap": _as_float},
}

_DEFAULTS: dict[str, dict[str, object]] = {
    "spectrum": {"n": 4, "delta": 1.0},
    "paths": {"n": 4},
    "selection": {"n": 4},
    "lindblad": {"n": 4, "delta": 1.0, "g": 0.1, "state": (1.0, 0.0, 0.0, 0.0)},
    "fidelity": {"beta_list": (1.0, 2.0, 5.0), "delta_grid": 1e-3, "gap": 1.0},
}

_DEFAULT_FORMAT = {"selection": "json"}


@dataclass(frozen=True)
class ExperimentConfig:
    subcommand: str
    params: dict
    out: str | None
    fmt: str
    verbose: bool


@dataclass(frozen=True)
class ResultTable:
    """Uniform rows plus metadata echoing the configuration that made them."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    meta: dict


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercoherent",
        description="exact numerics for gap-protected collective-spin qubits",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat JSON file with the same keys as the flags")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), dest="fmt", help="output format")
        p.add_argument("--verbose", action="store_true", help="include extra detail in metadata")

    p = sub.add_parser("spectrum", help="collective Hamiltonian levels and degeneracies")
    p.add_argument("--n", type=int, help="qubit count (default 4)")
    p.add_argument("--delta", type=float, help="level-spacing scale (default 1.0)")
    common(p)

    p = sub.add_parser("paths", help="angular-momentum addition paths and multiplicities")
    p.add_argument("--n", type=int, help="qubit count (default 4)")
    p.add_argument("--j", type=float, help="restrict to one final total spin")
    common(p)

    p = sub.add_parser("selection", help="selection-rule audit of single-qubit operators")
    p.add_argument("--n", type=int, help="qubit count (default 4)")
    common(p)

    p = sub.add_parser("lindblad", help="thermal leakage rates of the encoded qubit")
    p.add_argument("--n", type=int, help="qubit count (must be 4)")
    p.add_argument("--delta", type=float, help="level-spacing scale (default 1.0)")
    p.add_argument("--beta", type=float, help="single inverse temperature")
    p.add_argument("--beta-list", type=_float_list, dest="beta_list", help="comma-separated betas")
    p.add_argument("--g", type=float, help="qubit-bath coupling (default 0.1)")
    p.add_argument("--gamma0", type=float, help="sector-diagonal rate (default g^2)")
    p.add_argument("--t-final", type=float, dest="t_final", help="override the fit window")
    p.add_argument("--dt", type=float, help="override the integrator step")
    p.add_argument(
        "--state",
        type=_float_list,
        help="logical amplitudes re(a),im(a),re(b),im(b) (default 1,0,0,0)",
    )
    common(p)

    p = sub.add_parser("fidelity", help="gate speed vs thermal noise tradeoff")
    p.add_argument("--beta-list", type=_float_list, dest="beta_list", help="comma-separated betas")
    p.add_argument("--delta-grid", type=float, dest="delta_grid", help="grid step (default 1e-3)")
    p.add_argument("--gap", type=float, help="protecting gap (default 1.0)")
    common(p)

    return parser


def _load_config_file(path: str, subcommand: str, parser: argparse.ArgumentParser) -> dict:
    schema = _SCHEMAS[subcommand]
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        parser.error(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        parser.error(f"config file {path} must hold a flat JSON object")
    params = {}
    for key, value in raw.items():
        canonical = key.replace("-", "_")
        if canonical not in schema:
            parser.error(f"unknown config key {key!r} for subcommand {subcommand!r}")
        try:
            params[canonical] = schema[canonical](value, key)
        except ValueError as exc:
            parser.error(str(exc))
    return params


def parse_config(argv=None) -> ExperimentConfig:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    subcommand = ns.subcommand
    schema = _SCHEMAS[subcommand]

    params = dict(_DEFAULTS[subcommand])
    if ns.config:
        params.update(_load_config_file(ns.config, subcommand, parser))
    for key in schema:
        value = getattr(ns, key, None)
        if value is not None:
            params[key] = value

    if subcommand == "lindblad":
        has_beta = "beta" in params
        has_list = "beta_list" in params
        if has_beta == has_list:
            parser.error("give exactly one of --beta or --beta-list")
        state = params.get("state", ())
        if len(state) != 4:
            parser.error("--state needs exactly four numbers: re(a),im(a),re(b),im(b)")

    fmt = ns.fmt or _DEFAULT_FORMAT.get(subcommand, "csv")
    return ExperimentConfig(
        subcommand=subcommand,
        params=params,
        out=ns.out,
        fmt=fmt,
        verbose=bool(ns.verbose),
    )


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _cluster_levels(energies: np.ndarray, atol: float) -> list[tuple[float, int]]:
    clusters: list[tuple[float, int]] = []
    for e in energies:
        if clusters and abs(e - clusters[-1][0]) < atol:
            mean, count = clusters[-1]
            clusters[-1] = ((mean * count + e) / (count + 1), count + 1)
        else:
            clusters.append((float(e), 1))
    return clusters


def _run_spectrum(params: dict, verbose: bool) -> tuple[tuple[str, ...], list[tuple]]:
    spec = SystemSpec(params["n"], params["delta"])
    energies = np.linalg.eigvalsh(collective_hamiltonian(spec))
    atol = 1e-8 * max(1.0, spec.delta)
    rows = []
    for energy, count in _cluster_levels(energies, atol):
        # invert E = (delta/2) J (J + 1) and snap to the nearest half-integer
        j_raw = 0.5 * (-1.0 + np.sqrt(1.0 + 8.0 * energy / spec.delta))
        j = round(2.0 * j_raw) / 2.0
        ideal = (spec.delta / 2.0) * j * (j + 1.0)
        if abs(energy - ideal) > atol:
            raise EstimationError(
                f"level {energy} does not sit on the (delta/2) J(J+1) ladder"
            )
        rows.append((j, ideal, count))
    return ("J", "E", "multiplicity"), rows


def _run_paths(params: dict, verbose: bool) -> tuple[tuple[str, ...], list[tuple]]:
    n = params["n"]
    table = irrep_table(n)
    wanted = params.get("j")
    rows = []
    for row in table.rows:
        if wanted is not None and row.j != float(wanted):
            continue
        for path in enumerate_paths(n, row.j):
            rows.append((n, row.j, row.multiplicity, ";".join(f"{s:g}" for s in path.steps)))
    return ("n", "J", "multiplicity", "path"), rows


def _run_selection(params: dict, verbose: bool) -> tuple[tuple[str, ...], list[tuple], dict]:
    n = params["n"]
    rows = []
    extra: dict = {}

    for axis in AXES:
        residual = step_identity_residual(n, axis)
        rows.append((f"step-identity[{axis}]", residual, IDENTITY_ATOL, residual < IDENTITY_ATOL))

    worst_dj = 0.0
    worst_ground = 0.0
    worst_partner = 0.0
    nonzero: list[dict] = []
    for qubit in range(1, n + 1):
        for axis in AXES:
            report = selection_rule_scan(n, qubit, axis)
            worst_dj = max(worst_dj, report.max_forbidden_delta_j)
            worst_ground = max(worst_ground, report.max_ground_to_ground)
            worst_partner = max(worst_partner, report.max_ground_off_partner)
            if verbose:
                for bra, ket, value in report.nonzero_elements():
                    nonzero.append(
                        {
                            "qubit": qubit,
                            "axis": axis,
                            "bra": str(bra),
                            "ket": str(ket),
                            "re": value.real,
                            "im": value.imag,
                        }
                    )
    rows.append(("delta-j-at-most-one", worst_dj, FORBIDDEN_ATOL, worst_dj < FORBIDDEN_ATOL))
    rows.append(
        ("no-ground-to-ground", worst_ground, FORBIDDEN_ATOL, worst_ground < FORBIDDEN_ATOL)
    )
    rows.append(
        ("ground-couples-only-to-j1", worst_partner, FORBIDDEN_ATOL, worst_partner < FORBIDDEN_ATOL)
    )

    worst_exchange = 0.0
    for qubit in range(1, n):
        for axis in AXES:
            worst_exchange = max(worst_exchange, exchange_conjugation_check(qubit, n, axis))
    rows.append(
        (
            "exchange-relocates-last-spin",
            worst_exchange,
            FORBIDDEN_ATOL,
            worst_exchange < FORBIDDEN_ATOL,
        )
    )

    if n == 4:
        passed, worst = error_detection_check(n)
        rows.append(("single-qubit-errors-detected", worst, FORBIDDEN_ATOL, passed))
        two_qubit = single_spin_operator("z", 1, 4) @ single_spin_operator("z", 2, 4)
        block = ground_block(two_qubit, 4)
        scalar_part = (np.trace(block) / 2.0) * np.eye(2)
        deviation = float(np.abs(block - scalar_part).max())
        rows.append(
            (
                "two-qubit-errors-not-detected",
                deviation,
                TWO_QUBIT_BLOCK_MIN,
                deviation > TWO_QUBIT_BLOCK_MIN,
            )
        )

    if verbose:
        extra["nonzero_elements"] = nonzero
    extra["all_pass"] = all(row[3] for row in rows)
    return ("rule", "value", "threshold", "passed"), rows, extra


def _run_lindblad(params: dict, verbose: bool) -> tuple[tuple[str, ...], list[tuple]]:
    spec = SystemSpec(params["n"], params["delta"])
    betas = params["beta_list"] if "beta_list" in params else (params["beta"],)
    re_a, im_a, re_b, im_b = params["state"]
    a = complex(re_a, im_a)
    b = complex(re_b, im_b)
    norm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if norm < 1e-12:
        raise ValueError("the logical state amplitudes cannot all vanish")
    state = encode(a / norm, b / norm).vector

    results = []
    for beta in betas:
        model = build_model(spec, beta, g=params["g"], gamma0=params.get("gamma0"))
        gamma = leakage_rate(model, state, t_final=params.get("t_final"), dt=params.get("dt"))
        results.append((beta, gamma, thermal_occupation(beta, spec.delta)))

    # slope of log(gamma) vs beta*delta over the protected window [3, 6]
    window = [
        (beta * spec.delta, gamma)
        for beta, gamma, _ in results
        if 3.0 <= beta * spec.delta <= 6.0 and gamma > 0
    ]
    if len(window) >= 2:
        xs, ys = zip(*window)
        slope = float(np.polyfit(xs, np.log(ys), 1)[0])
    else:
        slope = float("nan")

    rows = [(beta, gamma, occ, slope) for beta, gamma, occ in results]
    return ("beta", "gamma_fit", "n_thermal", "slope_check"), rows


def _run_fidelity(params: dict, verbose: bool) -> tuple[tuple[str, ...], list[tuple]]:
    gap = params["gap"]
    step = params["delta_grid"]
    rows = []
    for beta in params["beta_list"]:
        numeric, value = fidelity_grid_optimum(beta, gap, step)
        rows.append((beta, numeric, optimal_delta(beta), value))
    return ("beta", "delta_opt_numeric", "delta_opt_analytic", "F_at_opt"), rows


def run_experiment(config: ExperimentConfig) -> ResultTable:
    """Dispatch one subcommand; every run with the same config is identical."""
    extra: dict = {}
    if config.subcommand == "spectrum":
        columns, rows = _run_spectrum(config.params, config.verbose)
    elif config.subcommand == "paths":
        columns, rows = _run_paths(config.params, config.verbose)
    elif config.subcommand == "selection":
        columns, rows, extra = _run_selection(config.params, config.verbose)
    elif config.subcommand == "lindblad":
        columns, rows = _run_lindblad(config.params, config.verbose)
    elif config.subcommand == "fidelity":
        columns, rows = _run_fidelity(config.params, config.verbose)
    else:
        raise ValueError(f"unknown subcommand {config.subcommand!r}")

    meta = {
        "tool": "supercoherent",
        "version": __version__,
        "subcommand": config.subcommand,
        "format": config.fmt,
        "params": {k: _jsonable(v) for k, v in sorted(config.params.items())},
    }
    meta.update(extra)
    return ResultTable(columns=tuple(columns), rows=tuple(tuple(r) for r in rows), meta=meta)


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.15g}"
    return str(value)


def render(table: ResultTable, fmt: str) -> str:
    """Serialize a result table; same table and format give the same bytes."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_format_cell(v) for v in row])
        return buffer.getvalue()
    if fmt == "json":
        payload = {
            "meta": table.meta,
            "columns": list(table.columns),
            "rows": [[_jsonable(_native(v)) for v in row] for row in table.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _native(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def emit_results(table: ResultTable, fmt: str, out: str | None) -> None:
    text = render(table, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {out!r}: {exc}") from exc


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (None, 0):
            return EXIT_OK
        return int(code) if isinstance(code, int) else EXIT_USAGE

    try:
        table = run_experiment(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, EstimationError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    try:
        emit_results(table, config.fmt, config.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))
