"""Command-line front end.

::

    fractional-kinetics ml --alpha 0.5 --z -2
    fractional-kinetics solve --variant standard --nu 0.5 --c 1 --t-end 2 --steps 512
    fractional-kinetics laplace --kind ml --alpha 0.5 --a -1 --p 2
    fractional-kinetics verify --format json --output report.json

Exit codes: 0 success, 1 verification failure (or a numerical error inside a
command), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import kinetics, oracle, specfun
from .fracops import TimeGrid
from .kinetics import KineticModel, Variant
from .specfun import MLParams

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SCHEMA_VERSION = 1
COMMANDS = ("ml", "solve", "verify", "laplace")
LAPLACE_TOLERANCE = {"ml": 1e-6, "power": 1e-8}


class UsageError(ValueError):
    """Bad command line; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    output_format: str = "csv"
    output_path: Path | None = None
    model: KineticModel | None = None
    ml_params: MLParams | None = None
    grid: TimeGrid | None = None
    z: float | None = None
    tol: float | None = None
    residuals: bool = False
    laplace: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"--format must be csv or json, got {self.output_format!r}")
        present = {
            "model": self.model is not None,
            "ml_params": self.ml_params is not None,
            "grid": self.grid is not None,
            "z": self.z is not None,
            "tol": self.tol is not None,
            "residuals": self.residuals,
            "laplace": bool(self.laplace),
        }
        allowed = {
            "ml": {"ml_params", "z", "tol"},
            "solve": {"model", "grid", "residuals"},
            "verify": set(),
            "laplace": {"laplace"},
        }[self.command]
        extra = sorted(k for k, v in present.items() if v and k not in allowed)
        if extra:
            raise UsageError(f"{self.command}: unexpected settings {', '.join(extra)}")
        required = {"ml": {"ml_params", "z"}, "solve": {"model", "grid"}, "laplace": {"laplace"}}
        missing = sorted(k for k in required.get(self.command, ()) if not present[k])
        if missing:
            raise UsageError(f"{self.command}: missing {', '.join(missing)}")


# {{{ argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return x


def _positive(text: str) -> float:
    x = _finite(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return x


def _steps(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", type=Path, default=None, help="write here instead of stdout")

    parser = _Parser(prog="fractional-kinetics", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ml", parents=[common], help="evaluate E_{alpha,beta}(z)")
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--beta", type=_finite, default=None, help="omit for E_alpha")
    p.add_argument("--z", type=_finite, required=True)
    p.add_argument("--tol", type=_positive, default=specfun.DEFAULT_TOL)

    p = sub.add_parser("solve", parents=[common], help="tabulate a closed-form solution")
    p.add_argument("--variant", choices=[v.value for v in Variant], required=True)
    p.add_argument("--nu", type=_positive, required=True)
    p.add_argument("--c", type=_positive, required=True)
    p.add_argument("--d", type=_positive, default=None, help="second rate (ml-source only)")
    p.add_argument("--mu", type=_positive, default=None)
    p.add_argument("--n0", type=_positive, default=1.0)
    p.add_argument("--t-end", type=_positive, default=2.0)
    p.add_argument("--steps", type=_steps, default=512)
    p.add_argument("--residuals", action="store_true", help="add the equation residual column")

    sub.add_parser("verify", parents=[common], help="run the verification suite")

    p = sub.add_parser("laplace", parents=[common], help="numerical Laplace transform check")
    p.add_argument("--kind", choices=("ml", "power"), required=True)
    p.add_argument("--alpha", type=_positive)
    p.add_argument("--beta", type=_positive)
    p.add_argument("--a", type=_finite)
    p.add_argument("--rho", type=_positive)
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--tolerance", type=_positive, default=None)
    return parser


def _model_from(ns) -> KineticModel:
    variant = Variant(ns.variant)
    if ns.d is not None and variant is not Variant.ML_SOURCE:
        raise UsageError(f"--d is only used by --variant ml-source, not {variant.value}")
    if variant is Variant.ML_SOURCE and ns.d is None:
        raise UsageError("--variant ml-source requires --d")
    if variant is Variant.STANDARD and ns.mu not in (None, 1.0):
        raise UsageError("--mu must be 1 (or omitted) for --variant standard")
    mu = 1.0 if ns.mu is None else ns.mu
    try:
        return KineticModel(variant, ns.n0, ns.c, ns.nu, mu, ns.d or 0.0)
    except kinetics.ResonanceError as exc:
        raise UsageError(f"--d: resonant parameters: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"invalid model: {exc}") from None


def _laplace_from(ns) -> dict:
    if ns.kind == "ml":
        stray = [f for f in ("rho",) if getattr(ns, f) is not None]
        need = [f for f in ("alpha", "a") if getattr(ns, f) is None]
        params = {"alpha": ns.alpha, "beta": 1.0 if ns.beta is None else ns.beta, "a": ns.a}
    else:
        stray = [f for f in ("alpha", "beta", "a") if getattr(ns, f) is not None]
        need = [] if ns.rho is not None else ["rho"]
        params = {"rho": ns.rho}
    if stray:
        raise UsageError(f"--kind {ns.kind} does not take --{', --'.join(stray)}")
    if need:
        raise UsageError(f"--kind {ns.kind} requires --{', --'.join(need)}")
    tol = LAPLACE_TOLERANCE[ns.kind] if ns.tolerance is None else ns.tolerance
    return {"kind": ns.kind, "p": ns.p, "tolerance": tol, **params}


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Validated :class:`RunConfig`; raises :class:`UsageError` otherwise."""
    ns = build_parser().parse_args(list(argv))
    base = {"command": ns.command, "output_format": ns.format, "output_path": ns.output}
    if ns.command == "ml":
        try:
            params = MLParams(ns.alpha, 1.0 if ns.beta is None else ns.beta)
        except ValueError as exc:
            raise UsageError(f"invalid --alpha/--beta: {exc}") from None
        return RunConfig(**base, ml_params=params, z=ns.z, tol=ns.tol)
    if ns.command == "solve":
        grid = TimeGrid(ns.t_end, ns.steps)
        return RunConfig(**base, model=_model_from(ns), grid=grid, residuals=ns.residuals)
    if ns.command == "laplace":
        return RunConfig(**base, laplace=_laplace_from(ns))
    return RunConfig(**base)


# }}}


# {{{ output


def fmt(x) -> str:
    """17 significant digits, so that ``float(fmt(x)) == x``."""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, int)) and not isinstance(x, float):
        return str(x)
    return format(float(x), ".17g")


def _json_number(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _json_text(payload: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2, allow_nan=False) + "\n"


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text)


def _table(config: RunConfig, header, rows, extra=None) -> str:
    if config.output_format == "csv":
        return _csv_text(header, rows)
    records = [
        {k: (_json_number(v) if not isinstance(v, str) and not isinstance(v, int) else v)
         for k, v in zip(header, row)}
        for row in rows
    ]
    return _json_text({"command": config.command, **(extra or {}), "rows": records})


# }}}


# {{{ commands


def _run_ml(config: RunConfig) -> int:
    p = config.ml_params
    if p.beta == 1.0:
        r = specfun.ml_one(p.alpha, config.z, tol=config.tol)
    else:
        r = specfun.ml_two(p, config.z, tol=config.tol)
    header = ("alpha", "beta", "z", "value", "abs_error_estimate", "regime", "terms_used")
    row = (p.alpha, p.beta, config.z, r.value, r.abs_error_estimate, r.regime.value, r.terms_used)
    _emit(config, _table(config, header, [row]))
    return EXIT_OK


def _run_solve(config: RunConfig) -> int:
    model, grid = config.model, config.grid
    sol = kinetics.solve(model, grid)
    columns = [grid.nodes, sol.values]
    header = ["t", "N"]
    if config.residuals:
        header.append("residual")
        columns.append(oracle.residual(model, sol).per_node)
    rows = list(zip(*columns))
    extra = {"model": model.describe(), "start_policy": sol.start_policy.value}
    _emit(config, _table(config, header, rows, extra))
    return EXIT_OK


def _run_laplace(config: RunConfig) -> int:
    q = config.laplace
    if q["kind"] == "ml":
        r = oracle.laplace_ml_check(q["alpha"], q["beta"], q["a"], q["p"])
        params = f"alpha={q['alpha']:g} beta={q['beta']:g} a={q['a']:g}"
    else:
        r = oracle.laplace_power_check(q["rho"], q["p"])
        params = f"rho={q['rho']:g}"
    passed = r.rel_error <= q["tolerance"]
    header = ("kind", "params", "p", "lhs_numeric", "rhs_closed", "rel_error",
              "truncation_T", "tolerance", "status")
    row = (q["kind"], params, r.p, r.lhs_numeric, r.rhs_closed, r.rel_error,
           r.truncation_T, q["tolerance"], "pass" if passed else "fail")
    _emit(config, _table(config, header, [row]))
    return EXIT_OK if passed else EXIT_FAILURE


def _run_verify(config: RunConfig) -> int:
    from .verify import run_all

    results = run_all()
    passed = sum(r.passed for r in results)
    summary = {"total": len(results), "passed": passed, "failed": len(results) - passed}
    if config.output_format == "csv":
        header = ("check", "param_summary", "max_error", "tolerance", "status")
        text = _csv_text(
            header, [(r.check, r.param_summary, r.max_error, r.tolerance, r.status) for r in results]
        )
    else:
        checks = [{**r.as_dict(), "max_error": _json_number(r.max_error)} for r in results]
        text = _json_text({"command": "verify", "summary": summary, "checks": checks})
    _emit(config, text)
    print(f"verify: {passed}/{len(results)} checks passed, {summary['failed']} failed", file=sys.stderr)
    return EXIT_OK if passed == len(results) else EXIT_FAILURE


_COMMANDS = {"ml": _run_ml, "solve": _run_solve, "laplace": _run_laplace, "verify": _run_verify}


def run(config: RunConfig) -> int:
    """Execute ``config``; returns the process exit code."""
    try:
        return _COMMANDS[config.command](config)
    except oracle.ConvergenceConditionError as exc:
        print(f"{type(exc).__module__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, ValueError) as exc:
        print(f"{type(exc).__module__}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


# }}}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
