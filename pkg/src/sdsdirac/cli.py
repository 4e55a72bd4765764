"""Command-line front end: tables, classification, samples, verification.

Subcommands
    spectrum      closed-form levels of one branch (JSON/CSV rows)
    classify      branch validity assessment for given (params, j, s)
    wavefunction  sampled radial components (p, Re/Im of both components)
    uncertainty   minimal-uncertainty bounds and their rescaled form
    verify        run verification suites (oracle, lambda, wavefunction,
                  uncertainty); exit 3 when a suite fails

Output is deterministic: identical configuration produces byte-identical
bytes (floats serialized with 17 significant digits, keys in fixed order).
Files are written atomically (temp file + rename).  The environment variable
SDS_DEFAULT_GRID overrides the default grid size N = 2000.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from . import oracle as oracle_mod
from .deformation import (
    Branch,
    BranchTag,
    ModelParams,
    classify_regime,
    derive_constants,
    k_of,
    make_branch,
    q_discriminant,
    uncertainty_bounds,
    validate_j,
    validate_spin,
)
from .errors import SdsDiracError
from .radial import GridFunction, build_b_minus, make_grid
from .radial import norm as grid_norm
from .spectrum import QuantumNumbers, branch_formula, spectrum_table
from .wavefun import joint_norm, radial_wavefunction

__all__ = ["RunConfig", "run", "main"]

DEFAULT_GRID_ENV = "SDS_DEFAULT_GRID"
_BRANCH_CHOICES = ["auto"] + [tag.value for tag in BranchTag]
_SUITES = ("oracle", "lambda", "wavefunction", "uncertainty")


@dataclass(frozen=True)
class RunConfig:
    """One fully-resolved CLI invocation."""

    command: str
    params: ModelParams
    j: float = 0.5
    s: float = 0.5
    n: int = 0
    n_max: int = 8
    branch: str = "auto"
    grid: int = 2000
    tolerance: float = 1e-3
    levels: int = 5
    suite: str = "all"
    mean_x: float = 0.0
    mean_p: float = 0.0
    fmt: str = "json"
    output: str | None = None


def parse_half_integer(text: str) -> float:
    """Accept half-integers as decimals ('0.5', '-1.5') or fractions ('1/2')."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return float(num) / float(den)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a half-integer: {text!r}") from exc


def format_number(value) -> str:
    if isinstance(value, bool) or value is None:
        return {True: "true", False: "false", None: "null"}[value]
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    raise TypeError(f"cannot format {type(value)}")


def _json_escape(text: str) -> str:
    out = []
    for ch in text:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def to_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with fixed 17-significant-digit float formatting."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{_json_escape(k)}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, str):
        return _json_escape(obj)
    return format_number(obj)


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return "\n"
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) if isinstance(v, str) else format_number(v) for v in row.values()))
    return "\n".join(lines) + "\n"


def _render(meta: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return to_json({"meta": meta, "rows": rows}) + "\n"
    return to_csv(rows)


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sdsdirac-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _params_meta(params: ModelParams) -> dict:
    return {
        "alpha": params.alpha,
        "beta": params.beta,
        "lam": params.lam,
        "m": params.m,
        "omega": params.omega,
    }


def _select_branch(config: RunConfig) -> Branch:
    """Resolve --branch: 'auto' picks the branch realized by the Hamiltonian.

    For either spin projection the quadratic-form realization selects the
    zero-mode-regime branch when Q < 0 and the shifted one when Q > 0.
    """
    params, j, s = config.params, config.j, config.s
    if config.branch != "auto":
        tag = BranchTag(config.branch)
        if tag.s != s:
            raise SdsDiracError(f"branch {tag.value} carries s={tag.s:+.1f}, not s={s:+.1f}")
        for assessment in classify_regime(params, j, s):
            if assessment.branch.tag is tag:
                if not assessment.valid:
                    raise SdsDiracError(
                        f"branch {tag.value} is invalid at these parameters: {assessment.reason}"
                    )
                return assessment.branch
        raise SdsDiracError(f"branch {tag.value} not available for s={s:+.1f}")
    q = q_discriminant(params)
    if s > 0:
        tag = BranchTag.ZERO_GS if q < 0 else BranchTag.POS_SPIN_SHIFTED
    else:
        tag = BranchTag.NEG_SPIN_SAME_XI if q < 0 else BranchTag.NEG_SPIN_SHIFTED
    return make_branch(tag, params, j)


def _cmd_spectrum(config: RunConfig) -> tuple[int, str]:
    branch = _select_branch(config)
    table = spectrum_table(branch, config.params, config.j, config.n_max)
    meta = {
        "command": "spectrum",
        "params": _params_meta(config.params),
        "j": config.j,
        "s": config.s,
        "branch": branch.tag.value,
        "grid": config.grid,
    }
    rows = [
        {
            "n": row.n,
            "n_principal": row.n_principal,
            "e2_minus_m2": row.e2_minus_m2,
            "energy": row.energy,
            "e_n": row.e_n,
            "branch": branch.tag.value,
            "valid": True,
        }
        for row in table.rows
    ]
    return 0, _render(meta, rows, config.fmt)


def _cmd_classify(config: RunConfig) -> tuple[int, str]:
    assessments = classify_regime(config.params, config.j, config.s)
    meta = {
        "command": "classify",
        "params": _params_meta(config.params),
        "j": config.j,
        "s": config.s,
        "q_discriminant": q_discriminant(config.params),
    }
    rows = [
        {
            "branch": a.branch.tag.value,
            "s": a.branch.s,
            "k_prime": a.branch.k_prime,
            "xi_prime": a.branch.xi_prime,
            "valid": a.valid,
            "reason": a.reason,
            "epsilon_positive_proven": a.epsilon_positive_proven,
        }
        for a in assessments
    ]
    return 0, _render(meta, rows, config.fmt)


def _cmd_wavefunction(config: RunConfig) -> tuple[int, str]:
    branch = _select_branch(config)
    dc = derive_constants(config.params)
    qn = QuantumNumbers.make(config.s, config.j, config.n)
    wavefunction = radial_wavefunction(branch, dc, config.params, qn)
    grid = make_grid(config.params.beta, config.grid)
    large = wavefunction.large.evaluate(grid.p_nodes)
    small = wavefunction.small.evaluate(grid.p_nodes)
    meta = {
        "command": "wavefunction",
        "params": _params_meta(config.params),
        "j": config.j,
        "s": config.s,
        "n": config.n,
        "branch": branch.tag.value,
        "grid": config.grid,
        "joint_norm": joint_norm(wavefunction),
    }
    rows = [
        {
            "p": float(grid.p_nodes[i]),
            "re_r1": float(large[i].real),
            "im_r1": float(large[i].imag),
            "re_r2": float(small[i].real),
            "im_r2": float(small[i].imag),
        }
        for i in range(grid.size)
    ]
    return 0, _render(meta, rows, config.fmt)


def _cmd_uncertainty(config: RunConfig) -> tuple[int, str]:
    report = uncertainty_bounds(config.params, config.mean_x, config.mean_p)
    meta = {
        "command": "uncertainty",
        "params": _params_meta(config.params),
        "mean_x": config.mean_x,
        "mean_p": config.mean_p,
    }
    rows = [
        {
            "gamma": report.gamma,
            "dx_min": report.dx_min,
            "dp_min": report.dp_min,
            "alpha_bar": report.alpha_bar,
            "beta_bar": report.beta_bar,
            "product": report.dx_min * report.dp_min,
        }
    ]
    return 0, _render(meta, rows, config.fmt)


def _suite_oracle(config: RunConfig) -> dict:
    branch = _select_branch(config)
    params = config.params
    dc = derive_constants(params)
    grid = make_grid(params.beta, config.grid)
    k = k_of(config.j, config.s)
    table = spectrum_table(branch, params, config.j, config.levels - 1)
    report = oracle_mod.diagonalize_h(dc, params, k, grid, config.levels)
    comparison = oracle_mod.compare_to_closed_form(report, table, config.tolerance)
    return {
        "suite": "oracle",
        "branch": branch.tag.value,
        "grid": config.grid,
        "levels": config.levels,
        "tolerance": config.tolerance,
        "max_residual": max(comparison.residuals),
        "passed": comparison.passed,
    }


def _suite_lambda(config: RunConfig) -> dict:
    params = config.params
    grid = make_grid(params.beta, config.grid)
    k = k_of(config.j, config.s)
    gauges = (0.0, 0.5, 1.0)
    worst = 0.0
    for lam_a, lam_b in zip(gauges, gauges[1:]):
        worst = max(
            worst,
            oracle_mod.lambda_invariance_check(
                dataclasses.replace(params, lam=lam_a),
                dataclasses.replace(params, lam=lam_b),
                k,
                grid,
                n_levels=min(config.levels, 8),
            ),
        )
    return {
        "suite": "lambda",
        "grid": config.grid,
        "gauges": list(gauges),
        "max_residual": worst,
        "passed": worst <= 1e-8,
    }


def _suite_wavefunction(config: RunConfig) -> dict:
    """Joint normalization and ladder intertwining for the lowest levels."""
    branch = _select_branch(config)
    params = config.params
    dc = derive_constants(params)
    grid = make_grid(params.beta, config.grid)
    b_minus = build_b_minus(dc, k_of(config.j, config.s), grid)
    omega_conj = complex(params.m * params.omega, -math.sqrt(params.alpha / params.beta))
    norm_defect = 0.0
    intertwine = 0.0
    for n in range(0, 3):
        qn = QuantumNumbers.make(config.s, config.j, n)
        wavefunction = radial_wavefunction(branch, dc, params, qn)
        norm_defect = max(norm_defect, abs(joint_norm(wavefunction) - 1.0))
        image = b_minus.apply(GridFunction(wavefunction.large.evaluate(grid.p_nodes), grid))
        e2 = branch_formula(
            branch.tag, params.alpha, params.beta, params.m, params.omega, config.j, n
        )
        energy = math.sqrt(params.m**2 + e2)
        target = ((energy + params.m) / omega_conj) * wavefunction.small.evaluate(grid.p_half)
        defect = grid_norm(GridFunction(image.values - target, grid, "half"))
        scale = grid_norm(GridFunction(target, grid, "half"))
        intertwine = max(intertwine, defect / scale if scale > 0.0 else defect)
    # second-order grid residual, calibrated at the default N = 2000
    intertwine_tol = 1e-4 * max(1.0, (2000.0 / config.grid) ** 2)
    return {
        "suite": "wavefunction",
        "branch": branch.tag.value,
        "grid": config.grid,
        "norm_defect": norm_defect,
        "intertwining_residual": intertwine,
        "max_residual": max(norm_defect, intertwine),
        "passed": norm_defect <= 1e-8 and intertwine <= intertwine_tol,
    }


def _suite_uncertainty(config: RunConfig) -> dict:
    params = config.params
    report = uncertainty_bounds(params, config.mean_x, config.mean_p)
    # Independent route: minimal bounds of the rescaled relation mapped back.
    ab = report.alpha_bar * report.beta_bar
    dx_bar = math.sqrt(report.beta_bar / (1.0 - ab))
    dp_bar = math.sqrt(report.alpha_bar / (1.0 - ab))
    back = math.sqrt((1.0 + report.gamma) / (1.0 + math.sqrt(params.alpha * params.beta)))
    residual = max(
        abs(dx_bar * back - report.dx_min) / report.dx_min,
        abs(dp_bar * back - report.dp_min) / report.dp_min,
    )
    return {
        "suite": "uncertainty",
        "max_residual": residual,
        "rescaled_product_bound": ab,
        "passed": residual <= 1e-12 and ab < 1.0,
    }


def _cmd_verify(config: RunConfig) -> tuple[int, str]:
    wanted = _SUITES if config.suite == "all" else (config.suite,)
    rows = []
    for name in wanted:
        rows.append(
            {
                "oracle": _suite_oracle,
                "lambda": _suite_lambda,
                "wavefunction": _suite_wavefunction,
                "uncertainty": _suite_uncertainty,
            }[name](config)
        )
    meta = {
        "command": "verify",
        "params": _params_meta(config.params),
        "j": config.j,
        "s": config.s,
        "suites": list(wanted),
    }
    status = 0 if all(row["passed"] for row in rows) else 3
    return status, _render(meta, rows, config.fmt)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # single diagnostic line, exit 2
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_common(parser: argparse.ArgumentParser, *, quantum: bool) -> None:
    parser.add_argument("--alpha", type=float, required=True, help="deformation parameter alpha > 0")
    parser.add_argument("--beta", type=float, required=True, help="deformation parameter beta > 0")
    parser.add_argument("--m", type=float, required=True, help="mass m > 0")
    parser.add_argument("--omega", type=float, required=True, help="oscillator frequency omega > 0")
    parser.add_argument("--lam", "--lambda", dest="lam", type=float, default=0.0,
                        help="gauge parameter of the representation (default 0)")
    if quantum:
        parser.add_argument("--j", type=parse_half_integer, default=0.5,
                            help="total angular momentum j (half-integer, e.g. 0.5 or 1/2)")
        parser.add_argument("--s", type=parse_half_integer, default=0.5,
                            help="spin projection +-1/2 (e.g. +0.5 or -1/2)")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default=None, help="write here atomically instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdsdirac", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    default_grid = int(os.environ.get(DEFAULT_GRID_ENV, "2000"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form energy levels of one branch")
    _add_common(p, quantum=True)
    p.add_argument("--n-max", type=int, default=8, help="highest radial level to tabulate")
    p.add_argument("--branch", choices=_BRANCH_CHOICES, default="auto")
    p.add_argument("--grid", type=int, default=default_grid)

    p = sub.add_parser("classify", help="branch validity for (params, j, s)")
    _add_common(p, quantum=True)

    p = sub.add_parser("wavefunction", help="sample radial components on the grid")
    _add_common(p, quantum=True)
    p.add_argument("--n", type=int, default=0, help="radial quantum number")
    p.add_argument("--branch", choices=_BRANCH_CHOICES, default="auto")
    p.add_argument("--grid", type=int, default=default_grid)

    p = sub.add_parser("uncertainty", help="minimal-uncertainty bounds")
    _add_common(p, quantum=False)
    p.add_argument("--mean-x", type=float, default=0.0)
    p.add_argument("--mean-p", type=float, default=0.0)

    p = sub.add_parser("verify", help="run verification suites")
    _add_common(p, quantum=True)
    p.add_argument("--suite", choices=_SUITES + ("all",), default="all")
    p.add_argument("--grid", type=int, default=default_grid)
    p.add_argument("--tolerance", type=float, default=1e-3)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--branch", choices=_BRANCH_CHOICES, default="auto")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params = ModelParams(alpha=args.alpha, beta=args.beta, lam=args.lam, m=args.m, omega=args.omega)
    fields = {}
    for name in ("j", "s", "n", "n_max", "branch", "grid", "tolerance", "levels",
                 "suite", "mean_x", "mean_p", "fmt", "output"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    if "j" in fields:
        fields["j"] = validate_j(fields["j"])
        fields["s"] = validate_spin(fields["s"])
    return RunConfig(command=args.command, params=params, **fields)


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one resolved configuration; returns (exit status, rendered text)."""
    handler = {
        "spectrum": _cmd_spectrum,
        "classify": _cmd_classify,
        "wavefunction": _cmd_wavefunction,
        "uncertainty": _cmd_uncertainty,
        "verify": _cmd_verify,
    }.get(config.command)
    if handler is None:
        raise SdsDiracError(f"unknown command {config.command!r}")
    return handler(config)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        status, text = run(config)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SdsDiracError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_output(text, config.output)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
