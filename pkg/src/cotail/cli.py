"""Command-line front end.

Subcommands::

    cotail simulate --model linear-pareto --n 1000 --seed 7 --out data.csv
    cotail ingest --input prices.csv --transform abs-log-returns --out pairs.csv
    cotail estimate --input pairs.csv --estimator tdc-quasispectral --k-frac 0.1 --alpha 4
    cotail curve --input pairs.csv --k-grid 0.05,0.1,0.2,0.3,0.4 --y 1 --alpha 4
    cotail mc --model linear-pareto --reps 1000 --k-fracs 0.05,0.1,0.2,0.3,0.4

Datasets are two-column CSV (optional header, comma separated, dot decimal).
Floats are written with repr-level precision, so a simulated file re-ingests
to bit-identical values. The default seed is 0, overridable per command with
--seed or globally with the COTAIL_SEED environment variable.

On failure a JSON object {"error": {"type": ..., "message": ...}} goes to
stderr and the exit code is nonzero.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .core import BivariateSample, order_view
from .errors import CotailError, NonPositivePrice, ParseError
from .estimators import (
    cond_tail_curve,
    confidence_interval,
    cte_aleph3,
    cte_aleph4,
    edm_estimate,
    tdc_empirical,
    tdc_quasispectral,
    tdc_quasispectral_estimated,
    theta_hat,
)
from .simulate import (
    BivariateTModel,
    LinearParetoModel,
    ModelConfig,
    run_mc,
    sample_dataset,
)
from .tail_index import hill_estimate

TRANSFORMS = ("none", "abs-log-returns")

MC_COLUMNS = (
    "estimator_id",
    "k_frac",
    "k_alpha_frac",
    "mean",
    "sd",
    "q05",
    "q25",
    "q50",
    "q75",
    "q95",
    "rep_count",
    "failures",
    "truth",
)

REPORT_COLUMNS = (
    "estimator_id",
    "n",
    "k",
    "k_alpha",
    "y",
    "value",
    "plugin_variance",
    "ci_level",
    "ci_lo",
    "ci_hi",
    "alpha_used",
    "alpha_source",
    "p",
    "extrapolation_factor",
    "aleph_used",
)


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

def _parse_table(text: str) -> list[tuple[float, float]]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("input contains no rows")

    def cells(line: str) -> list[str]:
        return [c.strip() for c in line.split(",")]

    start = 0
    try:
        for cell in cells(lines[0]):
            float(cell)
    except ValueError:
        start = 1  # non-numeric first row is a header
    rows: list[tuple[float, float]] = []
    for lineno, line in enumerate(lines[start:], start=start + 1):
        parts = cells(line)
        if len(parts) != 2:
            raise ParseError(f"row {lineno}: expected 2 columns, got {len(parts)}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ParseError(f"row {lineno}: non-numeric cell") from None
    if not rows:
        raise ParseError("input contains no data rows")
    return rows


def ingest_text(text: str, transform: str = "none") -> BivariateSample:
    """Parse a two-column table, optionally mapping prices to |log-returns|."""
    transform = transform.replace("_", "-")
    if transform not in TRANSFORMS:
        raise ValueError(f"unknown transform {transform!r}, expected {TRANSFORMS}")
    rows = _parse_table(text)
    first = np.asarray([r[0] for r in rows], dtype=float)
    second = np.asarray([r[1] for r in rows], dtype=float)
    if transform == "none":
        return BivariateSample(first, second)
    if len(rows) < 2:
        raise ParseError("abs-log-returns needs at least 2 rows of prices")
    if np.any(first <= 0) or np.any(second <= 0):
        raise NonPositivePrice("all price levels must be strictly positive")
    x = np.abs(np.log(first[1:] / first[:-1]))
    y = np.abs(np.log(second[1:] / second[:-1]))
    return BivariateSample(x, y)


def ingest(path: str | Path, transform: str = "none") -> BivariateSample:
    """Read a two-column file (``-`` for stdin) into a sample."""
    return ingest_text(_read_text(str(path)), transform)


# ---------------------------------------------------------------------------
# io helpers
# ---------------------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _fmt(value) -> str:
    """Lossless cell formatting: repr for floats, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _rows_to_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(row[c]) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(args, columns, rows, extra: dict | None = None) -> None:
    if args.format == "csv":
        _write_text(args.out, _rows_to_csv(columns, rows))
    else:
        payload: dict = {} if extra is None else dict(extra)
        payload["rows"] = [dict(row) for row in rows]
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")


def _default_seed() -> int:
    return int(os.environ.get("COTAIL_SEED", "0"))


def _sample_payload(args, sample: BivariateSample) -> None:
    if args.format == "csv":
        lines = ["x,y"]
        lines.extend(
            f"{_fmt(float(a))},{_fmt(float(b))}" for a, b in zip(sample.x, sample.y)
        )
        _write_text(args.out, "\n".join(lines) + "\n")
    else:
        payload = {"x": sample.x.tolist(), "y": sample.y.tolist()}
        _write_text(args.out, json.dumps(payload) + "\n")


def _load_sample(args) -> BivariateSample:
    return ingest_text(_read_text(args.input), args.transform)


def _model_config(args) -> ModelConfig:
    if args.model == "linear-pareto":
        model = LinearParetoModel(phi=args.phi, sigma=args.sigma, alpha=args.alpha)
    else:
        model = BivariateTModel(nu=args.nu, rho=args.rho)
    return ModelConfig(model=model, n=args.n, seed=args.seed)


def _resolve_count(absolute, fraction, n: int, what: str) -> int:
    if absolute is not None and fraction is not None:
        raise ValueError(f"pass either --{what} or --{what}-frac, not both")
    if absolute is not None:
        return int(absolute)
    if fraction is not None:
        if not 0.0 < fraction < 1.0:
            raise ValueError(f"--{what}-frac must lie in (0, 1)")
        return min(max(int(round(fraction * n)), 1), n - 1)
    raise ValueError(f"one of --{what} or --{what}-frac is required")


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"expected a comma-separated list of numbers, got {text!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_simulate(args) -> None:
    _sample_payload(args, sample_dataset(_model_config(args)))


def _cmd_ingest(args) -> None:
    _sample_payload(args, _load_sample(args))


def _blank_report() -> dict:
    return {c: None for c in REPORT_COLUMNS}


def _cmd_estimate(args) -> None:
    sample = _load_sample(args)
    n = sample.n
    k = _resolve_count(args.k, args.k_frac, n, "k")
    report = _blank_report()
    report.update({"estimator_id": args.estimator, "n": n, "k": k})

    def resolve_k_alpha() -> int:
        if args.k_alpha is None and args.k_alpha_frac is None:
            return min(max(2 * k, 1), n - 1)  # documented 2k heuristic
        return _resolve_count(args.k_alpha, args.k_alpha_frac, n, "k-alpha")

    est = None
    if args.estimator == "tdc-empirical":
        est = tdc_empirical(sample, k, args.y)
        report["y"] = args.y
    elif args.estimator == "tdc-quasispectral":
        if args.alpha is None:
            raise ValueError("tdc-quasispectral requires --alpha")
        est = tdc_quasispectral(sample, k, args.y, alpha=args.alpha)
        report.update({"y": args.y, "alpha_source": "supplied"})
    elif args.estimator == "tdc-quasispectral-estimated":
        k_alpha = resolve_k_alpha()
        est = tdc_quasispectral_estimated(sample, k, k_alpha, args.y)
        report.update({"y": args.y, "k_alpha": k_alpha, "alpha_source": "hill"})
    elif args.estimator == "cte-aleph3":
        est = cte_aleph3(sample, k)
    elif args.estimator == "cte-aleph4":
        if args.alpha is None:
            raise ValueError("cte-aleph4 requires --alpha")
        est = cte_aleph4(sample, k, args.alpha)
        report["alpha_source"] = "supplied"
    elif args.estimator == "edm":
        est = edm_estimate(sample, k, args.norm)
    elif args.estimator == "theta":
        if args.p is None:
            raise ValueError("theta requires --p")
        if args.alpha is not None:
            alpha, source = args.alpha, "supplied"
        else:
            k_alpha = resolve_k_alpha()
            alpha = hill_estimate(order_view(sample), k_alpha).alpha_hat
            source = "hill"
            report["k_alpha"] = k_alpha
        if args.aleph_from == "cte-aleph3":
            aleph = cte_aleph3(sample, k).value
        else:
            aleph = cte_aleph4(sample, k, alpha).value
        ext = theta_hat(sample, k, args.p, aleph, alpha)
        report.update(
            {
                "estimator_id": "theta_hat",
                "value": ext.theta_hat,
                "alpha_used": ext.alpha_used,
                "alpha_source": source,
                "p": ext.p,
                "extrapolation_factor": ext.extrapolation_factor,
                "aleph_used": ext.aleph_used,
            }
        )
    else:
        raise ValueError(f"unknown estimator {args.estimator!r}")

    if est is not None:
        report.update(
            {
                "estimator_id": est.estimator_id,
                "value": est.value,
                "plugin_variance": est.plugin_variance,
                "alpha_used": est.alpha_used,
            }
        )
        if est.plugin_variance is not None:
            lo, hi = confidence_interval(est, args.ci_level)
            report.update({"ci_level": args.ci_level, "ci_lo": lo, "ci_hi": hi})
    _emit(args, REPORT_COLUMNS, [report])


_CURVE_COLUMNS = ("estimator_id", "k", "y", "value", "plugin_variance")


def _curve_point(method: str, sample, k: int, y: float, alpha, k_alpha):
    if method == "empirical":
        return tdc_empirical(sample, k, y)
    if method == "quasispectral":
        if alpha is None:
            raise ValueError("quasispectral curves require --alpha")
        return tdc_quasispectral(sample, k, y, alpha=alpha)
    if method == "quasispectral-estimated":
        return tdc_quasispectral_estimated(sample, k, k_alpha, y)
    raise ValueError(f"unknown method {method!r}")


def _cmd_curve(args) -> None:
    sample = _load_sample(args)
    n = sample.n
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if (args.y_grid is None) == (args.k_grid is None):
        raise ValueError("pass exactly one of --y-grid or --k-grid")
    rows = []
    if args.y_grid is not None:
        k = _resolve_count(args.k, args.k_frac, n, "k")
        k_alpha = (
            _resolve_count(args.k_alpha, args.k_alpha_frac, n, "k-alpha")
            if (args.k_alpha is not None or args.k_alpha_frac is not None)
            else min(max(2 * k, 1), n - 1)
        )
        for method in methods:
            for y in _float_list(args.y_grid):
                est = _curve_point(method, sample, k, y, args.alpha, k_alpha)
                rows.append(
                    {
                        "estimator_id": est.estimator_id,
                        "k": k,
                        "y": y,
                        "value": est.value,
                        "plugin_variance": est.plugin_variance,
                    }
                )
    else:
        for method in methods:
            for frac in _float_list(args.k_grid):
                if not 0.0 < frac < 1.0:
                    raise ValueError("--k-grid fractions must lie in (0, 1)")
                k = min(max(int(round(frac * n)), 1), n - 1)
                k_alpha = (
                    _resolve_count(args.k_alpha, args.k_alpha_frac, n, "k-alpha")
                    if (args.k_alpha is not None or args.k_alpha_frac is not None)
                    else min(max(2 * k, 1), n - 1)
                )
                est = _curve_point(method, sample, k, args.y, args.alpha, k_alpha)
                rows.append(
                    {
                        "estimator_id": est.estimator_id,
                        "k": k,
                        "y": args.y,
                        "value": est.value,
                        "plugin_variance": est.plugin_variance,
                    }
                )
    _emit(args, _CURVE_COLUMNS, rows)


def _cmd_mc(args) -> None:
    config = _model_config(args)
    estimators = tuple(
        name.strip().replace("-", "_") for name in args.estimators.split(",") if name.strip()
    )
    summary = run_mc(
        config,
        reps=args.reps,
        k_fractions=_float_list(args.k_fracs),
        k_alpha_fractions=_float_list(args.k_alpha_fracs) if args.k_alpha_fracs else (),
        estimators=estimators,
        y=args.y,
    )
    rows = []
    for (name, kf, kaf), cell in summary.cells.items():
        rows.append(
            {
                "estimator_id": name,
                "k_frac": kf,
                "k_alpha_frac": kaf,
                "mean": cell.mean,
                "sd": cell.sd,
                "q05": cell.q05,
                "q25": cell.q25,
                "q50": cell.q50,
                "q75": cell.q75,
                "q95": cell.q95,
                "rep_count": cell.rep_count,
                "failures": cell.failures,
                "truth": summary.truth if name.startswith("tdc_") else None,
            }
        )
    _emit(
        args,
        MC_COLUMNS,
        rows,
        extra={"truth": summary.truth, "y": summary.y, "reps": summary.reps},
    )


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_input_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input path, '-' for stdin")
    p.add_argument(
        "--transform",
        choices=TRANSFORMS,
        default="none",
        help="apply to the input table before estimating",
    )


def _add_model_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=("linear-pareto", "bivariate-t"), required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--phi", type=float, default=0.8)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--alpha", type=float, default=4.0)
    p.add_argument("--nu", type=float, default=4.0)
    p.add_argument("--rho", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=_default_seed())


def _add_k_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, help="number of upper order statistics")
    p.add_argument("--k-frac", type=float, help="fraction of n instead of --k")
    p.add_argument("--k-alpha", type=int, help="order statistics for the Hill step")
    p.add_argument("--k-alpha-frac", type=float)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cotail",
        description="Conditional-on-extreme-event estimation for bivariate heavy tails",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw a synthetic dataset")
    _add_model_options(p)
    _add_output_options(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("ingest", help="normalize a two-column table")
    _add_input_options(p)
    _add_output_options(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("estimate", help="run one estimator and report it")
    _add_input_options(p)
    p.add_argument(
        "--estimator",
        required=True,
        choices=(
            "tdc-empirical",
            "tdc-quasispectral",
            "tdc-quasispectral-estimated",
            "cte-aleph3",
            "cte-aleph4",
            "edm",
            "theta",
        ),
    )
    _add_k_options(p)
    p.add_argument("--y", type=float, default=1.0)
    p.add_argument("--alpha", type=float, help="tail index when known")
    p.add_argument("--p", type=float, help="exceedance probability for theta")
    p.add_argument("--aleph-from", choices=("cte-aleph3", "cte-aleph4"), default="cte-aleph3")
    p.add_argument("--norm", choices=("l2", "l1", "linf"), default="l2")
    p.add_argument("--ci-level", type=float, default=0.95)
    _add_output_options(p)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("curve", help="sweep estimators over a y grid or a k grid")
    _add_input_options(p)
    p.add_argument(
        "--methods",
        default="empirical,quasispectral",
        help="comma list of empirical, quasispectral, quasispectral-estimated",
    )
    _add_k_options(p)
    p.add_argument("--y", type=float, default=1.0, help="fixed y for --k-grid sweeps")
    p.add_argument("--y-grid", help="comma list of y values (needs --k or --k-frac)")
    p.add_argument("--k-grid", help="comma list of k fractions (needs --y)")
    p.add_argument("--alpha", type=float, help="tail index for quasispectral")
    _add_output_options(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("mc", help="Monte Carlo study over replications")
    _add_model_options(p)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--k-fracs", default="0.05,0.1,0.2,0.3,0.4")
    p.add_argument("--k-alpha-fracs", default="0.2")
    p.add_argument(
        "--estimators",
        default="tdc-empirical,tdc-quasispectral,tdc-quasispectral-estimated",
    )
    p.add_argument("--y", type=float, default=1.0)
    _add_output_options(p)
    p.set_defaults(func=_cmd_mc)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CotailError, ValueError) as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(payload), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
