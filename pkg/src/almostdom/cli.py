"""Command-line front end.

Subcommands
-----------
estimate   point estimate of a dominance coefficient from CSV data
ci         estimate plus a bootstrap confidence interval (ReportRecord)
simulate   Monte Carlo coverage study for a bundled DGP preset
tune       calibrate the studentization threshold on observed data
measures   rank-dependent welfare and inequality of one sample

Input CSV formats: matched pairs use one file with header ``x1,x2``;
independent samples use either one file with header ``group,value``
(group 1 or 2) or two single-column files (``--input`` and ``--input2``).
Outputs are JSON (default) or CSV, to stdout or ``--output``. Exit codes:
0 success, 2 indistinguishable curves (coefficient undefined), 3 boundary
estimate under ``--strict``, 1 other errors.

``--threads 0`` (or unset, via the ALMOSTDOM_THREADS environment
variable) uses all cores for the simulate/tune/ci drivers.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from .calculus import GridFunction, GridSpec, integrate_down, integrate_up
from .coefficients import (
    Direction,
    DominanceFamily,
    Family,
    coefficient,
    cubic_preference,
    default_grid,
    difference_curve,
    family_curves,
    rank_measures,
)
from .covariance import std_curve_for
from .empirical import (
    EmpiricalDistribution,
    PairedSample,
    Sample,
    SamplingScheme,
)
from .errors import (
    AlmostDomError,
    CsvParseError,
    DegenerateCurvesError,
    InvalidConfigError,
    NegativeValueError,
)
from .inference import InferenceConfig, bootstrap_ci, select_tuning, tuning_table
from .simulation import (
    DiscreteLaw,
    DoublePareto,
    MonteCarloStudy,
    monte_carlo,
    population_coefficient,
)

__all__ = ["main", "load_csv", "ReportRecord", "PRESETS"]


# ---------------------------------------------------------------------------
# CSV ingestion


def _parse_cell(text: str, row: int, col: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise CsvParseError(
            f"row {row}, column {col}: {text!r} is not a number", row=row, col=col
        ) from None


def _check_sign(value: float, row: int, require_nonnegative: bool) -> float:
    if require_nonnegative and value < 0:
        raise NegativeValueError(
            f"row {row}: negative value {value!r} not allowed for this family",
            row=row,
        )
    return value


def _read_rows(path: str) -> list[list[str]]:
    try:
        with open(path, newline="") as handle:
            return [row for row in csv.reader(handle)]
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise AlmostDomError(f"cannot read {path}: {exc}") from exc


def _load_single_column(path: str, require_nonnegative: bool) -> np.ndarray:
    rows = _read_rows(path)
    values = []
    for i, row in enumerate(rows, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 1:
            raise CsvParseError(
                f"row {i}: expected a single column, got {len(row)}", row=i
            )
        text = row[0].strip()
        if i == 1:
            try:
                float(text)
            except ValueError:
                continue  # header line
        values.append(_check_sign(_parse_cell(text, i, 1), i, require_nonnegative))
    if not values:
        raise CsvParseError(f"{path} contains no data rows", row=1)
    return np.asarray(values)


def load_csv(
    path: str,
    scheme: SamplingScheme,
    path2: str | None = None,
    require_nonnegative: bool = False,
):
    """Load sample data per the sampling scheme.

    Matched pairs: ``path`` has header ``x1,x2``. Independent samples:
    either ``path`` has header ``group,value`` with groups 1 and 2, or
    ``path`` and ``path2`` are single-column files. Row numbers in errors
    are 1-based and count the header.
    """
    if scheme is SamplingScheme.MATCHED:
        if path2 is not None:
            raise InvalidConfigError("matched scheme takes a single two-column file")
        rows = _read_rows(path)
        if not rows:
            raise CsvParseError(f"{path} is empty", row=1)
        header = [cell.strip().lower() for cell in rows[0]]
        if header != ["x1", "x2"]:
            raise CsvParseError(
                f"expected header 'x1,x2', got {','.join(rows[0])!r}", row=1
            )
        x1, x2 = [], []
        for i, row in enumerate(rows[1:], start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise CsvParseError(f"row {i}: expected 2 columns", row=i)
            x1.append(_check_sign(_parse_cell(row[0], i, 1), i, require_nonnegative))
            x2.append(_check_sign(_parse_cell(row[1], i, 2), i, require_nonnegative))
        if not x1:
            raise CsvParseError(f"{path} contains no data rows", row=1)
        return PairedSample(np.asarray(x1), np.asarray(x2))

    if path2 is not None:
        v1 = _load_single_column(path, require_nonnegative)
        v2 = _load_single_column(path2, require_nonnegative)
        return Sample(v1, label="1"), Sample(v2, label="2")

    rows = _read_rows(path)
    if not rows:
        raise CsvParseError(f"{path} is empty", row=1)
    header = [cell.strip().lower() for cell in rows[0]]
    if header != ["group", "value"]:
        raise CsvParseError(
            f"expected header 'group,value' (or pass two files), got {','.join(rows[0])!r}",
            row=1,
        )
    groups: dict[int, list[float]] = {1: [], 2: []}
    for i, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise CsvParseError(f"row {i}: expected 2 columns", row=i)
        group = _parse_cell(row[0], i, 1)
        if group not in (1.0, 2.0):
            raise CsvParseError(f"row {i}: group must be 1 or 2", row=i, col=1)
        value = _check_sign(_parse_cell(row[1], i, 2), i, require_nonnegative)
        groups[int(group)].append(value)
    if not groups[1] or not groups[2]:
        raise CsvParseError("both groups need at least one row", row=1)
    return Sample(np.asarray(groups[1]), "1"), Sample(np.asarray(groups[2]), "2")


# ---------------------------------------------------------------------------
# Report records


@dataclass(frozen=True)
class ReportRecord:
    """Machine-readable result of a ``ci`` run; serializes losslessly."""

    family: str
    m: int
    direction: str
    n1: int
    n2: int
    c_hat: float
    ci_lo: float
    ci_hi: float
    t_n: float
    xi0: float
    n_boot: int
    seed: int
    boundary_flag: bool
    runtime_ms: float

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ReportRecord":
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportRecord":
        return cls.from_dict(json.loads(text))


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit(payload: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2)
    else:
        columns = list(payload)
        text = ",".join(columns) + "\n" + ",".join(
            _format_value(payload[c]) for c in columns
        )
    if output:
        with open(output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _emit_rows(rows: list[dict], fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(rows, indent=2)
    else:
        columns = list(rows[0])
        lines = [",".join(columns)]
        lines += [",".join(_format_value(r[c]) for c in columns) for r in rows]
        text = "\n".join(lines)
    if output:
        with open(output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _write_curves(path: str, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    arrays = [np.asarray(columns[name]) for name in names]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(names)
        for i in range(arrays[0].size):
            writer.writerow([f"{a[i]:.17g}" for a in arrays])


# ---------------------------------------------------------------------------
# Presets


def _sdc_laws(beta: float) -> tuple[DiscreteLaw, DiscreteLaw]:
    first = DiscreteLaw([(0.25, 1.0 / beta), (1.0, 1.0 - 1.0 / beta)])
    second = DiscreteLaw([(0.5, 2.0 / 3.0), (0.75, 1.0 / 3.0)])
    return first, second


PRESETS: dict[str, dict] = {}
for _name, _beta in zip("abcd", (2, 3, 4, 5)):
    PRESETS[f"ldc-{_name}"] = {
        "dgp1": DoublePareto(3.0, 1.5),
        "dgp2": DoublePareto(2.1, float(_beta)),
        "family": DominanceFamily.lorenz(1),
    }
for _name, _beta in zip("abcd", (2.2, 2.3, 2.4, 2.5)):
    PRESETS[f"uisdc-{_name}"] = {
        "dgp1": DoublePareto(2.1, 1.5),
        "dgp2": DoublePareto(200.0, _beta),
        "family": DominanceFamily.inverse_sd(3, Direction.UP),
    }
for _name, _beta in zip("abcd", (8, 6, 4, 2)):
    _d1, _d2 = _sdc_laws(float(_beta))
    PRESETS[f"sdc-{_name}"] = {
        "dgp1": _d1,
        "dgp2": _d2,
        "family": DominanceFamily.sd(1),
    }


# ---------------------------------------------------------------------------
# Argument plumbing


def _family_from_args(args) -> DominanceFamily:
    kind = {"lorenz": Family.LORENZ, "isd": Family.INVERSE_SD, "sd": Family.SD}[
        args.family
    ]
    direction = Direction.UP if args.dir == "up" else Direction.DOWN
    return DominanceFamily(kind, args.m, direction)


def _scheme_from_args(args) -> SamplingScheme:
    return (
        SamplingScheme.MATCHED if args.scheme == "matched" else SamplingScheme.INDEPENDENT
    )


def _threads(args) -> int:
    value = args.threads
    if value is None:
        try:
            value = int(os.environ.get("ALMOSTDOM_THREADS", "0"))
        except ValueError:
            raise InvalidConfigError("ALMOSTDOM_THREADS must be an integer") from None
    if value == 0:
        return os.cpu_count() or 1
    return max(1, value)


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidConfigError(f"{what} must be comma-separated numbers: {text!r}") from None
    if not values:
        raise InvalidConfigError(f"{what} is empty")
    return values


def _load_data(args, family: DominanceFamily):
    scheme = _scheme_from_args(args)
    nonneg = family.kind in (Family.LORENZ, Family.INVERSE_SD)
    data = load_csv(args.input, scheme, args.input2, require_nonnegative=nonneg)
    if scheme is SamplingScheme.MATCHED:
        d1 = EmpiricalDistribution(data.x1)
        d2 = EmpiricalDistribution(data.x2)
        pairs = data
    else:
        d1 = EmpiricalDistribution(data[0].values)
        d2 = EmpiricalDistribution(data[1].values)
        pairs = None
    return data, d1, d2, pairs, scheme


def _grid_from_args(args, family: DominanceFamily, d1, d2) -> GridSpec:
    if args.domain is not None:
        parts = _parse_floats(args.domain, "--domain")
        if len(parts) != 2:
            raise InvalidConfigError(f"--domain needs exactly two numbers: {args.domain!r}")
        return GridSpec(args.grid, (parts[0], parts[1]))
    return default_grid(family, d1, d2, args.grid)


def _emit_fit_curves(path, family, d1, d2, pairs, scheme, spec) -> None:
    curve1, curve2 = family_curves(family, d1, d2, spec)
    diff = difference_curve(family, d1, d2, spec)
    std = std_curve_for(family, d1, d2, pairs, scheme, spec)
    _write_curves(
        path,
        {
            "p": spec.nodes(),
            "curve1": curve1.values,
            "curve2": curve2.values,
            "diff": diff.values,
            "std": std.values,
        },
    )


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_estimate(args) -> int:
    family = _family_from_args(args)
    start = time.perf_counter()
    _, d1, d2, pairs, scheme = _load_data(args, family)
    spec = _grid_from_args(args, family, d1, d2)
    est = coefficient(family, d1, d2, spec)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    if args.emit_curves:
        _emit_fit_curves(args.emit_curves, family, d1, d2, pairs, scheme, spec)
    _emit(
        {
            "family": family.kind.value,
            "m": family.degree,
            "direction": family.direction.value,
            "n1": est.n1,
            "n2": est.n2,
            "c_hat": est.c_hat,
            "pos_area": est.pos_area,
            "neg_area": est.neg_area,
            "effective_n": est.effective_n,
            "size_share": est.size_share,
            "grid_points": spec.n_points,
            "domain_lo": spec.domain[0],
            "domain_hi": spec.domain[1],
            "runtime_ms": runtime_ms,
        },
        args.format,
        args.output,
    )
    return 0


def _cmd_ci(args) -> int:
    family = _family_from_args(args)
    start = time.perf_counter()
    data, d1, d2, pairs, scheme = _load_data(args, family)
    spec = _grid_from_args(args, family, d1, d2)
    n_jobs = _threads(args)
    if args.tn is not None and args.tune:
        raise InvalidConfigError("pass either --tn or --tune, not both")
    if args.tn is None and not args.tune:
        raise InvalidConfigError("ci needs either --tn or --tune")
    cfg = InferenceConfig(
        t_n=args.tn if args.tn is not None else 1.0,
        seed=args.seed,
        xi0=args.xi0,
        n_boot=args.boot,
        alpha=args.alpha,
        clamp_to_unit=not args.no_clamp,
    )
    if args.tn is None:
        selected = select_tuning(
            data, family, scheme, spec, cfg,
            _parse_floats(args.candidates, "--candidates"),
            args.cal_reps, args.cal_boot, n_jobs=n_jobs,
        )
        cfg = InferenceConfig(
            t_n=selected,
            seed=args.seed,
            xi0=args.xi0,
            n_boot=args.boot,
            alpha=args.alpha,
            clamp_to_unit=not args.no_clamp,
        )
    result = bootstrap_ci(data, family, scheme, spec, cfg, n_jobs=n_jobs)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    if args.emit_curves:
        _emit_fit_curves(args.emit_curves, family, d1, d2, pairs, scheme, spec)
    record = ReportRecord(
        family=family.kind.value,
        m=family.degree,
        direction=family.direction.value,
        n1=result.estimate.n1,
        n2=result.estimate.n2,
        c_hat=result.estimate.c_hat,
        ci_lo=result.ci[0],
        ci_hi=result.ci[1],
        t_n=cfg.t_n,
        xi0=cfg.xi0,
        n_boot=cfg.n_boot,
        seed=cfg.seed,
        boundary_flag=result.boundary,
        runtime_ms=runtime_ms,
    )
    _emit(record.to_dict(), args.format, args.output)
    if args.strict and result.boundary:
        return 3
    return 0


def _cmd_simulate(args) -> int:
    preset = PRESETS[args.preset]
    family = preset["family"]
    scheme = _scheme_from_args(args)
    start = time.perf_counter()
    true_c = population_coefficient(preset["dgp1"], preset["dgp2"], family)
    cfg = InferenceConfig(t_n=args.tn, seed=args.seed, n_boot=args.boot, alpha=args.alpha)
    study = MonteCarloStudy(
        dgp1=preset["dgp1"],
        dgp2=preset["dgp2"],
        family=family,
        scheme=scheme,
        sizes=(args.n1, args.n2),
        cfg=cfg,
        n_reps=args.reps,
        true_c=true_c,
        grid_points=args.grid,
    )
    report = monte_carlo(study, n_jobs=_threads(args))
    runtime_ms = (time.perf_counter() - start) * 1000.0
    if args.emit_curves:
        _emit_population_curves(args.emit_curves, preset, args.grid)
    _emit(
        {
            "preset": args.preset,
            "family": family.kind.value,
            "m": family.degree,
            "direction": family.direction.value,
            "scheme": args.scheme,
            "n1": args.n1,
            "n2": args.n2,
            "reps": args.reps,
            "boot": args.boot,
            "seed": args.seed,
            "true_c": true_c,
            "Mean": report.mean,
            "Bias": report.bias,
            "SE": report.se,
            "RMSE": report.rmse,
            "t_n": cfg.t_n,
            "CR": report.cr,
            "runtime_ms": runtime_ms,
        },
        args.format,
        args.output,
    )
    return 0


def _emit_population_curves(path: str, preset: dict, n_points: int) -> None:
    """Population analogue of the fitted curves, for plotting a preset."""
    family = preset["family"]
    dgp1, dgp2 = preset["dgp1"], preset["dgp2"]
    if family.kind is Family.SD:
        lo = min(dgp1.values[0], dgp2.values[0])
        hi = max(dgp1.values[-1], dgp2.values[-1])
        spec = GridSpec(n_points, (float(lo), float(hi)))
        base1, base2 = dgp1.cdf(spec.nodes()), dgp2.cdf(spec.nodes())
        diff = base1 - base2
    else:
        spec = GridSpec(n_points, (0.0, 1.0))
        nodes = spec.nodes()
        q1 = np.asarray(dgp1.quantile(nodes))
        q2 = np.asarray(dgp2.quantile(nodes))
        if family.kind is Family.LORENZ:
            base1 = np.cumsum(q1) * spec.step / dgp1.mean()
            base2 = np.cumsum(q2) * spec.step / dgp2.mean()
        else:
            base1 = np.cumsum(q1) * spec.step
            base2 = np.cumsum(q2) * spec.step
        diff = base2 - base1
    raiser = (
        integrate_down if family.direction is Direction.DOWN else integrate_up
    )
    degree = family.operator_degree
    curve1 = raiser(GridFunction(spec, base1), degree).values
    curve2 = raiser(GridFunction(spec, base2), degree).values
    diff_curve = raiser(GridFunction(spec, diff), degree).values
    _write_curves(
        path,
        {"p": spec.nodes(), "curve1": curve1, "curve2": curve2, "diff": diff_curve},
    )


def _cmd_tune(args) -> int:
    family = _family_from_args(args)
    start = time.perf_counter()
    data, d1, d2, pairs, scheme = _load_data(args, family)
    spec = _grid_from_args(args, family, d1, d2)
    cfg = InferenceConfig(
        t_n=1.0, seed=args.seed, xi0=args.xi0, n_boot=args.boot, alpha=args.alpha
    )
    candidates = _parse_floats(args.candidates, "--candidates")
    table = tuning_table(
        data, family, scheme, spec, cfg, candidates, args.cal_reps, args.cal_boot,
        n_jobs=_threads(args),
    )
    target = 1.0 - cfg.alpha
    errors = np.abs(np.asarray(table.coverage) - target)
    selected = table.candidates[int(np.argmin(errors))]
    runtime_ms = (time.perf_counter() - start) * 1000.0
    if args.emit_curves:
        _emit_fit_curves(args.emit_curves, family, d1, d2, pairs, scheme, spec)
    rows = [
        {
            "t_n": t,
            "coverage": cov,
            "selected": t == selected,
            "pseudo_true": table.pseudo_true,
            "runtime_ms": runtime_ms,
        }
        for t, cov in zip(table.candidates, table.coverage)
    ]
    _emit_rows(rows, args.format, args.output)
    return 0


def _cmd_measures(args) -> int:
    start = time.perf_counter()
    values = _load_single_column(args.input, require_nonnegative=True)
    dist = EmpiricalDistribution(values)
    spec = GridSpec(args.grid, (0.0, 1.0))
    if args.preference != "cubic":
        raise InvalidConfigError(f"unknown preference {args.preference!r}")
    pref = cubic_preference()
    result = rank_measures(dist, pref, spec)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    if args.emit_curves:
        nodes = spec.nodes()
        _write_curves(
            args.emit_curves,
            {
                "p": nodes,
                "quantile": dist.quantile(nodes),
                "lorenz": dist.lorenz(nodes),
                "weight": pref.weight(nodes),
            },
        )
    _emit(
        {
            "n": dist.n,
            "mean": result.mean,
            "welfare": result.welfare,
            "inequality": result.inequality,
            "preference": pref.name,
            "grid_points": spec.n_points,
            "runtime_ms": runtime_ms,
        },
        args.format,
        args.output,
    )
    return 0


# ---------------------------------------------------------------------------
# Parser


def _add_common_output(parser) -> None:
    parser.add_argument("--output", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument(
        "--emit-curves",
        metavar="PATH",
        help="dump the fitted (or population) curves as CSV for plotting",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker processes; 0 = all cores (default from ALMOSTDOM_THREADS)",
    )


def _add_family_and_data(parser) -> None:
    parser.add_argument("--family", choices=("lorenz", "isd", "sd"), required=True)
    parser.add_argument("--m", type=int, default=1, help="dominance degree")
    parser.add_argument("--dir", choices=("up", "down"), default="up")
    parser.add_argument("--scheme", choices=("ind", "matched"), required=True)
    parser.add_argument("--input", required=True, help="CSV input file")
    parser.add_argument(
        "--input2", help="second single-column file (independent scheme)"
    )
    parser.add_argument("--grid", type=int, default=1000, help="grid points")
    parser.add_argument(
        "--domain", help="a,b domain override for the sd family (default: data hull)"
    )


def _add_inference(parser) -> None:
    parser.add_argument("--tn", type=float, help="studentization threshold")
    parser.add_argument(
        "--tune", action="store_true", help="calibrate the threshold first"
    )
    parser.add_argument("--boot", type=int, default=1000, help="bootstrap replicates")
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--xi0", type=float, default=0.001)
    parser.add_argument(
        "--no-clamp", action="store_true", help="do not intersect the CI with [0, 1]"
    )
    parser.add_argument(
        "--strict", action="store_true", help="exit 3 when the estimate sits at 0 or 1"
    )


def _add_tuning(parser) -> None:
    parser.add_argument(
        "--candidates",
        default="0.001,0.01,0.1,1,5,10,20",
        help="comma-separated thresholds to calibrate over",
    )
    parser.add_argument("--cal-reps", type=int, default=50)
    parser.add_argument("--cal-boot", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="almostdom",
        description="Almost-dominance coefficients with bootstrap confidence intervals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="point estimate from CSV data")
    _add_family_and_data(p_est)
    _add_common_output(p_est)
    p_est.set_defaults(func=_cmd_estimate)

    p_ci = sub.add_parser("ci", help="estimate plus bootstrap confidence interval")
    _add_family_and_data(p_ci)
    _add_inference(p_ci)
    _add_tuning(p_ci)
    _add_common_output(p_ci)
    p_ci.set_defaults(func=_cmd_ci)

    p_sim = sub.add_parser("simulate", help="Monte Carlo coverage for a preset")
    p_sim.add_argument("--preset", choices=sorted(PRESETS), required=True)
    p_sim.add_argument("--scheme", choices=("ind", "matched"), default="matched")
    p_sim.add_argument("--n1", type=int, required=True)
    p_sim.add_argument("--n2", type=int, required=True)
    p_sim.add_argument("--reps", type=int, default=1000)
    p_sim.add_argument("--boot", type=int, default=1000)
    p_sim.add_argument("--tn", type=float, required=True)
    p_sim.add_argument("--alpha", type=float, default=0.05)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--grid", type=int, default=1000)
    _add_common_output(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_tune = sub.add_parser("tune", help="calibrate the studentization threshold")
    _add_family_and_data(p_tune)
    p_tune.add_argument("--boot", type=int, default=1000)
    p_tune.add_argument("--alpha", type=float, default=0.05)
    p_tune.add_argument("--seed", type=int, default=0)
    p_tune.add_argument("--xi0", type=float, default=0.001)
    _add_tuning(p_tune)
    _add_common_output(p_tune)
    p_tune.set_defaults(func=_cmd_tune)

    p_meas = sub.add_parser("measures", help="welfare and inequality of one sample")
    p_meas.add_argument("--input", required=True, help="single-column CSV")
    p_meas.add_argument("--preference", default="cubic")
    p_meas.add_argument("--grid", type=int, default=1000)
    _add_common_output(p_meas)
    p_meas.set_defaults(func=_cmd_measures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateCurvesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AlmostDomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
