"""Command-line interface: one binary, subcommand style.

Subcommands
-----------
classes
    The twelve-class parameter table.
sample
    Draw replicates; write reduced spectra as CSV rows (or matrix JSON
    dumps with ``--emit-matrix``).
density
    Evaluate the joint log density at given coordinates.
equilibrium
    Tabulate a closed-form equilibrium curve as x,pdf,cdf rows.
rate
    Evaluate the rate functional on a histogram measure read from CSV.
ks
    Convergence experiment: pooled KS distance along an n sweep.
ldp
    Decay experiment: large-deviation event frequencies along an n sweep.
oracle
    Small-n joint-density oracle (p = 2 classes).
check
    Structural, trace-identity, and density-factorization checks on
    fresh samples.

Exit codes: 0 success, 2 usage error (diagnostic names the offending
flag), 1 runtime error (the module error, verbatim). Files are written
atomically (temp file, then rename). All numbers are formatted with
full-precision ``repr`` so every emitted file round-trips losslessly.
Worker threads (``--threads``, or the TENFOLD_THREADS variable when the
flag is absent; default: all cores) never change any output byte.
Experiment reports serialize wall-time fields as null for the same
reason: measured timings are not functions of the inputs.
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, fields

import numpy as np

from .densities import joint_log_density
from .ensembles import (
    CHIRAL,
    ClassLabel,
    class_catalog,
    class_spec,
    make_ensemble,
    resolve_label,
)
from .equilibrium import DEFAULT_GRID, equilibrium_for
from .errors import (
    InvalidParams,
    InvalidS,
    MissingS,
    NonPositiveSigma,
    ParityMismatch,
    TenfoldError,
    UnexpectedS,
)
from .experiments import convergence_experiment, decay_experiment, density_oracle
from .ratefn import (
    GridMeasure,
    calibrate,
    field_term,
    functional_for,
    grid_from_curve,
    log_energy,
    rate,
)
from .sampler import log_density_unnormalized, param_variances, sample
from .spectra import reduced_spectrum, spectrum
from .structure import extract, validate

_FORMATS = ("csv", "json", "text")

_JSON_ONLY = ("density", "rate", "ks", "ldp", "oracle")

_DEFAULT_FORMAT = {
    "classes": "text",
    "sample": "csv",
    "density": "json",
    "equilibrium": "csv",
    "rate": "json",
    "ks": "json",
    "ldp": "json",
    "oracle": "json",
    "check": "text",
}


class _Usage(Exception):
    """Bad invocation; carries the offending flag for the diagnostic."""

    def __init__(self, flag, message):
        super().__init__(message)
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(None, message)


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation, ready for dispatch."""

    subcommand: str
    label: object = None
    n: int = None
    s: int = None
    sigma2: float = 1.0
    seed: int = 0
    reps: int = 1
    grid: int = DEFAULT_GRID
    out: str = None
    fmt: str = "text"
    threads: int = 1
    raw: bool = False
    n_list: tuple = None
    s_frac: float = None
    delta: float = None
    bins: int = None
    box: tuple = None
    xs: tuple = None
    measure: str = None
    do_calibrate: bool = False
    emit_matrix: bool = False


def _int_list(text):
    try:
        values = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _float_list(text):
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of numbers: {text!r}")


def _build_parser():
    parser = _Parser(
        prog="tenfold",
        description="Gaussian ensembles of the tenfold way: sampling, "
        "densities, equilibrium curves, rate functional, experiments.",
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    def common(p, seed=False, threads=False, fmt=True, out=True):
        if fmt:
            p.add_argument("--format", choices=_FORMATS, default=None)
        if out:
            p.add_argument("--out", default=None, metavar="PATH")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if threads:
            p.add_argument("--threads", type=int, default=None)

    def ensemble_flags(p, with_s=True, with_raw=True):
        p.add_argument("--class", dest="label", required=True, metavar="LABEL")
        p.add_argument("--n", type=int, required=True)
        if with_s:
            p.add_argument("--s", type=int, default=None)
        p.add_argument("--sigma2", type=float, default=1.0)
        if with_raw:
            p.add_argument("--raw-sigma2", dest="raw", action="store_true")

    p = sub.add_parser("classes", description="Print the twelve-class table.")
    common(p)

    p = sub.add_parser("sample", description="Draw replicates; write spectra.")
    ensemble_flags(p)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--emit-matrix", action="store_true")
    common(p, seed=True, threads=True)

    p = sub.add_parser("density", description="Joint log density at --xs.")
    ensemble_flags(p)
    p.add_argument("--xs", type=_float_list, required=True, metavar="X1,X2,...")
    common(p)

    p = sub.add_parser("equilibrium", description="Tabulate the equilibrium curve.")
    ensemble_flags(p, with_raw=False)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    common(p)

    p = sub.add_parser("rate", description="Rate functional on a measure CSV.")
    ensemble_flags(p, with_raw=False)
    p.add_argument("--measure", required=True, metavar="CSV")
    p.add_argument("--calibrate", dest="do_calibrate", action="store_true")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    common(p)

    p = sub.add_parser("ks", description="Convergence experiment (pooled KS).")
    p.add_argument("--class", dest="label", required=True, metavar="LABEL")
    p.add_argument("--n", type=_int_list, required=True, metavar="N1,N2,...")
    p.add_argument("--s-frac", type=float, default=None)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--reps", type=int, default=20)
    common(p, seed=True, threads=True)

    p = sub.add_parser("ldp", description="Decay experiment (deviation counts).")
    p.add_argument("--class", dest="label", required=True, metavar="LABEL")
    p.add_argument("--n", type=_int_list, required=True, metavar="N1,N2,...")
    p.add_argument("--s-frac", type=float, default=None)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.08)
    p.add_argument("--reps", type=int, default=4000)
    common(p, seed=True, threads=True)

    p = sub.add_parser("oracle", description="Small-n joint-density oracle.")
    p.add_argument("--class", dest="label", required=True, metavar="LABEL")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--box", type=_float_list, default=None, metavar="LO,HI")
    p.add_argument("--reps", type=int, default=1000000)
    common(p, seed=True, threads=True)

    p = sub.add_parser("check", description="Structural checks on fresh samples.")
    p.add_argument("--class", dest="label", default=None, metavar="LABEL")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--reps", type=int, default=5)
    common(p, seed=True, threads=True)

    return parser


def _resolve_threads(value):
    if value is not None:
        if value < 1:
            raise _Usage("--threads", f"thread count must be >= 1, got {value}")
        return value
    env = os.environ.get("TENFOLD_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise _Usage(
                "TENFOLD_THREADS", f"not an integer: {env!r} (set via environment)"
            )
        if value < 1:
            raise _Usage("TENFOLD_THREADS", f"thread count must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def _resolved_ensemble(label_text, n, s, sigma2, raw):
    try:
        label, n = resolve_label(label_text, n)
    except KeyError as exc:
        raise _Usage("--class", str(exc))
    except ParityMismatch as exc:
        raise _Usage("--n", str(exc))
    try:
        return make_ensemble(label, n, s=s, sigma2=sigma2, raw=raw)
    except (MissingS, UnexpectedS, InvalidS) as exc:
        raise _Usage("--s", str(exc))
    except NonPositiveSigma as exc:
        raise _Usage("--sigma2", str(exc))
    except ParityMismatch as exc:
        raise _Usage("--n", str(exc))
    except ValueError as exc:
        raise _Usage("--n", str(exc))


def _s_rule_for(label_text, n_list, s_frac):
    try:
        label = ClassLabel.parse(label_text)
    except KeyError as exc:
        raise _Usage("--class", str(exc))
    chiral = class_spec(label).family == CHIRAL
    if chiral and s_frac is None:
        raise _Usage("--s-frac", f"class {label} needs --s-frac to fix s(n)")
    if not chiral and s_frac is not None:
        raise _Usage("--s-frac", f"class {label} carries no block split")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise _Usage("--n", f"sizes must be strictly increasing, got {list(n_list)}")
    if not chiral:
        for n in n_list:
            _resolved_ensemble(str(label), n, None, 1.0, False)
        return label, None
    if not 0.0 < s_frac <= 0.5:
        raise _Usage("--s-frac", f"s fraction must lie in (0, 1/2], got {s_frac}")
    rule = lambda n: max(1, int(s_frac * n))
    for n in n_list:
        _resolved_ensemble(str(label), n, rule(n), 1.0, False)
    return label, rule


def _config_from_args(args):
    values = vars(args).copy()
    sub = values.pop("subcommand")
    fmt = values.pop("format", None) or _DEFAULT_FORMAT[sub]
    if sub in _JSON_ONLY and fmt != "json":
        raise _Usage("--format", f"{sub} emits json only")
    if "threads" in values:
        values["threads"] = _resolve_threads(values.pop("threads"))
    keep = {f.name for f in fields(RunConfig)}
    config = {k: v for k, v in values.items() if k in keep}
    if sub in ("ks", "ldp"):
        config["n_list"] = values["n"]
        config["n"] = None
    if "reps" in values and values.get("reps") is not None and values["reps"] < 1:
        raise _Usage("--reps", f"reps must be >= 1, got {values['reps']}")
    if "grid" in values and values.get("grid", 0) is not None:
        if sub in ("equilibrium", "rate") and values["grid"] < 16:
            raise _Usage("--grid", f"grid must be >= 16, got {values['grid']}")
    if sub == "oracle":
        if values["bins"] < 2:
            raise _Usage("--bins", f"need at least 2 bins, got {values['bins']}")
        box = values.get("box")
        if box is not None and (len(box) != 2 or not box[0] < box[1]):
            raise _Usage("--box", f"box must be LO,HI with LO < HI, got {box!r}")
    if sub == "ldp" and not values["delta"] > 0:
        raise _Usage("--delta", f"delta must be positive, got {values['delta']}")
    return RunConfig(subcommand=sub, fmt=fmt, **config)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _render_table(header, rows, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    cells = [header] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _render_json(payload):
    return json.dumps(payload, indent=2) + "\n"


def _emit(out, text):
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    handle = tempfile.NamedTemporaryFile(
        "w", dir=directory, suffix=".tmp", delete=False, newline=""
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, out)
    except BaseException:
        os.unlink(handle.name)
        raise


def read_measure_csv(path):
    """Read a GridMeasure from CSV columns x_lo,x_hi,mass.

    Cells must be contiguous and of equal width (1e-9 relative); masses
    must be nonnegative and sum to 1 within 1e-12.
    """
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x_lo", "x_hi", "mass"]:
            raise InvalidParams(
                f"{path}: expected header x_lo,x_hi,mass, got {header!r}"
            )
        rows = []
        for k, row in enumerate(reader):
            if len(row) != 3:
                raise InvalidParams(f"{path}: expected 3 columns at row {k}")
            try:
                rows.append((float(row[0]), float(row[1]), float(row[2])))
            except ValueError:
                raise InvalidParams(f"{path}: non-numeric cell at row {k}") from None
    if not rows:
        raise InvalidParams(f"{path}: no cells")
    lo, hi = rows[0][0], rows[-1][1]
    width = (hi - lo) / len(rows)
    for k, (a, b, mass) in enumerate(rows):
        if abs(a - (lo + k * width)) > 1e-9 * max(1.0, abs(hi), abs(lo)) or abs(
            b - (lo + (k + 1) * width)
        ) > 1e-9 * max(1.0, abs(hi), abs(lo)):
            raise InvalidParams(f"{path}: cells not contiguous equal-width at row {k}")
    return GridMeasure(lo, hi, np.array([row[2] for row in rows]))


def write_measure_csv(path, measure):
    """Write a GridMeasure in the format :func:`read_measure_csv` reads."""
    edges = measure.edges
    rows = [
        (edges[k], edges[k + 1], float(measure.masses[k]))
        for k in range(measure.m)
    ]
    _emit(path, _render_table(["x_lo", "x_hi", "mass"], rows, "csv"))


def read_matrix_dump(path):
    """Read matrices from a ``sample --emit-matrix`` JSON dump.

    Returns StructuredMatrix objects; every entry list is validated
    against the class constraints on the way in.
    """
    from .structure import StructuredMatrix

    with open(path) as handle:
        try:
            payload = json.load(handle)
        except ValueError:
            raise InvalidParams(f"{path}: not valid JSON") from None
    out = []
    try:
        for record in payload:
            spec = class_spec(record["label"])
            d = spec.d(record["n"])
            flat = np.array(
                [complex(re, im) for re, im in record["entries"]], dtype=complex
            )
            out.append(
                StructuredMatrix.from_dense(
                    record["label"], record["n"], flat.reshape(d, d), s=record["s"]
                )
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams(f"{path}: malformed matrix dump ({exc})") from None
    return out


def _convergence_payload(report):
    descriptor = dict(report.descriptor)
    if descriptor["s"] is not None:
        descriptor["s"] = list(descriptor["s"])
    return {
        "descriptor": descriptor,
        "entries": [
            {
                "n": e.n,
                "reps": e.reps,
                "ks_distance": e.ks_distance,
                "wall_time": None,
            }
            for e in report.entries
        ],
        "seed": report.seed,
    }


def _decay_payload(report):
    descriptor = dict(report.descriptor)
    if descriptor["s"] is not None:
        descriptor["s"] = list(descriptor["s"])
    return {
        "descriptor": descriptor,
        "delta": report.delta,
        "entries": [
            {
                "n": e.n,
                "reps": e.reps,
                "hit_count": e.hit_count,
                "estimate": e.estimate,
                "censored": e.censored,
            }
            for e in report.entries
        ],
        "seed": report.seed,
    }


def _cmd_classes(cfg):
    header = ["class", "family", "beta", "gamma", "phi", "psi", "d", "p", "alpha"]
    rows = [
        (
            str(spec.label),
            spec.family,
            spec.beta,
            spec.gamma,
            spec.phi,
            spec.psi,
            spec.dim_formula,
            spec.p_formula,
            spec.alpha_formula,
        )
        for spec in class_catalog()
    ]
    _emit(cfg.out, _render_table(header, rows, cfg.fmt))
    return 0


def _cmd_sample(cfg):
    ens = _resolved_ensemble(cfg.label, cfg.n, cfg.s, cfg.sigma2, cfg.raw)
    batch = sample(ens, cfg.seed, cfg.reps, threads=cfg.threads)
    if cfg.emit_matrix:
        payload = [
            {
                "label": str(sm.label),
                "n": sm.n,
                "s": sm.s,
                "entries": [
                    [z.real, z.imag] for z in np.asarray(sm.matrix).ravel()
                ],
            }
            for sm in batch
        ]
        _emit(cfg.out, _render_json(payload))
        return 0
    header = ["class", "n", "s", "sigma2", "seed", "rep", "index", "value"]
    rows = []
    for rep, sm in enumerate(batch):
        for index, value in enumerate(reduced_spectrum(sm)):
            rows.append(
                (
                    str(ens.label),
                    ens.n,
                    ens.s,
                    float(ens.sigma2),
                    cfg.seed,
                    rep,
                    index,
                    float(value),
                )
            )
    _emit(cfg.out, _render_table(header, rows, cfg.fmt))
    return 0


def _cmd_density(cfg):
    ens = _resolved_ensemble(cfg.label, cfg.n, cfg.s, cfg.sigma2, cfg.raw)
    if len(cfg.xs) != ens.p:
        raise _Usage(
            "--xs", f"class {ens.label} at n = {ens.n} takes p = {ens.p} coordinates"
        )
    value = joint_log_density(ens, cfg.xs)
    _emit(cfg.out, _render_json({"log_density": value}))
    return 0


def _cmd_equilibrium(cfg):
    ens = _resolved_ensemble(cfg.label, cfg.n, cfg.s, cfg.sigma2, False)
    curve = equilibrium_for(ens, m=cfg.grid)
    rows = [
        (float(x), float(p), float(c))
        for x, p, c in zip(curve.grid, curve.pdf_values, curve.cdf_values)
    ]
    _emit(cfg.out, _render_table(["x", "pdf", "cdf"], rows, cfg.fmt))
    return 0


def _cmd_rate(cfg):
    ens = _resolved_ensemble(cfg.label, cfg.n, cfg.s, cfg.sigma2, False)
    measure = read_measure_csv(cfg.measure)
    functional = functional_for(ens)
    if cfg.do_calibrate:
        functional = calibrate(functional, equilibrium_for(ens, m=cfg.grid), m=cfg.grid)
    payload = {
        "energy": log_energy(measure, functional.gamma),
        "field": field_term(measure, functional.weight),
        "c": functional.c,
        "rate": rate(measure, functional),
        "kappa": functional.kappa,
        "beta": functional.beta,
        "gamma": functional.gamma,
    }
    _emit(cfg.out, _render_json(payload))
    return 0


def _cmd_ks(cfg):
    label, s_rule = _s_rule_for(cfg.label, cfg.n_list, cfg.s_frac)
    report = convergence_experiment(
        label,
        cfg.sigma2,
        cfg.n_list,
        s_rule=s_rule,
        reps=cfg.reps,
        seed=cfg.seed,
        threads=cfg.threads,
    )
    _emit(cfg.out, _render_json(_convergence_payload(report)))
    return 0


def _cmd_ldp(cfg):
    label, s_rule = _s_rule_for(cfg.label, cfg.n_list, cfg.s_frac)
    report = decay_experiment(
        label,
        cfg.sigma2,
        cfg.delta,
        cfg.n_list,
        cfg.reps,
        seed=cfg.seed,
        s_rule=s_rule,
        threads=cfg.threads,
    )
    _emit(cfg.out, _render_json(_decay_payload(report)))
    return 0


def _cmd_oracle(cfg):
    ens = _resolved_ensemble(cfg.label, cfg.n, cfg.s, cfg.sigma2, True)
    if ens.p != 2:
        raise _Usage(
            "--n", f"the oracle needs p = 2; class {ens.label} at n = {cfg.n} "
            f"has p = {ens.p}"
        )
    box = tuple(cfg.box) if cfg.box else None
    discrepancy = density_oracle(
        ens.label,
        ens.n,
        cfg.sigma2,
        cfg.bins,
        cfg.reps,
        seed=cfg.seed,
        s=cfg.s,
        raw=True,
        box=box,
        threads=cfg.threads,
    )
    used_box = box or ((0.0, 4.0) if ens.spec.gamma == 2 else (-4.0, 4.0))
    payload = {
        "label": str(ens.label),
        "n": ens.n,
        "s": ens.s,
        "sigma2": float(cfg.sigma2),
        "raw": True,
        "bins": cfg.bins,
        "reps": cfg.reps,
        "seed": cfg.seed,
        "box": [used_box[0], used_box[1]],
        "discrepancy": discrepancy,
    }
    _emit(cfg.out, _render_json(payload))
    return 0


def _check_targets(cfg):
    if cfg.label is not None:
        n = cfg.n if cfg.n is not None else 8
        ens = _resolved_ensemble(cfg.label, n, cfg.s, cfg.sigma2, False)
        return [ens]
    targets = []
    for spec in class_catalog():
        n = cfg.n
        if n is None:
            n = 9 if spec.label is ClassLabel.DIII_ODD else 8
        s = cfg.s
        if s is None and spec.family == CHIRAL:
            s = max(1, n // 4)
        targets.append(_resolved_ensemble(str(spec.label), n, s, cfg.sigma2, False))
    return targets


def _cmd_check(cfg):
    header = ["class", "n", "s", "check", "worst", "status"]
    rows = []
    failed = False
    for ens in _check_targets(cfg):
        batch = sample(ens, cfg.seed, cfg.reps, threads=cfg.threads)
        spec = ens.spec
        structure_worst = 0.0
        trace_worst = 0.0
        factor_worst = 0.0
        spectra_ok = True
        spectra_note = 0.0
        for sm in batch:
            problems = validate(ens.label, ens.n, sm.matrix, s=ens.s)
            if problems:
                structure_worst = max(
                    structure_worst, max(v.residual for v in problems)
                )
            trace = float(np.trace(sm.matrix @ sm.matrix).real)
            try:
                spec_obj = spectrum(sm)
            except TenfoldError:
                spectra_ok = False
                continue
            lam2 = float(np.sum(spec_obj.reduced**2))
            trace_worst = max(
                trace_worst, abs(trace / spec.phi - lam2 / spec.psi) / max(1e-300, abs(trace))
            )
            params = extract(sm)
            expected = float(np.sum(-(params**2) / (2.0 * param_variances(ens))))
            actual = log_density_unnormalized(sm, ens)
            factor_worst = max(
                factor_worst, abs(actual - expected) / max(1e-300, abs(expected))
            )
        checks = [
            ("structure", structure_worst, structure_worst == 0.0),
            ("trace_identity", trace_worst, trace_worst <= 1e-9),
            ("factorization", factor_worst, factor_worst <= 1e-10),
            ("spectra", spectra_note, spectra_ok),
        ]
        for name, worst, ok in checks:
            failed = failed or not ok
            rows.append(
                (
                    str(ens.label),
                    ens.n,
                    ens.s,
                    name,
                    float(worst),
                    "PASS" if ok else "FAIL",
                )
            )
    _emit(cfg.out, _render_table(header, rows, cfg.fmt))
    return 1 if failed else 0


_RUNNERS = {
    "classes": _cmd_classes,
    "sample": _cmd_sample,
    "density": _cmd_density,
    "equilibrium": _cmd_equilibrium,
    "rate": _cmd_rate,
    "ks": _cmd_ks,
    "ldp": _cmd_ldp,
    "oracle": _cmd_oracle,
    "check": _cmd_check,
}


def run(argv=None):
    """Parse argv, dispatch, and return the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as usage:
        flag = f"{usage.flag}: " if usage.flag else ""
        print(f"tenfold: error: {flag}{usage}", file=sys.stderr)
        return 2
    except SystemExit as stop:  # --help prints and exits 0
        return int(stop.code or 0)
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        cfg = _config_from_args(args)
        return _RUNNERS[cfg.subcommand](cfg)
    except _Usage as usage:
        flag = f"{usage.flag}: " if usage.flag else ""
        print(f"tenfold {args.subcommand}: error: {flag}{usage}", file=sys.stderr)
        return 2
    except TenfoldError as exc:
        print(f"tenfold {args.subcommand}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"tenfold {args.subcommand}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
