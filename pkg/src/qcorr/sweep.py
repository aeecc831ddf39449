"""Parameter sweeps over the model states and their tabular output."""
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .measures import DEFAULT_OPTS, correlation_report
from .models import Model, ModelParams, model_state
from .qmat import herm_eigvals

MEASURES = ("discord", "gmqd", "negativity", "classical_corr", "mutual_info")
COLUMNS = ("lambda_t",) + MEASURES
SUDDEN_DEATH_TOL = 1e-9
NONPHYSICAL_TOL = 1e-9

# name of the leading column for non-time sweeps
_VARY_COLUMN = {"purity": "p", "coupling": "gamma_over_lambda"}


@dataclass(frozen=True)
class SweepSpec:
    model: Model
    p: float
    theta: float
    gamma_over_lambda: float = 0.0
    t_max: float = 12.0
    steps: int = 1200
    vary: str = "time"
    values: tuple = ()
    measured: str = "B"
    out: str = None
    fmt: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.vary not in ("time", "purity", "coupling"):
            raise ValueError(f"vary must be time, purity or coupling, got {self.vary!r}")
        if self.vary != "time" and not self.values:
            raise ValueError(f"a {self.vary} sweep needs a list of values")
        if self.vary == "coupling" and self.model is not Model.DEPHASING:
            raise ValueError("coupling sweeps only apply to the dephasing model")
        if self.measured not in ("A", "B"):
            raise ValueError(f"measured must be 'A' or 'B', got {self.measured!r}")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        # fail early on out-of-range physics parameters
        for params in self.series_params():
            params.at(0.0)

    def times(self):
        """Endpoint-inclusive grid i * t_max / (steps - 1)."""
        return [i * self.t_max / (self.steps - 1) for i in range(self.steps)]

    def series_params(self):
        """One ModelParams (at lambda_t = 0) per time series in the sweep."""
        base = dict(p=self.p, theta=self.theta, gamma_over_lambda=self.gamma_over_lambda, model=self.model)
        if self.vary == "time":
            return [ModelParams(**base)]
        key = "p" if self.vary == "purity" else "gamma_over_lambda"
        return [ModelParams(**{**base, key: float(v)}) for v in self.values]


@dataclass
class Series:
    """One time series of measures; ``value`` is the swept p or gamma/lambda, if any."""

    value: float
    lambda_t: np.ndarray
    table: dict
    nonphysical: int = 0

    def sudden_death_intervals(self, tol=SUDDEN_DEATH_TOL):
        """Runs of at least two consecutive grid points with negativity below ``tol``."""
        return [(self.lambda_t[a], self.lambda_t[b]) for a, b in self.sudden_death_slices(tol)]

    def sudden_death_slices(self, tol=SUDDEN_DEATH_TOL):
        dead = self.table["negativity"] < tol
        runs, start = [], None
        for i, d in enumerate(dead):
            if d and start is None:
                start = i
            elif not d and start is not None:
                runs.append((start, i - 1))
                start = None
        if start is not None:
            runs.append((start, len(dead) - 1))
        return [(a, b) for a, b in runs if b > a]


@dataclass
class SweepResult:
    spec: SweepSpec
    series: list = field(default_factory=list)

    def summary(self):
        out = []
        for s in self.series:
            entry = {"value": s.value} if self.spec.vary != "time" else {}
            for name in MEASURES:
                entry[name] = {"min": float(s.table[name].min()), "max": float(s.table[name].max())}
            entry["sudden_death_intervals"] = [[float(a), float(b)] for a, b in s.sudden_death_intervals()]
            entry["nonphysical_points"] = s.nonphysical
            out.append(entry)
        return out


def evaluate_point(params, measured="B", opts=DEFAULT_OPTS):
    """Measures for one parameter point as a tuple in ``MEASURES`` order, plus a physicality flag."""
    rho = model_state(params)
    rep = correlation_report(rho, measured, opts)
    physical = herm_eigvals(rho)[-1] >= -NONPHYSICAL_TOL
    return (rep.discord, rep.gmqd, rep.negativity, rep.classical_corr, rep.mutual_info), physical


def _evaluate_chunk(args):
    params_list, measured = args
    return [evaluate_point(p, measured) for p in params_list]


def run_sweep(spec, jobs=1):
    """Evaluate every grid point of ``spec``.

    Points are independent; with ``jobs > 1`` they are farmed out to worker
    processes in contiguous chunks and reassembled in grid order, so the
    result does not depend on ``jobs``.
    """
    times = spec.times()
    points = [base.at(t) for base in spec.series_params() for t in times]
    if jobs > 1:
        size = max(1, math.ceil(len(points) / (4 * jobs)))
        chunks = [(points[i : i + size], spec.measured) for i in range(0, len(points), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            evaluated = [r for chunk in pool.map(_evaluate_chunk, chunks) for r in chunk]
    else:
        evaluated = [evaluate_point(p, spec.measured) for p in points]

    result = SweepResult(spec)
    key = _VARY_COLUMN.get(spec.vary)
    n = len(times)
    for k, base in enumerate(spec.series_params()):
        block = evaluated[k * n : (k + 1) * n]
        values = np.array([v for v, _ in block])
        table = {name: values[:, i] for i, name in enumerate(MEASURES)}
        result.series.append(
            Series(
                value=getattr(base, key) if key else None,
                lambda_t=np.array(times),
                table=table,
                nonphysical=sum(not ok for _, ok in block),
            )
        )
    return result


def _fmt(v):
    return format(float(v), ".12g")


def header(spec):
    lead = (_VARY_COLUMN[spec.vary],) if spec.vary != "time" else ()
    return lead + COLUMNS


def iter_rows(result):
    for s in result.series:
        lead = (s.value,) if result.spec.vary != "time" else ()
        for i, t in enumerate(s.lambda_t):
            yield lead + (t,) + tuple(s.table[name][i] for name in MEASURES)


def to_csv(result):
    buf = io.StringIO()
    buf.write(",".join(header(result.spec)) + "\n")
    for row in iter_rows(result):
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def to_json(result):
    spec = result.spec
    doc = {
        "model": spec.model.value,
        "p": spec.p,
        "theta": spec.theta,
        "gamma_over_lambda": spec.gamma_over_lambda,
        "measured": spec.measured,
        "columns": list(header(spec)),
        "rows": [[float(_fmt(v)) for v in row] for row in iter_rows(result)],
        "summary": result.summary(),
    }
    return json.dumps(doc, indent=1) + "\n"


def render(result):
    return to_csv(result) if result.spec.fmt == "csv" else to_json(result)


def format_summary(result):
    lines = []
    for s, entry in zip(result.series, result.summary()):
        if result.spec.vary != "time":
            lines.append(f"[{_VARY_COLUMN[result.spec.vary]} = {_fmt(s.value)}]")
        for name in MEASURES:
            lines.append(f"{name:>15}: min {_fmt(entry[name]['min'])}  max {_fmt(entry[name]['max'])}")
        intervals = entry["sudden_death_intervals"]
        lines.append(f"sudden-death intervals (negativity < {SUDDEN_DEATH_TOL:g}): {len(intervals)}")
        for a, b in intervals:
            lines.append(f"  lambda_t in [{_fmt(a)}, {_fmt(b)}]")
        if s.nonphysical:
            lines.append(f"warning: {s.nonphysical} grid points have a negative eigenvalue below -{NONPHYSICAL_TOL:g}")
    return "\n".join(lines) + "\n"


# figure presets; t in [0, 12] with 1200 points
PRESETS = {
    "f1a": dict(model=Model.CAVITY, p=1.0, theta=math.pi / 4),
    "f1b": dict(model=Model.CAVITY, p=0.5, theta=math.pi / 4),
    "f2a": dict(model=Model.DEPHASING, p=0.5, theta=math.pi / 60, gamma_over_lambda=0.0),
    "f2b": dict(model=Model.DEPHASING, p=0.5, theta=math.pi / 60, gamma_over_lambda=1.0),
    "f3a": dict(model=Model.DEPHASING, p=0.5, theta=math.pi / 60, gamma_over_lambda=2.0),
    "f3b": dict(model=Model.DEPHASING, p=0.5, theta=math.pi / 3, gamma_over_lambda=2.0),
    # approximate: the purity figures are discussed but not captioned
    "purity": dict(
        model=Model.DEPHASING,
        p=1.0,
        theta=math.pi / 3,
        gamma_over_lambda=0.8,
        vary="purity",
        values=(0.0, 0.25, 0.5, 0.75, 1.0),
    ),
}


def preset_spec(name, **overrides):
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; valid presets: {', '.join(PRESETS)}")
    kwargs = dict(t_max=12.0, steps=1200)
    kwargs.update(PRESETS[name])
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    return SweepSpec(**kwargs)
