"""Parameter sweeps, extremum detection and figure reproduction."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .cpb import effective_rabi
from .measures import (
    concurrence_pure,
    diagnostics,
    skew_from_concurrence,
    variance_sum_qubit,
    wy_sum_qubit,
)
from .propagator import amplitudes_to_state, default_cutoff, evolved_amplitudes

log = logging.getLogger(__name__)

DEFAULT_T_MAX = 25.0
DEFAULT_T_STEPS = 2001
MAX_EVALUATIONS = 10_000_000
PLATEAU_SLOPE = 1e-12
SKEW_TOL = 1e-10
ANCHOR_REL_TOL = 0.20

CSV_COLUMNS = ("T", "S_I", "concurrence", "purity", "variance_sum", "wy_sum")


class ConfigError(ValueError):
    pass


class TraceEvaluationError(RuntimeError):
    def __init__(self, message, T):
        super().__init__(f"{message} (at T = {T!r})")
        self.T = T


@dataclass(frozen=True)
class TracePoint:
    Delta: float
    gamma: float
    n: int

    def __post_init__(self):
        if not self.gamma > 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma}")
        if int(self.n) != self.n or self.n < 0:
            raise ConfigError(f"n must be a non-negative integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def Omega(self) -> float:
        return effective_rabi(self.gamma)

    @property
    def cutoff(self) -> int:
        return default_cutoff(self.n)

    def label(self) -> str:
        return f"Delta={self.Delta:g} gamma={self.gamma:g} n={self.n}"

    def state_at(self, T):
        return amplitudes_to_state(self.n, evolved_amplitudes(self.n, self.Delta, self.Omega, T), self.cutoff)

    def skew_at(self, T):
        return skew_from_concurrence(concurrence_pure(self.state_at(T)))


@dataclass(frozen=True)
class TraceSeries:
    point: TracePoint
    times: np.ndarray
    skew: np.ndarray
    concurrence: np.ndarray
    purity: np.ndarray
    variance_sum: np.ndarray
    wy_sum: np.ndarray

    def columns(self) -> tuple[np.ndarray, ...]:
        return (self.times, self.skew, self.concurrence, self.purity, self.variance_sum, self.wy_sum)

    def __len__(self):
        return len(self.times)


def _measures(point: TracePoint, times):
    state = point.state_at(times)
    conc = concurrence_pure(state)
    pur, _ = diagnostics(state)
    return conc, skew_from_concurrence(conc), pur, variance_sum_qubit(state), wy_sum_qubit(state)


def run_trace(point: TracePoint, t_max: float = DEFAULT_T_MAX, t_steps: int = DEFAULT_T_STEPS) -> TraceSeries:
    """Sample every measure on a uniform grid of ``t_steps`` points over [0, t_max]."""
    if not t_max > 0 or t_steps < 2:
        raise ConfigError(f"need t_max > 0 and t_steps >= 2, got {t_max}, {t_steps}")
    times = np.linspace(0.0, t_max, int(t_steps))
    try:
        conc, skew, pur, var, wy = _measures(point, times)
    except ValueError as exc:
        for t in times:
            try:
                _measures(point, t)
            except ValueError as row_exc:
                raise TraceEvaluationError(f"{point.label()}: {row_exc}", float(t)) from row_exc
        raise TraceEvaluationError(f"{point.label()}: {exc}", None) from exc
    bad = np.flatnonzero((skew < 1 - SKEW_TOL) | (skew > 2 + SKEW_TOL))
    if bad.size:
        raise TraceEvaluationError(f"S_I outside [1, 2] for {point.label()}", float(times[bad[0]]))
    return TraceSeries(point, times, skew, conc, pur, var, wy)


@dataclass(frozen=True)
class ExtremumRecord:
    kind: str  # "max" or "min"
    T_star: float
    value: float
    occurrence: int  # 1 for the first of its kind, 2 for the second, ...


def _refine(func, a, b, c, kind):
    sign = -1.0 if kind == "max" else 1.0
    try:
        res = minimize_scalar(lambda t: sign * func(t), bracket=(a, b, c), method="golden",
                              options={"xtol": 1e-10})
    except ValueError:
        # func disagrees with the samples enough to break the bracket
        return b, float(func(b))
    t = float(res.x)
    # golden may wander outside the bracket on very flat tops; keep it local
    if not a <= t <= c:
        t = b
    return t, float(func(t))


def locate_extrema(times, values, func: Callable | None = None) -> list[ExtremumRecord]:
    """Interior extrema of a sampled curve.

    Detected from sign changes of the discrete slope. If ``func`` evaluates
    the underlying continuous curve, each extremum is refined by golden
    section search inside its three-sample bracket. Runs of |slope| below
    1e-12 are plateaus and are reported once, at their centre.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(times) < 3:
        raise ValueError(f"need at least 3 samples to locate extrema, got {len(times)}")
    slope = np.diff(values)
    signs = np.where(slope > PLATEAU_SLOPE, 1, np.where(slope < -PLATEAU_SLOPE, -1, 0))

    found = []
    last_sign, last_idx = 0, None
    for i, s in enumerate(signs):
        if s == 0:
            continue
        if last_sign and s != last_sign:
            kind = "max" if last_sign > 0 else "min"
            if i - last_idx == 1:
                if func is not None:
                    t, v = _refine(func, times[i - 1], times[i], times[i + 1], kind)
                else:
                    t, v = times[i], values[i]
            else:
                # plateau spans samples last_idx+1 .. i
                centre = (last_idx + 1 + i) / 2
                t = float(np.interp(centre, np.arange(len(times)), times))
                v = float(values[int(round(centre))])
            found.append((kind, float(t), float(v)))
        last_sign, last_idx = s, i

    counts = {"max": 0, "min": 0}
    records = []
    for kind, t, v in found:
        counts[kind] += 1
        records.append(ExtremumRecord(kind, t, v, counts[kind]))
    return records


def find_extrema(series: TraceSeries, func: Callable | None = None) -> list[ExtremumRecord]:
    """Extrema of S_I along a trace, refined on the continuous curve."""
    if len(series) < 3:
        raise ValueError(f"need at least 3 rows to locate extrema, got {len(series)}")
    return locate_extrema(series.times, series.skew, func or series.point.skew_at)


def first_extremum(records: Sequence[ExtremumRecord], kind: str) -> ExtremumRecord | None:
    return next((r for r in records if r.kind == kind), None)


# --- configuration ---------------------------------------------------------

@dataclass
class SweepConfig:
    delta_values: list[float]
    gamma_values: list[float]
    n_values: list[int]
    t_max: float = DEFAULT_T_MAX
    t_steps: int = DEFAULT_T_STEPS
    output_dir: Path = Path("traces")
    emit_plots: bool = False

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        for name in ("delta_values", "gamma_values", "n_values"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must not be empty")
        if any(not g > 0 for g in self.gamma_values):
            raise ConfigError(f"gamma values must be positive: {self.gamma_values}")
        if any(int(n) != n or n < 0 for n in self.n_values):
            raise ConfigError(f"n values must be non-negative integers: {self.n_values}")
        if not self.t_max > 0:
            raise ConfigError(f"tmax must be positive, got {self.t_max}")
        if int(self.t_steps) != self.t_steps or self.t_steps < 2:
            raise ConfigError(f"steps must be an integer >= 2, got {self.t_steps}")
        total = self.t_steps * len(self.delta_values) * len(self.gamma_values) * len(self.n_values)
        if total > MAX_EVALUATIONS:
            raise ConfigError(f"sweep would evaluate {total} points (limit {MAX_EVALUATIONS})")

    def points(self) -> list[TracePoint]:
        return [TracePoint(d, g, int(n))
                for d in self.delta_values for g in self.gamma_values for n in self.n_values]


def _parse_list(key, text, conv):
    try:
        return [conv(item.strip()) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {text!r}") from exc


def _parse_bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


def parse_number(text):
    """Float, also accepting ``a/b``."""
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


CONFIG_KEYS = {
    "delta": ("delta_values", lambda k, v: _parse_list(k, v, parse_number)),
    "gamma": ("gamma_values", lambda k, v: _parse_list(k, v, parse_number)),
    "n": ("n_values", lambda k, v: _parse_list(k, v, int)),
    "tmax": ("t_max", lambda k, v: float(v)),
    "steps": ("t_steps", lambda k, v: int(v)),
    "out": ("output_dir", lambda k, v: Path(v.strip())),
    "plots": ("emit_plots", lambda k, v: _parse_bool(v)),
}


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines into SweepConfig keyword arguments.

    Blank lines and ``#`` comments are ignored; unknown keys are errors.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        field_name, conv = CONFIG_KEYS[key]
        try:
            out[field_name] = conv(key, value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return out


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror or exc}") from exc
    return parse_config(text)


# --- output ----------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x + 0.0:.11e}"


def trace_filename(point: TracePoint) -> str:
    return f"trace_d{point.Delta:g}_g{point.gamma:g}_n{point.n}.csv"


def format_csv(series: TraceSeries) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in zip(*series.columns()):
        lines.append(",".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def gnuplot_script(title: str, series: Sequence[TraceSeries]) -> str:
    plots = ", \\\n     ".join(
        f'"{trace_filename(s.point)}" using 1:2 with lines title "{s.point.label()}"' for s in series)
    return (
        f'# {title}\n'
        'set datafile separator ","\n'
        'set xlabel "T"\n'
        'set ylabel "S_I"\n'
        'set yrange [0.95:2.05]\n'
        f'set title "{title}"\n'
        f'plot {plots}\n'
    )


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"could not write {path}: {exc.strerror or exc}") from exc
    return path


def emit_outputs(series_set: Sequence[TraceSeries], output_dir, emit_plots: bool = True,
                 script_name: str = "traces", title: str | None = None) -> list[Path]:
    """Write one CSV per trace and, optionally, one gnuplot script for the group."""
    if not series_set:
        log.warning("no traces to emit; nothing written to %s", output_dir)
        return []
    output_dir = Path(output_dir)
    written = [_write(output_dir / trace_filename(s.point), format_csv(s)) for s in series_set]
    if emit_plots:
        written.append(_write(output_dir / f"{script_name}.gp",
                              gnuplot_script(title or script_name, series_set)))
    return written


def run_sweep(config: SweepConfig) -> list[Path]:
    series = [run_trace(p, config.t_max, config.t_steps) for p in config.points()]
    return emit_outputs(series, config.output_dir, config.emit_plots)


# --- figure reproduction ---------------------------------------------------

@dataclass(frozen=True)
class FigureLayout:
    name: str
    description: str
    points: tuple[TracePoint, ...]


FIGURES = (
    FigureLayout("fig1", "Delta = 0, 0.3, 0.9; gamma = 1/4; n = 1",
               tuple(TracePoint(d, 0.25, 1) for d in (0.0, 0.3, 0.9))),
    FigureLayout("fig2", "n = 2, 5, 8; gamma = 1/4; Delta = 0",
               tuple(TracePoint(0.0, 0.25, n) for n in (2, 5, 8))),
    FigureLayout("fig3", "gamma = 1/4, 1/6, 1/8; n = 2; Delta = 0",
               tuple(TracePoint(0.0, g, 2) for g in (1 / 4, 1 / 6, 1 / 8))),
    FigureLayout("fig4", "gamma = 1/4, 1/6, 1/8; n = 2; Delta = 0.3",
               tuple(TracePoint(0.3, g, 2) for g in (1 / 4, 1 / 6, 1 / 8))),
    FigureLayout("fig5", "gamma = 4, 6, 8; n = 2; Delta = 0",
               tuple(TracePoint(0.0, g, 2) for g in (4.0, 6.0, 8.0))),
)


@dataclass(frozen=True)
class Anchor:
    """A time the source text reads off one of its curves."""

    figure: str
    point: TracePoint
    kind: str
    quoted_T: float
    quote: str


ANCHORS = (
    Anchor("fig1", TracePoint(0.0, 0.25, 1), "max", 7.0, "maximum value for the first time at T~7"),
    Anchor("fig1", TracePoint(0.0, 0.25, 1), "min", 12.5, "minimum value for the first time at T~12.5"),
    Anchor("fig1", TracePoint(0.3, 0.25, 1), "max", 3.0, "maximum value for the first time at T~3"),
    Anchor("fig2", TracePoint(0.0, 0.25, 2), "min", 10.0, "for n=2 ... minimum value at T=10"),
)

NOTES = (
    "fig3/fig4: the two source captions are identical; fig3 is taken as the resonant "
    "set (Delta = 0) and fig4 as Delta = 0.3.",
    "fig5: caption lists gamma = 4, 6, 8 while the discussion lists 2, 4, 6; the caption "
    "values are used. Omega(gamma) = Omega(1/gamma), so these curves coincide with fig3.",
    "Prose claims not encoded as checks: Delta = 0 described as 'non-resonant' in the "
    "fig2 discussion; '1%/2%' photon-number and '5%' detuning changes have no stated baseline.",
    "Anchor times come from a closed form with typographical inconsistencies; deviations "
    "are expected and reported, not fatal.",
)


@dataclass(frozen=True)
class CurveSummary:
    figure: str
    point: TracePoint
    extrema: tuple[ExtremumRecord, ...]

    @property
    def first_max(self):
        return first_extremum(self.extrema, "max")

    @property
    def first_min(self):
        return first_extremum(self.extrema, "min")


@dataclass(frozen=True)
class AnchorResult:
    anchor: Anchor
    measured_T: float | None

    @property
    def within_tolerance(self) -> bool:
        if self.measured_T is None:
            return False
        return abs(self.measured_T - self.anchor.quoted_T) <= ANCHOR_REL_TOL * self.anchor.quoted_T


@dataclass
class Reproduction:
    files: list[Path] = field(default_factory=list)
    curves: list[CurveSummary] = field(default_factory=list)
    anchors: list[AnchorResult] = field(default_factory=list)
    trends: dict[str, bool] = field(default_factory=dict)
    report_path: Path | None = None

    def curve(self, figure: str, point: TracePoint) -> CurveSummary:
        return next(c for c in self.curves if c.figure == figure and c.point == point)


def _strictly_decreasing(xs):
    return all(x is not None for x in xs) and all(a > b for a, b in zip(xs, xs[1:]))


def trend_checks(rep: Reproduction) -> dict[str, bool]:
    """Qualitative orderings the figures are meant to show."""
    def t_first(fig, kind, point):
        r = first_extremum(rep.curve(fig, point).extrema, kind)
        return None if r is None else r.T_star

    fig2 = [t_first("fig2", "max", p) for p in FIGURES[1].points]
    counts3 = [len(rep.curve("fig3", p).extrema) for p in FIGURES[2].points]
    counts4 = [len(rep.curve("fig4", p).extrema) for p in FIGURES[3].points]
    fig1_res = t_first("fig1", "max", TracePoint(0.0, 0.25, 1))
    fig1_det = t_first("fig1", "max", TracePoint(0.3, 0.25, 1))
    # gamma listed 1/4, 1/6, 1/8, i.e. decreasing, so reversed order is increasing gamma
    min3 = [t_first("fig3", "min", p) for p in reversed(FIGURES[2].points)]
    return {
        "fig2: first-max time strictly decreases for n = 2, 5, 8": _strictly_decreasing(fig2),
        "fig3: extremum count non-decreasing as gamma decreases 1/4 -> 1/6 -> 1/8":
            all(a <= b for a, b in zip(counts3, counts3[1:])),
        "fig4: extremum count non-decreasing as gamma decreases 1/4 -> 1/6 -> 1/8":
            all(a <= b for a, b in zip(counts4, counts4[1:])),
        "fig1: first max earlier at Delta = 0.3 than at Delta = 0":
            fig1_res is not None and fig1_det is not None and fig1_det < fig1_res,
        "fig3: first-min time decreases as gamma increases 1/8 -> 1/6 -> 1/4": _strictly_decreasing(min3),
    }


def _fmt_t(r: ExtremumRecord | None) -> str:
    return "none" if r is None else f"{r.T_star:.4f} (S_I={r.value:.4f})"


def format_report(rep: Reproduction) -> str:
    lines = ["Skew information figure reproduction", ""]
    for fig in FIGURES:
        lines.append(f"[{fig.name}] {fig.description}")
        for p in fig.points:
            c = rep.curve(fig.name, p)
            lines.append(f"  {p.label():32s} first max {_fmt_t(c.first_max)}; "
                         f"first min {_fmt_t(c.first_min)}; interior extrema {len(c.extrema)}")
        lines.append("")
    lines.append(f"Quoted extremum times (tolerance +/-{ANCHOR_REL_TOL:.0%} of quoted T)")
    for a in rep.anchors:
        measured = "none" if a.measured_T is None else f"{a.measured_T:.4f}"
        status = "PASS" if a.within_tolerance else "DEVIATION"
        lines.append(f"  {status:9s} {a.anchor.figure} {a.anchor.point.label()} first {a.anchor.kind}: "
                     f"quoted {a.anchor.quoted_T:g}, measured {measured}  ({a.anchor.quote})")
    lines.append("")
    lines.append("Qualitative trends")
    for name, ok in rep.trends.items():
        lines.append(f"  {'PASS' if ok else 'FAIL':9s} {name}")
    lines.append("")
    lines.append("Notes")
    lines.extend(f"  - {note}" for note in NOTES)
    return "\n".join(lines) + "\n"


def reproduce_figures(output_dir, t_max: float = DEFAULT_T_MAX, t_steps: int = DEFAULT_T_STEPS) -> Reproduction:
    """Emit fig1..fig5 CSV bundles, plot scripts and a reproduction report."""
    output_dir = Path(output_dir)
    rep = Reproduction()
    for fig in FIGURES:
        series = [run_trace(p, t_max, t_steps) for p in fig.points]
        rep.files += emit_outputs(series, output_dir / fig.name, emit_plots=True,
                                  script_name=fig.name, title=f"{fig.name}: {fig.description}")
        rep.curves += [CurveSummary(fig.name, s.point, tuple(find_extrema(s))) for s in series]
    for anchor in ANCHORS:
        rec = first_extremum(rep.curve(anchor.figure, anchor.point).extrema, anchor.kind)
        rep.anchors.append(AnchorResult(anchor, None if rec is None else rec.T_star))
    rep.trends = trend_checks(rep)
    rep.report_path = _write(output_dir / "report.txt", format_report(rep))
    rep.files.append(rep.report_path)
    return rep
