"""Time-grid evaluation, information fluxes, and dynamical event detection.

Every grid sample is an independent pure-function evaluation, so a sweep
can be fanned out across workers without changing its output; the
sequential implementation here is already fast enough for desk use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .densemat import DensityMatrix, partial_trace
from .dynamics import (
    SimConfig,
    build_tripartite_state,
    evolve_two_qubit_gaussian,
    initial_two_qubit_state,
)
from .measures import CUT_LABELS, PAIR_LABELS, concurrence, von_neumann_entropy

#: Column order of the emitted CSV; branch columns are strings, rest floats.
CSV_COLUMNS = (
    "omega_t", "nu", "tau", "tau_branch", "mu2", "mu2_branch",
    "i_loc", "i_total",
    "mi_ab_e", "mi_ae_b", "mi_be_a",
    "mi_ab", "mi_ae", "mi_be",
    "s_a", "s_b", "s_e", "s_ab", "s_abe",
)
BRANCH_COLUMNS = ("tau_branch", "mu2_branch")

_LN2 = math.log(2.0)
_REFINE_TOL = 1e-6


@dataclass(frozen=True)
class CorrelationRecord:
    """All correlation scalars of one time sample (time is dimensionless)."""

    omega_t: float
    nu: float
    tau: float
    tau_branch: str
    mu2: float
    mu2_branch: str
    local_info: float
    total_info: float
    cut_mi: tuple[float, float, float]
    pair_mi: tuple[float, float, float]
    s_a: float
    s_b: float
    s_e: float
    s_ab: float
    s_abe: float


@dataclass(frozen=True)
class EventReport:
    """Detected dynamical events, all endpoints in units of omega*t."""

    dark_periods: tuple[tuple[float, float], ...]
    freeze_intervals: tuple[tuple[float, float], ...]
    t_star: float | None
    t_max_mu2: float | None

    def __post_init__(self):
        for intervals in (self.dark_periods, self.freeze_intervals):
            for (a, b), nxt in zip(intervals, intervals[1:] + ((math.inf, 0),)):
                if b < a or nxt[0] < b:
                    raise ValueError("event intervals must be sorted and non-overlapping")


@dataclass(frozen=True)
class FluxSample:
    """Central-difference time derivatives at one probe point."""

    omega_t: float
    h: float
    tau_branch: str
    mu2_branch: str
    branch_stable: bool
    d_local_info: float
    d_mu2: float
    d_tau: float
    d_total_info: float
    d_entropy: dict[str, float]


def _sample(cfg: SimConfig, omega_t: float) -> tuple[CorrelationRecord, dict[str, float]]:
    t = omega_t / cfg.rabi.omega
    rho0 = initial_two_qubit_state(cfg.initial)
    tri = build_tripartite_state(rho0, cfg, t)

    reductions: dict[str, DensityMatrix] = {
        name: partial_trace(tri, set(name)) for name in ("A", "B", "E", "AB", "AE", "BE")
    }
    s = {name: von_neumann_entropy(red) for name, red in reductions.items()}
    s["ABE"] = von_neumann_entropy(tri)

    cut_mi = (
        s["AB"] + s["E"] - s["ABE"],
        s["AE"] + s["B"] - s["ABE"],
        s["BE"] + s["A"] - s["ABE"],
    )
    pair_mi = (
        s["A"] + s["B"] - s["AB"],
        s["A"] + s["E"] - s["AE"],
        s["B"] + s["E"] - s["BE"],
    )
    tau_index = int(np.argmin(cut_mi))
    mu2_index = int(np.argmax(pair_mi))
    record = CorrelationRecord(
        omega_t=omega_t,
        nu=concurrence(reductions["AB"]),
        tau=cut_mi[tau_index],
        tau_branch=CUT_LABELS[tau_index],
        mu2=pair_mi[mu2_index],
        mu2_branch=PAIR_LABELS[mu2_index],
        local_info=(_LN2 - s["A"]) + (_LN2 - s["B"]) + (_LN2 - s["E"]),
        total_info=math.log(8.0) - s["ABE"],
        cut_mi=cut_mi,
        pair_mi=pair_mi,
        s_a=s["A"], s_b=s["B"], s_e=s["E"], s_ab=s["AB"], s_abe=s["ABE"],
    )
    return record, s


def evaluate_at(cfg: SimConfig, omega_t: float) -> CorrelationRecord:
    """Full correlation record of the evolved tripartite state at one time."""
    return _sample(cfg, omega_t)[0]


def time_grid(cfg: SimConfig) -> np.ndarray:
    t_max, samples = cfg.grid
    return np.linspace(0.0, t_max, samples)


def run_time_sweep(cfg: SimConfig) -> list[CorrelationRecord]:
    """One record per grid sample, strictly increasing in omega*t."""
    records = []
    for omega_t in time_grid(cfg):
        try:
            records.append(evaluate_at(cfg, float(omega_t)))
        except ValueError as exc:
            raise ValueError(f"at omega_t = {omega_t:.9g}: {exc}") from exc
    return records


def plottable_columns() -> tuple[str, ...]:
    """CSV columns that make sense on a chart's value axis."""
    return tuple(c for c in CSV_COLUMNS if c != "omega_t" and c not in BRANCH_COLUMNS)


def record_value(record: CorrelationRecord, column: str):
    """Value of one CSV column for one record."""
    direct = {
        "omega_t": record.omega_t, "nu": record.nu,
        "tau": record.tau, "tau_branch": record.tau_branch,
        "mu2": record.mu2, "mu2_branch": record.mu2_branch,
        "i_loc": record.local_info, "i_total": record.total_info,
        "mi_ab_e": record.cut_mi[0], "mi_ae_b": record.cut_mi[1], "mi_be_a": record.cut_mi[2],
        "mi_ab": record.pair_mi[0], "mi_ae": record.pair_mi[1], "mi_be": record.pair_mi[2],
        "s_a": record.s_a, "s_b": record.s_b, "s_e": record.s_e,
        "s_ab": record.s_ab, "s_abe": record.s_abe,
    }
    try:
        return direct[column]
    except KeyError:
        raise ValueError(f"unknown column {column!r}") from None


def nu_evaluator(cfg: SimConfig) -> Callable[[float], float]:
    """Cheap concurrence-only evaluator used for interval refinement."""
    rho0 = initial_two_qubit_state(cfg.initial)

    def nu(omega_t: float) -> float:
        t = omega_t / cfg.rabi.omega
        evolved = evolve_two_qubit_gaussian(rho0, cfg.rabi, cfg.phase, t,
                                            cfg.quadrature_order)
        return concurrence(evolved)

    return nu


def flux_derivatives(cfg: SimConfig, probe_omega_ts: Sequence[float],
                     h: float = 1e-3) -> list[FluxSample]:
    """Central differences of the information scalars at fresh probe points.

    States at t +- h are evaluated from scratch rather than differenced on
    the sweep grid, so accuracy is O(h^2) regardless of grid density.
    Samples whose argmin/argmax branches differ across the stencil are
    flagged unstable; one-sided derivatives of a min/max disagree there.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    out = []
    for omega_t in probe_omega_ts:
        lo, s_lo = _sample(cfg, omega_t - h)
        hi, s_hi = _sample(cfg, omega_t + h)
        center, _ = _sample(cfg, omega_t)
        scale = 1.0 / (2.0 * h)
        out.append(FluxSample(
            omega_t=omega_t,
            h=h,
            tau_branch=center.tau_branch,
            mu2_branch=center.mu2_branch,
            branch_stable=(lo.tau_branch == center.tau_branch == hi.tau_branch
                           and lo.mu2_branch == center.mu2_branch == hi.mu2_branch),
            d_local_info=(hi.local_info - lo.local_info) * scale,
            d_mu2=(hi.mu2 - lo.mu2) * scale,
            d_tau=(hi.tau - lo.tau) * scale,
            d_total_info=(hi.total_info - lo.total_info) * scale,
            d_entropy={name: (s_hi[name] - s_lo[name]) * scale for name in s_hi},
        ))
    return out


def branch_switches(records: Sequence[CorrelationRecord]) -> list[int]:
    """Grid indices where the tau or mu2 branch differs from the previous sample."""
    return [
        i for i in range(1, len(records))
        if records[i].tau_branch != records[i - 1].tau_branch
        or records[i].mu2_branch != records[i - 1].mu2_branch
    ]


def select_flux_probes(records: Sequence[CorrelationRecord], count: int = 20,
                       exclusion: int = 2) -> list[float]:
    """Probe times away from grid ends and +-``exclusion`` steps of switches."""
    excluded = set()
    for switch in branch_switches(records):
        excluded.update(range(switch - exclusion, switch + exclusion + 1))
    candidates = [i for i in range(1, len(records) - 1) if i not in excluded]
    if len(candidates) < count:
        raise ValueError(f"only {len(candidates)} switch-free samples available")
    picks = np.unique(np.linspace(0, len(candidates) - 1, count).round().astype(int))
    return [records[candidates[i]].omega_t for i in picks]


def _true_runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal index runs where the mask holds, as inclusive (start, stop)."""
    runs = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(mask) - 1))
    return runs


def _bisect_edge(inside: Callable[[float], bool], t_out: float, t_in: float,
                 tol: float = _REFINE_TOL) -> float:
    """Boundary between an outside and an inside point, to ``tol`` in omega*t."""
    while abs(t_in - t_out) > tol:
        mid = 0.5 * (t_out + t_in)
        if inside(mid):
            t_in = mid
        else:
            t_out = mid
    return 0.5 * (t_out + t_in)


def _refine_runs(runs, grid, inside) -> tuple[tuple[float, float], ...]:
    intervals = []
    for i0, i1 in runs:
        start = grid[i0] if i0 == 0 or inside is None else \
            _bisect_edge(inside, grid[i0 - 1], grid[i0])
        end = grid[i1] if i1 == len(grid) - 1 or inside is None else \
            _bisect_edge(inside, grid[i1 + 1], grid[i1])
        intervals.append((float(start), float(end)))
    return tuple(intervals)


def detect_dark_periods(records: Sequence[CorrelationRecord], tol: float = 1e-9,
                        nu_of_t: Callable[[float], float] | None = None,
                        ) -> tuple[tuple[float, float], ...]:
    """Maximal intervals of vanishing concurrence spanning >= 2 grid points.

    With an evaluator the endpoints are refined by bisection to 1e-6 in
    omega*t; otherwise they sit on the sample grid.
    """
    grid = np.array([r.omega_t for r in records])
    nu = np.array([r.nu for r in records])
    runs = [run for run in _true_runs(nu <= tol) if run[1] > run[0]]
    inside = (lambda wt: nu_of_t(wt) <= tol) if nu_of_t is not None else None
    return _refine_runs(runs, grid, inside)


def _golden_max(f: Callable[[float], float], a: float, b: float,
                tol: float = _REFINE_TOL) -> float:
    """Derivative-free location of a maximum of f inside [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def detect_freezing(records: Sequence[CorrelationRecord], mu2_at_zero: float,
                    tol: float = 1e-6,
                    tau_of_t: Callable[[float], float] | None = None,
                    mu2_of_t: Callable[[float], float] | None = None,
                    ) -> tuple[tuple[tuple[float, float], ...], float | None, float | None]:
    """Freeze intervals |tau - mu2(0)| <= tol plus the onset/maximum markers.

    Returns (intervals, t_star, t_max_mu2): t_star is the first freeze
    onset; t_max_mu2 the first strict local maximum of mu2 after t_star.
    Intervals must span at least two grid steps.
    """
    grid = np.array([r.omega_t for r in records])
    tau = np.array([r.tau for r in records])
    mu2 = np.array([r.mu2 for r in records])

    runs = [run for run in _true_runs(np.abs(tau - mu2_at_zero) <= tol)
            if run[1] - run[0] >= 2]
    inside = (lambda wt: abs(tau_of_t(wt) - mu2_at_zero) <= tol) \
        if tau_of_t is not None else None
    intervals = _refine_runs(runs, grid, inside)

    t_star = intervals[0][0] if intervals else None
    t_max_mu2 = None
    if t_star is not None:
        for i in range(1, len(records) - 1):
            if grid[i] <= t_star:
                continue
            if mu2[i - 1] < mu2[i] > mu2[i + 1]:
                t_max_mu2 = float(grid[i]) if mu2_of_t is None else \
                    _golden_max(mu2_of_t, grid[i - 1], grid[i + 1])
                break
    return intervals, t_star, t_max_mu2


def detect_events(cfg: SimConfig, records: Sequence[CorrelationRecord]) -> EventReport:
    """Dark periods and freezing analysis with refined endpoints."""

    def tau_of_t(omega_t: float) -> float:
        return evaluate_at(cfg, omega_t).tau

    def mu2_of_t(omega_t: float) -> float:
        return evaluate_at(cfg, omega_t).mu2

    dark = detect_dark_periods(records, cfg.tolerance("dark"), nu_evaluator(cfg))
    freeze, t_star, t_max_mu2 = detect_freezing(
        records, records[0].mu2, cfg.tolerance("freeze"), tau_of_t, mu2_of_t)
    return EventReport(dark, freeze, t_star, t_max_mu2)
