"""Command-line front end: config parsing, presets, CSV/SVG/event emission.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 empty result.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .dynamics import (
    DEFAULT_GRID,
    DEFAULT_QUADRATURE_ORDER,
    GaussianRabi,
    InitialStateParams,
    PhaseConvention,
    SimConfig,
)
from .sweep import (
    CSV_COLUMNS,
    CorrelationRecord,
    EventReport,
    detect_events,
    plottable_columns,
    record_value,
    run_time_sweep,
)

ENTANGLEMENT_QUANTITIES = ("nu", "tau")
MONOGAMY_QUANTITIES = ("tau", "i_total", "mu2", "i_loc")

#: One preset per published panel: initial-state tuple x sigma/omega x curves.
PRESETS = {
    "fig2a": {"x": 1.0, "y": 0.9, "z": 1.0, "sigma_ratio": 0.0,
              "quantities": ENTANGLEMENT_QUANTITIES},
    "fig2b": {"x": 1.0, "y": 0.9, "z": 1.0, "sigma_ratio": 0.1,
              "quantities": ENTANGLEMENT_QUANTITIES},
    "fig3a": {"x": 0.6, "y": 0.8, "z": 0.3, "sigma_ratio": 0.0,
              "quantities": ENTANGLEMENT_QUANTITIES},
    "fig3b": {"x": 0.6, "y": 0.8, "z": 0.3, "sigma_ratio": 0.1,
              "quantities": ENTANGLEMENT_QUANTITIES},
    "fig4a": {"x": 1.0, "y": 0.9, "z": 1.0, "sigma_ratio": 0.0,
              "quantities": MONOGAMY_QUANTITIES},
    "fig4b": {"x": 1.0, "y": 0.9, "z": 1.0, "sigma_ratio": 0.1,
              "quantities": MONOGAMY_QUANTITIES},
    "fig5a": {"x": 0.6, "y": 0.8, "z": 0.3, "sigma_ratio": 0.0,
              "quantities": MONOGAMY_QUANTITIES},
    "fig5b": {"x": 0.6, "y": 0.8, "z": 0.3, "sigma_ratio": 0.1,
              "quantities": MONOGAMY_QUANTITIES},
}

_DEFAULTS = {
    "x": 1.0, "y": 0.9, "z": 1.0,
    "sigma_ratio": 0.0,
    "t_max": DEFAULT_GRID[0], "samples": DEFAULT_GRID[1],
    "quadrature_order": DEFAULT_QUADRATURE_ORDER,
    "phase_convention": "pm-half-pi",
    "quantities": ",".join(ENTANGLEMENT_QUANTITIES),
    "dark_tol": 1e-9, "freeze_tol": 1e-6,
}
_NUMERIC_KEYS = {"x", "y", "z", "sigma_ratio", "t_max", "dark_tol", "freeze_tol"}
_INT_KEYS = {"samples", "quadrature_order"}


class ConfigError(ValueError):
    """Invalid configuration file or flag values (exit code 2)."""


def _coerce(key: str, value) -> object:
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _NUMERIC_KEYS:
            return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"key {key!r}: cannot parse {value!r} as a number") from None
    return str(value)


def _read_config_file(path: Path) -> dict:
    """Flat ``key = value`` text; '#' starts a comment."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    settings = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _DEFAULTS and key != "preset":
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        settings[key] = value
    return settings


def _apply_preset(settings: dict, name: str) -> None:
    if name not in PRESETS:
        raise ConfigError(f"key 'preset': unknown preset {name!r}")
    preset = PRESETS[name]
    for key in ("x", "y", "z", "sigma_ratio"):
        settings[key] = preset[key]
    settings["quantities"] = ",".join(preset["quantities"])


def build_config(settings: dict) -> SimConfig:
    """Validated SimConfig from a flat settings mapping."""
    try:
        return SimConfig(
            initial=InitialStateParams(float(settings["x"]), float(settings["y"]),
                                       float(settings["z"])),
            rabi=GaussianRabi(1.0, float(settings["sigma_ratio"])),
            phase=PhaseConvention.from_name(str(settings["phase_convention"])),
            quadrature_order=int(settings["quadrature_order"]),
            grid=(float(settings["t_max"]), int(settings["samples"])),
            tolerances={"dark": float(settings["dark_tol"]),
                        "freeze": float(settings["freeze_tol"])},
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_config(config_path: Path | None = None, preset: str | None = None,
                 overrides: dict | None = None) -> tuple[SimConfig, dict]:
    """Resolve defaults, preset, config file, and flag overrides, in that order.

    Returns the validated config plus the resolved flat settings mapping
    (used for the run manifest and the SVG quantity list).
    """
    settings = dict(_DEFAULTS)
    if config_path is not None:
        file_settings = _read_config_file(Path(config_path))
        if "preset" in file_settings:
            _apply_preset(settings, str(file_settings.pop("preset")))
        for key, value in file_settings.items():
            settings[key] = _coerce(key, value)
    if preset is not None:
        _apply_preset(settings, preset)
    for key, value in (overrides or {}).items():
        if key not in _DEFAULTS:
            raise ConfigError(f"unknown key {key!r}")
        settings[key] = _coerce(key, value)
    return build_config(settings), settings


def format_float(value: float) -> str:
    """12 significant digits, '.' decimal separator, no negative zero."""
    return f"{value + 0.0:.12g}"


def emit_csv(records: Sequence[CorrelationRecord], path,
             events: EventReport | None = None, events_path=None) -> None:
    """Write the record table, plus the event sidecar when events are given."""
    if not records:
        raise ValueError("no records to write")
    lines = [",".join(CSV_COLUMNS)]
    for record in records:
        cells = []
        for column in CSV_COLUMNS:
            value = record_value(record, column)
            cells.append(value if isinstance(value, str) else format_float(value))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")
    if events is not None:
        if events_path is None:
            events_path = Path(path).with_suffix(".events")
        Path(events_path).write_text(format_events(events), newline="\n")


def format_events(events: EventReport) -> str:
    """Flat key = value rendering of an event report."""
    lines = ["# event report (times in units of omega*t)"]
    for name, intervals in (("dark_period", events.dark_periods),
                            ("freeze_interval", events.freeze_intervals)):
        lines.append(f"{name}_count = {len(intervals)}")
        for i, (start, end) in enumerate(intervals, start=1):
            lines.append(f"{name}_{i} = {format_float(start)} {format_float(end)}")
    for name, value in (("t_star", events.t_star), ("t_max_mu2", events.t_max_mu2)):
        lines.append(f"{name} = {'none' if value is None else format_float(value)}")
    return "\n".join(lines) + "\n"


def emit_svg(records: Sequence[CorrelationRecord], quantities: Sequence[str],
             path) -> None:
    """Single SVG line chart, one curve per requested quantity."""
    from .plotting import build_chart, save_chart_svg

    save_chart_svg(build_chart(records, quantities), path)


@dataclass(frozen=True)
class RunManifest:
    """Echo of a finished run: settings, artifact paths, version, duration."""

    settings: dict
    artifacts: dict
    version: str
    duration_s: float

    def render(self) -> str:
        lines = ["# tricorr run manifest", f"# version = {self.version}",
                 f"# duration_s = {self.duration_s:.3f}"]
        lines += [f"# {name} = {path}" for name, path in sorted(self.artifacts.items())]
        config_keys = [k for k in _DEFAULTS if k != "quantities"] + ["quantities"]
        lines += [f"{key} = {self.settings[key]}" for key in config_keys]
        return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricorr",
        description="Correlation dynamics of two qubits coupled to a random "
                    "classical field: time series, events, and charts.",
    )
    parser.add_argument("--config", type=Path, help="flat key=value config file")
    parser.add_argument("--preset", choices=sorted(PRESETS),
                        help="published-panel preset (initial state, sigma, curves)")
    parser.add_argument("--x", type=float, help="even-parity superposition weight")
    parser.add_argument("--y", type=float, help="statistical mixing weight")
    parser.add_argument("--z", type=float, help="odd-parity superposition weight")
    parser.add_argument("--sigma-ratio", type=float, dest="sigma_ratio",
                        help="Rabi-frequency spread divided by the central frequency")
    parser.add_argument("--t-max", type=float, dest="t_max",
                        help="grid end in units of omega*t")
    parser.add_argument("--samples", type=int, help="number of grid samples")
    parser.add_argument("--quadrature-order", type=int, dest="quadrature_order",
                        help="Gauss-Hermite order for the frequency average")
    parser.add_argument("--phase-convention", choices=["pm-half-pi", "zero-pi"],
                        dest="phase_convention",
                        help="the two random field phases")
    parser.add_argument("--quantities",
                        help="comma-separated CSV columns to chart")
    parser.add_argument("--out-csv", type=Path, help="write the record table here")
    parser.add_argument("--out-svg", type=Path, help="write the line chart here")
    parser.add_argument("--out-events", type=Path,
                        help="write the event report here (default: next to the CSV)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.monotonic()

    overrides = {
        key: getattr(args, key)
        for key in ("x", "y", "z", "sigma_ratio", "t_max", "samples",
                    "quadrature_order", "phase_convention", "quantities")
        if getattr(args, key) is not None
    }
    try:
        cfg, settings = parse_config(args.config, args.preset, overrides)
        quantities = [q for q in str(settings["quantities"]).split(",") if q]
        if args.out_svg is not None:
            if not quantities:
                raise ConfigError("key 'quantities': empty quantity list")
            unknown = [q for q in quantities if q not in plottable_columns()]
            if unknown:
                raise ConfigError(f"key 'quantities': unknown quantities {unknown}")
    except ConfigError as exc:
        print(f"tricorr: configuration error: {exc}", file=sys.stderr)
        return 2

    records = run_time_sweep(cfg)
    if not records:
        print("tricorr: sweep produced no records", file=sys.stderr)
        return 4
    events = detect_events(cfg, records)

    artifacts = {}
    try:
        if args.out_csv is not None:
            events_path = args.out_events or Path(args.out_csv).with_suffix(".events")
            emit_csv(records, args.out_csv, events, events_path)
            artifacts["out_csv"] = args.out_csv
            artifacts["out_events"] = events_path
        elif args.out_events is not None:
            Path(args.out_events).write_text(format_events(events), newline="\n")
            artifacts["out_events"] = args.out_events
        if args.out_svg is not None:
            emit_svg(records, quantities, args.out_svg)
            artifacts["out_svg"] = args.out_svg
        if args.out_csv is not None:
            manifest = RunManifest(settings, artifacts, __version__,
                                   time.monotonic() - started)
            manifest_path = Path(args.out_csv).with_suffix(".manifest")
            manifest_path.write_text(manifest.render(), newline="\n")
    except OSError as exc:
        print(f"tricorr: I/O error: {exc}", file=sys.stderr)
        return 3

    first = records[0]
    print(f"samples={len(records)} span=[0,{format_float(records[-1].omega_t)}] "
          f"nu0={format_float(first.nu)} tau0={format_float(first.tau)} "
          f"dark={len(events.dark_periods)} freeze={len(events.freeze_intervals)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
