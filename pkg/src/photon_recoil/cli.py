"""Command-line front end.

    photon-recoil recoil --n-alpha 0.02 --gamma0 1e-6 --omega-m 100 --recoil-scale 1e-9
    photon-recoil sweep --axis n_alpha --values 0,0.01,0.02,0.05 --out sweep.csv

Exit status: 0 success, 1 bad configuration, 2 strict-mode validation
failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, PhotonRecoilError, RegimeViolationError
from .medium import params_from_n_alpha
from .model import ModelParams, validate
from .observables import emission_line, energy_ledger, photon_moment, recoil_stats
from .quadrature import QuadratureSpec
from .spectral import excitation_ratios

CONFIG_KEYS = ("omega_m", "gamma0", "recoil_scale", "density", "n_alpha", "strict")
DEFAULTS = {"omega_m": 100.0, "gamma0": 1e-6, "recoil_scale": 0.0, "density": 0.0, "strict": False}
SWEEP_AXES = ("n_alpha", "gamma0", "omega_m", "recoil_scale")
FORMATS = {
    "validate": "json",
    "spectrum": "csv",
    "recoil": "json",
    "ledger": "json",
    "sweep": "csv",
    "oracle": "json",
}
SPECTRUM_POINTS = 2001
SPECTRUM_HALF_WIDTHS = 10.0

EXIT_OK, EXIT_CONFIG, EXIT_STRICT, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(Exception):
    pass


def _parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"cannot interpret {text!r} as a boolean")


def _parse_value(key: str, text):
    if key == "strict":
        return _parse_bool(text)
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: cannot interpret {text!r} as a number") from None


def read_config(text: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown configuration key {key!r}")
        if key in values:
            raise ConfigError(f"duplicate configuration key {key!r}")
        values[key] = _parse_value(key, value)
    if "density" in values and "n_alpha" in values:
        raise ConfigError("density and n_alpha are mutually exclusive")
    return values


def build_params(source: dict) -> ModelParams:
    """Turn a merged key/value source into :class:`ModelParams`."""
    unknown = set(source) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration key {sorted(unknown)[0]!r}")
    if "density" in source and "n_alpha" in source:
        raise ConfigError("density and n_alpha are mutually exclusive")
    merged = {**DEFAULTS, **source}
    common = {k: merged[k] for k in ("omega_m", "gamma0", "recoil_scale", "strict")}
    if "n_alpha" in source:
        return params_from_n_alpha(source["n_alpha"], **common)
    return ModelParams(density=merged["density"], **common)


@dataclass
class RunConfig:
    command: str
    source: dict
    output_path: str | None = None
    output_format: str | None = None
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    frozen_gamma: bool = True
    frozen_n: bool = True
    sweep_axis: str | None = None
    sweep_values: list[float] = field(default_factory=list)
    jobs: int = 1


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _spectrum(params, config) -> str:
    response, density = emission_line(params, config.frozen_gamma, config.frozen_n)
    half = SPECTRUM_HALF_WIDTHS * density.width
    omega = np.linspace(density.center - half, density.center + half, SPECTRUM_POINTS)
    ratios = excitation_ratios(omega, params, response)
    rows = zip(omega, density(omega), ratios.rot, ratios.anti)
    return _csv_text(("omega", "rho", "rot_ratio", "anti_ratio"), rows)


def _recoil(params, config) -> str:
    response, density = emission_line(params, config.frozen_gamma, config.frozen_n)
    stats = recoil_stats(params, response, density, config.quad)
    return _json_text(stats.as_dict(params))


def _ledger(params, config) -> str:
    response, density = emission_line(params, config.frozen_gamma, config.frozen_n)
    return _json_text(energy_ledger(params, response, density, config.quad).as_dict())


def _oracle(params, config) -> str:
    _, density = emission_line(params, config.frozen_gamma, config.frozen_n)
    names = ("normalization", "first_moment", "second_moment")
    return _json_text(
        {name: photon_moment(density, p, config.quad).as_dict() for p, name in enumerate(names)}
    )


def sweep_point(source: dict, axis: str, value: float, quad, frozen_gamma: bool, frozen_n: bool):
    """One sweep row ``(value, n, recoil_ratio, ledger_total)``.

    Module-level so it can be shipped to worker processes.
    """
    point = dict(source)
    if axis == "n_alpha":
        point.pop("density", None)
    point[axis] = value
    params = build_params(point)
    if validate(params).overall == "fail":
        raise RegimeViolationError(f"sweep point {axis}={value!r} fails strict validation")
    response, density = emission_line(params, frozen_gamma, frozen_n)
    stats = recoil_stats(params, response, density, quad)
    ledger = energy_ledger(params, response, density, quad)
    return (value, response.n, stats.recoil_ratio, ledger.total.quadrature)


def _sweep(config) -> str:
    args = [
        (config.source, config.sweep_axis, v, config.quad, config.frozen_gamma, config.frozen_n)
        for v in config.sweep_values
    ]
    if config.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(sweep_point, *zip(*args)))
    else:
        rows = [sweep_point(*a) for a in args]
    return _csv_text(("value", "n", "recoil_ratio", "ledger_total"), rows)


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(config: RunConfig) -> int:
    """Execute one command and write its output; returns the exit status."""
    expected = FORMATS.get(config.command)
    if expected is None:
        print(f"error: unknown command {config.command!r}", file=sys.stderr)
        return EXIT_CONFIG
    if config.output_format not in (None, expected):
        print(f"error: {config.command} writes {expected}, not {config.output_format}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if config.command == "sweep":
            if config.sweep_axis not in SWEEP_AXES:
                raise ConfigError(f"sweep axis must be one of {', '.join(SWEEP_AXES)}")
            if not config.sweep_values:
                raise ConfigError("sweep needs at least one value")
        params = build_params(config.source)
    except (ConfigError, InvalidParameterError, RegimeViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    report = validate(params)
    if config.command == "validate":
        _emit(_json_text(report.as_dict()), config.output_path)
        return EXIT_STRICT if report.overall == "fail" else EXIT_OK
    if report.overall == "fail":
        print(f"error: strict validation failed: {', '.join(report.failed)}", file=sys.stderr)
        return EXIT_STRICT

    handlers = {"spectrum": _spectrum, "recoil": _recoil, "ledger": _ledger, "oracle": _oracle}
    try:
        if config.command == "sweep":
            text = _sweep(config)
        else:
            text = handlers[config.command](params, config)
    except RegimeViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRICT if params.strict else EXIT_NUMERIC
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhotonRecoilError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(text, config.output_path)
    return EXIT_OK


def _on_off(text: str) -> bool:
    try:
        return _parse_bool(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _value_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value list {text!r}") from None


class _Parser(argparse.ArgumentParser):
    # Exit status 2 is reserved for strict-mode validation failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value parameter file")
    common.add_argument("--omega-m", type=float, dest="omega_m")
    common.add_argument("--gamma0", type=float)
    common.add_argument("--recoil-scale", type=float, dest="recoil_scale")
    common.add_argument("--density", type=float)
    common.add_argument("--n-alpha", type=float, dest="n_alpha")
    common.add_argument("--strict", action="store_true", default=None)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("csv", "json"), dest="output_format")
    common.add_argument("--quad.window", type=float, dest="quad_window", default=1e4)
    common.add_argument("--quad.rtol", type=float, dest="quad_rtol", default=1e-9)
    common.add_argument("--quad.tail", type=_on_off, dest="quad_tail", default=True, metavar="on|off")
    common.add_argument("--frozen-gamma", type=_on_off, dest="frozen_gamma", default=True, metavar="on|off")
    common.add_argument("--frozen-n", type=_on_off, dest="frozen_n", default=True, metavar="on|off")

    parser = _Parser(
        prog="photon-recoil",
        description="Photon recoil of an atom in a dilute dielectric.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("validate", parents=[common], help="regime checks (JSON)")
    sub.add_parser("spectrum", parents=[common], help="photon spectrum near the line (CSV)")
    sub.add_parser("recoil", parents=[common], help="recoil statistics (JSON)")
    sub.add_parser("ledger", parents=[common], help="energy ledger (JSON)")
    sub.add_parser("oracle", parents=[common], help="closed form vs quadrature (JSON)")
    sweep = sub.add_parser("sweep", parents=[common], help="parameter sweep (CSV)")
    sweep.add_argument("--axis", required=True, choices=SWEEP_AXES)
    sweep.add_argument("--values", required=True, type=_value_list)
    sweep.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        source = {}
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    source = read_config(fh.read())
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
        flags = {k: getattr(args, k) for k in CONFIG_KEYS if getattr(args, k) is not None}
        if "density" in flags and "n_alpha" in flags:
            raise ConfigError("--density and --n-alpha are mutually exclusive")
        if "density" in flags or "n_alpha" in flags:
            source.pop("density", None)
            source.pop("n_alpha", None)
        source.update(flags)
        quad = QuadratureSpec(
            window_half_width=args.quad_window,
            rel_tol=args.quad_rtol,
            tail_correction=args.quad_tail,
        )
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    config = RunConfig(
        command=args.command,
        source=source,
        output_path=args.out,
        output_format=args.output_format,
        quad=quad,
        frozen_gamma=args.frozen_gamma,
        frozen_n=args.frozen_n,
        sweep_axis=getattr(args, "axis", None),
        sweep_values=getattr(args, "values", []),
        jobs=getattr(args, "jobs", 1),
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
