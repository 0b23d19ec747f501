"""Experiment configs, run manifests, and CSV output.

Configs are flat key-value INI files with one section per command; manifests
echo every numeric-relevant parameter back in the same dialect, so a manifest
is itself a valid config that reproduces the run.  CSV values are written with
17 significant digits to round-trip doubles exactly.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .kernels import KernelSpec, lookup
from .spectral import Field, Grid, NormOrder
from .stepping import SimConfig, gaussian_field, sine_field

__all__ = [
    "ConfigError",
    "read_config",
    "build_sim_config",
    "initial_field",
    "write_manifest",
    "write_csv",
    "read_csv",
    "fmt",
]


class ConfigError(Exception):
    """Malformed or incomplete experiment configuration."""


def fmt(value) -> str:
    """Canonical text form: 17 significant digits for reals."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def read_config(path: str | Path) -> configparser.ConfigParser:
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as handle:
            parser.read_file(handle, source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        # configparser messages carry "[line N]" anchors
        raise ConfigError(str(exc)) from exc
    return parser


class _Required:
    pass


_REQUIRED = _Required()


@dataclass
class _Section:
    """Typed accessors over one config section with anchored error messages."""

    path: str
    name: str
    raw: dict

    def _get(self, key: str, default):
        if key in self.raw:
            return self.raw[key]
        if default is _REQUIRED:
            raise ConfigError(f"{self.path}: [{self.name}] missing required key '{key}'")
        return default

    def string(self, key: str, default=_REQUIRED) -> str:
        return str(self._get(key, default)).strip()

    def real(self, key: str, default=_REQUIRED) -> float:
        value = self._get(key, default)
        if isinstance(value, float):
            return value
        try:
            return float(str(value).strip())
        except ValueError:
            raise ConfigError(f"{self.path}: [{self.name}] {key} = {value!r} is not a number") from None

    def integer(self, key: str, default=_REQUIRED) -> int:
        value = self._get(key, default)
        if isinstance(value, int):
            return value
        try:
            return int(str(value).strip())
        except ValueError:
            raise ConfigError(f"{self.path}: [{self.name}] {key} = {value!r} is not an integer") from None

    def boolean(self, key: str, default=_REQUIRED) -> bool:
        value = self._get(key, default)
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ("true", "yes", "on", "1"):
            return True
        if text in ("false", "no", "off", "0"):
            return False
        raise ConfigError(f"{self.path}: [{self.name}] {key} = {value!r} is not a boolean") from None

    def reals(self, key: str, default=_REQUIRED) -> tuple[float, ...]:
        value = self._get(key, default)
        if isinstance(value, tuple):
            return value
        try:
            return tuple(float(tok) for tok in str(value).split())
        except ValueError:
            raise ConfigError(
                f"{self.path}: [{self.name}] {key} = {value!r} is not a space-separated list of numbers"
            ) from None

    def strings(self, key: str, default=_REQUIRED) -> tuple[str, ...]:
        value = self._get(key, default)
        if isinstance(value, tuple):
            return value
        return tuple(str(value).split())


def section(parser: configparser.ConfigParser, path: str | Path, name: str) -> _Section:
    if not parser.has_section(name):
        raise ConfigError(f"{path}: config has no [{name}] section")
    return _Section(path=str(path), name=name, raw=dict(parser.items(name)))


def initial_field(grid: Grid, spec: str) -> Field:
    """Build initial data from a CLI-style string.

    Supported: ``zero``, ``gaussian:amplitude=A[,width=W][,center=C]``,
    ``sine:amplitude=A,mode=M``.
    """
    spec = spec.strip()
    base, _, rest = spec.partition(":")
    params: dict[str, float] = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ConfigError(f"malformed initial-data parameter {item!r} in {spec!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ConfigError(f"initial-data parameter {item!r} is not numeric") from None
    try:
        if base == "zero":
            return Field.zero(grid)
        if base == "gaussian":
            return gaussian_field(
                grid,
                amplitude=params.pop("amplitude"),
                width=params.pop("width", 1.0),
                center=params.pop("center", 0.0),
            )
        if base == "sine":
            return sine_field(grid, amplitude=params.pop("amplitude"), mode=int(params.pop("mode")))
    except KeyError as exc:
        raise ConfigError(f"initial data {base!r} needs parameter {exc.args[0]!r}") from None
    raise ConfigError(f"unknown initial data {spec!r}; use zero, gaussian:..., or sine:...")


def build_sim_config(sec: _Section, *, kernel_key: str = "kernel", s_override: float | None = None):
    """SimConfig plus its echo dict from one config section."""
    kernel_name = sec.string(kernel_key)
    try:
        kernel = lookup(kernel_name)
    except ValueError as exc:
        raise ConfigError(f"{sec.path}: [{sec.name}] {exc}") from None
    n = sec.integer("n", 1024)
    half_length = sec.real("l", 30.0)
    u0_spec = sec.string("u0", "gaussian:amplitude=0.1,width=3.5")
    s = sec.real("s", 2.0) if s_override is None else float(s_override)
    dt_raw = sec.string("dt", "auto")
    t_end = sec.real("t_end", 1.0)
    delta = sec.real("delta", 0.1)
    try:
        grid = Grid(n, half_length)
        cfg = SimConfig(
            kernel=kernel,
            delta=delta,
            p=sec.integer("p", 1),
            grid=grid,
            u0=initial_field(grid, u0_spec),
            s=NormOrder(s),
            t_end=t_end,
            dt="auto" if dt_raw == "auto" else float(dt_raw),
            snapshot_stride=sec.integer("snapshot_stride", 1),
            linearize=sec.boolean("linearize", False),
            safety=sec.real("safety", 1e-8),
        )
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"{sec.path}: [{sec.name}] {exc}") from None
    echo = {
        kernel_key: kernel.name,
        "delta": delta,
        "p": cfg.p,
        "n": n,
        "l": half_length,
        "u0": u0_spec,
        "s": s,
        "t_end": t_end,
        "dt": dt_raw,
        "snapshot_stride": cfg.snapshot_stride,
        "linearize": cfg.linearize,
        "safety": cfg.safety,
    }
    return cfg, echo


def write_manifest(path: str | Path, command: str, echo: dict, extra: dict | None = None) -> None:
    """Write a manifest that doubles as a rerunnable config for `command`."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.add_section(command)
    for key, value in echo.items():
        parser.set(command, key, fmt(value))
    parser.add_section("manifest")
    parser.set("manifest", "tool_version", __version__)
    for key, value in (extra or {}).items():
        parser.set("manifest", key, fmt(value))
    with open(path, "w") as handle:
        parser.write(handle)


def write_csv(path: str | Path, columns: dict) -> None:
    """Write named columns; every value rendered with `fmt`."""
    names = list(columns)
    arrays = [np.atleast_1d(np.asarray(columns[name])) for name in names]
    length = len(arrays[0])
    if any(len(a) != length for a in arrays):
        raise ValueError("CSV columns must share a length")
    with open(path, "w") as handle:
        handle.write(",".join(names) + "\n")
        for row in range(length):
            handle.write(",".join(fmt(a[row]) for a in arrays) + "\n")


def read_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Read a CSV written by `write_csv` back into float columns."""
    with open(path) as handle:
        header = handle.readline().strip()
        if not header:
            raise ValueError(f"{path}: empty CSV")
        names = header.split(",")
        rows = [line.strip().split(",") for line in handle if line.strip()]
    data = {name: np.array([float(row[i]) for row in rows]) for i, name in enumerate(names)}
    return data
