"""Flat key-value configuration files and the sweep configuration record.

Grammar (one assignment per line):

    # full-line or trailing comments start with '#'
    key = value

Values are parsed as bool (`true`/`false`), int, float, or string (quotes
optional) in that order.  Keys are the SweepConfig field names below.
Unknown keys are errors: a typo should never silently fall back to a
default.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass


class ConfigError(ValueError):
    """Malformed configuration file or inconsistent sweep parameters."""


@dataclass(frozen=True)
class SweepConfig:
    """Everything one concurrence sweep at fixed qubit distance depends on.

    Distances and times are expressed in qubit-wavelength units: internally
    the sweep sets c = 1 and Omega = 2 pi so one wavelength is the unit of
    length and one light-crossing of it the unit of time.
    """

    engine: str = "perturbative"        # perturbative | oracle | both
    coupling: float = 7.5e-3            # dimensionless K of both qubits
    rho_x_over_lambda: float = 1.0      # lab separation over qubit wavelength
    xi_min: float = 0.0                 # lab light-cone parameter grid
    xi_max: float = 1.75
    xi_steps: int = 36
    eb_min: float = 0.0                 # throat-to-distance ratio grid
    eb_max: float = 10.0
    eb_steps: int = 21
    box_factor: float = 96.0            # ring length over max(c t, rho_l)
    cutoff_factor: float = 40.0         # frequency cutoff over Omega
    n_modes_oracle: int = 32            # mode count for oracle-scale engines
    box_length_oracle: float = 4.5      # ring length for oracle runs [lambda]
    n_max: int = 2                      # photon-number cap of the oracle
    validity_bound: float = 0.5         # K Omega t above this flags the point
    convergence_rtol: float = 1e-3
    seed: int = 0                       # recorded for reproducibility
    out_dir: str = "sweep-out"
    dump_states: bool = False           # write reduced density matrices

    def __post_init__(self) -> None:
        if self.engine not in ("perturbative", "oracle", "both"):
            raise ConfigError(f"unknown engine {self.engine!r}")
        if self.coupling <= 0.0:
            raise ConfigError("coupling K must be positive")
        if self.rho_x_over_lambda <= 0.0:
            raise ConfigError("rho_x_over_lambda must be positive")
        for name, lo, hi, steps in (
            ("xi", self.xi_min, self.xi_max, self.xi_steps),
            ("eb", self.eb_min, self.eb_max, self.eb_steps),
        ):
            if steps < 2:
                raise ConfigError(f"{name} grid needs at least 2 steps")
            if not lo < hi:
                raise ConfigError(f"{name} grid needs min < max")
        if self.xi_min < 0.0 or self.eb_min < 0.0:
            raise ConfigError("grids must be non-negative")

    def replace(self, **changes) -> "SweepConfig":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    def content_hash(self) -> str:
        """Hash of every field that affects computed values (not out_dir)."""
        payload = {k: v for k, v in self.as_dict().items() if k != "out_dir"}
        blob = json.dumps(payload, sort_keys=True).encode("ascii")
        return hashlib.sha256(blob).hexdigest()[:16]


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(SweepConfig)}


def _parse_value(raw: str):
    if raw.lower() in ("true", "false"):
        return raw.lower() == "true"
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "'\"":
        return raw[1:-1]
    return raw


def parse_config_text(text: str) -> dict:
    """Parse the flat key = value grammar into a field dict."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _parse_value(raw)
    return values


def load_config(path: str, overrides: dict | None = None) -> SweepConfig:
    """Read a config file and apply CLI-style overrides on top."""
    with open(path, "r", encoding="utf-8") as fh:
        values = parse_config_text(fh.read())
    if overrides:
        values.update(overrides)
    try:
        return SweepConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
