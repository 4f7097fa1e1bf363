"""Scenario files: a flat ``key = value`` grammar.

Example::

    # single vortex on a cyclotron orbit
    grid.n = 256
    grid.length = 32
    field.b = 1
    component.n = 0
    component.ell = 1
    component.pc = 1
    time.steps = 200
    output.dir = out/fig2c

Rules:

* one ``key = value`` per line; ``#`` starts a comment; blank lines ignored.
* ``component.<field>`` lines accumulate into the current component. A new
  component starts whenever a field already set in the current one appears
  again, so components are simply written one after another.
* component fields: ``n`` (default 0), ``ell`` (required), ``pc`` (default 0),
  ``weight_re`` (default 1), ``weight_im`` (default 0).
* required: ``grid.n``, ``grid.length``, ``field.b`` and one component.
* ``time.dt`` defaults to one cyclotron period / 200, ``time.steps`` to one
  period, ``time.observe_every`` to 1, ``time.snapshot_every`` to 0
  (only the first and last state).
* ``output.dir`` defaults to ``out``; ``output.write_snapshots`` and
  ``output.write_images`` take true/false and default to false.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .core import PhysicsParams
from .errors import ParseError, ValidationError, ZeroField
from .states import LandauSpec

STEPS_PER_PERIOD = 200

_COMPONENT_KEYS = {"n", "ell", "pc", "weight_re", "weight_im"}
_SCALAR_KEYS = {
    "grid.n", "grid.length", "field.b",
    "time.dt", "time.steps", "time.observe_every", "time.snapshot_every",
    "output.dir", "output.write_snapshots", "output.write_images",
}


@dataclass
class GridConfig:
    n: int
    length: float


@dataclass
class TimeConfig:
    dt: float
    steps: int
    observe_every: int = 1
    snapshot_every: int = 0


@dataclass
class OutputConfig:
    dir: str = "out"
    write_snapshots: bool = False
    write_images: bool = False


@dataclass
class Scenario:
    grid: GridConfig
    b_field: float
    components: list[LandauSpec]
    time: TimeConfig
    output: OutputConfig = field(default_factory=OutputConfig)
    name: str = "scenario"

    @property
    def params(self) -> PhysicsParams:
        return PhysicsParams(self.b_field)


def _number(key, raw, kind=float):
    try:
        v = kind(raw) if kind is float else int(raw, 10)
    except ValueError:
        raise ValidationError(key, f"cannot parse {raw!r} as {kind.__name__}") from None
    if kind is float and not math.isfinite(v):
        raise ValidationError(key, "must be finite")
    return v


def _bool(key, raw):
    low = raw.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValidationError(key, f"expected true/false, got {raw!r}")


def _tokenize(text):
    scalars: dict[str, str] = {}
    components: list[dict[str, str]] = []
    current: dict[str, str] | None = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(line_no, f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ParseError(line_no, "empty key or value")
        if key.startswith("component."):
            sub = key[len("component."):]
            if sub not in _COMPONENT_KEYS:
                raise ParseError(line_no, f"unknown component field {sub!r}")
            if current is None or sub in current:
                current = {}
                components.append(current)
            current[sub] = value
        elif key in _SCALAR_KEYS:
            if key in scalars:
                raise ParseError(line_no, f"duplicate key {key!r}")
            scalars[key] = value
        else:
            raise ParseError(line_no, f"unknown key {key!r}")
    return scalars, components


def parse_config(text: str, name: str = "scenario") -> Scenario:
    scalars, raw_components = _tokenize(text)
    for key in ("grid.n", "grid.length", "field.b"):
        if key not in scalars:
            raise ValidationError(key, "missing")

    n = _number("grid.n", scalars["grid.n"], int)
    length = _number("grid.length", scalars["grid.length"])
    if n < 16 or n % 2:
        raise ValidationError("grid.n", "must be even and >= 16")
    if length <= 0:
        raise ValidationError("grid.length", "must be positive")

    b = _number("field.b", scalars["field.b"])
    try:
        params = PhysicsParams(b)
    except ZeroField:
        raise ValidationError("field.b", "must be nonzero") from None

    if not raw_components:
        raise ValidationError("component", "at least one component is required")
    components = []
    for i, comp in enumerate(raw_components):
        if "ell" not in comp:
            raise ValidationError(f"component[{i}].ell", "missing")
        cn = _number(f"component[{i}].n", comp.get("n", "0"), int)
        if cn < 0:
            raise ValidationError(f"component[{i}].n", "must be >= 0")
        weight = complex(
            _number(f"component[{i}].weight_re", comp.get("weight_re", "1")),
            _number(f"component[{i}].weight_im", comp.get("weight_im", "0")),
        )
        components.append(
            LandauSpec(
                n=cn,
                ell=_number(f"component[{i}].ell", comp["ell"], int),
                p_c=_number(f"component[{i}].pc", comp.get("pc", "0")),
                weight=weight,
            )
        )
    if all(c.weight == 0 for c in components):
        raise ValidationError("component.weight_re", "all component weights are zero")

    if "time.dt" in scalars:
        dt = _number("time.dt", scalars["time.dt"])
        if dt <= 0:
            raise ValidationError("time.dt", "must be positive")
    else:
        dt = params.period / STEPS_PER_PERIOD
    if "time.steps" in scalars:
        steps = _number("time.steps", scalars["time.steps"], int)
        if steps < 1:
            raise ValidationError("time.steps", "must be >= 1")
    else:
        steps = max(1, round(params.period / dt))
    observe_every = _number("time.observe_every", scalars.get("time.observe_every", "1"), int)
    if observe_every < 1:
        raise ValidationError("time.observe_every", "must be >= 1")
    snapshot_every = _number("time.snapshot_every", scalars.get("time.snapshot_every", "0"), int)
    if snapshot_every < 0:
        raise ValidationError("time.snapshot_every", "must be >= 0")

    output = OutputConfig(
        dir=scalars.get("output.dir", "out"),
        write_snapshots=_bool("output.write_snapshots", scalars.get("output.write_snapshots", "false")),
        write_images=_bool("output.write_images", scalars.get("output.write_images", "false")),
    )
    return Scenario(
        grid=GridConfig(n, length),
        b_field=b,
        components=components,
        time=TimeConfig(dt, steps, observe_every, snapshot_every),
        output=output,
        name=name,
    )


def load_config(path) -> Scenario:
    p = Path(path)
    return parse_config(p.read_text(), name=p.stem)
