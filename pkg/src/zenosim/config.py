"""Flat key = value run configuration files.

One assignment per line, '#' starts a comment, whitespace around keys and
values is ignored.  Unknown keys, duplicate keys, malformed values and
out-of-range values are all rejected with the offending line number.
Missing optional keys take the ideal defaults (unit transmissions, zero
crosstalk, zero phase, opaque object); n_cycles is the one required key.

The recycling leg can be given either directly as t_rec or as the pair
t_qwp / r_mirror, which compose as t_rec = t_qwp**2 * r_mirror.  Giving
t_rec together with either component is an error.
"""

from __future__ import annotations

import math
import os

from .engine import CycleParams, SystemConfig, default_rotation_step
from .polarization import ObjectKind, ObjectSpec, PbsModel


class ConfigError(ValueError):
    """Malformed or inconsistent configuration text."""


_INT_KEYS = {"n_cycles", "trials", "seed"}
_FLOAT_KEYS = {
    "dtheta_override", "t_empty", "t_obj_arm", "t_rec", "t_qwp", "r_mirror",
    "crosstalk", "phase", "object_t", "object_phase", "detector_eff", "filter_t",
}
_OBJECT_KINDS = {k.value: k for k in ObjectKind}
KNOWN_KEYS = _INT_KEYS | _FLOAT_KEYS | {"object"}


def _scan(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            first = entries[key][1]
            raise ConfigError(f"line {lineno}: duplicate key {key!r} (first set on line {first})")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        entries[key] = (value, lineno)
    return entries


class _Entries:
    def __init__(self, entries: dict[str, tuple[str, int]]):
        self._entries = entries

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def line(self, key: str) -> int:
        return self._entries[key][1]

    def _convert(self, key: str):
        value, lineno = self._entries[key]
        try:
            return int(value) if key in _INT_KEYS else float(value)
        except ValueError:
            kind = "an integer" if key in _INT_KEYS else "a number"
            raise ConfigError(f"line {lineno}: {key} must be {kind}, got {value!r}") from None

    def take(self, key: str, default, low=None, high=None,
             low_open: bool = False, high_open: bool = False):
        if key not in self._entries:
            return default
        value = self._convert(key)
        lineno = self._entries[key][1]
        if low is not None and (value <= low if low_open else value < low):
            raise ConfigError(f"line {lineno}: {key} = {value} out of range")
        if high is not None and (value >= high if high_open else value > high):
            raise ConfigError(f"line {lineno}: {key} = {value} out of range")
        return value

    def raw(self, key: str) -> str:
        return self._entries[key][0]


def parse_config(text: str) -> SystemConfig:
    """Parse configuration text into a SystemConfig."""
    entries = _Entries(_scan(text))

    if "n_cycles" not in entries:
        raise ConfigError("missing required key 'n_cycles'")
    n_cycles = entries.take("n_cycles", None, low=1)

    if "t_rec" in entries:
        for other in ("t_qwp", "r_mirror"):
            if other in entries:
                raise ConfigError(
                    f"line {entries.line(other)}: {other!r} is mutually exclusive "
                    f"with 't_rec' (line {entries.line('t_rec')})")
        t_rec = entries.take("t_rec", 1.0, low=0.0, high=1.0)
    else:
        t_qwp = entries.take("t_qwp", 1.0, low=0.0, high=1.0)
        r_mirror = entries.take("r_mirror", 1.0, low=0.0, high=1.0)
        t_rec = t_qwp * t_qwp * r_mirror

    kind_name = entries.raw("object").lower() if "object" in entries else "opaque"
    if kind_name not in _OBJECT_KINDS:
        choices = ", ".join(sorted(_OBJECT_KINDS))
        raise ConfigError(f"line {entries.line('object')}: object must be one of {choices}")
    kind = _OBJECT_KINDS[kind_name]
    if kind is ObjectKind.PARTIAL:
        if "object_t" not in entries:
            raise ConfigError("object = partial requires 'object_t'")
        obj = ObjectSpec.partial(entries.take("object_t", None, low=0.0, high=1.0),
                                 entries.take("object_phase", 0.0))
    else:
        for key in ("object_t", "object_phase"):
            if key in entries:
                raise ConfigError(
                    f"line {entries.line(key)}: {key!r} is only valid with object = partial")
        obj = ObjectSpec.absent() if kind is ObjectKind.ABSENT else ObjectSpec.opaque()

    dtheta = entries.take("dtheta_override", default_rotation_step(n_cycles),
                          low=0.0, low_open=True, high=math.pi / 2.0)
    cycle = CycleParams(
        dtheta=dtheta,
        t_empty=entries.take("t_empty", 1.0, low=0.0, high=1.0),
        t_obj_arm=entries.take("t_obj_arm", 1.0, low=0.0, high=1.0),
        t_rec=t_rec,
        pbs=PbsModel(crosstalk=entries.take("crosstalk", 0.0, low=0.0, high=0.5, high_open=True)),
        phase=entries.take("phase", 0.0),
        obj=obj,
    )
    return SystemConfig(
        n_cycles=n_cycles,
        cycle=cycle,
        detector_eff=entries.take("detector_eff", 1.0, low=0.0, low_open=True, high=1.0),
        filter_t=entries.take("filter_t", 1.0, low=0.0, low_open=True, high=1.0),
        trials=entries.take("trials", 100_000, low=1),
        seed=entries.take("seed", 0, low=0),
    )


def read_config(path: str | os.PathLike) -> SystemConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return parse_config(fh.read())
        except ConfigError as exc:
            raise ConfigError(f"{path}: {exc}") from None


def format_config(config: SystemConfig) -> str:
    """Serialize a SystemConfig to config text.

    Floats are written with repr so that parsing the result reproduces the
    exact same SystemConfig.  The recycling leg is always written as the
    composed t_rec.  Beamsplitter leak phases are a library-level knob with
    no text form and are not emitted.
    """
    cycle = config.cycle
    lines = [
        f"n_cycles = {config.n_cycles}",
        f"dtheta_override = {cycle.dtheta!r}",
        f"t_empty = {cycle.t_empty!r}",
        f"t_obj_arm = {cycle.t_obj_arm!r}",
        f"t_rec = {cycle.t_rec!r}",
        f"crosstalk = {cycle.pbs.crosstalk!r}",
        f"phase = {cycle.phase!r}",
        f"object = {cycle.obj.kind.value}",
    ]
    if cycle.obj.kind is ObjectKind.PARTIAL:
        lines.append(f"object_t = {cycle.obj.amplitude_t!r}")
        lines.append(f"object_phase = {cycle.obj.phase_shift!r}")
    lines += [
        f"detector_eff = {config.detector_eff!r}",
        f"filter_t = {config.filter_t!r}",
        f"trials = {config.trials}",
        f"seed = {config.seed}",
    ]
    return "\n".join(lines) + "\n"
