"""Bundled configurations of the demonstrated recycling systems.

Four named configurations, one per measured efficiency series: triangles
(non-switching recycling cavity, approximate reconstruction), squares
(switched system, lossy switch and flat recycling mirror), diamonds
(improved switch, curved recycling mirror) and circle (improved switch,
high-reflectivity curved mirror).
"""

from __future__ import annotations

from importlib import resources

from ..config import parse_config
from ..engine import SystemConfig

NAMES = ("triangles", "squares", "diamonds", "circle")


def dataset_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown dataset {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__package__).joinpath(f"{name}.cfg").read_text(encoding="utf-8")


def load(name: str) -> SystemConfig:
    return parse_config(dataset_text(name))


def load_all() -> dict[str, SystemConfig]:
    return {name: load(name) for name in NAMES}
