"""Efficiency curves and their delimited text form.

CSV output is byte-stable: fixed header, 9 significant digits, '.' decimal
separator, '\\n' line endings, no locale dependence.  The same row schema
serves single runs, sweeps and Monte Carlo runs; the Monte Carlo variant
appends the four ledger standard errors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .engine import (
    RunOutcome,
    SystemConfig,
    default_rotation_step,
    noise_run,
    run_exact,
)
from .polarization import ObjectSpec

CURVE_HEADER = "N,p_qi,p_abs,p_loss,p_wrong,eta,eta_adjusted"
MC_HEADER = CURVE_HEADER + ",p_qi_err,p_abs_err,p_loss_err,p_wrong_err"
NOISE_HEADER = "N,p_wrong"


@dataclass(frozen=True)
class CurveRow:
    n: int
    p_qi: float
    p_abs: float
    p_loss: float
    p_wrong: float
    eta: float
    eta_adjusted: float


def format_number(x: float) -> str:
    return f"{x:.9g}"


def outcome_row(n: int, outcome: RunOutcome) -> CurveRow:
    return CurveRow(n, outcome.p_qi, outcome.p_abs, outcome.p_loss,
                    outcome.p_wrong, outcome.eta, outcome.eta_adjusted)


def _config_at(config: SystemConfig, n: int) -> SystemConfig:
    # sweeps always pace the rotation to the cycle count
    cycle = replace(config.cycle, dtheta=default_rotation_step(n))
    return replace(config, n_cycles=n, cycle=cycle)


def sweep(config: SystemConfig, n_min: int, n_max: int) -> list[CurveRow]:
    """Exact efficiency curve over N = n_min..n_max with dtheta = pi/2N."""
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    return [outcome_row(n, run_exact(_config_at(config, n)))
            for n in range(n_min, n_max + 1)]


def noise_curve(config: SystemConfig, n_min: int, n_max: int) -> list[tuple[int, float]]:
    """False-positive probability of the empty system over N = n_min..n_max.

    The object is forced absent: this is the curve of how often the device
    would claim an object with nothing in the arm.
    """
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    points = []
    for n in range(n_min, n_max + 1):
        cfg = _config_at(config, n)
        cfg = replace(cfg, cycle=replace(cfg.cycle, obj=ObjectSpec.absent()))
        points.append((n, noise_run(cfg)))
    return points


def rows_to_csv(rows: list[CurveRow]) -> str:
    lines = [CURVE_HEADER]
    for r in rows:
        lines.append(",".join([str(r.n)] + [format_number(v) for v in (
            r.p_qi, r.p_abs, r.p_loss, r.p_wrong, r.eta, r.eta_adjusted)]))
    return "\n".join(lines) + "\n"


def mc_to_csv(n: int, outcome: RunOutcome) -> str:
    if outcome.std_err is None:
        raise ValueError("outcome has no standard errors")
    r = outcome_row(n, outcome)
    e = outcome.std_err
    fields = [str(n)] + [format_number(v) for v in (
        r.p_qi, r.p_abs, r.p_loss, r.p_wrong, r.eta, r.eta_adjusted,
        e.p_qi, e.p_abs, e.p_loss, e.p_wrong)]
    return MC_HEADER + "\n" + ",".join(fields) + "\n"


def noise_to_csv(points: list[tuple[int, float]]) -> str:
    lines = [NOISE_HEADER]
    for n, p_wrong in points:
        lines.append(f"{n},{format_number(p_wrong)}")
    return "\n".join(lines) + "\n"
