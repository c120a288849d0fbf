"""Experiment design: cycle-count optimization, component budgets, loss fits.

Loss makes the efficiency curve eta(N) unimodal: more cycles reduce the
absorption probability like 1/N but expose the photon to per-cycle loss N
times, so there is a finite best N.  This module scans for it, maps
catalog-level component specs onto the per-cycle transmissions of the
closed-form model, and recovers the per-cycle survival from measured
efficiencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from scipy.optimize import minimize_scalar

from .models import LossyModelParams, detector_adjust, lossy_closed_form

_FIT_BOUNDS = (0.5, 1.0)
_FIT_XATOL = 1e-10
_FIT_MAXITER = 500


@dataclass(frozen=True)
class LossBudget:
    """Per-cycle transmissions with the cycle count left open."""

    t_empty: float = 1.0
    t_obj: float = 1.0
    t_rec: float = 1.0

    def __post_init__(self) -> None:
        for name in ("t_empty", "t_obj", "t_rec"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} {v} outside [0, 1]")

    def at(self, n_cycles: int) -> LossyModelParams:
        return LossyModelParams(n_cycles, self.t_empty, self.t_obj, self.t_rec)


@dataclass(frozen=True)
class ComponentSpecs:
    """Catalog numbers for one candidate build of the apparatus."""

    pockels_single_pass_t: float
    recycling_mirror_r: float
    surface_loss_per_encounter: float
    qwp_encounters_per_cycle: int = 4
    pbs_encounters_per_cycle: int = 4
    detector_eff: float = 1.0

    def __post_init__(self) -> None:
        for name in ("pockels_single_pass_t", "recycling_mirror_r"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} {v} outside [0, 1]")
        if not 0.0 <= self.surface_loss_per_encounter < 1.0:
            raise ValueError("surface_loss_per_encounter outside [0, 1)")
        if self.qwp_encounters_per_cycle < 0 or self.pbs_encounters_per_cycle < 0:
            raise ValueError("encounter counts must be non-negative")
        if not 0.0 < self.detector_eff <= 1.0:
            raise ValueError(f"detector_eff {self.detector_eff} outside (0, 1]")


def specs_to_params(specs: ComponentSpecs) -> LossBudget:
    """Fold component specs into the three per-cycle transmissions.

    The switching cell sits in the empty arm and is traversed twice per
    cycle; antireflection surface losses hit the empty arm once per
    beamsplitter encounter and the recycling leg once per wave-plate
    encounter; the object arm sees two surfaces in front of the object.
    """
    surf = 1.0 - specs.surface_loss_per_encounter
    t_empty = specs.pockels_single_pass_t ** 2 * surf ** specs.pbs_encounters_per_cycle
    t_rec = surf ** specs.qwp_encounters_per_cycle * specs.recycling_mirror_r
    t_obj = surf ** 2
    return LossBudget(t_empty, t_obj, t_rec)


class OptimalCycles(NamedTuple):
    n_star: int
    eta_star: float
    at_boundary: bool


def optimal_cycles(budget: LossBudget, n_max: int) -> OptimalCycles:
    """Exhaustive scan of eta over N = 1..n_max.

    Ties resolve to the smaller N.  at_boundary is set when the argmax sits
    at n_max, meaning the curve was still rising (as it is without loss)
    and the reported optimum is only a truncation of the scan.
    """
    if n_max < 1:
        raise ValueError(f"n_max {n_max} < 1")
    best_n = 0
    best_eta = -math.inf
    for n in range(1, n_max + 1):
        eta = lossy_closed_form(budget.at(n)).eta
        if math.isnan(eta):
            continue
        if eta > best_eta:
            best_n, best_eta = n, eta
    if best_n == 0:
        raise ValueError("eta undefined over the whole scan range")
    return OptimalCycles(best_n, best_eta, best_n == n_max)


class FeasibilityRow(NamedTuple):
    specs: ComponentSpecs
    n_star: int
    eta_star: float
    eta_adjusted: float
    at_boundary: bool


def feasibility_scan(candidates: Iterable[ComponentSpecs], n_max: int) -> list[FeasibilityRow]:
    """Rank candidate builds.

    Each row carries the best cycle count, the best raw eta, and the
    detector-adjusted eta computed with that candidate's own detector
    efficiency, so rows stay comparable across detector choices.
    """
    rows = []
    for specs in candidates:
        n_star, eta_star, at_boundary = optimal_cycles(specs_to_params(specs), n_max)
        rows.append(FeasibilityRow(specs, n_star, eta_star,
                                   detector_adjust(eta_star, specs.detector_eff),
                                   at_boundary))
    if not rows:
        raise ValueError("no candidate specs to scan")
    return rows


@dataclass(frozen=True)
class FitResult:
    t_cycl: float
    uncertainty: float
    residual_sum_squares: float
    iterations: int


def fit_model_eta(n: int, t_cycl: float, t_obj: float) -> float:
    """The single-parameter curve fit_losses adjusts: eta at n cycles with
    the per-cycle survival product t_cycl split evenly across the arms."""
    root = math.sqrt(t_cycl)
    return lossy_closed_form(LossyModelParams(n, root, t_obj, root)).eta


def fit_losses(data: Sequence[tuple[int, float, float]],
               t_obj_fixed: float = 1.0) -> FitResult:
    """Weighted least-squares fit of the per-cycle survival product.

    data rows are (n_cycles, measured eta, one-sigma error).  The model
    curve exposes a single parameter t_cycl = t_empty * t_rec because the
    efficiency depends on the two factors almost solely through their
    product: the absorption term involves exactly t_empty * t_rec per
    cycle, and the detection term t_empty^N t_rec^(N-1) differs from a pure
    power of the product by one factor, far below measurement noise for the
    N where such data is taken.  Separating the factors from eta(N) alone is
    therefore ill-conditioned and not attempted; the model splits the
    product evenly, t_empty = t_rec = sqrt(t_cycl).

    The quoted uncertainty is curvature-based: sigma = sqrt(2 / chi2''),
    the one-sigma half-width of the chi-square parabola at the minimum.
    """
    rows = list(data)
    if not rows:
        raise ValueError("no data points")
    if len({n for n, _, _ in rows}) < 2:
        raise ValueError("degenerate data: need at least two distinct cycle counts")
    for n, eta, sigma in rows:
        if n < 1:
            raise ValueError(f"n_cycles {n} < 1")
        if sigma <= 0.0:
            raise ValueError(f"sigma {sigma} must be positive")
    if not 0.0 <= t_obj_fixed <= 1.0:
        raise ValueError(f"t_obj_fixed {t_obj_fixed} outside [0, 1]")

    def chi2(t_cycl: float) -> float:
        return sum(((fit_model_eta(n, t_cycl, t_obj_fixed) - eta) / sigma) ** 2
                   for n, eta, sigma in rows)

    res = minimize_scalar(chi2, bounds=_FIT_BOUNDS, method="bounded",
                          options={"xatol": _FIT_XATOL, "maxiter": _FIT_MAXITER})
    if not res.success:
        raise RuntimeError(f"fit did not converge: {res.message}")

    # second derivative by central difference, with the stencil kept inside
    # the fit bounds
    h = 1e-6
    center = min(max(res.x, _FIT_BOUNDS[0] + h), _FIT_BOUNDS[1] - h)
    curvature = (chi2(center + h) - 2.0 * chi2(center) + chi2(center - h)) / (h * h)
    uncertainty = math.sqrt(2.0 / curvature) if curvature > 0.0 else math.inf
    return FitResult(float(res.x), uncertainty, float(res.fun), int(res.nfev))
