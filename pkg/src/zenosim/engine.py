"""Cycle-by-cycle propagation through the recycled interferometer.

One cycle, in the order the photon sees it: polarization rotation by
dtheta, split at the polarizing beamsplitter, empty-arm attenuation
t_empty on the transmitted component, object-arm attenuation t_obj_arm
followed by the object on the reflected component, coherent recombination
with the interferometer phase, recycling attenuation t_rec.  The recycling
leg is traversed after cycles 1..N-1 only; after cycle N the photon is
switched out instead, so run_exact suppresses t_rec on the final cycle.

The switch-out itself is modeled as an ideal relabeling, so outcomes are
classified on the pre-switch state: with an object present the horizontal
exit is the interaction-free detection, without one the vertical exit is
the correct answer and a horizontal exit counts as wrong.

Every run returns a probability ledger (p_qi, p_abs, p_loss, p_wrong)
that sums to one: correct conclusive exits, absorption by the object,
light lost to attenuation or to the rejected recombination port, and
conclusive exits with the wrong polarization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .models import detector_adjust
from .polarization import (
    IDEAL_PBS,
    JonesState,
    ObjectSpec,
    PbsModel,
    attenuate,
    object_interact,
    pbs_recombine,
    pbs_split,
    rotate,
)

# Monte Carlo trials are generated in bounded blocks; block size has no
# effect on results because every trial owns its own random stream.
_MC_BLOCK = 1 << 16


def default_rotation_step(n_cycles: int) -> float:
    """The rotation per cycle that completes H -> V in n_cycles."""
    return math.pi / (2.0 * n_cycles)


@dataclass(frozen=True)
class CycleParams:
    """Everything the photon encounters during one cycle."""

    dtheta: float
    t_empty: float = 1.0
    t_obj_arm: float = 1.0
    t_rec: float = 1.0
    pbs: PbsModel = IDEAL_PBS
    phase: float = 0.0
    obj: ObjectSpec = ObjectSpec.opaque()

    def __post_init__(self) -> None:
        if not 0.0 < self.dtheta <= math.pi / 2.0:
            raise ValueError(f"dtheta {self.dtheta} outside (0, pi/2]")
        for name in ("t_empty", "t_obj_arm", "t_rec"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} {v} outside [0, 1]")


@dataclass(frozen=True)
class SystemConfig:
    """A complete run: cycle parameters plus counts and detection chain."""

    n_cycles: int
    cycle: CycleParams
    detector_eff: float = 1.0
    filter_t: float = 1.0
    trials: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_cycles < 1:
            raise ValueError(f"n_cycles {self.n_cycles} < 1")
        if not 0.0 < self.detector_eff <= 1.0:
            raise ValueError(f"detector_eff {self.detector_eff} outside (0, 1]")
        if not 0.0 < self.filter_t <= 1.0:
            raise ValueError(f"filter_t {self.filter_t} outside (0, 1]")
        if self.trials < 1:
            raise ValueError(f"trials {self.trials} < 1")
        if self.seed < 0:
            raise ValueError(f"seed {self.seed} must be non-negative")


@dataclass(frozen=True)
class LedgerStdErr:
    """Binomial standard errors of the Monte Carlo ledger estimates."""

    p_qi: float
    p_abs: float
    p_loss: float
    p_wrong: float


@dataclass(frozen=True)
class RunOutcome:
    p_qi: float
    p_abs: float
    p_loss: float
    p_wrong: float
    eta: float
    eta_adjusted: float
    std_err: LedgerStdErr | None = None


def run_cycle(state: JonesState, params: CycleParams) -> tuple[JonesState, float, float]:
    """Propagate a state through one full cycle.

    Returns (survivor, absorbed increment, loss increment).  The survivor
    is sub-normalized; the increments are the probability the object
    absorbed the photon this cycle and the probability it was lost to
    attenuation or the rejected recombination port.
    """
    rotated = rotate(state, params.dtheta)
    trans_arm, refl_arm = pbs_split(rotated, params.pbs)

    empty = attenuate(trans_arm, params.t_empty)
    loss = trans_arm.norm_sq - empty.norm_sq

    in_front = attenuate(refl_arm, params.t_obj_arm)
    loss += refl_arm.norm_sq - in_front.norm_sq
    behind, absorbed = object_interact(in_front, params.obj)

    recycled, rejected = pbs_recombine(empty, behind, params.pbs, params.phase)
    loss += rejected.norm_sq

    survivor = attenuate(recycled, params.t_rec)
    loss += recycled.norm_sq - survivor.norm_sq
    return survivor, absorbed, loss


def _classify(state: JonesState, object_present: bool) -> tuple[float, float]:
    # pre-switch labels: H flags the object, V flags the empty interferometer
    p_h = abs(state.a_h) ** 2
    p_v = abs(state.a_v) ** 2
    if object_present:
        return p_h, p_v
    return p_v, p_h


def _outcome(p_qi: float, p_abs: float, p_loss: float, p_wrong: float,
             config: SystemConfig, std_err: LedgerStdErr | None = None) -> RunOutcome:
    total = p_qi + p_abs
    eta = p_qi / total if total > 0.0 else math.nan
    if math.isfinite(eta):
        eta_adj = detector_adjust(eta, config.detector_eff * config.filter_t)
    else:
        eta_adj = math.nan
    return RunOutcome(p_qi, p_abs, p_loss, p_wrong, eta, eta_adj, std_err)


def run_exact(config: SystemConfig) -> RunOutcome:
    """Deterministic amplitude propagation of the full N-cycle run.

    The photon enters horizontally polarized.  Absorption and loss are
    accumulated cycle by cycle; whatever amplitude survives cycle N is
    classified into p_qi and p_wrong.
    """
    params = config.cycle
    final_params = replace(params, t_rec=1.0)
    state = JonesState.horizontal()
    p_abs = 0.0
    p_loss = 0.0
    for k in range(config.n_cycles):
        current = final_params if k == config.n_cycles - 1 else params
        state, absorbed, lost = run_cycle(state, current)
        p_abs += absorbed
        p_loss += lost
    p_qi, p_wrong = _classify(state, params.obj.is_present)
    return _outcome(p_qi, p_abs, p_loss, p_wrong, config)


def _branch_table(config: SystemConfig) -> tuple[np.ndarray, np.ndarray, float]:
    """Conditional per-cycle branch probabilities for trajectory sampling.

    Every trajectory that survives k cycles is in the same renormalized
    state, so the chain is fully described by the absorption and stop
    probabilities of each cycle plus the final horizontal fraction.
    """
    n = config.n_cycles
    params = config.cycle
    final_params = replace(params, t_rec=1.0)
    absorb = np.zeros(n)
    stop = np.ones(n)
    state = JonesState.horizontal()
    p_h_final = 0.0
    for k in range(n):
        current = final_params if k == n - 1 else params
        nxt, absorbed, lost = run_cycle(state, current)
        surv = nxt.norm_sq
        absorb[k] = absorbed
        if surv <= 0.0:
            # nothing survives past this cycle; later entries stay at stop=1
            # so rounding slivers cannot smuggle trajectories through
            break
        stop[k] = absorbed + lost
        r = math.sqrt(surv)
        state = JonesState(nxt.a_h / r, nxt.a_v / r)
    else:
        p_h_final = abs(state.a_h) ** 2
    return absorb, stop, p_h_final


def run_monte_carlo(config: SystemConfig, trials: int | None = None,
                    seed: int | None = None) -> RunOutcome:
    """Trajectory-sampled estimate of the run ledger.

    Each cycle ends in a projective branch (absorbed, lost, or survive), so
    a trial is a walk over the per-cycle branch table; survivors draw one
    more uniform for the exit polarization.  Trial i consumes only its own
    stream, seeded from (seed, i), which makes the outcome bit-identical
    for a fixed (config, trials, seed) regardless of evaluation order or
    blocking.

    A no-object run with beamsplitter crosstalk is rejected: its rejected
    light builds up coherently across cycles and is not trajectory-samplable.
    """
    if trials is None:
        trials = config.trials
    if seed is None:
        seed = config.seed
    if trials < 1:
        raise ValueError(f"trials {trials} < 1")
    if seed < 0:
        raise ValueError(f"seed {seed} must be non-negative")
    if not config.cycle.obj.is_present and config.cycle.pbs.crosstalk > 0.0:
        raise ValueError("no-object runs with crosstalk require exact propagation")

    n = config.n_cycles
    absorb, stop, p_h_final = _branch_table(config)
    draws = n + 1

    n_abs = 0
    n_stop = 0
    n_alive = 0
    n_exit_h = 0
    for start in range(0, trials, _MC_BLOCK):
        block = min(_MC_BLOCK, trials - start)
        u = np.empty((block, draws))
        for j in range(block):
            u[j] = np.random.default_rng((seed, start + j)).random(draws)
        stopped = u[:, :n] < stop
        any_stop = stopped.any(axis=1)
        first = np.argmax(stopped, axis=1)
        u_first = np.take_along_axis(u[:, :n], first[:, None], axis=1).ravel()
        absorbed = any_stop & (u_first < absorb[first])
        survivors = ~any_stop
        n_abs += int(absorbed.sum())
        n_stop += int(any_stop.sum())
        n_alive += int(survivors.sum())
        n_exit_h += int((survivors & (u[:, n] < p_h_final)).sum())

    t = float(trials)
    p_abs = n_abs / t
    p_loss = (n_stop - n_abs) / t
    p_h = n_exit_h / t
    p_v = (n_alive - n_exit_h) / t
    if config.cycle.obj.is_present:
        p_qi, p_wrong = p_h, p_v
    else:
        p_qi, p_wrong = p_v, p_h

    def se(p: float) -> float:
        return math.sqrt(p * (1.0 - p) / t)

    err = LedgerStdErr(se(p_qi), se(p_abs), se(p_loss), se(p_wrong))
    return _outcome(p_qi, p_abs, p_loss, p_wrong, config, err)


def noise_run(config: SystemConfig) -> float:
    """Probability that an empty interferometer signals an object.

    Runs the exact propagation with no object and returns p_wrong, the
    probability the photon exits flagging an object that is not there.
    Crosstalk, unequal arm losses and a nonzero interferometer phase all
    contribute; an ideal lossless system returns zero.
    """
    if config.cycle.obj.is_present:
        raise ValueError("noise_run requires an absent object")
    return run_exact(config).p_wrong
