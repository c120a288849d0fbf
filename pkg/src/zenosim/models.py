"""Closed-form efficiency models for interrogation with and without loss.

The interrogation figure of merit throughout is

    eta = P(QI) / (P(QI) + P(abs))

the fraction of conclusive object detections that absorbed no photon.
This module gives the ideal N-cycle limit, the lossy closed form, the
detector-efficiency correction, and the two single-shot reference schemes
(a two-beamsplitter interferometer and an absorptive cavity on resonance).

All N-th powers are evaluated as exp(N log ...) so that large cycle counts
neither underflow nor lose the strict monotonicity of the ideal curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

# Below this, the geometric-series denominator in the lossy absorption sum
# is replaced by its q -> 1 limit.
_DENOM_LIMIT = 1e-12


class LosslessSplit(NamedTuple):
    p_qi: float
    p_abs: float


class ClosedForm(NamedTuple):
    p_qi: float
    p_abs: float
    eta: float


@dataclass(frozen=True)
class LossyModelParams:
    """Per-cycle transmissions seen by the cycling photon.

    t_empty multiplies the horizontal (empty) arm once per cycle, t_obj is
    the object-arm optics transmission in front of the object, and t_rec is
    the recycling leg (wave plates and recycling mirror), seen N-1 times
    because the photon is switched out instead of recycled after the last
    cycle.
    """

    n_cycles: int
    t_empty: float = 1.0
    t_obj: float = 1.0
    t_rec: float = 1.0

    def __post_init__(self) -> None:
        if self.n_cycles < 1:
            raise ValueError(f"n_cycles {self.n_cycles} < 1")
        for name in ("t_empty", "t_obj", "t_rec"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} {v} outside [0, 1]")

    @classmethod
    def with_recycling_optics(cls, n_cycles: int, t_empty: float, t_obj: float,
                              t_qwp: float, r_mirror: float) -> "LossyModelParams":
        """Build params from the recycling-leg components: the quarter-wave
        plate is traversed twice per cycle, so t_rec = t_qwp**2 * r_mirror."""
        return cls(n_cycles, t_empty, t_obj, t_qwp * t_qwp * r_mirror)


def _pow(base: float, exponent: int) -> float:
    # exp(n log b), with the b = 0 corner handled explicitly
    if exponent == 0:
        return 1.0
    if base == 0.0:
        return 0.0
    return math.exp(exponent * math.log(base))


def lossless(n_cycles: int) -> LosslessSplit:
    """Ideal N-cycle interrogation of an opaque object.

    P(QI) = cos^{2N}(pi/2N) and every photon that is not interaction-free
    detected is absorbed, so P(abs) = 1 - P(QI).
    """
    if n_cycles < 1:
        raise ValueError(f"n_cycles {n_cycles} < 1")
    c = math.cos(math.pi / (2.0 * n_cycles))
    p_qi = _pow(c * c, n_cycles)
    return LosslessSplit(p_qi, 1.0 - p_qi)


def lossless_asymptotic(n_cycles: int) -> LosslessSplit:
    """Large-N expansion of lossless(): P(abs) ~ pi^2 / 4N."""
    if n_cycles < 1:
        raise ValueError(f"n_cycles {n_cycles} < 1")
    p_abs = math.pi * math.pi / (4.0 * n_cycles)
    return LosslessSplit(1.0 - p_abs, p_abs)


def lossy_closed_form(params: LossyModelParams) -> ClosedForm:
    """Closed-form ledger of the lossy N-cycle interrogation.

    With dtheta = pi/2N and the per-cycle transmissions of params,

        P(QI)  = (t_empty cos^2 dtheta)^N * t_rec^(N-1)
        P(abs) = t_obj sin^2 dtheta * (1 - q^N) / (1 - q),
                 q = t_empty t_rec cos^2 dtheta

    The absorption sum is a geometric series over the cycle at which the
    photon reaches the object; when 1 - q falls below 1e-12 the quotient is
    replaced by its limit N.  The denominator is computed as
    (1 - t_empty t_rec) + t_empty t_rec sin^2 dtheta, which is exact where
    direct cancellation of 1 - q would lose digits.
    """
    n = params.n_cycles
    dtheta = math.pi / (2.0 * n)
    s = math.sin(dtheta)
    c = math.cos(dtheta)
    c2 = c * c
    s2 = s * s

    p_qi = _pow(params.t_empty * c2, n) * _pow(params.t_rec, n - 1)

    t_cycle = params.t_empty * params.t_rec
    q = t_cycle * c2
    denom = (1.0 - t_cycle) + t_cycle * s2
    if denom < _DENOM_LIMIT:
        p_abs = n * params.t_obj * s2
    else:
        bracket = 1.0 if q == 0.0 else -math.expm1(n * math.log(q))
        p_abs = params.t_obj * s2 * bracket / denom

    total = p_qi + p_abs
    eta = p_qi / total if total > 0.0 else math.nan
    return ClosedForm(p_qi, p_abs, eta)


def efficiency(p_qi: float, p_abs: float) -> float:
    """Conclusive-detection efficiency p_qi / (p_qi + p_abs)."""
    if p_qi < 0.0 or p_abs < 0.0:
        raise ValueError("probabilities must be non-negative")
    total = p_qi + p_abs
    if total == 0.0:
        raise ValueError("efficiency undefined when both probabilities are zero")
    return p_qi / total


def detector_adjust(eta_obs: float, epsilon: float) -> float:
    """Efficiency that an ideal detector would have observed.

    A detector of efficiency epsilon misses a fraction of the would-be
    interaction-free detections, and each miss sends the photon back into
    the absorbed ledger on a re-try, so

        eta_adj = eta_obs * epsilon / (1 - eta_obs (1 - epsilon))
    """
    if not 0.0 <= eta_obs <= 1.0:
        raise ValueError(f"eta_obs {eta_obs} outside [0, 1]")
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon {epsilon} outside (0, 1]")
    return eta_obs * epsilon / (1.0 - eta_obs * (1.0 - epsilon))


def detector_inverse(eta_adj: float, epsilon: float) -> float:
    """Inverse of detector_adjust: the efficiency a detector of efficiency
    epsilon would report for a system whose adjusted efficiency is eta_adj."""
    if not 0.0 <= eta_adj <= 1.0:
        raise ValueError(f"eta_adj {eta_adj} outside [0, 1]")
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon {epsilon} outside (0, 1]")
    return eta_adj / (epsilon + eta_adj * (1.0 - epsilon))


def ev_efficiency(t1: float) -> float:
    """Best efficiency of a single-pass two-beamsplitter interrogation.

    The photon enters a Mach-Zehnder interferometer whose first
    beamsplitter sends intensity t1 into the object-free arm and 1 - t1
    into the object arm.  The second beamsplitter is chosen so that one
    output port is dark when no object is present: writing beta for the
    free-arm-to-dark-port intensity coupling, the dark condition
    t1 * beta = (1 - t1)(1 - beta) gives beta = 1 - t1.  With an opaque
    object only the free-arm amplitude reaches that port, so

        P(QI)  = t1 * (1 - t1)      (photon in free arm, exits dark port)
        P(abs) = 1 - t1             (photon in object arm)

        eta = t1 (1 - t1) / (t1 (1 - t1) + (1 - t1)) = t1 / (1 + t1)

    The common factor 1 - t1 cancels, so the function is evaluated as
    t1 / (1 + t1); the value at t1 = 1 is the supremum 1/2, approached but
    never exceeded at finite count rate.
    """
    if not 0.0 <= t1 <= 1.0:
        raise ValueError(f"t1 {t1} outside [0, 1]")
    return t1 / (1.0 + t1)


def ev_probabilities(t1: float) -> ClosedForm:
    """Full ledger of the two-beamsplitter scheme at first-splitter
    transmission t1: P(QI) = t1 (1 - t1), P(abs) = 1 - t1."""
    if not 0.0 <= t1 <= 1.0:
        raise ValueError(f"t1 {t1} outside [0, 1]")
    return ClosedForm(t1 * (1.0 - t1), 1.0 - t1, ev_efficiency(t1))


def resonance_efficiency(r_mirror: float) -> ClosedForm:
    """Interrogation with an absorptive cavity interrogated on resonance.

    An object inside the cavity spoils the resonance and the probe photon
    reflects with probability R; without the object it enters the cavity
    and is lost.  So P(QI) = R, P(abs) = 1 - R and eta = R, approaching
    unity directly with the mirror reflectivity.
    """
    if not 0.0 <= r_mirror <= 1.0:
        raise ValueError(f"r_mirror {r_mirror} outside [0, 1]")
    return ClosedForm(r_mirror, 1.0 - r_mirror, r_mirror)


def noise_threshold_n(crosstalk: float) -> float:
    """Cycle count at which the per-cycle reflection probability
    sin^2(pi/2N) drops to the crosstalk level: N = pi / (2 asin(sqrt(x))).

    Beyond this N, leakage amplitudes rival the rotation amplitude and the
    no-object evolution degrades noticeably.
    """
    if not 0.0 < crosstalk <= 1.0:
        raise ValueError(f"crosstalk {crosstalk} outside (0, 1]")
    return math.pi / (2.0 * math.asin(math.sqrt(crosstalk)))
