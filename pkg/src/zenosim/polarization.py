"""Jones-calculus primitives for a recycled polarization interferometer.

A single photon is described by a pair of complex amplitudes (a_h, a_v) in
the horizontal/vertical basis.  States are sub-normalized: the squared norm
|a_h|^2 + |a_v|^2 is the probability that the photon has survived the optics
applied so far, so every lossy element simply shrinks the norm and the
discarded probability is accounted for by the caller.

Conventions fixed here and relied on everywhere else:

* rotate() uses the matrix [[cos, -sin], [sin, cos]], so rotating H by
  pi/2 gives V exactly.
* A polarizing beamsplitter transmits H and reflects V.  Crosstalk is the
  intensity fraction x that ends up in the wrong port; the leaked amplitude
  is sqrt(x) times a configurable unit phase (default 1, i.e. phase 0).
* Recombination of the two arms back through the same beamsplitter is
  unitary.  The completion signs are chosen so that the recycled port picks
  up the horizontal leakage destructively and the vertical leakage
  constructively, reflecting the opposite coating phase shifts of the two
  polarizations.  With that choice an empty, lossless interferometer leaks
  a little H into the rejected port each pass, which is what makes
  crosstalk observable as noise instead of cancelling exactly.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

# Construction tolerance: sub-normalization may overshoot 1 by accumulated
# rounding but never by more than this.
NORM_SLACK = 1e-12


@dataclass(frozen=True)
class JonesState:
    """Sub-normalized polarization amplitudes of a single photon."""

    a_h: complex
    a_v: complex

    def __post_init__(self) -> None:
        n = self.norm_sq
        if not math.isfinite(n):
            raise ValueError("amplitudes must be finite")
        if n > 1.0 + NORM_SLACK:
            raise ValueError(f"squared norm {n} exceeds 1")

    @property
    def norm_sq(self) -> float:
        return abs(self.a_h) ** 2 + abs(self.a_v) ** 2

    @classmethod
    def horizontal(cls) -> "JonesState":
        return cls(1.0 + 0.0j, 0.0j)

    @classmethod
    def vertical(cls) -> "JonesState":
        return cls(0.0j, 1.0 + 0.0j)

    @classmethod
    def zero(cls) -> "JonesState":
        return cls(0.0j, 0.0j)


class ObjectKind(enum.Enum):
    ABSENT = "absent"
    OPAQUE = "opaque"
    PARTIAL = "partial"


@dataclass(frozen=True)
class ObjectSpec:
    """What sits in the vertical arm: nothing, a perfect absorber, or a
    semitransparent absorber with amplitude transmission t and phase shift."""

    kind: ObjectKind
    amplitude_t: float = 0.0
    phase_shift: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.amplitude_t <= 1.0:
            raise ValueError(f"object amplitude transmission {self.amplitude_t} outside [0, 1]")

    @classmethod
    def absent(cls) -> "ObjectSpec":
        return cls(ObjectKind.ABSENT)

    @classmethod
    def opaque(cls) -> "ObjectSpec":
        return cls(ObjectKind.OPAQUE)

    @classmethod
    def partial(cls, amplitude_t: float, phase_shift: float = 0.0) -> "ObjectSpec":
        return cls(ObjectKind.PARTIAL, amplitude_t, phase_shift)

    @property
    def is_present(self) -> bool:
        return self.kind is not ObjectKind.ABSENT


@dataclass(frozen=True)
class PbsModel:
    """Polarizing beamsplitter with symmetric intensity crosstalk.

    crosstalk is the intensity fraction routed to the wrong port, identical
    for both polarizations.  trans_leak_phase is the phase of V amplitude
    leaking into the transmitted port, refl_leak_phase the phase of H
    leaking into the reflected port.
    """

    crosstalk: float = 0.0
    trans_leak_phase: float = 0.0
    refl_leak_phase: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.crosstalk < 0.5:
            raise ValueError(f"crosstalk {self.crosstalk} outside [0, 0.5)")


IDEAL_PBS = PbsModel()


def rotate(state: JonesState, dtheta: float) -> JonesState:
    """Rotate the polarization by dtheta.  Norm-preserving for any angle."""
    c, s = math.cos(dtheta), math.sin(dtheta)
    return JonesState(c * state.a_h - s * state.a_v,
                      s * state.a_h + c * state.a_v)


def pbs_split(state: JonesState, pbs: PbsModel = IDEAL_PBS) -> tuple[JonesState, JonesState]:
    """Split a state into (transmitted, reflected) arm states.

    The transmitted port carries sqrt(1-x) of the H amplitude plus the
    sqrt(x) leakage of V; the reflected port carries sqrt(1-x) of V plus
    the sqrt(x) leakage of H.  Total probability is conserved exactly for
    any crosstalk and any leak phases.
    """
    x = pbs.crosstalk
    keep = math.sqrt(1.0 - x)
    leak = math.sqrt(x)
    lt = leak * cmath.exp(1j * pbs.trans_leak_phase)
    lr = leak * cmath.exp(1j * pbs.refl_leak_phase)
    transmitted = JonesState(keep * state.a_h, lt * state.a_v)
    reflected = JonesState(lr * state.a_h, keep * state.a_v)
    return transmitted, reflected


def pbs_recombine(empty_arm: JonesState, object_arm: JonesState,
                  pbs: PbsModel = IDEAL_PBS,
                  relative_phase: float = 0.0) -> tuple[JonesState, JonesState]:
    """Recombine the two arm states through the beamsplitter.

    relative_phase is the interferometer phase picked up by the object arm.
    Returns (recycled, rejected): the recycled state continues to the next
    cycle, the rejected state leaves through the fourth port and is lost.

    Per polarization the map from (empty, object) arm amplitudes to
    (recycled, rejected) is unitary:

        H: [[ sqrt(1-x), -sqrt(x) e^{+i chi'} ],
            [ sqrt(x) e^{-i chi'},  sqrt(1-x) ]]
        V: [[ sqrt(x) e^{+i chi},   sqrt(1-x) ],
            [ sqrt(1-x), -sqrt(x) e^{-i chi}  ]]

    so the summed probability of the two outputs equals the summed
    probability of the two inputs exactly.  With x = 0 this reduces to
    recycled = (empty.a_h, e^{i phase} object.a_v).
    """
    x = pbs.crosstalk
    keep = math.sqrt(1.0 - x)
    leak = math.sqrt(x)
    pt = cmath.exp(1j * pbs.trans_leak_phase)
    pr = cmath.exp(1j * pbs.refl_leak_phase)
    ph = cmath.exp(1j * relative_phase)
    obj_h = ph * object_arm.a_h
    obj_v = ph * object_arm.a_v
    recycled = JonesState(
        keep * empty_arm.a_h - leak * pr * obj_h,
        leak * pt * empty_arm.a_v + keep * obj_v,
    )
    rejected = JonesState(
        leak * pr.conjugate() * empty_arm.a_h + keep * obj_h,
        keep * empty_arm.a_v - leak * pt.conjugate() * obj_v,
    )
    return recycled, rejected


def attenuate(state: JonesState, transmission: float) -> JonesState:
    """Scale both amplitudes by sqrt(transmission)."""
    if not 0.0 <= transmission <= 1.0:
        raise ValueError(f"transmission {transmission} outside [0, 1]")
    a = math.sqrt(transmission)
    return JonesState(a * state.a_h, a * state.a_v)


def object_interact(state: JonesState, obj: ObjectSpec) -> tuple[JonesState, float]:
    """Apply the object to an arm state.

    Returns (survivor, absorbed probability).  An absent object passes the
    state through.  Opaque and partial objects share one code path, opaque
    being amplitude transmission exactly zero, so Partial(0) and Opaque
    produce bit-identical results.
    """
    if obj.kind is ObjectKind.ABSENT:
        return state, 0.0
    t = 0.0 if obj.kind is ObjectKind.OPAQUE else obj.amplitude_t
    factor = t * cmath.exp(1j * obj.phase_shift)
    survivor = JonesState(factor * state.a_h, factor * state.a_v)
    absorbed = (1.0 - t * t) * state.norm_sq
    return survivor, absorbed
