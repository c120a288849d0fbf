"""Simulation and design toolkit for high-efficiency quantum interrogation.

A single photon cycles through a recycled polarization interferometer whose
rotation per cycle is a small step toward the orthogonal polarization.  An
opaque object in one arm repeatedly projects the photon back onto its initial
polarization, so after N cycles a detection in the unrotated state reveals the
object with vanishing absorbed probability.  The package propagates the exact
polarization amplitudes cycle by cycle, evaluates the matching closed-form
loss model, runs Monte Carlo photon-counting experiments, and optimizes or
fits the optical parameters.
"""

from .config import ConfigError, format_config, parse_config, read_config
from .curves import (
    CURVE_HEADER,
    MC_HEADER,
    NOISE_HEADER,
    CurveRow,
    format_number,
    mc_to_csv,
    noise_curve,
    noise_to_csv,
    outcome_row,
    rows_to_csv,
    sweep,
)
from .design import (
    ComponentSpecs,
    FeasibilityRow,
    FitResult,
    LossBudget,
    OptimalCycles,
    feasibility_scan,
    fit_losses,
    fit_model_eta,
    optimal_cycles,
    specs_to_params,
)
from .engine import (
    CycleParams,
    LedgerStdErr,
    RunOutcome,
    SystemConfig,
    default_rotation_step,
    noise_run,
    run_cycle,
    run_exact,
    run_monte_carlo,
)
from .models import (
    ClosedForm,
    LosslessSplit,
    LossyModelParams,
    detector_adjust,
    detector_inverse,
    efficiency,
    ev_efficiency,
    ev_probabilities,
    lossless,
    lossless_asymptotic,
    lossy_closed_form,
    noise_threshold_n,
    resonance_efficiency,
)
from .polarization import (
    IDEAL_PBS,
    JonesState,
    ObjectKind,
    ObjectSpec,
    PbsModel,
    attenuate,
    object_interact,
    pbs_recombine,
    pbs_split,
    rotate,
)

__version__ = "0.1.0"

__all__ = [
    "CURVE_HEADER",
    "ClosedForm",
    "ComponentSpecs",
    "ConfigError",
    "CurveRow",
    "CycleParams",
    "FeasibilityRow",
    "FitResult",
    "IDEAL_PBS",
    "JonesState",
    "LedgerStdErr",
    "LossBudget",
    "LosslessSplit",
    "LossyModelParams",
    "MC_HEADER",
    "NOISE_HEADER",
    "ObjectKind",
    "ObjectSpec",
    "OptimalCycles",
    "PbsModel",
    "RunOutcome",
    "SystemConfig",
    "attenuate",
    "default_rotation_step",
    "detector_adjust",
    "detector_inverse",
    "efficiency",
    "ev_efficiency",
    "ev_probabilities",
    "feasibility_scan",
    "fit_losses",
    "fit_model_eta",
    "format_config",
    "format_number",
    "lossless",
    "lossless_asymptotic",
    "lossy_closed_form",
    "mc_to_csv",
    "noise_curve",
    "noise_run",
    "noise_threshold_n",
    "noise_to_csv",
    "object_interact",
    "optimal_cycles",
    "outcome_row",
    "parse_config",
    "pbs_recombine",
    "pbs_split",
    "read_config",
    "resonance_efficiency",
    "rotate",
    "rows_to_csv",
    "run_cycle",
    "run_exact",
    "run_monte_carlo",
    "specs_to_params",
    "sweep",
    "__version__",
]
