"""Desk-scale laboratory for finite-time blowup of a reduced channel flow.

The package simulates the 1-D integro-differential evolution of the wall
strain on a frozen vertical line of a thin-channel ideal flow, monitors the
comparison lower bound that forces blowup, property-checks the convexity
machinery behind it, traces characteristics, and verifies the Galilean
frame change on manufactured 2-D solutions.
"""

from .characteristics import CharacteristicPath, trace_reduced_characteristic
from .errors import (
    ConstraintViolationError,
    CounterexampleError,
    GridError,
    HydroblowError,
    InterpolationFailureError,
    NoBlowupEvidenceError,
    OutOfDomainError,
    ProfileError,
    PropertyViolationError,
    UsageError,
)
from .fields2d import (
    CharacteristicOdeReport,
    Field2D,
    GalileanShift,
    galilean_transform,
    hydrostatic_residual,
    shear_flow_field,
    strain_field_from_sim,
    verify_characteristic_ode,
)
from .grid import (
    GridSpec,
    Profile,
    build_grid,
    cubic_interp_uniform,
    cumulative_integral,
    derivative_y,
    integrate,
)
from .integrator import (
    BlowupEstimate,
    DenseOutput,
    SimConfig,
    SimResult,
    Termination,
    estimate_blowup_time,
    riccati_lower_bound,
    simulate,
)
from .lemmas import (
    FuzzSummary,
    HypothesisReport,
    LemmaReport,
    check_convexity_lemma,
    fuzz_convexity_lemma,
    make_initial_profile,
    validate_hypotheses,
)
from .reduced import (
    DiagnosticsRow,
    ReducedState,
    diagnostics_of,
    pressure_curvature,
    reconstruct_velocity,
    rhs,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupEstimate",
    "CharacteristicOdeReport",
    "CharacteristicPath",
    "ConstraintViolationError",
    "CounterexampleError",
    "DenseOutput",
    "DiagnosticsRow",
    "Field2D",
    "FuzzSummary",
    "GalileanShift",
    "GridError",
    "GridSpec",
    "HydroblowError",
    "HypothesisReport",
    "InterpolationFailureError",
    "LemmaReport",
    "NoBlowupEvidenceError",
    "OutOfDomainError",
    "Profile",
    "ProfileError",
    "PropertyViolationError",
    "ReducedState",
    "SimConfig",
    "SimResult",
    "Termination",
    "UsageError",
    "build_grid",
    "check_convexity_lemma",
    "cubic_interp_uniform",
    "cumulative_integral",
    "derivative_y",
    "diagnostics_of",
    "estimate_blowup_time",
    "fuzz_convexity_lemma",
    "galilean_transform",
    "hydrostatic_residual",
    "integrate",
    "make_initial_profile",
    "pressure_curvature",
    "reconstruct_velocity",
    "rhs",
    "riccati_lower_bound",
    "shear_flow_field",
    "simulate",
    "strain_field_from_sim",
    "trace_reduced_characteristic",
    "validate_hypotheses",
    "verify_characteristic_ode",
]
