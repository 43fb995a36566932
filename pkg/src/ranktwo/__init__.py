"""Concurrence, entanglement and Holevo capacity of rank-two channels.

The package computes the concurrence of a completely positive map with
two Kraus operators, the induced entanglement and Holevo quantities for
one-qubit outputs, and the geometry of constant-concurrence sets in the
Bloch ball.  Closed-form routes are cross-checked against a stochastic
convex-roof minimizer that shares nothing with them but the channel.
"""

from ._kernels import backend_name
from .antilinear import (
    AntilinearOp,
    compose_antilinear,
    conj_sandwich,
    polar_conjugation,
    polar_modulus,
    sandwich_antilinear,
    spin_flip,
    takagi,
    wootters_conjugation,
)
from .channel import (
    DualMap,
    QubitCanonicalParams,
    RankTwoChannel,
    canonical_qubit,
    channel_from_dict,
    channel_to_dict,
    load_channel,
    partial_trace_two_qubit,
    phase_damping,
    save_channel,
    symmetric_qubit,
)
from .concurrence import (
    ConcurrenceBound,
    ConcurrenceReport,
    concurrence,
    concurrence_degenerate,
    lower_bound,
    max_concurrence,
    pair_concurrence,
    separable_vectors,
)
from .entanglement import (
    CapacityResult,
    EntanglementReport,
    bloch_affine,
    capacity_grid,
    entanglement,
    holevo_capacity,
    holevo_star,
    scaled_entropy,
)
from .errors import (
    DegenerateChannelError,
    DimensionMismatchError,
    NegativeArgumentError,
    NotCanonicalError,
    NotDegenerateError,
    NotHermitianError,
    NotPSDError,
    NotTracePreservingError,
    OutOfRangeError,
    RankTwoError,
    SpecFormatError,
    WrongLengthError,
)
from .geometry import (
    ConstantConcurrenceLine,
    constant_line,
    cylinder_samples,
    input_conjugation,
    output_conjugation,
    reflect,
    separable_images,
    write_samples_csv,
)
from .linalg import bloch_join, bloch_split, eta, pauli, sqrt_psd, state_from_bloch
from .roof import FlatnessReport, RoofResult, flatness_check, roof_min
from .verify import CheckResult, VerifyReport, run_battery

__version__ = "0.1.0"

__all__ = [
    "AntilinearOp",
    "CapacityResult",
    "CheckResult",
    "ConcurrenceBound",
    "ConcurrenceReport",
    "ConstantConcurrenceLine",
    "DegenerateChannelError",
    "DimensionMismatchError",
    "DualMap",
    "EntanglementReport",
    "FlatnessReport",
    "NegativeArgumentError",
    "NotCanonicalError",
    "NotDegenerateError",
    "NotHermitianError",
    "NotPSDError",
    "NotTracePreservingError",
    "OutOfRangeError",
    "QubitCanonicalParams",
    "RankTwoChannel",
    "RankTwoError",
    "RoofResult",
    "SpecFormatError",
    "VerifyReport",
    "WrongLengthError",
    "backend_name",
    "bloch_affine",
    "bloch_join",
    "bloch_split",
    "canonical_qubit",
    "capacity_grid",
    "channel_from_dict",
    "channel_to_dict",
    "compose_antilinear",
    "concurrence",
    "concurrence_degenerate",
    "conj_sandwich",
    "constant_line",
    "cylinder_samples",
    "entanglement",
    "eta",
    "flatness_check",
    "holevo_capacity",
    "holevo_star",
    "input_conjugation",
    "load_channel",
    "lower_bound",
    "max_concurrence",
    "output_conjugation",
    "pair_concurrence",
    "partial_trace_two_qubit",
    "pauli",
    "phase_damping",
    "polar_conjugation",
    "polar_modulus",
    "reflect",
    "roof_min",
    "run_battery",
    "sandwich_antilinear",
    "save_channel",
    "scaled_entropy",
    "separable_images",
    "separable_vectors",
    "spin_flip",
    "sqrt_psd",
    "state_from_bloch",
    "symmetric_qubit",
    "takagi",
    "wootters_conjugation",
]
