"""Truncated two-mode Fock-space toolkit for a time-dependent noncommuting
plane: deformed operator frames, coherent/squeezed state families, and
uncertainty-saturation checks backed by an independent minimization oracle.
"""

from .deformation import Branch, DeformationParams, Kind, f_value, flat_limit_residual
from .errors import (
    ConfigError,
    DeformationVanishes,
    DisplacementTooLarge,
    GeneratorTooLarge,
    InvalidDimension,
    NhfockError,
    NoConvergence,
    NonHermitianOperator,
    SqueezeTooLarge,
    TruncationOverflow,
    ZeroState,
)
from .fock_core import (
    DEFAULT_TRUNCATION,
    FockOperator,
    FockState,
    Truncation,
    apply,
    apply_exp,
    build_ladder,
    commutator,
    commutator_low,
    embed_mode,
    inner,
    low_block,
    matrix_exponential,
    normalize,
    project_low,
    vacuum_state,
)
from .oracle import MinimizeConfig, MinimizeResult, fd_gradient_check, minimize_product
from .phase_space import (
    Caps,
    DEFAULT_CAPS,
    PhaseFrame,
    bogoliubov_frame,
    build_phase_frame,
    canonical_frame,
    circular_ladders,
    d_e_frame,
    deformed_positions,
    displacement_unitary,
    mode_ladders,
    mode_mix_unitary,
    squeeze_unitary,
    two_mode_squeeze_unitary,
)
from .states import (
    StateRequest,
    b_vacuum,
    coherent_state,
    fock_basis_state,
    pm_basis_state,
    squeezed_coherent,
    x1p1_saturating_state,
    x2p2_saturating_state,
    xx_saturating_state,
    xx_saturating_state_via_b,
)
from .uncertainty import (
    PairRecord,
    SaturationReport,
    dispersion,
    expectation,
    heisenberg_bound,
    saturation_condition_residual,
    saturation_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
