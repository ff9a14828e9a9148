"""Exactly solvable 1-D quantum potentials built from third-order
hypergeometric-type operators: closed-form potentials, bound states,
wavefunctions, and reflection data, verified against a brute-force solver.
"""

from .errors import (
    BoxTooSmallError,
    ChannelClosedError,
    DegenerateParameterError,
    DivergenceError,
    HyperpotError,
    InvalidParameterError,
    NonConvergenceError,
    PathSingularityError,
    PoleError,
)
from .params import (
    CaseKind,
    ConfluentFirstParams,
    ConfluentSecondParams,
    InvariantParams,
    RawParams,
    classify_case,
    derive_dependent,
    hyp_data,
    invariant_from_raw,
)
from .potential import (
    GridMapping,
    PotentialCoefficients,
    build_mapping,
    coefficients,
    evaluate_U,
    liouville_reconstruct,
    schwartzian_term,
    weight_w,
    x_of_z,
    z_of_x,
)
from .scattering import (
    ReflectionData,
    reflect_confluent_first,
    reflect_confluent_second,
    reflect_full,
    reflection_probability_full,
)
from .spectrum import (
    BoundState,
    Branch,
    RegionFlags,
    SpectrumResult,
    classify,
    g_window,
    solve_bound_states,
)
from .wavefunction import (
    AsymptoticCoefficients,
    Psi,
    asymptotic_coefficients,
    ground_state_psi,
    psi,
    psi_contiguous,
)

__version__ = "0.1.0"
