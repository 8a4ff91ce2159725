"""symtoric: exact verification of involution characters on Hamiltonian
torus data at desk scale.

Everything is computed in exact rational arithmetic: polytope combinatorics
and their normal fans, graded traces of fan automorphisms on cohomology via
the Stanley-Reisner presentation, the character identities between a space
and its reduction, equivariant Morse counting series, and the flag-manifold
example.
"""

from .characters import (
    Character,
    MainIdentityReport,
    StanleyReport,
    bt_theta_character,
    chi_from_manifold,
    chi_from_reduction,
    equivariant_split,
    solve_reduction_signature,
    stanley_check,
    verify_main_identity,
)
from .flag import (
    FlagSpec,
    check_moment_compat,
    coinvariant_dims,
    molien_trace,
    predict_reduction_signature,
    theta_trace,
)
from .morse import (
    CoefficientSystem,
    CriticalComponent,
    PerfectionReport,
    UnpairedComponentError,
    ZeroLevel,
    counting_series,
    full_torus_critical_data,
    perfection_check,
)
from .polytope import (
    AffineInvolution,
    DegenerateError,
    FaceLattice,
    HPolytope,
    IncompatibleInvolutionError,
    NotSimpleError,
    PolytopeError,
    RegularValueReport,
    RegularValueViolation,
    SliceNotSimpleError,
    SubtorusSpec,
    UnboundedError,
    check_regular_value,
    slice_reduce,
)
from .ratfun import (
    NotDivisibleError,
    PoleAtZeroError,
    Poly,
    RationalFunction,
    exact_divide,
    poly_gcd,
    series_expand,
)
from .toric import (
    FanAutomorphism,
    GradedTrace,
    IncompleteFanError,
    InvalidAutomorphismError,
    NonIntegralSplitError,
    SignedBettiTable,
    SimplicialFan,
    graded_trace,
    signed_betti,
    sr_cohomology_dims,
)

__version__ = "0.1.0"
