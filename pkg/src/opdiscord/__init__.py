"""Operational discord toolkit for finite-dimensional causal probabilistic theories."""

from .config import SearchConfig
from .discord import (
    DiscordResult,
    EntropyReport,
    NullDiscordDecomposition,
    check_vonneumann_fixed_point,
    conditional_J,
    discord,
    distance_to_family,
    find_fixed_point_basis,
    is_null_discord,
    make_null_discord_state,
    mutual_information,
    quantum_discord_entropy,
)
from .discrimination import (
    DiscriminationResult,
    DistinguishabilityCertificate,
    are_perfectly_distinguishable,
    maximal_distinguishable_pure_families,
    min_error_discrimination,
    operational_distance,
)
from .errors import (
    ConsistencyError,
    InvalidDimensionError,
    InvalidPolygonError,
    InvalidStateError,
    ResourceBudgetError,
    SystemMismatchError,
    UnsupportedBackendError,
)
from .objective import (
    ObjectiveInfoReport,
    is_nondisturbing,
    is_repeatable,
    objective_info_report,
)
from .simpliciality import (
    SimplexReport,
    TheoremRow,
    WitnessReport,
    find_witness,
    is_simplicial,
    theorem3_report,
    theorem3_rows_to_csv,
)
from .theory import (
    EffectVec,
    StateVec,
    TestModel,
    TheoryModel,
    Transformation,
    compose,
    compose_theories,
    evaluate,
    is_pure,
    make_classical,
    make_gbit,
    make_polygon,
    make_quantum,
    marginalize,
    state_in_cone,
    validate_effect,
    validate_state,
    validate_transformation,
)

__version__ = "0.1.0"
