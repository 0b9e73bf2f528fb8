"""Finite semigroups, classifying-space homology and group completions."""

from .completion import (
    CosetCapExceeded,
    FiniteGroupTable,
    GroupPresentation,
    abelianization,
    group_completion,
    is_simply_connected,
    presentation,
    todd_coxeter,
)
from .constructions import (
    MinimalIdealNotRectangular,
    MooreSemigroupLayout,
    cyclic_group,
    moore_semigroup,
    rectangular_band,
    suspension_monoid,
    trivial_monoid,
    wedge,
    wedge_monoid,
)
from .expr import ParseError, parse
from .homology import (
    ChainComplex,
    DegreeTooLarge,
    HomologyGroup,
    InsufficientDegrees,
    bar_complex,
    homology,
    homology_profile,
    rational_betti,
)
from .semigroup import (
    FiniteSemigroup,
    IdealData,
    MaximalSubgroupData,
    NonAssociative,
    NotAMonoid,
    NotAnIdeal,
    NotIdempotent,
    PrincipalSeries,
    ShapeError,
    adjoin_identity,
    adjoin_zero,
    direct_product,
    idempotents,
    is_aperiodic,
    is_rectangular_band,
    is_regular,
    maximal_subgroup,
    minimal_ideal,
    principal_series,
    rees_quotient,
    validate,
)
from .snf import SNFResult, SparseMatrix, smith_normal_form
from .theorems import (
    CheckReport,
    ExactnessFailure,
    ResolutionData,
    TensoredComplex,
    build_resolution,
    check_regular_vanishing,
    check_suspension_shift,
    check_wedge_additivity,
    homology_from_resolution,
    tensored_complex,
    verify_exactness,
)

__version__ = "0.1.0"
