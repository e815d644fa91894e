"""Exact computations on polygon spaces: chambers, volumes, cohomology.

Given an n-vector of positive rational side lengths r, this package
identifies the chamber of r in the wall arrangement ε_I(r) = 0, computes the
chamber's Duistermaat-Heckman volume polynomial exactly, and derives Betti
numbers and a presentation of the cohomology ring of the polygon space M(r),
cross-validated by an independent wall-crossing recursion.
"""

from polygonspace.apolar import (
    ApolarPresentation,
    BaseNotInSet,
    CohomologyClass,
    DegreeOutOfRange,
    EmptyChamber,
    annihilator_generators,
    betti_numbers,
    catalecticant_rank,
    is_zero_class,
    normal_bundle_chern,
    pd_bases_agree,
    pd_class,
    poincare_pairing,
    presentation,
)
from polygonspace.chambers import (
    BudgetExceeded,
    ChamberGraph,
    ChamberNode,
    ChamberSignature,
    DegenerateWall,
    IndexSet,
    LengthVector,
    NonGenericSegment,
    NotAFacet,
    SingularLength,
    Wall,
    adjacent_representative,
    canonical_form,
    enumerate_chambers,
    epsilon,
    external_representative,
    is_empty,
    is_external,
    is_generic,
    long_sets,
    nudge_within_chamber,
    representative,
    segment_crossings,
    signature,
)
from polygonspace.ratpoly import (
    MultiIndex,
    MultiPoly,
    format_rational,
    parse_rational,
)
from polygonspace.volume import (
    AffineIndexUsed,
    Convention,
    NotAdjacent,
    VolumePolynomial,
    WrongTotalDegree,
    derivative_polynomial,
    intersection_number,
    volume_polynomial,
    volume_value,
    wall_jump,
)
from polygonspace.wallcross import (
    BadPartition,
    ChamberValidation,
    DecompositionClass,
    EmptyTarget,
    WallCrossingReport,
    betti_delta,
    betti_via_path,
    crossing_report,
    validate_chamber,
)

__version__ = "0.1.0"

__all__ = [
    "AffineIndexUsed",
    "ApolarPresentation",
    "BadPartition",
    "BaseNotInSet",
    "BudgetExceeded",
    "ChamberGraph",
    "ChamberNode",
    "ChamberSignature",
    "ChamberValidation",
    "CohomologyClass",
    "Convention",
    "DecompositionClass",
    "DegenerateWall",
    "DegreeOutOfRange",
    "EmptyChamber",
    "EmptyTarget",
    "IndexSet",
    "LengthVector",
    "MultiIndex",
    "MultiPoly",
    "NonGenericSegment",
    "NotAFacet",
    "NotAdjacent",
    "SingularLength",
    "VolumePolynomial",
    "Wall",
    "WallCrossingReport",
    "WrongTotalDegree",
    "adjacent_representative",
    "annihilator_generators",
    "betti_delta",
    "betti_numbers",
    "betti_via_path",
    "canonical_form",
    "catalecticant_rank",
    "crossing_report",
    "derivative_polynomial",
    "enumerate_chambers",
    "epsilon",
    "external_representative",
    "format_rational",
    "intersection_number",
    "is_empty",
    "is_external",
    "is_generic",
    "is_zero_class",
    "long_sets",
    "normal_bundle_chern",
    "nudge_within_chamber",
    "parse_rational",
    "pd_bases_agree",
    "pd_class",
    "poincare_pairing",
    "presentation",
    "representative",
    "segment_crossings",
    "signature",
    "validate_chamber",
    "volume_polynomial",
    "volume_value",
    "wall_jump",
    "__version__",
]
