"""Numerical ranges of truncated weighted composition operators on Fock space.

The pipeline: kernel-polynomial symbols (`symbols`) are turned into finite
matrix sections (`truncation`), swept into support functions and boundary
samples (`numrange` on top of `jacobi`), and cross-checked against
closed-form predicted regions (`regions`, `verify`), with deterministic
JSON/CSV/SVG output (`cli`, `render`).
"""

from .errors import (
    EigensolverError,
    HypothesisViolation,
    SearchExhausted,
    SeriesDivergence,
    SymbolSpecError,
    VerificationFailure,
)
from .symbols import (
    AffineMap,
    ConjugationData,
    EntireSymbol,
    ExpandingMapWarning,
    KernelTerm,
    PolarRationalAngle,
    UnboundedWeightWarning,
    basis_coefficients,
    conjugate_to_q,
    evaluate,
    fixed_point,
    inner_product,
    parse_symbol_spec,
    taylor_coefficients,
)
from .numrange import FieldOfValues, MembershipVerdict, ellipse_2x2, membership, sweep
from .regions import (
    DiskPlusOrbitRegion,
    DiskRegion,
    EllipseMode,
    EllipseRegion,
    PolygonHullRegion,
    SegmentRegion,
    UnitRootClassification,
    ZeroWitness,
    classify_unit_a,
    prop21_ellipse,
    remark24_rankone,
    thm22_zero_witness,
    thm23_disk,
    thm31_region,
)
from .truncation import (
    Compression2x2,
    TruncatedOperator,
    apply_column_oracle,
    build_truncation,
    compression,
    qform_truncation,
)
from .verify import (
    CLAIMS,
    EXAMPLES,
    ContainmentResult,
    RunReport,
    boundary_correspondence,
    convergence_curve,
    convex_hausdorff,
    hull_in_region,
    predict_regions,
    region_in_hull,
    run_example,
    verify_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CLAIMS",
    "Compression2x2",
    "ConjugationData",
    "ContainmentResult",
    "DiskPlusOrbitRegion",
    "DiskRegion",
    "EXAMPLES",
    "EigensolverError",
    "EllipseMode",
    "EllipseRegion",
    "EntireSymbol",
    "ExpandingMapWarning",
    "FieldOfValues",
    "HypothesisViolation",
    "KernelTerm",
    "MembershipVerdict",
    "PolarRationalAngle",
    "PolygonHullRegion",
    "RunReport",
    "SearchExhausted",
    "SegmentRegion",
    "SeriesDivergence",
    "SymbolSpecError",
    "TruncatedOperator",
    "UnboundedWeightWarning",
    "UnitRootClassification",
    "VerificationFailure",
    "ZeroWitness",
    "apply_column_oracle",
    "basis_coefficients",
    "boundary_correspondence",
    "build_truncation",
    "classify_unit_a",
    "compression",
    "conjugate_to_q",
    "convergence_curve",
    "convex_hausdorff",
    "ellipse_2x2",
    "evaluate",
    "fixed_point",
    "hull_in_region",
    "inner_product",
    "membership",
    "parse_symbol_spec",
    "predict_regions",
    "prop21_ellipse",
    "qform_truncation",
    "region_in_hull",
    "remark24_rankone",
    "run_example",
    "sweep",
    "taylor_coefficients",
    "thm22_zero_witness",
    "thm23_disk",
    "thm31_region",
    "verify_pipeline",
]
