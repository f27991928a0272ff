"""Exact invariants of plumbed surface boundaries and hyperplane arrangements.

The package computes, in exact arithmetic, quadratic intersection matrices
over the ring Z[eps]/(eps^2 - 1), their lifted diagonalizations, the stable
boundary decompositions of trees of rational curves, twist-graded homology at
infinity, and the Tate decompositions attached to affine hyperplane
arrangements over Q.
"""

__version__ = "0.1.0"

from .arrangements import (
    Arrangement,
    FlatData,
    complement_decomposition,
    coordinate_arrangement,
    dual_decomposition,
    flats,
    infinity_decomposition,
    multiplicities,
    parse_arrangement,
)
from .atinfinity import (
    ChainComplexZ,
    ClosedCover,
    GradedPiece,
    HomologyAtInfinity,
    homology_at_infinity,
    ordered_cech,
    rz_complex,
)
from .errors import (
    DomainError,
    InputError,
    MotivicPlumbingError,
    NoLiftError,
    ObstructionError,
    ParseError,
    ValidationError,
)
from .gwring import (
    EPS,
    H,
    ONE,
    ZERO,
    ComplexClosed,
    DiagonalForm,
    ExtensionSpec,
    FiniteField,
    Generic,
    GwElement,
    GwModel,
    Rational,
    RealClosed,
    classify,
    is_unit,
    lift,
    project,
    same_up_to_unit,
    square_class_q,
    trace_form,
    unit_normalize,
)
from .motives import Artin, Cone, HoFib, MotiveExpression, Tate
from .mumford import (
    ORIENTED,
    QUADRATIC,
    RANK,
    SIGNATURE,
    LinkDecomposition,
    artin_part,
    duval_reference_hofib,
    duval_report,
    incidence_matrix,
    link_decomposition,
    oriented_matrix,
    quadratic_matrix,
    realize,
)
from .plumbing import (
    Curve,
    GraphChecks,
    Intersection,
    PlumbingGraph,
    Point,
    checks,
    danielewski,
    dynkin,
    parse_graph,
    ramanujam,
    serialize_graph,
)
from .smithlift import (
    GwMatrix,
    IntMatrix,
    KernelCokernel,
    Obstruction,
    SnfResult,
    diagonalize_zeps,
    kernel_cokernel,
    snf_int,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
