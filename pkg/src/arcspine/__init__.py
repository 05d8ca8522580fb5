"""Decorated arc systems on punctured surfaces and the dimension of the spine they span."""
from .core import (
    Arc,
    BoundaryCycle,
    Direction,
    Piece,
    PieceClass,
    PieceKind,
    Side,
    SplitPresentation,
    SurfaceSpec,
    ValidationReport,
    classify_piece,
    derive_invariants,
    doubled_euler,
    fills_up,
    is_maximal,
    rank,
    validate,
)
from .constructions import example_chain, explicit_maximal, subdivide_triangle
from .enumeration import (
    ChainCertificate,
    FillingPoset,
    Mode,
    a_infinity_codimension_check,
    canonical_code,
    enumerate_filling,
    enumerate_maximal,
    min_filling_rank_bruteforce,
    spine_dimension_bruteforce,
)
from .surgery import all_deletions, delete_arc

__version__ = "0.1.0"
