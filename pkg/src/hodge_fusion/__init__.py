"""Hodge cohomology of finite simplicial complexes, their open subsets and Delta-sets."""
from .complex import (Cell, CellNotFound, ComplexError, DeltaComplex, SubsetClass, classify,
                      closure, euler_characteristic, f_vector, integrate, interior_boundary,
                      make_cell, random_open_set, skeleton, star, unit_ball, unit_sphere,
                      whitney_complex)
from .operators import (NotDeltaSetError, OperatorBundle, dirac, exterior_derivative, hodge_blocks,
                        incidence_sign, is_valid_delta)
from .exact import kernel_basis, rank_nullity
from .cohomology import (PoincarePolynomial, betti, euler_poincare_check, evaluate,
                         harmonic_basis, mckean_singer_supertrace, poincare_polynomial)
from .spectral import (check_fusion_bound, check_monotonicity, eigenvalues, seq_leq, seq_merge,
                       seq_sum)
from .fusion import (FusionReport, Move, NotClosedError, ProjectionMismatch, SplitPair,
                     anneal_search, apply_move, dichotomy_track, flip_moves, fusion_report,
                     interface_nullity, split)
from .products import (barycentric_refinement, geometric_product, join, kunneth_check,
                       shannon_product, suspension, tensor_harmonic)
from .constructions import GeneratorSpec, connected_sum, generate
from .documents import ParseError, parse_complex, parse_document, serialize

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "CellNotFound",
    "ComplexError",
    "DeltaComplex",
    "SubsetClass",
    "classify",
    "closure",
    "euler_characteristic",
    "f_vector",
    "integrate",
    "interior_boundary",
    "make_cell",
    "random_open_set",
    "skeleton",
    "star",
    "unit_ball",
    "unit_sphere",
    "whitney_complex",
    "NotDeltaSetError",
    "OperatorBundle",
    "dirac",
    "exterior_derivative",
    "hodge_blocks",
    "incidence_sign",
    "is_valid_delta",
    "kernel_basis",
    "rank_nullity",
    "PoincarePolynomial",
    "betti",
    "euler_poincare_check",
    "evaluate",
    "harmonic_basis",
    "mckean_singer_supertrace",
    "poincare_polynomial",
    "check_fusion_bound",
    "check_monotonicity",
    "eigenvalues",
    "seq_leq",
    "seq_merge",
    "seq_sum",
    "FusionReport",
    "Move",
    "NotClosedError",
    "ProjectionMismatch",
    "SplitPair",
    "anneal_search",
    "apply_move",
    "dichotomy_track",
    "flip_moves",
    "fusion_report",
    "interface_nullity",
    "split",
    "barycentric_refinement",
    "geometric_product",
    "join",
    "kunneth_check",
    "shannon_product",
    "suspension",
    "tensor_harmonic",
    "GeneratorSpec",
    "connected_sum",
    "generate",
    "ParseError",
    "parse_complex",
    "parse_document",
    "serialize",
]
