"""
Exact algebra package

Sparse integer and rational matrices, Smith normal form, finitely
generated abelian groups, graded and double complexes, and homology.
Everything is exact: Python integers and fractions.Fraction, never floats.
"""

from algebra.complexes import ChainMap, Direction, DoubleComplex, GradedComplex, mapping_cone, total_complex
from algebra.errors import (
    CurvatureError,
    DimensionMismatch,
    InvalidCocycle,
    LiftRejected,
    MalformedInput,
    NotAChainMap,
    NotAComplex,
    ResourceBudgetExceeded,
    SignConventionError,
    SimplicialIdentityError,
    ToolkitError,
)
from algebra.groups import TRIVIAL, Z, FgAbGroup, cyclic
from algebra.homology import HomologyResult, homology, is_boundary
from algebra.linear import integer_kernel, rational_kernel, solve_linear, solve_mixed
from algebra.matrices import IntMatrix, RatMatrix, Ring, block_matrix, format_scalar, matrix_class, parse_scalar
from algebra.smith import SnfResult, smith_normal_form
