import logging

from algebra.complexes import Direction, GradedComplex
from algebra.homology import homology
from algebra.matrices import Ring, matrix_class

logger = logging.getLogger(__name__)


def boundary_matrix(X, n, ring=Ring.Z):
    """
    Matrix of the simplicial boundary C_n -> C_{n-1}.

    Face i of [v_0 < ... < v_n] (v_i dropped) enters with sign (-1)^i.
    """
    cls = matrix_class(ring)
    columns = X.simplices(n)
    entries = {}
    if n >= 1:
        for c, simplex in enumerate(columns):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1:]
                entries[(X.index(face), c)] = (-1) ** i
    return cls(X.count(n - 1), len(columns), entries)


def chain_complex(X, ring=Ring.Z):
    """Simplicial chain complex of X in degrees 0..dim X"""
    ring = Ring.parse(ring)
    hi = max(X.dimension, 0)
    return GradedComplex(
        ring=ring, lo=0, hi=hi,
        ranks={n: X.count(n) for n in range(hi + 1)},
        differentials={n: boundary_matrix(X, n, ring) for n in range(hi + 1)},
        direction=Direction.CHAIN,
        labels={n: X.simplices(n) for n in range(hi + 1)},
    )


def cochain_complex(X, ring=Ring.Z):
    """Simplicial cochain complex; d^n is the transpose of the boundary C_{n+1} -> C_n"""
    ring = Ring.parse(ring)
    hi = max(X.dimension, 0)
    return GradedComplex(
        ring=ring, lo=0, hi=hi,
        ranks={n: X.count(n) for n in range(hi + 1)},
        differentials={n: boundary_matrix(X, n + 1, ring).transpose() for n in range(hi + 1)},
        direction=Direction.COCHAIN,
        labels={n: X.simplices(n) for n in range(hi + 1)},
    )


def simplicial_homology(X, ring=Ring.Z, with_generators=False):
    result = homology(chain_complex(X, ring), with_generators)
    logger.debug(f"H_*({X!r}) = {[str(g) for g in result.table()]}")
    return result


def cohomology(X, ring=Ring.Z, with_generators=False):
    result = homology(cochain_complex(X, ring), with_generators)
    logger.debug(f"H^*({X!r}) = {[str(g) for g in result.table()]}")
    return result
