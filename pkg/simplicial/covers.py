import logging
from functools import lru_cache

from simplicial.complexes import build_complex, simplex_key

logger = logging.getLogger(__name__)


class Cover:
    """
    Closed-star cover of a complex.

    Pieces are indexed by vertices. For a vertex set S spanning a simplex
    the intersection U_S is the subcomplex {σ : σ ∪ S ∈ X}; for a single
    vertex this is its closed star, and U_S shrinks as S grows, so Čech
    restriction maps are inclusions of simplex sets.
    """

    def __init__(self, complex_):
        self.complex = complex_
        self.intersection = lru_cache(maxsize=None)(self._intersection)

    @property
    def indices(self):
        return list(range(self.complex.vertex_count))

    def star(self, v):
        return self.intersection((v,))

    def _intersection(self, S):
        S = simplex_key(S)
        if S not in self.complex:
            return frozenset()
        members = set()
        base = set(S)
        for simplex in self.complex.all_simplices():
            if simplex_key(base | set(simplex)) in self.complex:
                members.add(simplex)
        return frozenset(members)

    def local_simplices(self, S, s):
        """Sorted s-simplices of U_S"""
        return sorted(t for t in self.intersection(tuple(S)) if len(t) == s + 1)

    def nerve_simplices(self, r):
        """Index sets of (r+1)-fold intersections that are nonempty"""
        return [S for S in self.complex.simplices(r) if self.intersection(S)]

    def nerve(self):
        facets = [S for S in self.complex.all_simplices() if self.intersection(S)]
        return build_complex(facets, self.complex.vertex_count)


def star_cover(X):
    cover = Cover(X)
    logger.debug(f"Star cover with {len(cover.indices)} pieces")
    return cover
