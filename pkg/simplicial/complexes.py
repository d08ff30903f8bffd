import logging
from itertools import combinations

from algebra.errors import MalformedInput

logger = logging.getLogger(__name__)


def simplex_key(vertices):
    """
    Canonical key of a simplex: its strictly increasing vertex tuple.

    Raises:
        MalformedInput: If a vertex repeats.
    """
    key = tuple(sorted(int(v) for v in vertices))
    if len(set(key)) != len(key):
        raise MalformedInput(f"Repeated vertex in simplex {list(vertices)}")
    return key


def format_key(key):
    return ",".join(str(v) for v in key)


def parse_key(text):
    try:
        return simplex_key(int(part) for part in str(text).split(","))
    except ValueError as e:
        raise MalformedInput(f"Malformed simplex key {text!r}") from e


class Complex:
    """
    Finite abstract simplicial complex on vertices 0..vertex_count-1.

    The constructor closes the facet list under taking faces. Simplices of
    each dimension are kept in lexicographic order, which fixes the basis
    of every chain and cochain group. Instances are treated as immutable.
    """

    def __init__(self, vertex_count, facets):
        self.vertex_count = vertex_count
        closure = set((v,) for v in range(vertex_count))
        for facet in facets:
            for size in range(1, len(facet) + 1):
                closure.update(combinations(facet, size))

        dimension = max(len(s) for s in closure) - 1 if closure else -1
        self._simplices = [[] for _ in range(dimension + 1)]
        for simplex in closure:
            self._simplices[len(simplex) - 1].append(simplex)
        for layer in self._simplices:
            layer.sort()
        self._index = [{s: i for i, s in enumerate(layer)} for layer in self._simplices]
        self._all = frozenset(closure)
        maximal = [
            f for f in set(tuple(f) for f in facets)
            if not any(len(g) > len(f) and set(f) <= set(g) for g in facets)
        ]
        covered = {v for f in maximal for v in f}
        maximal.extend((v,) for v in range(vertex_count) if v not in covered)
        self.facets = tuple(sorted(maximal))

    @property
    def dimension(self):
        return len(self._simplices) - 1

    def simplices(self, n):
        if n < 0 or n > self.dimension:
            return []
        return list(self._simplices[n])

    def all_simplices(self):
        return [s for layer in self._simplices for s in layer]

    def count(self, n):
        return len(self._simplices[n]) if 0 <= n <= self.dimension else 0

    def index(self, simplex):
        """Position of a simplex within its dimension, or None when absent"""
        n = len(simplex) - 1
        if n < 0 or n > self.dimension:
            return None
        return self._index[n].get(tuple(simplex))

    def __contains__(self, simplex):
        return tuple(simplex) in self._all

    def f_vector(self):
        return tuple(len(layer) for layer in self._simplices)

    def euler_characteristic(self):
        return sum((-1) ** n * count for n, count in enumerate(self.f_vector()))

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._all == other._all

    def __hash__(self):
        return hash((self.vertex_count, self._all))

    def __repr__(self):
        return f"Complex(vertices={self.vertex_count}, f={self.f_vector()})"

    def to_json(self):
        return {"vertices": self.vertex_count, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "facets" not in data:
            raise MalformedInput("Complex JSON needs a 'facets' list")
        try:
            vertex_count = int(data["vertices"]) if "vertices" in data else None
        except (TypeError, ValueError) as e:
            raise MalformedInput(f"Malformed vertex count: {e}") from e
        return build_complex(data["facets"], vertex_count)


def build_complex(facets, vertex_count=None):
    """
    Build a Complex from its facets.

    Args:
        facets (list): Vertex collections; order inside a facet is irrelevant.
        vertex_count (int, optional): Defaults to one more than the largest vertex.

    Returns:
        Complex: The closure of the facets.

    Raises:
        MalformedInput: On an empty facet list, an empty facet, a repeated
            vertex or a vertex outside [0, vertex_count).
    """
    if not isinstance(facets, (list, tuple)) or not facets:
        raise MalformedInput("Facet list must be nonempty")
    keys = []
    for facet in facets:
        if not isinstance(facet, (list, tuple, set, frozenset)) or not facet:
            raise MalformedInput(f"Empty or malformed facet {facet!r}")
        try:
            keys.append(simplex_key(facet))
        except (TypeError, ValueError) as e:
            raise MalformedInput(f"Non-integer vertex in facet {facet!r}") from e

    largest = max(key[-1] for key in keys)
    if vertex_count is None:
        vertex_count = largest + 1
    if min(key[0] for key in keys) < 0 or largest >= vertex_count:
        raise MalformedInput(f"Vertex index outside [0, {vertex_count})")

    complex_ = Complex(vertex_count, keys)
    logger.debug(f"Built complex with f-vector {complex_.f_vector()}")
    return complex_


def join_complex(X, Y):
    """
    Simplicial join X * Y.

    Vertices of Y are shifted past those of X; simplices are unions of a
    simplex of X (or nothing) with a simplex of Y (or nothing).
    """
    shift = X.vertex_count
    y_facets = [tuple(v + shift for v in f) for f in Y.facets]
    facets = [f + g for f in X.facets for g in y_facets]
    return build_complex(facets, X.vertex_count + Y.vertex_count)
