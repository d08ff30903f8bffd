import logging
from dataclasses import dataclass
from itertools import product

from algebra.complexes import Direction, GradedComplex
from algebra.errors import MalformedInput
from algebra.homology import homology
from algebra.matrices import IntMatrix, Ring
from simplicial.chains import chain_complex
from simplicial.complexes import join_complex
from simplicial.corpus import discrete_points

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JoinModel:
    """
    Homology of the Milnor model (E_Δ G)_n and of its orbit space.

    Attributes:
        group (FgAbGroup): The finite group G.
        n (int): Number of joins minus one.
        e_homology (list): H_* of the (n+1)-fold join of G with itself.
        b_homology (list): H_* of the coinvariant complex C_*(E) ⊗_{Z[G]} Z.
    """
    group: object
    n: int
    e_homology: list
    b_homology: list

    def to_json(self):
        return {
            "group": str(self.group),
            "n": self.n,
            "E": [g.to_json() for g in self.e_homology],
            "B": [g.to_json() for g in self.b_homology],
        }


def group_elements(G):
    """Elements of a finite FgAbGroup as coordinate tuples, in lexicographic order"""
    if not G.is_finite:
        raise MalformedInput(f"{G} is infinite")
    return list(product(*(range(o) for o in G.orders)))


def join_of_group(G, n):
    """(n+1)-fold join of the underlying set of G; vertex (k, g) has index k·|G| + index(g)"""
    points = discrete_points(len(group_elements(G)))
    complex_ = points
    for _ in range(n):
        complex_ = join_complex(complex_, points)
    return complex_


def coinvariant_complex(E, G):
    """
    C_*(E) ⊗_{Z[G]} Z for the diagonal translation action of G on the join.

    The action fixes each join level, so it preserves the vertex order and
    hence orientations; basis elements are orbit representatives.
    """
    elements = group_elements(G)
    position = {g: k for k, g in enumerate(elements)}
    m = len(elements)

    def act(g, vertex):
        level, k = divmod(vertex, m)
        moved = tuple((a + b) % o for a, b, o in zip(g, elements[k], G.orders))
        return level * m + position[moved]

    def orbit_key(simplex):
        return min(tuple(sorted(act(g, v) for v in simplex)) for g in elements)

    chains = chain_complex(E)
    bases, index = {}, {}
    for d in chains.degrees():
        reps = sorted({orbit_key(s) for s in E.simplices(d)})
        bases[d] = reps
        index[d] = {r: k for k, r in enumerate(reps)}

    differentials = {}
    for d in chains.degrees():
        if d == 0:
            continue
        entries = {}
        for c, simplex in enumerate(bases[d]):
            for i in range(len(simplex)):
                row = index[d - 1][orbit_key(simplex[:i] + simplex[i + 1:])]
                entries[(row, c)] = entries.get((row, c), 0) + (-1) ** i
        differentials[d] = IntMatrix(len(bases[d - 1]), len(bases[d]), entries)

    return GradedComplex(
        ring=Ring.Z, lo=chains.lo, hi=chains.hi,
        ranks={d: len(bases[d]) for d in chains.degrees()},
        differentials=differentials,
        direction=Direction.CHAIN,
        labels=bases,
    )


def milnor_join_homology(G, n):
    """
    Homology of the Milnor join model of EG and of its quotient by G.

    Args:
        G (FgAbGroup): A finite group.
        n (int): Join index; the model is the (n+1)-fold join.

    Returns:
        JoinModel: E and B homology tables.

    Raises:
        MalformedInput: If G is infinite or n is negative.
    """
    if n < 0:
        raise MalformedInput(f"Join index must be nonnegative, got {n}")
    if not G.is_finite:
        raise MalformedInput(f"Milnor join model needs a finite group, got {G}")
    E = join_of_group(G, n)
    e_homology = homology(chain_complex(E)).table()
    b_homology = homology(coinvariant_complex(E, G)).table()
    logger.info(f"Join model for {G}, n = {n}: E = {[str(g) for g in e_homology]}, B = {[str(g) for g in b_homology]}")
    return JoinModel(group=G, n=n, e_homology=e_homology, b_homology=b_homology)
