import logging
import re
from itertools import combinations

from algebra.errors import MalformedInput
from simplicial.complexes import build_complex

logger = logging.getLogger(__name__)

_SPHERE = re.compile(r"^sphere\(?(\d+)\)?$")

SPACE_NAMES = ("point", "circle", "sphere(n)", "torus", "rp2", "klein")

# 6-vertex projective plane: the quotient of the icosahedron by the antipodal map
RP2_FACETS = [
    [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
    [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
]

# 16 triangles, every vertex link a single cycle, not orientable
KLEIN_FACETS = [
    [0, 1, 4], [0, 1, 7], [0, 2, 4], [0, 2, 6], [0, 3, 5], [0, 3, 6], [0, 5, 7], [1, 2, 5],
    [1, 2, 6], [1, 4, 5], [1, 6, 7], [2, 3, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [4, 6, 7],
]


def point():
    return build_complex([[0]])


def discrete_points(m):
    """m isolated vertices"""
    if m < 1:
        raise MalformedInput("A point set needs at least one point")
    return build_complex([[v] for v in range(m)])


def circle():
    return build_complex([[0, 1], [1, 2], [0, 2]])


def sphere(n):
    """Boundary of the (n+1)-simplex"""
    if n < 0:
        raise MalformedInput(f"Sphere dimension must be nonnegative, got {n}")
    return build_complex([list(face) for face in combinations(range(n + 2), n + 1)])


def torus():
    """Minimal 7-vertex torus"""
    facets = []
    for i in range(7):
        facets.append([i, (i + 1) % 7, (i + 3) % 7])
        facets.append([i, (i + 2) % 7, (i + 3) % 7])
    return build_complex(facets)


def rp2():
    return build_complex(RP2_FACETS)


def klein():
    """Minimal 8-vertex Klein bottle"""
    return build_complex(KLEIN_FACETS)


def standard_space(name):
    """
    Look up a corpus triangulation by name.

    Args:
        name (str): "point", "circle", "sphere(n)" (also "sphereN"),
            "torus", "rp2" or "klein".

    Returns:
        Complex: The triangulation.

    Raises:
        MalformedInput: If the name is unknown.
    """
    key = str(name).strip().lower().replace(" ", "")
    builders = {"point": point, "circle": circle, "torus": torus, "rp2": rp2, "klein": klein}
    if key in builders:
        return builders[key]()
    match = _SPHERE.match(key)
    if match:
        return sphere(int(match.group(1)))
    raise MalformedInput(f"Unknown space {name!r}; known spaces: {', '.join(SPACE_NAMES)}")
