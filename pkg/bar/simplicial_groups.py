import logging
from dataclasses import dataclass, field

from algebra.errors import DimensionMismatch, MalformedInput, SimplicialIdentityError
from algebra.groups import FgAbGroup
from algebra.matrices import IntMatrix

logger = logging.getLogger(__name__)


def reduce_vector(vector, orders):
    """Reduce coordinates modulo the generator orders (order 0 = free, left alone)"""
    return tuple(x % o if o else x for x, o in zip(vector, orders))


def _congruent(a, b, orders):
    """Whether two matrices agree as homomorphisms into a group with the given generator orders"""
    for (r, _), value in (a - b).items():
        order = orders[r]
        if order == 0 or value % order:
            return False
    return True


@dataclass(frozen=True)
class SimAbGroup:
    """
    Simplicial abelian group truncated at a degree bound.

    Each degree is presented by the cyclic orders of a fixed generating
    set (0 = infinite cyclic); structure maps are integer matrices on
    those generators. Construction verifies that every matrix is a
    homomorphism and that all simplicial identities hold.

    Attributes:
        degree_bound (int): Highest degree N.
        orders (tuple): degree -> tuple of generator orders.
        faces (dict): (n, i) -> matrix G_n -> G_{n-1}, 1 <= n <= N, 0 <= i <= n.
        degeneracies (dict): (n, i) -> matrix G_n -> G_{n+1}, n < N, 0 <= i <= n.
        name (str): Label used in logs and reports.
    """
    degree_bound: int
    orders: tuple
    faces: dict
    degeneracies: dict
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.degree_bound < 0:
            raise MalformedInput("Degree bound must be nonnegative")
        if len(self.orders) != self.degree_bound + 1:
            raise DimensionMismatch("One order list per degree is required")
        self._check_shapes()
        self.check_identities()

    def size(self, n):
        return len(self.orders[n])

    def group(self, n):
        return FgAbGroup.from_orders(self.orders[n])

    def groups(self):
        return [self.group(n) for n in range(self.degree_bound + 1)]

    def face(self, n, i):
        return self.faces[(n, i)]

    def degeneracy(self, n, i):
        return self.degeneracies[(n, i)]

    def _check_shapes(self):
        N = self.degree_bound
        for n in range(1, N + 1):
            for i in range(n + 1):
                self._check_map(self.faces.get((n, i)), n, n - 1, f"face d_{i} in degree {n}")
        for n in range(N):
            for i in range(n + 1):
                self._check_map(self.degeneracies.get((n, i)), n, n + 1, f"degeneracy s_{i} in degree {n}")

    def _check_map(self, matrix, source, target, label):
        if matrix is None:
            raise SimplicialIdentityError(f"Missing {label}")
        if matrix.shape != (self.size(target), self.size(source)):
            raise DimensionMismatch(f"{label} has shape {matrix.shape}")
        target_orders = self.orders[target]
        for (r, c), value in matrix.items():
            order = self.orders[source][c]
            if order and target_orders[r] == 0:
                raise SimplicialIdentityError(f"{label} sends a torsion generator to a free one")
            if order and target_orders[r] and (order * value) % target_orders[r]:
                raise SimplicialIdentityError(f"{label} is not a homomorphism")

    def check_identities(self):
        """
        Verify the simplicial identities on generators.

        Raises:
            SimplicialIdentityError: Naming the first failing identity.
        """
        N = self.degree_bound
        d, s = self.face, self.degeneracy
        for n in range(2, N + 1):
            for j in range(n + 1):
                for i in range(j):
                    if not _congruent(d(n - 1, i) @ d(n, j), d(n - 1, j - 1) @ d(n, i), self.orders[n - 2]):
                        raise SimplicialIdentityError(f"d_{i} d_{j} != d_{j - 1} d_{i} in degree {n}")
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if not _congruent(s(n + 1, i) @ s(n, j), s(n + 1, j + 1) @ s(n, i), self.orders[n + 2]):
                        raise SimplicialIdentityError(f"s_{i} s_{j} != s_{j + 1} s_{i} in degree {n}")
        for n in range(N):
            identity = IntMatrix.identity(self.size(n))
            for j in range(n + 1):
                for i in range(n + 2):
                    left = d(n + 1, i) @ s(n, j)
                    if i < j:
                        right = s(n - 1, j - 1) @ d(n, i)
                    elif i in (j, j + 1):
                        right = identity
                    else:
                        right = s(n - 1, j) @ d(n, i - 1)
                    if not _congruent(left, right, self.orders[n]):
                        raise SimplicialIdentityError(f"d_{i} s_{j} identity fails in degree {n}")
        logger.debug(f"Simplicial identities hold for {self.name or 'group'} up to degree {N}")

    def apply_face(self, n, i, x):
        return reduce_vector(self.face(n, i).apply(list(x)), self.orders[n - 1])

    def apply_degeneracy(self, n, i, x):
        return reduce_vector(self.degeneracy(n, i).apply(list(x)), self.orders[n + 1])


def constant(G, N):
    """The constant simplicial group on G: every structure map is the identity"""
    orders = tuple(G.orders)
    identity = IntMatrix.identity(len(orders))
    faces = {(n, i): identity for n in range(1, N + 1) for i in range(n + 1)}
    degeneracies = {(n, i): identity for n in range(N) for i in range(n + 1)}
    return SimAbGroup(N, tuple(orders for _ in range(N + 1)), faces, degeneracies, name=str(G))


def _as_simplicial(G, N):
    if isinstance(G, SimAbGroup):
        if G.degree_bound < N:
            raise MalformedInput(f"Input is only defined up to degree {G.degree_bound}, need {N}")
        return G
    if isinstance(G, FgAbGroup):
        return constant(G, N)
    raise MalformedInput(f"Expected a group or simplicial group, got {type(G).__name__}")


def _block_map(sources, block_count, inner):
    """
    Matrix on block vectors: output block t is the sum over sources[t]
    of inner applied to those input blocks.
    """
    rows, cols = inner.shape
    entries = {}
    for t, blocks in enumerate(sources):
        for b in blocks:
            for (r, c), value in inner.items():
                key = (t * rows + r, b * cols + c)
                entries[key] = entries.get(key, 0) + value
    return IntMatrix(len(sources) * rows, block_count * cols, entries)


def _face_sources(n, i, with_head):
    """Blocks of degree n that feed each block of the face d_i"""
    k = n + 1 if with_head else n
    if with_head:
        # positions h_0..h_n; d_i merges i and i+1 for i < n, d_n drops h_n
        if i == n:
            return [[p] for p in range(n)]
        return [[p] for p in range(i)] + [[i, i + 1]] + [[p] for p in range(i + 2, k)]
    # positions h_1..h_n at indices 0..n-1
    if i == 0:
        return [[p] for p in range(1, k)]
    if i == n:
        return [[p] for p in range(n - 1)]
    return [[p] for p in range(i - 1)] + [[i - 1, i]] + [[p] for p in range(i + 1, k)]


def _degeneracy_sources(n, i, with_head):
    """s_i inserts a zero block right after h_i"""
    k = n + 1 if with_head else n
    position = i + 1 if with_head else i
    sources = [[p] for p in range(k)]
    return sources[:position] + [[]] + sources[position:]


def _bar_diagonal(S, N, with_head, name):
    orders = []
    for n in range(N + 1):
        k = n + 1 if with_head else n
        orders.append(tuple(o for _ in range(k) for o in S.orders[n]))

    faces = {}
    for n in range(1, N + 1):
        k = n + 1 if with_head else n
        for i in range(n + 1):
            faces[(n, i)] = _block_map(_face_sources(n, i, with_head), k, S.face(n, i))
    degeneracies = {}
    for n in range(N):
        k = n + 1 if with_head else n
        for i in range(n + 1):
            degeneracies[(n, i)] = _block_map(_degeneracy_sources(n, i, with_head), k, S.degeneracy(n, i))
    return SimAbGroup(N, tuple(orders), faces, degeneracies, name=name)


def e_of(G, N):
    """
    EG in non-homogeneous coordinates, degree n = G^{n+1}.

    For a simplicial input the degreewise construction is bisimplicial;
    the result is its diagonal.

    Args:
        G (FgAbGroup | SimAbGroup): Coefficients.
        N (int): Degree bound.

    Returns:
        SimAbGroup: EG truncated at degree N.
    """
    S = _as_simplicial(G, N)
    return _bar_diagonal(S, N, with_head=True, name=f"E({S.name})")


def b_of(G, N):
    """BG in non-homogeneous coordinates, degree n = G^n (diagonal for simplicial input)"""
    S = _as_simplicial(G, N)
    return _bar_diagonal(S, N, with_head=False, name=f"B({S.name})")


def iterate_b(A, s, N):
    """
    B^s A as a simplicial abelian group, iterating the diagonal bar construction.

    Args:
        A (FgAbGroup): Coefficient group.
        s (int): Number of iterations, at least 1.
        N (int): Degree bound.
    """
    if s < 1:
        raise MalformedInput(f"Iteration count must be at least 1, got {s}")
    S = constant(A, N)
    for _ in range(s):
        S = b_of(S, N)
    logger.debug(f"B^{s}({A}) built: sizes {[S.size(n) for n in range(N + 1)]}")
    return S


def fiber_inclusion(S, n):
    """Degree-n matrix of S -> E(S), x -> x[e|...|e]"""
    size = S.size(n)
    return IntMatrix(size * (n + 1), size, {(r, r): 1 for r in range(size)})


def bar_projection(S, n):
    """Degree-n matrix of E(S) -> B(S), dropping the head h_0"""
    size = S.size(n)
    return IntMatrix(size * n, size * (n + 1), {(r, r + size): 1 for r in range(size * n)})
