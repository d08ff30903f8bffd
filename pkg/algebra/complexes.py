import logging
from dataclasses import dataclass, field
from enum import Enum

from algebra.errors import DimensionMismatch, NotAChainMap, NotAComplex, SignConventionError
from algebra.matrices import Ring, block_matrix, matrix_class

logger = logging.getLogger(__name__)


class Direction(Enum):
    """Whether differentials raise (cochain) or lower (chain) the degree"""
    CHAIN = "chain"
    COCHAIN = "cochain"

    @property
    def step(self):
        return -1 if self is Direction.CHAIN else 1


@dataclass(frozen=True)
class GradedComplex:
    """
    Bounded complex of free modules over Z or Q.

    Attributes:
        ring (Ring): Coefficient ring.
        lo (int): Lowest degree.
        hi (int): Highest degree.
        ranks (dict): degree -> rank.
        differentials (dict): degree n -> matrix from degree n to n + step.
            Missing entries are zero maps.
        direction (Direction): Chain or cochain orientation.
        labels (dict): Optional degree -> list of basis labels.
    """
    ring: Ring
    lo: int
    hi: int
    ranks: dict
    differentials: dict
    direction: Direction = Direction.COCHAIN
    labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        cls = matrix_class(self.ring)
        fixed = {}
        for n in range(self.lo, self.hi + 1):
            target = n + self.direction.step
            shape = (self.rank(target), self.rank(n))
            d = self.differentials.get(n)
            if d is None:
                d = cls.zeros(*shape)
            elif d.shape != shape:
                raise DimensionMismatch(f"Differential in degree {n} has shape {d.shape}, expected {shape}")
            elif not isinstance(d, cls):
                d = cls(d.rows, d.cols, d.entries())
            fixed[n] = d
        object.__setattr__(self, "differentials", fixed)
        object.__setattr__(self, "ranks", {n: self.rank(n) for n in range(self.lo, self.hi + 1)})
        self.check()

    def rank(self, n):
        if n < self.lo or n > self.hi:
            return 0
        return self.ranks.get(n, 0)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def d(self, n):
        """Differential leaving degree n"""
        if self.lo <= n <= self.hi:
            return self.differentials[n]
        cls = matrix_class(self.ring)
        return cls.zeros(self.rank(n + self.direction.step), self.rank(n))

    def incoming(self, n):
        """Differential arriving in degree n"""
        return self.d(n - self.direction.step)

    def check(self):
        for n in self.degrees():
            composite = self.d(n + self.direction.step) @ self.d(n)
            if not composite.is_zero():
                raise NotAComplex(f"d∘d is nonzero starting in degree {n}")

    def euler_characteristic(self):
        return sum((-1) ** n * self.rank(n) for n in self.degrees())

    def over_rationals(self):
        return GradedComplex(
            ring=Ring.Q, lo=self.lo, hi=self.hi, ranks=dict(self.ranks),
            differentials={n: d.to_rational() for n, d in self.differentials.items()},
            direction=self.direction, labels=self.labels,
        )


@dataclass(frozen=True)
class ChainMap:
    """Degreewise matrices f_n: source_n -> target_n commuting with the differentials"""
    source: GradedComplex
    target: GradedComplex
    maps: dict

    def __post_init__(self):
        if self.source.direction is not self.target.direction:
            raise NotAChainMap("Source and target have opposite directions")
        cls = matrix_class(self.source.ring)
        fixed = {}
        for n in self._degrees():
            shape = (self.target.rank(n), self.source.rank(n))
            f = self.maps.get(n)
            if f is None:
                f = cls.zeros(*shape)
            elif f.shape != shape:
                raise DimensionMismatch(f"Chain map component in degree {n} has shape {f.shape}, expected {shape}")
            fixed[n] = f
        object.__setattr__(self, "maps", fixed)
        step = self.source.direction.step
        for n in self._degrees():
            left = self.target.d(n) @ self.at(n)
            right = self.at(n + step) @ self.source.d(n)
            if left != right:
                raise NotAChainMap(f"Map does not commute with differentials in degree {n}")

    def _degrees(self):
        return range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 1)

    def at(self, n):
        if n in self.maps:
            return self.maps[n]
        return matrix_class(self.source.ring).zeros(self.target.rank(n), self.source.rank(n))


def mapping_cone(f):
    """
    Mapping cone of a chain map f: A -> B.

    Cochain orientation: Cone^n = A^{n+1} ⊕ B^n with
    d(a, b) = (-d_A a, f(a) + d_B b). Chain orientation uses
    Cone_n = A_{n-1} ⊕ B_n with the same formula. The connecting map of
    the long exact sequence is then induced by f itself, without signs.

    Args:
        f (ChainMap): The map.

    Returns:
        GradedComplex: The cone.
    """
    A, B = f.source, f.target
    step = A.direction.step
    cls = matrix_class(A.ring)
    lo = min(B.lo, A.lo - step, A.hi - step)
    hi = max(B.hi, A.lo - step, A.hi - step)

    ranks = {n: A.rank(n + step) + B.rank(n) for n in range(lo, hi + 1)}
    differentials = {}
    labels = {}
    for n in range(lo, hi + 1):
        m = n + step
        target_rank = ranks[m] if lo <= m <= hi else 0
        a_offset = A.rank(m + step)
        differentials[n] = block_matrix(cls, target_rank, ranks[n], {
            (0, 0): -A.d(m),
            (a_offset, 0): f.at(m),
            (a_offset, A.rank(m)): B.d(n),
        })
        labels[n] = [("source", i) for i in range(A.rank(m))] + [("target", i) for i in range(B.rank(n))]
    logger.debug(f"Mapping cone assembled in degrees {lo}..{hi}")
    return GradedComplex(ring=A.ring, lo=lo, hi=hi, ranks=ranks,
                         differentials=differentials, direction=A.direction, labels=labels)


@dataclass(frozen=True)
class DoubleComplex:
    """
    Bounded double complex D^{r,s} with horizontal maps (r,s) -> (r+1,s)
    and vertical maps (r,s) -> (r,s+1).

    The total complex inserts the sign (-1)^r on vertical maps, so the
    input squares are expected to commute.

    Attributes:
        ring (Ring): Coefficient ring.
        ranks (dict): (r, s) -> rank.
        horizontal (dict): (r, s) -> matrix D^{r,s} -> D^{r+1,s}.
        vertical (dict): (r, s) -> matrix D^{r,s} -> D^{r,s+1}.
    """
    ring: Ring
    ranks: dict
    horizontal: dict = field(default_factory=dict)
    vertical: dict = field(default_factory=dict)

    def rank(self, r, s):
        return self.ranks.get((r, s), 0)

    def _map(self, table, key, target):
        cls = matrix_class(self.ring)
        m = table.get(key)
        shape = (self.rank(*target), self.rank(*key))
        if m is None:
            return cls.zeros(*shape)
        if m.shape != shape:
            raise DimensionMismatch(f"Map at {key} has shape {m.shape}, expected {shape}")
        return m

    def h(self, r, s):
        return self._map(self.horizontal, (r, s), (r + 1, s))

    def v(self, r, s):
        return self._map(self.vertical, (r, s), (r, s + 1))

    def bidegrees(self):
        return sorted(key for key, rank in self.ranks.items() if rank)


def total_complex(D):
    """
    Total complex Tot^m = ⊕_{r+s=m} D^{r,s} with d = d_h + (-1)^r d_v.

    Args:
        D (DoubleComplex): Input with commuting squares.

    Returns:
        GradedComplex: The total complex in cochain orientation.

    Raises:
        SignConventionError: If the assembled differential does not square to zero.
    """
    cls = matrix_class(D.ring)
    keys = D.bidegrees()
    if not keys:
        return GradedComplex(ring=D.ring, lo=0, hi=0, ranks={0: 0}, differentials={})
    lo = min(r + s for r, s in keys)
    hi = max(r + s for r, s in keys)

    layout = {}
    ranks = {}
    for m in range(lo, hi + 1):
        offset = 0
        for r, s in keys:
            if r + s == m:
                layout[(r, s)] = offset
                offset += D.rank(r, s)
        ranks[m] = offset

    differentials = {}
    for m in range(lo, hi + 1):
        blocks = {}
        for r, s in keys:
            if r + s != m:
                continue
            col = layout[(r, s)]
            if (r + 1, s) in layout:
                blocks[(layout[(r + 1, s)], col)] = D.h(r, s)
            if (r, s + 1) in layout:
                vertical = D.v(r, s)
                blocks[(layout[(r, s + 1)], col)] = -vertical if r % 2 else vertical
        differentials[m] = block_matrix(cls, ranks.get(m + 1, 0), ranks[m], blocks)

    labels = {m: [(r, s, i) for r, s in keys if r + s == m for i in range(D.rank(r, s))]
              for m in range(lo, hi + 1)}
    try:
        return GradedComplex(ring=D.ring, lo=lo, hi=hi, ranks=ranks,
                             differentials=differentials, labels=labels)
    except NotAComplex as e:
        raise SignConventionError(f"Double complex squares do not commute: {e}") from e
