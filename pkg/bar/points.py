import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations, product

from algebra.errors import MalformedInput
from algebra.groups import FgAbGroup
from algebra.matrices import format_scalar, parse_scalar

logger = logging.getLogger(__name__)


class LetterGroup(ABC):
    """Coefficient group whose elements label the bars of a point"""

    is_abelian = True

    @property
    @abstractmethod
    def identity(self):
        pass

    @abstractmethod
    def multiply(self, a, b):
        pass

    @abstractmethod
    def inverse(self, a):
        pass

    @abstractmethod
    def normalize(self, a):
        """Validate a letter and return its canonical representative"""
        pass

    @abstractmethod
    def random_element(self, rng):
        pass

    def elements(self):
        raise MalformedInput(f"{self} is not finite")

    def format(self, a):
        return list(a)


@dataclass(frozen=True)
class AbelianLetters(LetterGroup):
    """Letters in a finitely generated abelian group, as coordinate tuples"""
    group: FgAbGroup

    @property
    def orders(self):
        return tuple(self.group.orders)

    @property
    def identity(self):
        return (0,) * len(self.orders)

    def multiply(self, a, b):
        return tuple((x + y) % o if o else x + y for x, y, o in zip(a, b, self.orders))

    def inverse(self, a):
        return tuple(-x % o if o else -x for x, o in zip(a, self.orders))

    def normalize(self, a):
        a = tuple(a)
        if len(a) != len(self.orders) or any(isinstance(x, bool) or int(x) != x for x in a):
            raise MalformedInput(f"{list(a)} is not an element of {self.group}")
        return tuple(int(x) % o if o else int(x) for x, o in zip(a, self.orders))

    def random_element(self, rng):
        return tuple(rng.randrange(o) if o else rng.randint(-3, 3) for o in self.orders)

    def elements(self):
        if not self.group.is_finite:
            raise MalformedInput(f"{self.group} is infinite")
        return list(product(*(range(o) for o in self.orders)))

    def __str__(self):
        return str(self.group)


@dataclass(frozen=True)
class VectorLetters(LetterGroup):
    """Letters in the rational vector space Q^dimension"""
    dimension: int

    @property
    def identity(self):
        return (Fraction(0),) * self.dimension

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)

    def scale(self, c, a):
        return tuple(c * x for x in a)

    def format(self, a):
        return [format_scalar(x) for x in a]

    def normalize(self, a):
        a = tuple(a)
        if len(a) != self.dimension:
            raise MalformedInput(f"Vector of length {len(a)} in Q^{self.dimension}")
        return tuple(_rational(x) for x in a)

    def random_element(self, rng):
        return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(self.dimension))

    def __str__(self):
        return f"Q^{self.dimension}"


@dataclass(frozen=True)
class PermutationLetters(LetterGroup):
    """Symmetric group on n letters; (a·b)(i) = a(b(i))"""
    n: int
    is_abelian = False

    @property
    def identity(self):
        return tuple(range(self.n))

    def multiply(self, a, b):
        return tuple(a[i] for i in b)

    def inverse(self, a):
        result = [0] * self.n
        for i, image in enumerate(a):
            result[image] = i
        return tuple(result)

    def normalize(self, a):
        a = tuple(a)
        if sorted(a) != list(range(self.n)):
            raise MalformedInput(f"{list(a)} is not a permutation of {self.n} letters")
        return a

    def random_element(self, rng):
        a = list(range(self.n))
        rng.shuffle(a)
        return tuple(a)

    def elements(self):
        return list(permutations(range(self.n)))

    def __str__(self):
        return f"S_{self.n}"


def letter_group(group):
    """Letter group from an FgAbGroup, a group string like 'Z/2+Z', 'Q^2' or 'S3'"""
    if isinstance(group, LetterGroup):
        return group
    if isinstance(group, FgAbGroup):
        return AbelianLetters(group)
    text = str(group).strip()
    if text.startswith("Q^") and text[2:].isdigit():
        return VectorLetters(int(text[2:]))
    if text[:1] == "S" and text[1:].isdigit():
        return PermutationLetters(int(text[1:]))
    return AbelianLetters(FgAbGroup.parse(text))


def _rational(value):
    if isinstance(value, bool):
        raise MalformedInput("Boolean where a rational was expected")
    try:
        return parse_scalar(value) if isinstance(value, str) else Fraction(value)
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"Not a rational number: {value!r}") from e


def _unit_interval(value, label):
    value = _rational(value)
    if not 0 <= value <= 1:
        raise MalformedInput(f"{label} {value} lies outside [0, 1]")
    return value


@dataclass(frozen=True)
class BarPoint:
    """
    A point |t_1, ..., t_n, h_0[h_1|...|h_n]| of EG, or |t_1, ..., t_n, [h_1|...|h_n]| of BG.

    Points are stored in canonical form: letters at t = 0 fold into the
    head (or disappear in BG), letters at equal coordinates are multiplied
    left to right, identity letters are deleted, and letters at t = 1 are
    dropped. Equality of canonical forms is equality of points.

    Attributes:
        group (LetterGroup): Coefficient group.
        coords (tuple): Nondecreasing rationals in [0, 1].
        letters (tuple): One letter per coordinate.
        head (tuple | None): h_0 for an EG point, None for a BG point.
    """
    group: LetterGroup
    coords: tuple
    letters: tuple
    head: tuple = field(default=None)

    def __post_init__(self):
        if len(self.coords) != len(self.letters):
            raise MalformedInput(f"{len(self.coords)} coordinates for {len(self.letters)} letters")
        coords = tuple(_unit_interval(t, "Coordinate") for t in self.coords)
        if any(a > b for a, b in zip(coords, coords[1:])):
            raise MalformedInput(f"Coordinates {[format_scalar(t) for t in coords]} are not nondecreasing")
        letters = tuple(self.group.normalize(h) for h in self.letters)
        head = None if self.head is None else self.group.normalize(self.head)
        coords, letters, head = _canonical(self.group, coords, letters, head)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "head", head)

    @property
    def level(self):
        return len(self.coords)

    @property
    def in_e(self):
        return self.head is not None

    def to_json(self):
        data = {
            "coords": [format_scalar(t) for t in self.coords],
            "letters": [self.group.format(h) for h in self.letters],
        }
        if self.in_e:
            data["head"] = self.group.format(self.head)
        return data

    def __str__(self):
        coords = ", ".join(format_scalar(t) for t in self.coords)
        bars = "|".join(str(self.group.format(h)) for h in self.letters)
        head = str(self.group.format(self.head)) if self.in_e else ""
        return f"|{coords}, {head}[{bars}]|"


def _canonical(group, coords, letters, head):
    e = group.identity
    pairs = list(zip(coords, letters))
    k = 0
    while k < len(pairs) and pairs[k][0] == 0:
        if head is not None:
            head = group.multiply(head, pairs[k][1])
        k += 1
    merged = []
    for t, h in pairs[k:]:
        if merged and merged[-1][0] == t:
            merged[-1] = (t, group.multiply(merged[-1][1], h))
        else:
            merged.append((t, h))
    merged = [(t, h) for t, h in merged if h != e and t != 1]
    return tuple(t for t, _ in merged), tuple(h for _, h in merged), head


def basepoint(group, in_e=True):
    """Level-0 point e[] of EG, or [] of BG"""
    group = letter_group(group)
    return BarPoint(group, (), (), group.identity if in_e else None)


def shuffle_add(u, v):
    """
    Sum of two points: coordinates merged in nondecreasing order with
    their letters carried along, heads multiplied.

    Raises:
        MalformedInput: Points of different groups or of EG and BG mixed.
        ValueError: The coefficient group is not abelian.
    """
    if u.group != v.group:
        raise MalformedInput(f"Cannot add points over {u.group} and {v.group}")
    if u.in_e != v.in_e:
        raise MalformedInput("Cannot add an EG point to a BG point")
    if not u.group.is_abelian:
        raise ValueError(f"Shuffle sum needs an abelian group, got {u.group}")
    pairs = sorted(list(zip(u.coords, u.letters)) + list(zip(v.coords, v.letters)), key=lambda p: p[0])
    head = u.group.multiply(u.head, v.head) if u.in_e else None
    return BarPoint(u.group, tuple(t for t, _ in pairs), tuple(h for _, h in pairs), head)


def negate_point(u):
    """Additive inverse: every letter (and the head) inverted"""
    if not u.group.is_abelian:
        raise ValueError(f"Negation needs an abelian group, got {u.group}")
    head = u.group.inverse(u.head) if u.in_e else None
    return BarPoint(u.group, u.coords, tuple(u.group.inverse(h) for h in u.letters), head)


def scale_point(c, u):
    """Scalar action c·u on points with rational vector letters"""
    if not isinstance(u.group, VectorLetters):
        raise MalformedInput(f"Scalar action needs vector letters, got {u.group}")
    c = _rational(c)
    head = u.group.scale(c, u.head) if u.in_e else None
    return BarPoint(u.group, u.coords, tuple(u.group.scale(c, h) for h in u.letters), head)


def project_to_b(u):
    """EG -> BG, forgetting the head"""
    if not u.in_e:
        raise MalformedInput("Point already lies in BG")
    return BarPoint(u.group, u.coords, u.letters, None)


def contraction_point(x, t):
    """
    Contraction of EG onto its basepoint.

    r(x, t) = |t, min(1, t_1 + t), ..., min(1, t_n + t), e[h_0|h_1|...|h_n]|,
    so r(x, 0) = x and r(x, 1) is the basepoint.

    Raises:
        MalformedInput: If x is a BG point or t lies outside [0, 1].
    """
    if not x.in_e:
        raise MalformedInput("Contraction is defined on EG points")
    t = _unit_interval(t, "Contraction time")
    coords = (t,) + tuple(min(Fraction(1), s + t) for s in x.coords)
    return BarPoint(x.group, coords, (x.head,) + x.letters, x.group.identity)


def splitting_value(u):
    """l(u) = h_0 + Σ (1 - t_k) h_k for an EG point with vector letters"""
    if not isinstance(u.group, VectorLetters) or not u.in_e:
        raise MalformedInput("Splitting is defined on EG points with vector letters")
    value = u.head
    for t, h in zip(u.coords, u.letters):
        value = u.group.multiply(value, u.group.scale(1 - t, h))
    return value


def random_bar_point(group, rng, max_level=4, in_e=True, denominator=6):
    """Random point with coordinates k/denominator, ties and endpoints included"""
    group = letter_group(group)
    level = rng.randint(0, max_level)
    coords = sorted(Fraction(rng.randint(0, denominator), denominator) for _ in range(level))
    letters = [group.random_element(rng) for _ in range(level)]
    head = group.random_element(rng) if in_e else None
    return BarPoint(group, tuple(coords), tuple(letters), head)


class MapDirection(Enum):
    DL_TO_JOIN = "dl_to_join"
    JOIN_TO_DL = "join_to_dl"


@dataclass(frozen=True)
class JoinPoint:
    """
    A point x_0 h ⊕ x_1 y of G * E, with y a point of the next join level.

    Canonical form: weight 1 drops the tail; weight 0 sets the head to e.

    Attributes:
        group (LetterGroup): The finite group G.
        head (tuple): h.
        weight (Fraction): x_0.
        tail (JoinPoint | None): y, absent at weight 1.
    """
    group: LetterGroup
    head: tuple
    weight: Fraction
    tail: object = None

    def __post_init__(self):
        _normalize_cone(self, "Weight")

    @property
    def level(self):
        return 0 if self.tail is None else self.tail.level + 1

    def to_json(self):
        return _cone_json(self, "weight")


@dataclass(frozen=True)
class DLPoint:
    """
    A point h|t|y of the Dold-Lashof model G × C(E) ∪ E.

    Canonical form: t = 1 drops y; t = 0 identifies h|0|y with e|0|h·y.

    Attributes:
        group (LetterGroup): The finite group G.
        head (tuple): h.
        t (Fraction): Cone coordinate.
        tail (DLPoint | None): y, absent at t = 1.
    """
    group: LetterGroup
    head: tuple
    t: Fraction
    tail: object = None

    def __post_init__(self):
        _normalize_cone(self, "Cone coordinate")

    @property
    def level(self):
        return 0 if self.tail is None else self.tail.level + 1

    @property
    def weight(self):
        return self.t

    def to_json(self):
        return _cone_json(self, "t")


def _normalize_cone(point, label):
    cls = type(point)
    group = point.group
    weight_name = "weight" if cls is JoinPoint else "t"
    weight = _unit_interval(getattr(point, weight_name), label)
    head = group.normalize(point.head)
    tail = point.tail
    if tail is not None and (type(tail) is not cls or tail.group != group):
        raise MalformedInput(f"Tail of a {cls.__name__} must be a {cls.__name__} over {group}")
    if tail is None and weight != 1:
        raise MalformedInput(f"{cls.__name__} without a tail needs {weight_name} = 1")
    if weight == 1:
        tail = None
    elif weight == 0:
        if cls is DLPoint:
            tail = act(head, tail)
        head = group.identity
    object.__setattr__(point, weight_name, weight)
    object.__setattr__(point, "head", head)
    object.__setattr__(point, "tail", tail)


def _cone_json(point, weight_name):
    data = {"head": point.group.format(point.head), weight_name: format_scalar(point.weight)}
    if point.tail is not None:
        data["tail"] = point.tail.to_json()
    return data


def act(g, point):
    """Left translation g·point on join or Dold-Lashof points"""
    group = point.group
    g = group.normalize(g)
    if isinstance(point, JoinPoint):
        tail = None if point.tail is None else act(g, point.tail)
        return JoinPoint(group, group.multiply(g, point.head), point.weight, tail)
    if isinstance(point, DLPoint):
        return DLPoint(group, group.multiply(g, point.head), point.t, point.tail)
    raise MalformedInput(f"Cannot act on {type(point).__name__}")


def _dl_to_join(point):
    if point.tail is None:
        return JoinPoint(point.group, point.head, Fraction(1))
    inner = act(point.head, _dl_to_join(point.tail))
    return JoinPoint(point.group, point.head, point.t, inner)


def _join_to_dl(point):
    if point.tail is None:
        return DLPoint(point.group, point.head, Fraction(1))
    inner = _join_to_dl(act(point.group.inverse(point.head), point.tail))
    return DLPoint(point.group, point.head, point.weight, inner)


def dl_join_maps(group, point, direction):
    """
    Equivariant homeomorphisms between the Dold-Lashof model and the join.

    h|t|y -> t·h ⊕ (1 - t)·(h·Φ(y)) and x_0·h ⊕ x_1·y -> h|x_0|Ψ(h^{-1}·y),
    applied recursively down the join levels.

    Args:
        group: Finite letter group (or anything letter_group accepts).
        point (DLPoint | JoinPoint): Point in the source model.
        direction (MapDirection | str): dl_to_join or join_to_dl.

    Returns:
        JoinPoint | DLPoint: Canonical image.

    Raises:
        MalformedInput: Point of the wrong model or over another group.
    """
    group = letter_group(group)
    direction = MapDirection(direction)
    expected = DLPoint if direction is MapDirection.DL_TO_JOIN else JoinPoint
    if not isinstance(point, expected):
        raise MalformedInput(f"{direction.value} expects a {expected.__name__}, got {type(point).__name__}")
    if point.group != group:
        raise MalformedInput(f"Point over {point.group}, expected {group}")
    if direction is MapDirection.DL_TO_JOIN:
        return _dl_to_join(point)
    return _join_to_dl(point)


def random_cone_point(cls, group, level, rng, denominator=4):
    """Random JoinPoint or DLPoint of the given level"""
    group = letter_group(group)
    if level == 0:
        return cls(group, group.random_element(rng), Fraction(1))
    weight = Fraction(rng.randint(0, denominator), denominator)
    tail = random_cone_point(cls, group, level - 1, rng, denominator)
    return cls(group, group.random_element(rng), weight, tail)
