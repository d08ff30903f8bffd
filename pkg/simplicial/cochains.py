import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra.errors import MalformedInput
from algebra.matrices import Ring, format_scalar, parse_scalar
from simplicial.complexes import format_key, parse_key

logger = logging.getLogger(__name__)


def coerce_value(value, ring):
    """Normalize a scalar for a coefficient ring (Q/Z values land in [0, 1))"""
    if isinstance(value, bool):
        raise MalformedInput("Boolean cochain value")
    value = parse_scalar(value) if isinstance(value, str) else value
    if ring is Ring.Z:
        value = Fraction(value)
        if value.denominator != 1:
            raise MalformedInput(f"Non-integral value {value} in a Z-cochain")
        return value.numerator
    if ring is Ring.Q:
        return Fraction(value)
    return Fraction(value) % 1


@dataclass(frozen=True)
class Cochain:
    """
    A simplicial cochain with values in Z, Q or Q/Z.

    Attributes:
        complex (Complex): Underlying complex.
        degree (int): Degree n; keys are n-simplices.
        ring (Ring): Coefficient ring.
        values (dict): simplex key -> scalar; absent keys are zero.
    """
    complex: object = field(repr=False)
    degree: int
    ring: Ring
    values: dict

    def __post_init__(self):
        ring = Ring.parse(self.ring)
        object.__setattr__(self, "ring", ring)
        cleaned = {}
        for key, value in self.values.items():
            key = tuple(key)
            if len(key) != self.degree + 1 or key not in self.complex:
                raise MalformedInput(f"{format_key(key)} is not a {self.degree}-simplex of the complex")
            value = coerce_value(value, ring)
            if value != 0:
                cleaned[key] = value
        object.__setattr__(self, "values", cleaned)

    @classmethod
    def zero(cls, X, degree, ring=Ring.Q):
        return cls(X, degree, ring, {})

    @classmethod
    def indicator(cls, X, simplex, ring=Ring.Q, value=1):
        return cls(X, len(simplex) - 1, ring, {tuple(simplex): value})

    @classmethod
    def from_vector(cls, X, degree, ring, vector):
        simplices = X.simplices(degree)
        if len(vector) != len(simplices):
            raise MalformedInput(f"Vector of length {len(vector)} for {len(simplices)} {degree}-simplices")
        return cls(X, degree, ring, {s: v for s, v in zip(simplices, vector) if v != 0})

    def to_vector(self):
        zero = 0 if self.ring is Ring.Z else Fraction(0)
        return [self.values.get(s, zero) for s in self.complex.simplices(self.degree)]

    def __call__(self, simplex):
        return self.values.get(tuple(simplex), 0)

    def is_zero(self):
        return not self.values

    def _check_compatible(self, other):
        if self.degree != other.degree or self.ring is not other.ring or self.complex != other.complex:
            raise MalformedInput("Cochains differ in complex, degree or ring")

    def __add__(self, other):
        self._check_compatible(other)
        values = dict(self.values)
        for key, value in other.values.items():
            values[key] = values.get(key, 0) + value
        return Cochain(self.complex, self.degree, self.ring, values)

    def __neg__(self):
        return Cochain(self.complex, self.degree, self.ring, {k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return Cochain(self.complex, self.degree, self.ring, {k: v * factor for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree, self.ring, self.values) == (other.degree, other.ring, other.values) \
            and self.complex == other.complex

    def __hash__(self):
        return hash((self.degree, self.ring, frozenset(self.values.items())))

    def to_ring(self, ring):
        """Change coefficients: Z -> Q is inclusion, Q -> Q/Z is reduction mod 1"""
        ring = Ring.parse(ring)
        if ring is self.ring:
            return self
        if self.ring is Ring.QMODZ and ring is not Ring.QMODZ:
            raise MalformedInput("Q/Z-cochains have no canonical lift")
        return Cochain(self.complex, self.degree, ring, self.values)

    def is_integral(self):
        return all(Fraction(v).denominator == 1 for v in self.values.values())

    def pair(self, chain):
        """Evaluate on a dense chain vector in the basis of degree-n simplices"""
        total = Fraction(0)
        for s, coefficient in zip(self.complex.simplices(self.degree), chain):
            if coefficient:
                total += coefficient * Fraction(self.values.get(s, 0))
        return total % 1 if self.ring is Ring.QMODZ else total

    def restrict(self, simplices):
        """Cochain with the same degree supported only on the given simplices"""
        keep = set(simplices)
        return Cochain(self.complex, self.degree, self.ring, {k: v for k, v in self.values.items() if k in keep})

    def support(self):
        return sorted(self.values)

    def to_json(self):
        return {
            "degree": self.degree,
            "ring": self.ring.value,
            "values": {format_key(k): format_scalar(v) for k, v in sorted(self.values.items())},
        }

    @classmethod
    def from_json(cls, data, X):
        try:
            degree = int(data["degree"])
            ring = Ring.parse(data.get("ring", "Q"))
            values = {parse_key(k): parse_scalar(v) for k, v in data.get("values", {}).items()}
        except (KeyError, TypeError, AttributeError, ValueError) as e:
            raise MalformedInput(f"Malformed cochain JSON: {e}") from e
        return cls(X, degree, ring, values)


def coboundary(theta):
    """
    Simplicial coboundary: (dθ)(σ) = Σ_i (-1)^i θ(σ with v_i dropped).

    Works for Z, Q and Q/Z coefficients; Q/Z results wrap into [0, 1).
    """
    X = theta.complex
    n = theta.degree
    values = {}
    if theta.values:
        for simplex in X.simplices(n + 1):
            total = 0
            for i in range(len(simplex)):
                value = theta.values.get(simplex[:i] + simplex[i + 1:])
                if value:
                    total += value if i % 2 == 0 else -value
            if total:
                values[simplex] = total
    return Cochain(X, n + 1, theta.ring, values)
