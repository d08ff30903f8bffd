import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra.complexes import Direction, GradedComplex
from algebra.errors import InvalidCocycle, MalformedInput
from algebra.linear import solve_linear, solve_mixed
from algebra.matrices import IntMatrix, RatMatrix, Ring, block_matrix
from simplicial.chains import boundary_matrix, cohomology
from simplicial.cochains import Cochain, coboundary

logger = logging.getLogger(__name__)


def coboundary_matrix(X, n):
    """Matrix of δ: C^n(X) -> C^{n+1}(X); n = -1 gives the empty map into C^0"""
    return boundary_matrix(X, n + 1).transpose()


@dataclass(frozen=True)
class DeligneCocycle:
    """
    A degree-p element (c, ω, θ) of the cone model of Z(q)_D.

    c is an integral p-cochain, ω a rational p-cochain (zero unless p >= q)
    and θ a rational (p-1)-cochain. Construction checks only shapes; the
    cocycle conditions δc = 0, δω = 0 and ι(c) - ω - δθ = 0 are decided by
    cocycle_check.

    Attributes:
        complex (Complex): Underlying complex.
        p (int): Degree.
        q (int): Weight.
        c (Cochain): Z-cochain of degree p.
        omega (Cochain): Q-cochain of degree p.
        theta (Cochain): Q-cochain of degree p - 1.
    """
    complex: object = field(repr=False)
    p: int
    q: int
    c: Cochain
    omega: Cochain
    theta: Cochain

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise MalformedInput(f"Degree and weight must be nonnegative, got p = {self.p}, q = {self.q}")
        expected = (("c", self.c, self.p, Ring.Z), ("omega", self.omega, self.p, Ring.Q),
                    ("theta", self.theta, self.p - 1, Ring.Q))
        for name, cochain, degree, ring in expected:
            if cochain.complex != self.complex:
                raise MalformedInput(f"Component {name} lives on another complex")
            if cochain.degree != degree or cochain.ring is not ring:
                raise MalformedInput(
                    f"Component {name} must be a degree-{degree} {ring.value}-cochain, "
                    f"got degree {cochain.degree} over {cochain.ring.value}"
                )
        if self.p < self.q and not self.omega.is_zero():
            raise MalformedInput(f"ω must vanish in degree {self.p} < weight {self.q}")

    @classmethod
    def zero(cls, X, p, q):
        return cls(X, p, q, Cochain.zero(X, p, Ring.Z), Cochain.zero(X, p, Ring.Q), Cochain.zero(X, p - 1, Ring.Q))

    @classmethod
    def from_parts(cls, X, p, q, c=None, omega=None, theta=None):
        """Build from cochains or dense vectors; missing parts are zero"""
        def part(value, degree, ring):
            if value is None:
                return Cochain.zero(X, degree, ring)
            if isinstance(value, Cochain):
                return value.to_ring(ring)
            return Cochain.from_vector(X, degree, ring, list(value))
        return cls(X, p, q, part(c, p, Ring.Z), part(omega, p, Ring.Q), part(theta, p - 1, Ring.Q))

    def _check_compatible(self, other):
        if (self.p, self.q) != (other.p, other.q) or self.complex != other.complex:
            raise MalformedInput("Deligne cochains differ in complex, degree or weight")

    def __add__(self, other):
        self._check_compatible(other)
        return DeligneCocycle(self.complex, self.p, self.q,
                              self.c + other.c, self.omega + other.omega, self.theta + other.theta)

    def __neg__(self):
        return DeligneCocycle(self.complex, self.p, self.q, -self.c, -self.omega, -self.theta)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        """Integer multiple k·x"""
        if int(k) != k:
            raise MalformedInput(f"Deligne classes are scaled by integers, got {k}")
        k = int(k)
        return DeligneCocycle(self.complex, self.p, self.q, self.c.scale(k), self.omega.scale(k), self.theta.scale(k))

    def is_zero(self):
        return self.c.is_zero() and self.omega.is_zero() and self.theta.is_zero()

    def to_vector(self):
        """Coordinates in the basis of deligne_complex: c, then ω when p >= q, then θ"""
        omega = self.omega.to_vector() if self.p >= self.q else []
        return [Fraction(v) for v in self.c.to_vector()] + omega + self.theta.to_vector()

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "c": self.c.to_json(),
            "omega": self.omega.to_json(),
            "theta": self.theta.to_json(),
        }

    @classmethod
    def from_json(cls, data, X):
        try:
            p, q = int(data["p"]), int(data["q"])
            parts = {name: data.get(name) for name in ("c", "omega", "theta")}
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise MalformedInput(f"Malformed Deligne cocycle JSON: {e}") from e
        return cls.from_parts(
            X, p, q,
            **{name: Cochain.from_json(value, X) for name, value in parts.items() if value is not None},
        )


def deligne_differential(x):
    """d(c, ω, θ) = (δc, δω, ι(c) - ω - δθ), an element of degree p + 1"""
    X = x.complex
    omega = coboundary(x.omega)
    theta = x.c.to_ring(Ring.Q) - x.omega - coboundary(x.theta)
    return DeligneCocycle(X, x.p + 1, x.q, coboundary(x.c), omega, theta)


def coboundary_of(X, p, q, b=None, zeta=None, eta=None):
    """
    The exact Deligne cocycle d(b, ζ, η) of degree p.

    Args:
        b: Integral (p-1)-cochain.
        zeta: Rational (p-1)-cochain, zero unless p - 1 >= q.
        eta: Rational (p-2)-cochain.
    """
    return deligne_differential(DeligneCocycle.from_parts(X, p - 1, q, b, zeta, eta))


def deligne_complex(X, q, p_max):
    """
    Cone model of Z(q)_D on a complex, in degrees 0..p_max.

    Degree n is C^n(X; Z) ⊕ C^n_{>=q}(X; Q) ⊕ C^{n-1}(X; Q), where the middle
    summand is zero below degree q, and d(c, ω, θ) = (δc, δω, ι(c) - ω - δθ).
    The complex is returned over Q; the labels tag each basis vector with its
    component so the integral part stays identifiable.

    Args:
        X (Complex): The space.
        q (int): Weight, nonnegative.
        p_max (int): Highest degree.

    Returns:
        GradedComplex: Cochain complex; d∘d = 0 is asserted on construction.
    """
    if q < 0:
        raise MalformedInput(f"Weight must be nonnegative, got {q}")
    if p_max < 0:
        raise MalformedInput(f"Highest degree must be nonnegative, got {p_max}")

    def sizes(n):
        return X.count(n), (X.count(n) if n >= q else 0), X.count(n - 1)

    ranks = {n: sum(sizes(n)) for n in range(p_max + 1)}
    labels = {}
    for n in range(p_max + 1):
        labels[n] = ([("c", s) for s in X.simplices(n)]
                     + ([("omega", s) for s in X.simplices(n)] if n >= q else [])
                     + [("theta", s) for s in X.simplices(n - 1)])

    differentials = {}
    for n in range(p_max):
        c_in, omega_in, _ = sizes(n)
        c_out, omega_out, _ = sizes(n + 1)
        blocks = {
            (0, 0): coboundary_matrix(X, n),
            (c_out + omega_out, 0): IntMatrix.identity(c_in),
            (c_out + omega_out, c_in + omega_in): -coboundary_matrix(X, n - 1),
        }
        if omega_in:
            blocks[(c_out, c_in)] = coboundary_matrix(X, n)
            blocks[(c_out + omega_out, c_in)] = -IntMatrix.identity(omega_in)
        differentials[n] = block_matrix(RatMatrix, ranks[n + 1], ranks[n], blocks)

    logger.debug(f"Deligne complex Z({q})_D on {X!r}: ranks {ranks}")
    return GradedComplex(ring=Ring.Q, lo=0, hi=p_max, ranks=ranks, differentials=differentials,
                         direction=Direction.COCHAIN, labels=labels)


@dataclass(frozen=True)
class CocycleReport:
    """
    Attributes:
        valid (bool): All cocycle conditions hold.
        defects (list): Names of the violated conditions.
        char_class (list | None): Coordinates of [c] in the generators of
            H^p(X; Z) (free first, torsion reduced), None when δc ≠ 0.
        group (FgAbGroup): H^p(X; Z).
    """
    valid: bool
    defects: list
    char_class: list
    group: object

    @property
    def class_is_zero(self):
        return self.char_class is not None and not any(self.char_class)

    def to_json(self):
        return {
            "valid": self.valid,
            "defects": self.defects,
            "char_class": self.char_class,
            "group": self.group.to_json(),
        }


def characteristic_class(c):
    """Coordinates of an integral cocycle in the SNF generators of H^p(X; Z)"""
    result = cohomology(c.complex, Ring.Z, with_generators=True)
    return result.express(c.degree, c.to_vector()), result.group(c.degree)


def cocycle_check(x):
    """
    Decide the cocycle conditions and compute the characteristic class.

    Args:
        x (DeligneCocycle): Candidate.

    Returns:
        CocycleReport: Verdict, defects and the class of c in H^p(X; Z).
    """
    defects = []
    c_closed = coboundary(x.c).is_zero()
    if not c_closed:
        defects.append("δc ≠ 0")
    if not coboundary(x.omega).is_zero():
        defects.append("δω ≠ 0")
    if not (x.c.to_ring(Ring.Q) - x.omega - coboundary(x.theta)).is_zero():
        defects.append("ι(c) - ω - δθ ≠ 0")

    if c_closed:
        char_class, group = characteristic_class(x.c)
    else:
        char_class, group = None, cohomology(x.complex, Ring.Z).group(x.p)
    if defects:
        logger.debug(f"Degree {x.p} Deligne cochain fails: {', '.join(defects)}")
    return CocycleReport(valid=not defects, defects=defects, char_class=char_class, group=group)


def require_valid(x):
    report = cocycle_check(x)
    if not report.valid:
        raise InvalidCocycle(f"Not a Deligne cocycle: {', '.join(report.defects)}")
    return report


@dataclass(frozen=True)
class TrivialityReport:
    """
    Attributes:
        trivial (bool): x = d(b, ζ, η) for some witness.
        witness (DeligneCocycle | None): (b, ζ, η) of degree p - 1.
    """
    trivial: bool
    witness: DeligneCocycle = None

    def to_json(self):
        return {"trivial": self.trivial, "witness": None if self.witness is None else self.witness.to_json()}


def class_is_trivial(x):
    """
    Decide whether a Deligne cocycle is a coboundary.

    Looks for an integral b, a rational ζ of degree >= q and a rational η with
    c = δb, ω = δζ and θ = ι(b) - ζ - δη. The integral unknowns b and the
    rational unknowns (ζ, η) enter one mixed system solved exactly.

    Args:
        x (DeligneCocycle): A valid cocycle.

    Returns:
        TrivialityReport: Verdict and witness.

    Raises:
        InvalidCocycle: If x fails its cocycle conditions.
    """
    require_valid(x)
    X, p, q = x.complex, x.p, x.q
    if p == 0:
        # nothing below degree 0, so no witness to report
        return TrivialityReport(x.is_zero())

    n_b, n_top = X.count(p - 1), X.count(p)
    n_zeta = n_b if p - 1 >= q else 0
    n_eta = X.count(p - 2)
    rows = 2 * n_top + n_b

    delta = coboundary_matrix(X, p - 1)
    A_int = block_matrix(IntMatrix, rows, n_b, {
        (0, 0): delta,
        (2 * n_top, 0): IntMatrix.identity(n_b),
    })
    rational_blocks = {(2 * n_top, n_zeta): -coboundary_matrix(X, p - 2)}
    if n_zeta:
        rational_blocks[(n_top, 0)] = delta
        rational_blocks[(2 * n_top, 0)] = -IntMatrix.identity(n_zeta)
    A_rat = block_matrix(RatMatrix, rows, n_zeta + n_eta, rational_blocks)
    rhs = [Fraction(v) for v in x.c.to_vector()] + x.omega.to_vector() + x.theta.to_vector()

    solution = solve_mixed(A_int, A_rat, rhs)
    if solution is None:
        logger.debug(f"Degree {p} class is nontrivial")
        return TrivialityReport(False)
    b, rational = solution
    witness = DeligneCocycle.from_parts(X, p - 1, q, b, rational[:n_zeta] if n_zeta else None, rational[n_zeta:])
    return TrivialityReport(True, witness)


def remove_integral_part(x):
    """
    An equivalent cocycle (0, ω, θ - ι(b)) with δb = c, or None when the
    characteristic class is nonzero.
    """
    require_valid(x)
    X, p = x.complex, x.p
    b = solve_linear(coboundary_matrix(X, p - 1), x.c.to_vector(), Ring.Z) if p else None
    if b is None:
        return x if x.c.is_zero() else None
    return x - coboundary_of(X, p, x.q, b=b)


def random_cochain(X, degree, ring, rng, density=0.5, denominators=(1, 2, 3)):
    values = {}
    for s in X.simplices(degree):
        if rng.random() < density:
            numerator = rng.randint(-4, 4)
            values[s] = numerator if ring is Ring.Z else Fraction(numerator, rng.choice(denominators))
    return Cochain(X, degree, ring, values)


def random_exact(X, p, q, rng):
    """d(b, ζ, η) for random b, ζ, η"""
    zeta = random_cochain(X, p - 1, Ring.Q, rng) if p - 1 >= q else None
    return coboundary_of(X, p, q, random_cochain(X, p - 1, Ring.Z, rng), zeta,
                         random_cochain(X, p - 2, Ring.Q, rng))
