import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra.errors import CurvatureError, LiftRejected, MalformedInput
from algebra.linear import solve_linear, solve_mixed
from algebra.matrices import IntMatrix, RatMatrix, Ring, block_matrix
from deligne.cocycles import DeligneCocycle, characteristic_class, coboundary_matrix, require_valid
from simplicial.chains import cohomology
from simplicial.cochains import Cochain, coboundary
from simplicial.periods import integral_periods

logger = logging.getLogger(__name__)


def scalar_curvature(x):
    """
    Curvature of a Deligne class at weight equal to degree.

    In the cone model the curvature is the ω component itself; it is
    closed with integral periods and does not change under equivalence.

    Raises:
        CurvatureError: If p ≠ q.
        InvalidCocycle: If x fails its cocycle conditions.
    """
    if x.p != x.q:
        raise CurvatureError(f"Scalar curvature needs p = q, got p = {x.p}, q = {x.q}")
    require_valid(x)
    return x.omega


def weil_kostant_lift(omega, q=None):
    """
    A Deligne cocycle whose curvature is a given closed cochain with integral periods.

    The lift is canonical. c is the combination Σ a_i g_i of the free
    generators of H^p(X; Z) (see integral_generators) that represents [ω],
    with every torsion coordinate zero: the lexicographically first
    combination. θ is the basic solution of δθ = ι(c) - ω from Gauss-Jordan
    elimination, whose support columns are independent, so no smaller
    support solves the system.

    Args:
        omega (Cochain): Rational p-cochain.
        q (int, optional): Weight, at most p; defaults to p.

    Returns:
        DeligneCocycle: Valid cocycle with ω as its curvature component.

    Raises:
        LiftRejected: If ω is not closed or has a non-integral period.
    """
    omega = omega.to_ring(Ring.Q)
    X, p = omega.complex, omega.degree
    q = p if q is None else q
    if q > p and not omega.is_zero():
        raise CurvatureError(f"A degree-{p} curvature needs weight at most {p}, got {q}")

    report = integral_periods(omega, check_closed=True)
    if not report.is_closed:
        raise LiftRejected(f"Degree {p} cochain is not closed")
    bad = report.first_non_integral()
    if bad is not None:
        index, period = bad
        raise LiftRejected(f"Period {index} equals {period}, not an integer", period_index=index, period=period)

    free = free_generators(X, p)
    n_top, n_below = X.count(p), X.count(p - 1)
    blocks = {(0, len(free)): -coboundary_matrix(X, p - 1)}
    if free:
        blocks[(0, 0)] = RatMatrix.from_dense([list(row) for row in zip(*(g.to_vector() for g in free))], len(free))
    solution = solve_linear(block_matrix(RatMatrix, n_top, len(free) + n_below, blocks), omega.to_vector(), Ring.Q)
    coordinates = None if solution is None else [Fraction(a) for a in solution[:len(free)]]
    if coordinates is None or any(a.denominator != 1 for a in coordinates):
        raise LiftRejected(f"No integral class represents the degree {p} cochain")

    c = Cochain.zero(X, p, Ring.Z)
    for a, g in zip(coordinates, free):
        c = c + g.scale(int(a))
    difference = [Fraction(ci) - wi for ci, wi in zip(c.to_vector(), omega.to_vector())]
    theta = solve_linear(coboundary_matrix(X, p - 1), difference, Ring.Q)
    if theta is None:
        raise LiftRejected(f"The degree {p} cochain differs from its integral class by a non-exact cochain")
    lift = DeligneCocycle.from_parts(X, p, q, c=c, omega=omega, theta=theta)
    logger.debug(f"Weil-Kostant lift in degree {p}: coordinates {[int(a) for a in coordinates]}")
    return lift


@dataclass(frozen=True)
class FlatClassData:
    """
    A flat Deligne class as a closed Q/Z-cochain.

    Attributes:
        degree (int): p - 1.
        u (Cochain): Q/Z-cochain with δu = 0.
    """
    degree: int
    u: Cochain = field(repr=False)

    def __post_init__(self):
        if self.u.ring is not Ring.QMODZ or self.u.degree != self.degree:
            raise MalformedInput(f"Flat data needs a degree-{self.degree} Q/Z-cochain")
        if not coboundary(self.u).is_zero():
            raise MalformedInput("Flat data must be closed in Q/Z coefficients")

    def scale(self, k):
        return FlatClassData(self.degree, self.u.scale(k))

    def to_json(self):
        return {"degree": self.degree, "u": self.u.to_json()}


def flat_normal_form(x):
    """
    Flat invariant u = θ mod Z of a cocycle with ω = 0 and p <= q.

    x is trivial exactly when u is exact with Q/Z coefficients
    (see flat_class_is_trivial).

    Raises:
        CurvatureError: If ω ≠ 0 or p > q.
        InvalidCocycle: If x fails its cocycle conditions.
    """
    if x.p > x.q:
        raise CurvatureError(f"Flat normal form needs p <= q, got p = {x.p}, q = {x.q}")
    if not x.omega.is_zero():
        raise CurvatureError("Flat normal form needs zero curvature")
    require_valid(x)
    return FlatClassData(x.p - 1, x.theta.to_ring(Ring.QMODZ))


def flat_class_is_trivial(data):
    """Whether u = k + δv for an integral k and a rational v"""
    X, n = data.u.complex, data.degree
    if n < 0:
        return True
    size = X.count(n)
    lifted = [Fraction(v) for v in data.u.to_vector()]
    return solve_mixed(IntMatrix.identity(size), coboundary_matrix(X, n - 1), lifted) is not None


def flat_class_order(data, limit=64):
    """Smallest m <= limit with m·u exact, or None"""
    for m in range(1, limit + 1):
        if flat_class_is_trivial(data.scale(m)):
            return m
    return None


def flat_cocycle_from_torsion(c, q):
    """
    A flat cocycle (c, 0, b/k) over a torsion integral class [c].

    k is the exponent of the torsion of H^p(X; Z) and δb = k·c.

    Raises:
        MalformedInput: If [c] has a nonzero free coordinate or c is not closed.
    """
    if not coboundary(c).is_zero():
        raise MalformedInput("Integral cochain is not closed")
    coords, group = characteristic_class(c)
    if any(coords[:group.free_rank]):
        raise MalformedInput(f"Class {coords} in {group} is not torsion")
    k = group.exponent
    X, p = c.complex, c.degree
    b = solve_linear(coboundary_matrix(X, p - 1), [k * v for v in c.to_vector()], Ring.Z)
    theta = [Fraction(v, k) for v in b]
    return DeligneCocycle.from_parts(X, p, q, c=c, theta=theta)


def exp_cochain(f):
    """exp: rational cochains -> Q/Z-cochains, reduction mod Z componentwise"""
    return f.to_ring(Ring.QMODZ)


def dlog_consistency(f):
    """δ(exp f) = exp(δf), and exp f = 0 exactly when f is integral"""
    commutes = coboundary(exp_cochain(f)) == exp_cochain(coboundary(f))
    kernel = exp_cochain(f).is_zero() == f.is_integral()
    return commutes and kernel


def integral_generators(X, p):
    """Integral p-cocycles representing the generators of H^p(X; Z), free summands first"""
    result = cohomology(X, Ring.Z, with_generators=True)
    return [Cochain.from_vector(X, p, Ring.Z, [int(v) for v in vector]) for vector in result.generators.get(p, [])]


def free_generators(X, p):
    """The integral generators spanning the free part of H^p(X; Z)"""
    result = cohomology(X, Ring.Z, with_generators=True)
    vectors = result.generators.get(p, [])[:result.group(p).free_rank]
    return [Cochain.from_vector(X, p, Ring.Z, [int(v) for v in vector]) for vector in vectors]
