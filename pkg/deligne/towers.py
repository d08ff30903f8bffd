import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra.errors import InvalidCocycle, MalformedInput
from algebra.linear import solve_linear
from algebra.matrices import Ring, RatMatrix
from deligne.cocycles import DeligneCocycle, deligne_differential, random_cochain, require_valid
from simplicial.cochains import Cochain, coboundary
from simplicial.complexes import format_key, parse_key
from simplicial.covers import Cover, star_cover

logger = logging.getLogger(__name__)


def tower_bidegrees(p, q):
    """Bidegrees (r, s) of the local components of a degree-p tower at weight q"""
    return [(p - 1 - s, s) for s in range(min(q - 1, p - 1) + 1)]


@dataclass(frozen=True)
class CechTower:
    """
    Čech-simplicial data (m, T) of total degree p over the star cover.

    m is a Čech p-cochain of integers (constant on each (p+1)-fold
    intersection); T_{r,s} assigns to each r-simplex S of the nerve a
    rational s-cochain supported on the intersection U_S. Absent entries
    are zero. The total differential is D = δ̌ + (-1)^r δ, with ι on the
    integral part.

    Attributes:
        cover (Cover): Star cover of the complex.
        p (int): Total degree.
        q (int): Weight; local components stop at s = q - 1.
        integral (dict): p-simplex S -> int.
        components (dict): (r, s) -> {r-simplex S: Cochain of degree s}.
    """
    cover: Cover = field(repr=False)
    p: int
    q: int
    integral: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        X = self.cover.complex
        if self.p < 0 or self.q < 1:
            raise MalformedInput(f"Tower needs p >= 0 and q >= 1, got p = {self.p}, q = {self.q}")
        integral = {}
        for S, value in self.integral.items():
            S = tuple(S)
            if len(S) != self.p + 1 or S not in X:
                raise MalformedInput(f"Integral part keyed by {format_key(S)}, not a {self.p}-simplex")
            if int(value) != value:
                raise MalformedInput(f"Integral part has non-integer value {value} on {format_key(S)}")
            if value:
                integral[S] = int(value)

        allowed = set(tower_bidegrees(self.p, self.q))
        components = {}
        for (r, s), local in self.components.items():
            if (r, s) not in allowed:
                raise MalformedInput(f"Bidegree ({r}, {s}) does not occur in degree {self.p} at weight {self.q}")
            cleaned = {}
            for S, cochain in local.items():
                S = tuple(S)
                if len(S) != r + 1 or S not in X:
                    raise MalformedInput(f"Component ({r}, {s}) keyed by {format_key(S)}, not an {r}-simplex")
                if cochain.degree != s or cochain.complex != X:
                    raise MalformedInput(f"Component ({r}, {s}) on {format_key(S)} is not a degree-{s} cochain")
                outside = set(cochain.values) - self.cover.intersection(S)
                if outside:
                    raise MalformedInput(
                        f"Component ({r}, {s}) on {format_key(S)} is supported outside the intersection, "
                        f"e.g. on {format_key(min(outside))}"
                    )
                if not cochain.is_zero():
                    cleaned[S] = cochain.to_ring(Ring.Q)
            components[(r, s)] = cleaned
        object.__setattr__(self, "integral", integral)
        object.__setattr__(self, "components", components)

    @property
    def complex(self):
        return self.cover.complex

    def local(self, r, s, S):
        """T_{r,s} on U_S, zero when absent"""
        found = self.components.get((r, s), {}).get(tuple(S))
        return found if found is not None else Cochain.zero(self.complex, s, Ring.Q)

    def is_zero(self):
        return not self.integral and not any(self.components.values())

    def __eq__(self, other):
        if not isinstance(other, CechTower):
            return NotImplemented
        return (self.p, self.q, self.integral) == (other.p, other.q, other.integral) \
            and {k: v for k, v in self.components.items() if v} == {k: v for k, v in other.components.items() if v}

    def __hash__(self):
        return hash((self.p, self.q, frozenset(self.integral.items())))

    def __add__(self, other):
        if (self.p, self.q) != (other.p, other.q) or self.complex != other.complex:
            raise MalformedInput("Towers differ in complex, degree or weight")
        integral = dict(self.integral)
        for S, value in other.integral.items():
            integral[S] = integral.get(S, 0) + value
        components = {}
        for key in tower_bidegrees(self.p, self.q):
            r, s = key
            keys = set(self.components.get(key, {})) | set(other.components.get(key, {}))
            components[key] = {S: self.local(r, s, S) + other.local(r, s, S) for S in keys}
        return CechTower(self.cover, self.p, self.q, integral, components)

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "integral": {format_key(S): value for S, value in sorted(self.integral.items())},
            "components": [
                {"r": r, "s": s, "local": {format_key(S): c.to_json() for S, c in sorted(local.items())}}
                for (r, s), local in sorted(self.components.items())
            ],
        }

    @classmethod
    def from_json(cls, data, X, cover=None):
        cover = cover or star_cover(X)
        try:
            p, q = int(data["p"]), int(data["q"])
            integral = {parse_key(k): int(v) for k, v in data.get("integral", {}).items()}
            components = {}
            for entry in data.get("components", []):
                key = (int(entry["r"]), int(entry["s"]))
                components[key] = {parse_key(k): Cochain.from_json(v, X) for k, v in entry["local"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise MalformedInput(f"Malformed tower JSON: {e}") from e
        return cls(cover, p, q, integral, components)


def _restrict(cover, S, cochain):
    return cochain.restrict(cover.intersection(tuple(S)))


def _cech(cover, r, s, lookup):
    """(δ̌T)_S = Σ_i (-1)^i T_{S without S_i} restricted to U_S, for (r+1)-simplices S"""
    X = cover.complex
    result = {}
    for S in cover.nerve_simplices(r + 1):
        total = Cochain.zero(X, s, Ring.Q)
        for i in range(len(S)):
            face = lookup(S[:i] + S[i + 1:])
            if not face.is_zero():
                total = total + (face if i % 2 == 0 else -face)
        total = _restrict(cover, S, total)
        if not total.is_zero():
            result[S] = total
    return result


def _constant(cover, S, value):
    """ι: the integer value as a locally constant 0-cochain on U_S"""
    X = cover.complex
    return Cochain(X, 0, Ring.Q, {(v,): value for (v,) in X.simplices(0) if (v,) in cover.intersection(tuple(S))})


def tower_differential(T):
    """
    Total differential D = δ̌ + (-1)^r δ of a tower, with ι from the integral
    part into local 0-cochains. The result has degree p + 1; components
    beyond s = q - 1 are truncated.
    """
    cover, p, q = T.cover, T.p, T.q
    X = cover.complex
    integral = {}
    for S in X.simplices(p + 1):
        value = sum((-1) ** i * T.integral.get(S[:i] + S[i + 1:], 0) for i in range(len(S)))
        if value:
            integral[S] = value

    components = {}
    for r, s in tower_bidegrees(p + 1, q):
        local = {}
        if s == 0:
            sign = (-1) ** p
            for S, value in T.integral.items():
                local[S] = _constant(cover, S, sign * value)
        else:
            sign = (-1) ** r
            for S in X.simplices(r):
                term = T.local(r, s - 1, S)
                if not term.is_zero():
                    local[S] = _restrict(cover, S, coboundary(term)).scale(sign)
        if r >= 1 and (r - 1, s) in tower_bidegrees(p, q):
            for S, value in _cech(cover, r - 1, s, lambda F: T.local(r - 1, s, F)).items():
                local[S] = local[S] + value if S in local else value
        components[(r, s)] = local
    return CechTower(cover, p + 1, q, integral, components)


@dataclass(frozen=True)
class TowerReport:
    """
    Attributes:
        valid (bool): D(m, T) = 0.
        defect (dict | None): First violated equation and the intersection
            key where it fails.
    """
    valid: bool
    defect: dict = None

    def to_json(self):
        return {"valid": self.valid, "defect": self.defect}


def _equation(p, r, s):
    if s == 0:
        return "ι(m) = ±δ̌T_{%d,0}" % (p - 1)
    if r == 0:
        return "δT_{0,%d} = 0" % (s - 1)
    return "δT_{%d,%d} = ±δ̌T_{%d,%d}" % (r, s - 1, r - 1, s)


def tower_check(T):
    """
    Verify the tower cocycle conditions: δ̌m = 0, ι(m) = ±δ̌T_{p-1,0}, and
    δT_{r,s} = ±δ̌T_{r-1,s+1} wherever both sides live below weight q.

    Returns:
        TowerReport: Verdict with the first defect, in bidegree order.
    """
    DT = tower_differential(T)
    if DT.integral:
        S = min(DT.integral)
        return TowerReport(False, {"equation": "δ̌m = 0", "intersection": format_key(S)})
    for r, s in sorted(DT.components, key=lambda key: key[1]):
        local = DT.components[(r, s)]
        if local:
            S = min(local)
            return TowerReport(False, {"equation": _equation(T.p, r, s), "intersection": format_key(S)})
    return TowerReport(True)


def _front_back(X, degree, r, lookup):
    """Global degree-cochain τ -> lookup(front r-face)(back face)"""
    values = {}
    for tau in X.simplices(degree):
        local = lookup(tau[:r + 1])
        value = local(tau[r:])
        if value:
            values[tau] = value
    return Cochain(X, degree, Ring.Q, values)


def tower_collapse(T, check=True):
    """
    Collapse a tower to a cone-model cochain by the front-face/back-face rule.

    For τ = [w_0 < ... < w_n] a local component T_{r,s} is read on the Čech
    index [w_0..w_r] and evaluated on the simplex [w_r..w_n]. The result is
    (m, (-1)^q·AW(δT_{p-q,q-1}), (-1)^{p-1}·Σ AW(T_{r,s})), where AW is this
    front/back evaluation; the map commutes with the differentials.

    Args:
        T (CechTower): Tower.
        check (bool): Reject towers failing tower_check.

    Returns:
        DeligneCocycle: Degree-p element of the cone model.

    Raises:
        InvalidCocycle: If check is set and the tower is not a cocycle.
    """
    if check:
        report = tower_check(T)
        if not report.valid:
            raise InvalidCocycle(f"Tower fails {report.defect['equation']} on {report.defect['intersection']}")
    X, p, q = T.complex, T.p, T.q
    c = Cochain(X, p, Ring.Z, T.integral)

    theta = Cochain.zero(X, p - 1, Ring.Q)
    for r, s in tower_bidegrees(p, q):
        theta = theta + _front_back(X, p - 1, r, lambda S: T.local(r, s, S))
    theta = theta.scale((-1) ** (p - 1))

    omega = Cochain.zero(X, p, Ring.Q)
    if p >= q:
        r = p - q
        omega = _front_back(X, p, r, lambda S: coboundary(T.local(r, q - 1, S))).scale((-1) ** q)
    return DeligneCocycle(X, p, q, c, omega, theta)


def _unit_towers(cover, p, q):
    """Basis of the local part of degree-p towers: one unit value per (r, s, S, σ)"""
    X = cover.complex
    units = []
    for r, s in tower_bidegrees(p, q):
        for S in X.simplices(r):
            for sigma in cover.local_simplices(S, s):
                units.append((r, s, S, sigma))
    return units


def _tower_from_coordinates(cover, p, q, integral, units, vector):
    components = {key: {} for key in tower_bidegrees(p, q)}
    for (r, s, S, sigma), value in zip(units, vector):
        if value:
            local = components[(r, s)].setdefault(S, {})
            local[sigma] = value
    X = cover.complex
    built = {key: {S: Cochain(X, key[1], Ring.Q, values) for S, values in local.items()}
             for key, local in components.items()}
    return CechTower(cover, p, q, integral, built)


def _flatten(T):
    """Local part of a tower as a dense vector in the unit-tower order"""
    return [Fraction(T.local(r, s, S)(sigma)) for r, s, S, sigma in _unit_towers(T.cover, T.p, T.q)]


def localize(x, cover=None):
    """
    Tower over the star cover whose collapse is equivalent to x.

    The integral part is m = c; the local part T and an adjustment
    (ζ, η) solve D(m, T) = 0 and collapse(m, T) = x + d(0, ζ, η) in one
    rational linear solve.

    Args:
        x (DeligneCocycle): A cocycle.
        cover (Cover, optional): Defaults to the star cover of x.complex.

    Returns:
        CechTower: Valid tower of degree p.

    Raises:
        InvalidCocycle: If no such tower exists (x is not a cocycle).
    """
    require_valid(x)
    X, p, q = x.complex, x.p, x.q
    cover = cover or star_cover(X)
    integral = dict(x.c.values)
    units = _unit_towers(cover, p, q)
    n_zeta = X.count(p - 1) if p - 1 >= q else 0
    n_eta = X.count(p - 2)

    def equations(tower, zeta=None, eta=None):
        """Left-hand sides: local part of D(tower), then collapse - d(0, ζ, η) as (ω, θ)"""
        D = _flatten(tower_differential(tower))
        collapsed = tower_collapse(tower, check=False)
        if zeta is not None or eta is not None:
            shift = deligne_differential(DeligneCocycle.from_parts(X, p - 1, q, None, zeta, eta))
            collapsed = collapsed - shift
        return D + collapsed.omega.to_vector() + collapsed.theta.to_vector()

    base = equations(CechTower(cover, p, q, integral, {}))
    target = [Fraction(0)] * (len(base) - X.count(p) - X.count(p - 1)) \
        + x.omega.to_vector() + x.theta.to_vector()
    rhs = [t - b for t, b in zip(target, base)]

    columns = []
    for j in range(len(units)):
        unit = [0] * len(units)
        unit[j] = 1
        columns.append(equations(_tower_from_coordinates(cover, p, q, {}, units, unit)))
    for j in range(n_zeta):
        zeta = [Fraction(int(i == j)) for i in range(n_zeta)]
        columns.append(equations(CechTower(cover, p, q), zeta=zeta))
    for j in range(n_eta):
        eta = [Fraction(int(i == j)) for i in range(n_eta)]
        columns.append(equations(CechTower(cover, p, q), eta=eta))

    A = RatMatrix.from_columns(columns, len(rhs))
    solution = solve_linear(A, rhs, Ring.Q)
    if solution is None:
        raise InvalidCocycle(f"No tower localizes the degree {p} cochain; it is not a cocycle")
    tower = _tower_from_coordinates(cover, p, q, integral, units, solution[:len(units)])
    logger.debug(f"Localized degree {p} cocycle onto {len(units)} local coordinates")
    return tower


def random_tower(cover, p, q, rng, density=0.3):
    """Random tower with small integral part and rational local components"""
    X = cover.complex
    integral = {S: rng.randint(-2, 2) for S in X.simplices(p) if rng.random() < density}
    components = {}
    for r, s in tower_bidegrees(p, q):
        local = {}
        for S in X.simplices(r):
            if rng.random() < density:
                noise = random_cochain(X, s, Ring.Q, rng, density=density)
                local[S] = _restrict(cover, S, noise)
        components[(r, s)] = local
    return CechTower(cover, p, q, integral, components)
