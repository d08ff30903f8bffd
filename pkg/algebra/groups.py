import re
from dataclasses import dataclass, field
from math import gcd

from algebra.errors import MalformedInput

_TERM = re.compile(r"^(?:Z(?:\^(\d+))?|Z/(\d+)(?:\^(\d+))?|0)$")


def invariant_factors(orders):
    """
    Normalize a list of cyclic orders into invariant factors.

    Orders of 0 mean infinite cyclic; orders of 1 are dropped.

    Returns:
        tuple: (free_rank, torsion) with torsion d_1 | d_2 | ... and every d_i >= 2.
    """
    free_rank = sum(1 for d in orders if d == 0)
    # Smith form of a diagonal matrix, done directly on the divisors
    divisors = sorted(abs(d) for d in orders if abs(d) > 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors)):
            for j in range(i + 1, len(divisors)):
                a, b = divisors[i], divisors[j]
                if b % a:
                    g = gcd(a, b)
                    divisors[i], divisors[j] = g, a * b // g
                    changed = True
        divisors = sorted(divisors)
    return free_rank, tuple(d for d in divisors if d > 1)


@dataclass(frozen=True)
class FgAbGroup:
    """
    A finitely generated abelian group Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k.

    Attributes:
        free_rank (int): Rank r of the free part.
        torsion (tuple): Invariant factors d_i >= 2 with d_i | d_{i+1}.
    """
    free_rank: int = 0
    torsion: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.free_rank < 0:
            raise MalformedInput("Negative free rank")
        rank, torsion = invariant_factors(list(self.torsion))
        if rank or torsion != tuple(self.torsion):
            raise MalformedInput(f"Torsion {self.torsion} is not in invariant-factor form")

    @classmethod
    def from_orders(cls, orders):
        rank, torsion = invariant_factors(list(orders))
        return cls(rank, torsion)

    @classmethod
    def parse(cls, text):
        """Parse strings like "Z", "Z/2", "Z^2+Z/2+Z/4" or "0" """
        orders = []
        cleaned = str(text).replace(" ", "").replace("⊕", "+")
        if not cleaned:
            raise MalformedInput("Empty group description")
        for term in cleaned.split("+"):
            match = _TERM.match(term)
            if not match:
                raise MalformedInput(f"Cannot parse group term {term!r}")
            free_power, modulus, mod_power = match.groups()
            if term == "0":
                continue
            if modulus is not None:
                orders.extend([int(modulus)] * int(mod_power or 1))
            else:
                orders.extend([0] * int(free_power or 1))
        return cls.from_orders(orders)

    @classmethod
    def from_json(cls, data):
        try:
            return cls.from_orders([0] * int(data.get("rank", 0)) + [int(d) for d in data.get("torsion", [])])
        except (AttributeError, TypeError, ValueError) as e:
            raise MalformedInput(f"Malformed group JSON: {e}") from e

    def to_json(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @property
    def orders(self):
        """Cyclic orders of a canonical generating set (0 = infinite)"""
        return [0] * self.free_rank + list(self.torsion)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        if not self.is_finite:
            return None
        result = 1
        for d in self.torsion:
            result *= d
        return result

    @property
    def exponent(self):
        """Exponent of the torsion subgroup (1 when torsion-free)"""
        return self.torsion[-1] if self.torsion else 1

    def torsion_subgroup(self):
        return FgAbGroup(0, self.torsion)

    def direct_sum(self, other):
        return FgAbGroup.from_orders(self.orders + other.orders)

    def __str__(self):
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts)


Z = FgAbGroup(1)
TRIVIAL = FgAbGroup()


def cyclic(n):
    """Z/n, with cyclic(0) = Z"""
    return FgAbGroup.from_orders([n])
