import logging
from dataclasses import dataclass
from fractions import Fraction

from algebra.errors import MalformedInput
from algebra.matrices import Ring, format_scalar
from simplicial.chains import simplicial_homology
from simplicial.cochains import coboundary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodReport:
    """
    Attributes:
        is_closed (bool): Whether δθ = 0.
        periods (tuple | None): Pairings with the free integral homology
            generators; None when closedness was required and failed.
        has_integral_periods (bool): All periods are integers.
    """
    is_closed: bool
    periods: tuple
    has_integral_periods: bool

    def first_non_integral(self):
        """(index, period) of the first non-integral period, or None"""
        for i, period in enumerate(self.periods or ()):
            if period.denominator != 1:
                return i, period
        return None

    def to_json(self):
        return {
            "closed": self.is_closed,
            "periods": None if self.periods is None else [format_scalar(p) for p in self.periods],
            "integral": self.has_integral_periods,
        }


def period_cycles(X, n):
    """Integral n-cycles whose classes form a basis of H_n(X; Z) modulo torsion"""
    result = simplicial_homology(X, Ring.Z, with_generators=True)
    free = result.group(n).free_rank
    return result.generators.get(n, [])[:free]


def integral_periods(theta, check_closed=True):
    """
    Pair a rational cochain against a basis of integral homology mod torsion.

    Args:
        theta (Cochain): Rational cochain.
        check_closed (bool): Report "not closed" without periods when δθ ≠ 0.

    Returns:
        PeriodReport: Closedness, period vector and integrality verdict.
    """
    if theta.ring is not Ring.Q:
        raise MalformedInput(f"Periods are defined for Q-cochains, got {theta.ring.value}")
    closed = coboundary(theta).is_zero()
    if check_closed and not closed:
        logger.debug(f"Degree {theta.degree} cochain is not closed")
        return PeriodReport(is_closed=False, periods=None, has_integral_periods=False)

    periods = tuple(Fraction(theta.pair(z)) for z in period_cycles(theta.complex, theta.degree))
    integral = all(p.denominator == 1 for p in periods)
    return PeriodReport(is_closed=closed, periods=periods, has_integral_periods=integral)
