import logging
from dataclasses import dataclass, field

from algebra.errors import MalformedInput
from algebra.matrices import Ring
from deligne.towers import tower_check
from simplicial.cochains import Cochain, coboundary
from simplicial.complexes import format_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GerbeData:
    """
    A degree-3 tower read as a gerbe with connective structure and curving.

    Attributes:
        g (dict): Triple intersection -> Q/Z-valued 0-cochain (transition data).
        A (dict): Double intersection -> rational 1-cochain (connective structure).
        B (dict): Single star -> rational 2-cochain (curving); empty below weight 3.
        curvature (Cochain): Global 3-cochain glued from the local δB.
        consistency (TowerReport): Gluing equations of the tower.
    """
    g: dict
    A: dict
    B: dict
    curvature: Cochain = field(repr=False)
    consistency: object

    @property
    def is_trivial(self):
        return not self.g and not self.A and not self.B

    def to_json(self):
        def local(part):
            return {format_key(S): c.to_json() for S, c in sorted(part.items())}
        return {
            "g": local(self.g),
            "A": local(self.A),
            "B": local(self.B),
            "curvature": self.curvature.to_json(),
            "consistency": self.consistency.to_json(),
        }


def gerbe_view(T):
    """
    Relabel a degree-3 tower as gerbe data: g = exp(T_{2,0}), A = T_{1,1},
    B = T_{0,2}. The curvature takes each 3-simplex to δB on the star of its
    first vertex.

    Raises:
        MalformedInput: If the tower does not have degree 3.
    """
    if T.p != 3:
        raise MalformedInput(f"Gerbe data needs a degree-3 tower, got degree {T.p}")
    X = T.complex
    g = {}
    for S, f in T.components.get((2, 0), {}).items():
        transition = f.to_ring(Ring.QMODZ)
        if not transition.is_zero():
            g[S] = transition
    A = dict(T.components.get((1, 1), {}))
    B = dict(T.components.get((0, 2), {}))

    values = {}
    for tau in X.simplices(3):
        curving = B.get(tau[:1])
        if curving is not None:
            value = coboundary(curving)(tau)
            if value:
                values[tau] = value
    curvature = Cochain(X, 3, Ring.Q, values)
    report = tower_check(T)
    logger.debug(f"Gerbe view: {len(g)} transitions, {len(A)} connections, {len(B)} curvings")
    return GerbeData(g, A, B, curvature, report)
