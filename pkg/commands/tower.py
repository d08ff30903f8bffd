import logging
from enum import Enum

from algebra.errors import InvalidCocycle, MalformedInput
from commands.base import BaseCommand
from deligne.cocycles import DeligneCocycle, class_is_trivial, cocycle_check
from deligne.curvature import integral_generators, weil_kostant_lift
from deligne.gerbes import gerbe_view
from deligne.towers import CechTower, localize, tower_check, tower_collapse
from simplicial.covers import star_cover
from simplicial.periods import integral_periods
from utils.json_io import load_json

logger = logging.getLogger(__name__)


class TowerAction(Enum):
    CHECK = "check"
    COLLAPSE = "collapse"
    GERBE_VIEW = "gerbe-view"
    ALL = "all"


class TowerCommand(BaseCommand):
    """
    Check, collapse or read as a gerbe a Čech tower over the star cover.

    The tower is read from --tower, or localized from a cocycle given with
    --cocycle, or from the Weil-Kostant lift of --form (default: the first
    integral generator of H^p).
    """

    name = "tower"

    def run(self, manifest, report):
        label, X = self.load_space(manifest)
        cover = star_cover(X)
        action = TowerAction(manifest.action or "all")
        source = None

        if manifest.tower_path:
            T = CechTower.from_json(load_json(manifest.tower_path), X, cover)
        else:
            source = self._source_cocycle(X, label, manifest)
            T = localize(source, cover)
            report.results["source"] = source.to_json()
        report.results.update({"space": label, "p": T.p, "q": T.q, "tower": T.to_json()})

        check = tower_check(T)
        report.results["check"] = check.to_json()
        report.add("Tower cocycle conditions", check.valid, certifies="D(m, T) = 0", witness=check.defect)
        if not check.valid:
            return

        if action in (TowerAction.COLLAPSE, TowerAction.ALL):
            collapsed = tower_collapse(T)
            collapsed_check = cocycle_check(collapsed)
            report.results["collapse"] = collapsed.to_json()
            report.add("Collapse is a Deligne cocycle", collapsed_check.valid,
                       certifies="cocycle_check of the collapse", witness=collapsed_check.defects or None)
            if source is not None:
                difference = class_is_trivial(collapsed - source)
                report.add("Collapse recovers the class", difference.trivial,
                           certifies="collapse(localize(x)) - x is a coboundary",
                           witness=None if difference.witness is None else difference.witness.to_json())

        if action in (TowerAction.GERBE_VIEW, TowerAction.ALL) and T.p == 3:
            gerbe = gerbe_view(T)
            periods = integral_periods(gerbe.curvature, check_closed=True)
            report.results["gerbe"] = gerbe.to_json()
            report.results["gerbe_periods"] = periods.to_json()
            report.add("Gerbe curvature has integral periods", periods.is_closed and periods.has_integral_periods,
                       certifies="the glued δB is closed with integral periods", witness=periods.to_json())
        elif action is TowerAction.GERBE_VIEW:
            raise MalformedInput(f"Gerbe view needs a degree-3 tower, got degree {T.p}")

    def _source_cocycle(self, X, label, manifest):
        if manifest.cocycle_path:
            x = DeligneCocycle.from_json(load_json(manifest.cocycle_path), X)
            if not cocycle_check(x).valid:
                raise InvalidCocycle(f"{manifest.cocycle_path} is not a Deligne cocycle")
            return x
        if manifest.form_path:
            omega = self.load_cochain(manifest.form_path, X)
        else:
            p = self.require(manifest, "p")
            generators = integral_generators(X, p)
            if not generators:
                raise MalformedInput(f"H^{p}({label}; Z) is zero; pass --cocycle or --form")
            omega = generators[0]
        q = manifest.q if manifest.q is not None else omega.degree
        return weil_kostant_lift(omega, q)
