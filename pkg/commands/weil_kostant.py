import logging

from algebra.errors import LiftRejected, MalformedInput
from commands.base import BaseCommand
from deligne.cocycles import characteristic_class, cocycle_check
from deligne.curvature import integral_generators, scalar_curvature, weil_kostant_lift

logger = logging.getLogger(__name__)


class WeilKostantCommand(BaseCommand):
    """
    Lift a closed rational cochain with integral periods to a Deligne cocycle.

    The form comes from --form; without one the first integral generator of
    H^p(X; Z) is used. A rejected form is a verification failure whose
    witness names the offending period.
    """

    name = "weil-kostant"

    def run(self, manifest, report):
        label, X = self.load_space(manifest)
        if manifest.form_path:
            omega = self.load_cochain(manifest.form_path, X)
            p = omega.degree
            if manifest.p is not None and manifest.p != p:
                raise MalformedInput(f"--p {manifest.p} disagrees with the degree-{p} form")
        else:
            p = self.require(manifest, "p")
            generators = integral_generators(X, p)
            if not generators:
                raise MalformedInput(f"H^{p}({label}; Z) is zero; pass a form with --form")
            omega = generators[0]
        q = manifest.q if manifest.q is not None else p
        report.results = {"space": label, "p": p, "q": q, "form": omega.to_json()}

        try:
            lift = weil_kostant_lift(omega, q)
        except LiftRejected as e:
            report.add(
                "Form admits a lift",
                False,
                certifies="closed with integral periods",
                witness={"reason": str(e), "period_index": e.period_index,
                         "period": None if e.period is None else str(e.period)},
            )
            return

        check = cocycle_check(lift)
        coords, group = characteristic_class(lift.c)
        report.results.update({
            "lift": lift.to_json(),
            "char_class": {"coordinates": coords, "group": group.to_json()},
        })
        report.add("Lift is a cocycle", check.valid, certifies="cocycle_check of the lift",
                   witness=check.defects or None)
        if p == q:
            round_trip = scalar_curvature(lift) == omega.to_ring(lift.omega.ring)
            report.add("Curvature round trip", round_trip, certifies="scalar_curvature(lift(ω)) = ω")
