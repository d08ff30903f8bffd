import logging

from bar.resolution import bar_resolution_check
from commands.base import BaseCommand

logger = logging.getLogger(__name__)


class BarExactnessCommand(BaseCommand):
    """Degreewise exactness of 0 -> G -> EG -> EBG -> ... -> B^L G -> 0"""

    name = "bar-exactness"

    def run(self, manifest, report):
        G = self.load_group(manifest)
        L = self.require(manifest, "length", default=3)
        N = self.require(manifest, "max_degree", default=3)
        result = bar_resolution_check(G, L, N)
        report.results = result.to_json()
        report.add(
            "Bar resolution is exact",
            result.exact,
            certifies=f"exactness of {' -> '.join(result.stages)} in degrees 0..{N}",
            witness=[f.to_json() for f in result.failures[:5]] or None,
        )
