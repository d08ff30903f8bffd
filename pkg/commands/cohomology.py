import logging

from algebra.matrices import Ring
from commands.base import BaseCommand
from simplicial.chains import cohomology, simplicial_homology

logger = logging.getLogger(__name__)


class CohomologyCommand(BaseCommand):
    """Simplicial homology and cohomology of a complex with integer coefficients"""

    name = "cohomology"

    def run(self, manifest, report):
        label, X = self.load_space(manifest)
        logger.info(f"Computing H^* of {label}: {X!r}")
        upper = cohomology(X, Ring.Z)
        lower = simplicial_homology(X, Ring.Z)

        report.results = {
            "space": label,
            "complex": X.to_json(),
            "f_vector": list(X.f_vector()),
            "cohomology": upper.to_json(),
            "homology": lower.to_json(),
            "table": [str(g) for g in upper.table()],
        }

        euler_from_ranks = sum((-1) ** n * upper.group(n).free_rank for n in range(X.dimension + 1))
        report.add(
            "Euler characteristic from Betti numbers",
            euler_from_ranks == X.euler_characteristic(),
            certifies="Σ (-1)^n rank H^n = Σ (-1)^n f_n",
            witness={"betti": euler_from_ranks, "simplices": X.euler_characteristic()},
        )

        # Universal coefficients: torsion of H^{n+1} is torsion of H_n
        mismatched = [
            n for n in range(X.dimension + 1)
            if upper.group(n).free_rank != lower.group(n).free_rank
            or upper.group(n + 1).torsion != lower.group(n).torsion
        ]
        report.add(
            "Universal coefficient comparison",
            not mismatched,
            certifies="rank H^n = rank H_n and Tors H^{n+1} = Tors H_n",
            witness={"degrees": mismatched} if mismatched else None,
        )
