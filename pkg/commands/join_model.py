import logging

from algebra.groups import TRIVIAL, Z, FgAbGroup, cyclic
from bar.joins import milnor_join_homology
from commands.base import BaseCommand

logger = logging.getLogger(__name__)


def sphere_homology(n):
    return [Z if k in (0, n) else TRIVIAL for k in range(n + 1)]


def wedge_homology(m, n):
    """H_* of the (n+1)-fold join of m points: a wedge of (m - 1)^(n + 1) n-spheres"""
    top = FgAbGroup((m - 1) ** (n + 1) + (1 if n == 0 else 0))
    return [top if k == n else (Z if k == 0 else TRIVIAL) for k in range(n + 1)]


def projective_homology(n):
    """H_*(RP^n; Z)"""
    table = []
    for k in range(n + 1):
        if k == 0:
            table.append(Z)
        elif k == n:
            table.append(Z if n % 2 else TRIVIAL)
        else:
            table.append(cyclic(2) if k % 2 else TRIVIAL)
    return table


class JoinModelCommand(BaseCommand):
    """Homology of the Milnor join model (E_Δ G)_n and of its quotient by G"""

    name = "join-model"

    def run(self, manifest, report):
        G = self.load_group(manifest)
        n = self.require(manifest, "n", default=manifest.max_degree or 2)
        model = milnor_join_homology(G, n)
        report.results = model.to_json()

        e_table = model.e_homology + [TRIVIAL] * (n + 1 - len(model.e_homology))
        report.add(
            "E-part is a wedge of spheres",
            e_table == wedge_homology(G.order, n),
            certifies=f"(E_Δ G)_{n} has the homology of a wedge of {(G.order - 1) ** (n + 1)} copies of S^{n}",
            witness=[str(g) for g in model.e_homology],
        )
        if G == cyclic(2):
            b_table = model.b_homology + [TRIVIAL] * (n + 1 - len(model.b_homology))
            report.add(
                "B-part is a projective space",
                b_table == projective_homology(n),
                certifies=f"(B_Δ S^0)_{n} has the homology of RP^{n}",
                witness=[str(g) for g in model.b_homology],
            )
        if G.is_finite:
            report.add(
                "B-part is connected",
                bool(model.b_homology) and model.b_homology[0] == Z,
                certifies="H_0 of the orbit space is Z",
                witness=[str(g) for g in model.b_homology[:1]],
            )
