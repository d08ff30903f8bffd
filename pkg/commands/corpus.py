import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from algebra.errors import MalformedInput, ResourceBudgetExceeded
from algebra.groups import TRIVIAL, Z, FgAbGroup, cyclic
from algebra.homology import homology
from algebra.matrices import Ring
from bar.chains import em_homology, normalized_chains
from bar.joins import milnor_join_homology
from bar.points import (
    DLPoint,
    JoinPoint,
    MapDirection,
    act,
    basepoint,
    contraction_point,
    dl_join_maps,
    letter_group,
    random_bar_point,
    random_cone_point,
    shuffle_add,
)
from bar.resolution import bar_resolution_check
from bar.simplicial_groups import e_of
from commands.base import BaseCommand
from commands.em_homology import em_axiom_defects
from commands.join_model import projective_homology, sphere_homology, wedge_homology
from commands.report import Report
from config import CorpusProfile
from deligne.cocycles import (
    DeligneCocycle,
    characteristic_class,
    class_is_trivial,
    cocycle_check,
    deligne_differential,
    random_cochain,
    random_exact,
    remove_integral_part,
)
from deligne.curvature import (
    flat_class_is_trivial,
    flat_class_order,
    flat_cocycle_from_torsion,
    flat_normal_form,
    integral_generators,
    scalar_curvature,
    weil_kostant_lift,
)
from deligne.gerbes import gerbe_view
from deligne.towers import localize, random_tower, tower_check, tower_collapse, tower_differential
from simplicial.chains import simplicial_homology
from simplicial.complexes import Complex
from simplicial.corpus import standard_space
from simplicial.covers import star_cover
from simplicial.periods import integral_periods
from utils.json_io import load_json

logger = logging.getLogger(__name__)

GROUP_CORPUS = ("Z", "Z/2", "Z/3", "Z/2+Z/4")


@dataclass(frozen=True)
class SuiteSizes:
    """Degree bounds and sample counts for one corpus profile"""
    max_sphere: int
    acyclicity_degree: int
    acyclicity_groups: tuple
    em_max_s: int
    em_groups: tuple
    max_join: int
    resolution_length: int
    resolution_degree: int
    resolution_groups: tuple
    points: int
    cocycles: int
    towers: int


SIZES = {
    CorpusProfile.FULL: SuiteSizes(
        max_sphere=4, acyclicity_degree=5, acyclicity_groups=GROUP_CORPUS, em_max_s=3, em_groups=GROUP_CORPUS,
        max_join=3, resolution_length=3, resolution_degree=3, resolution_groups=GROUP_CORPUS,
        points=200, cocycles=50, towers=50,
    ),
    CorpusProfile.QUICK: SuiteSizes(
        max_sphere=2, acyclicity_degree=3, acyclicity_groups=("Z", "Z/2"), em_max_s=2, em_groups=("Z", "Z/2"),
        max_join=2, resolution_length=2, resolution_degree=2, resolution_groups=("Z/2",),
        points=20, cocycles=5, towers=5,
    ),
}

HOMOLOGY_GOLDEN = {
    "circle": ["Z", "Z"],
    "torus": ["Z", "Z^2", "Z"],
    "rp2": ["Z", "Z/2", "0"],
    "klein": ["Z", "Z + Z/2", "0"],
}


def _rng(seed, suite):
    return random.Random(f"{seed}:{suite}")


def _table(groups):
    return [str(g) for g in groups]


class CorpusCommand(BaseCommand):
    """
    The acceptance suite: every criterion as a named group of verdicts.

    All randomness flows from the seed, one generator per suite, so a
    report is reproducible byte for byte (timing is excluded unless
    requested).
    """

    name = "corpus"

    def parameters(self, manifest):
        return {
            "seed": self._seed(manifest),
            "profile": self.settings['CORPUS_PROFILE'].value,
            "corpus_dir": self.settings.get('CORPUS_DIR'),
        }

    def _seed(self, manifest):
        return manifest.seed if manifest.seed is not None else self.settings['DEFAULT_SEED']

    def run(self, manifest, report):
        seed = self._seed(manifest)
        sizes = SIZES[self.settings['CORPUS_PROFILE']]
        extra = self._load_corpus_dir()
        suites = self._suites(seed, sizes, extra)
        suites.append(("determinism", lambda: determinism_suite(lambda: self._render(manifest, seed, sizes, extra))))
        report.results = {"suites": self._fill(report, suites), "extra_complexes": sorted(extra)}

    def _suites(self, seed, sizes, extra):
        return [
            ("homology", lambda: homology_suite(sizes, extra)),
            ("bar_acyclicity", lambda: acyclicity_suite(sizes, self.budget)),
            ("em_homology", lambda: em_suite(sizes, self.budget)),
            ("join_models", lambda: join_suite(sizes)),
            ("bar_resolution", lambda: resolution_suite(sizes)),
            ("points", lambda: points_suite(sizes, _rng(seed, "points"))),
            ("curvature", lambda: curvature_suite()),
            ("flat_torsion", lambda: flat_suite()),
            ("characteristic_class", lambda: characteristic_suite(sizes, _rng(seed, "cocycles"))),
            ("towers", lambda: tower_suite(sizes, _rng(seed, "towers"))),
        ]

    def _fill(self, report, suites):
        summary = {}
        for name, suite in suites:
            logger.info(f"Corpus suite {name}")
            try:
                verdicts = suite()
            except ResourceBudgetExceeded as e:
                verdicts = [(f"{name} within budget", False, None, {"degree": e.degree, "size": str(e.size)})]
            for label, passed, certifies, witness in verdicts:
                report.add(f"{name}: {label}", passed, certifies=certifies, witness=witness)
            summary[name] = all(v[1] for v in verdicts)
        return summary

    def _render(self, manifest, seed, sizes, extra):
        """A fresh report over every other suite, rendered without timing"""
        report = Report(self.name, self.parameters(manifest))
        report.results = {"suites": self._fill(report, self._suites(seed, sizes, extra)),
                          "extra_complexes": sorted(extra)}
        return report.render(self.settings['REPORT_FORMAT'])

    def _load_corpus_dir(self):
        directory = self.settings.get('CORPUS_DIR')
        if not directory:
            return {}
        path = Path(directory)
        if not path.is_dir():
            raise MalformedInput(f"{path}: corpus directory not found")
        complexes = {}
        for file in sorted(path.glob("*.json")):
            try:
                complexes[file.name] = Complex.from_json(load_json(file))
            except MalformedInput as e:
                raise MalformedInput(f"{file}: {e}") from e
        logger.info(f"Loaded {len(complexes)} extra complexes from {path}")
        return complexes


# Each suite returns a list of (label, passed, certifies, witness)

def homology_suite(sizes, extra):
    verdicts = []
    golden = dict(HOMOLOGY_GOLDEN)
    for n in range(1, sizes.max_sphere + 1):
        golden[f"sphere({n})"] = ["Z"] + ["0"] * (n - 1) + ["Z"]
    for name, expected in golden.items():
        found = _table(simplicial_homology(standard_space(name)).table())
        verdicts.append((f"H_*({name})", found == expected, f"H_*({name}) = ({', '.join(expected)})",
                         None if found == expected else found))
    K = standard_space("klein")
    minimal = K.f_vector() == (8, 24, 16) and K.euler_characteristic() == 0
    verdicts.append(("klein: 8-vertex surface", minimal, "f-vector (8, 24, 16) and χ = 0",
                     None if minimal else list(K.f_vector())))
    for name, X in sorted(extra.items()):
        result = simplicial_homology(X)
        betti = sum((-1) ** n * result.group(n).free_rank for n in range(X.dimension + 1))
        verdicts.append((f"H_*({name})", betti == X.euler_characteristic(),
                         "Euler characteristic from Betti numbers", _table(result.table())))
    return verdicts


def acyclicity_suite(sizes, budget):
    verdicts = []
    N = sizes.acyclicity_degree
    for text in sizes.acyclicity_groups:
        G = FgAbGroup.parse(text)
        table = homology(normalized_chains(e_of(G, N), budget=budget)).table()
        # degree N is the truncation edge: cycles there have no boundaries to meet
        ok = table[0] == Z and all(g.is_trivial for g in table[1:N])
        verdicts.append((f"E({text}) acyclic", ok, f"H_0 = Z and H_i = 0 for 0 < i < {N}",
                         None if ok else _table(table)))
    return verdicts


def em_suite(sizes, budget):
    verdicts = []
    checks = [("Z/2", 1, 5, ["Z", "Z/2", "0", "Z/2", "0", "Z/2"]), ("Z", 2, 4, ["Z", "0", "Z", "0", "Z"])]
    for text, s, N, expected in checks:
        found = _table(em_homology(FgAbGroup.parse(text), s, N, budget=budget))
        verdicts.append((f"H_*(K({text}, {s}))", found == expected, f"({', '.join(expected)})",
                         None if found == expected else found))
    for text, s in (("Z/2", 2), ("Z", 2)):
        A = FgAbGroup.parse(text)
        fast, diagonal = em_homology(A, s, 2, budget=budget), em_homology(A, s, 2, budget=budget, diagonal=True)
        verdicts.append((f"K({text}, {s}) diagonal route", fast == diagonal,
                         "normalized_chains(iterate_b) agrees with the multisimplicial model",
                         None if fast == diagonal else {"fast": _table(fast), "diagonal": _table(diagonal)}))
    for text in sizes.em_groups:
        A = FgAbGroup.parse(text)
        for s in range(1, sizes.em_max_s + 1):
            defects = em_axiom_defects(em_homology(A, s, s, budget=budget), A, s)
            verdicts.append((f"K({text}, {s}) axioms", not defects,
                             "H_0 = Z, H_i = 0 for 0 < i < s, H_s ≅ A", defects or None))
    return verdicts


def join_suite(sizes):
    verdicts = []
    for n in range(sizes.max_join + 1):
        model = milnor_join_homology(cyclic(2), n)
        e_table = model.e_homology + [TRIVIAL] * (n + 1 - len(model.e_homology))
        b_table = model.b_homology + [TRIVIAL] * (n + 1 - len(model.b_homology))
        verdicts.append((f"(E S^0)_{n} ≅ S^{n}", e_table == sphere_homology(n), "homology of a sphere",
                         _table(model.e_homology)))
        verdicts.append((f"(B S^0)_{n} ≅ RP^{n}", b_table == projective_homology(n),
                         "homology of a projective space", _table(model.b_homology)))
    for n in range(min(sizes.max_join, 2) + 1):
        model = milnor_join_homology(cyclic(3), n)
        verdicts.append((f"(E Z/3)_{n} wedge count", model.e_homology == wedge_homology(3, n),
                         f"{2 ** (n + 1)} copies of S^{n}", _table(model.e_homology)))
    return verdicts


def resolution_suite(sizes):
    verdicts = []
    for text in sizes.resolution_groups:
        result = bar_resolution_check(FgAbGroup.parse(text), sizes.resolution_length, sizes.resolution_degree)
        verdicts.append((f"bar resolution of {text}", result.exact, "degreewise exactness",
                         [f.to_json() for f in result.failures[:3]] or None))
    return verdicts


def points_suite(sizes, rng):
    failures = {"commutative": [], "associative": [], "identity": [], "round_trip": [],
                "equivariant": [], "contraction": []}
    abelian = letter_group("Z/2+Z/3")
    finite = letter_group("Z/3")
    e = basepoint(abelian)
    for k in range(sizes.points):
        u, v, w = (random_bar_point(abelian, rng) for _ in range(3))
        if shuffle_add(u, v) != shuffle_add(v, u):
            failures["commutative"].append(k)
        if shuffle_add(shuffle_add(u, v), w) != shuffle_add(u, shuffle_add(v, w)):
            failures["associative"].append(k)
        if shuffle_add(u, e) != u:
            failures["identity"].append(k)
        t = Fraction(rng.randint(0, 6), 6)
        r = contraction_point(u, t)
        if contraction_point(u, 0) != u or contraction_point(u, 1) != e or r.level > u.level + 1:
            failures["contraction"].append(k)

        level = rng.randint(0, 3)
        x = random_cone_point(DLPoint, finite, level, rng)
        y = random_cone_point(JoinPoint, finite, level, rng)
        image = dl_join_maps(finite, x, MapDirection.DL_TO_JOIN)
        if dl_join_maps(finite, image, MapDirection.JOIN_TO_DL) != x \
                or dl_join_maps(finite, dl_join_maps(finite, y, MapDirection.JOIN_TO_DL), MapDirection.DL_TO_JOIN) != y:
            failures["round_trip"].append(k)
        g = finite.random_element(rng)
        if dl_join_maps(finite, act(g, x), MapDirection.DL_TO_JOIN) != act(g, image):
            failures["equivariant"].append(k)

    statements = {
        "commutative": "u + v = v + u",
        "associative": "(u + v) + w = u + (v + w)",
        "identity": "u + e[] = u",
        "round_trip": "Ψ∘Φ = id and Φ∘Ψ = id",
        "equivariant": "Φ(g·x) = g·Φ(x)",
        "contraction": "r(x, 0) = x and r(x, 1) = e[]",
    }
    return [(name, not failures[name], statements[name], failures[name] or None) for name in statements]


def _lift_corpus():
    """(label, cocycle) for the integral generators in the weight = degree cases"""
    lifts = []
    for name, p in (("torus", 2), ("sphere(2)", 2), ("sphere(3)", 3)):
        X = standard_space(name)
        for i, generator in enumerate(integral_generators(X, p)):
            lifts.append((f"{name} p = q = {p} generator {i}", weil_kostant_lift(generator, p)))
    return lifts


def curvature_suite():
    verdicts = []
    for label, x in _lift_corpus():
        omega = scalar_curvature(x)
        periods = integral_periods(omega)
        verdicts.append((f"{label}: curvature", periods.is_closed and periods.has_integral_periods,
                         "closed with integral periods", periods.to_json()))
        round_trip = scalar_curvature(weil_kostant_lift(omega, x.q)) == omega
        verdicts.append((f"{label}: round trip", round_trip, "curvature(lift(ω)) = ω", None))

    # Curvature kernel: (0, 0, θ) with θ closed is flat, with u = θ mod Z
    X = standard_space("torus")
    theta = integral_generators(X, 1)[0].to_ring(Ring.Q).scale(Fraction(1, 2))
    flat = DeligneCocycle.from_parts(X, 2, 2, theta=theta)
    in_kernel = scalar_curvature(flat).is_zero() and flat_class_order(flat_normal_form(flat)) == 2
    verdicts.append(("torus: flat class in the curvature kernel", in_kernel,
                     "ω = 0 cocycles are exactly the flat classes", None))
    return verdicts


def flat_suite():
    verdicts = []
    X = standard_space("klein")
    coords_group = integral_generators(X, 2)
    torsion_class = coords_group[0]
    x = flat_cocycle_from_torsion(torsion_class, 3)
    order = flat_class_order(flat_normal_form(x))
    coords, group = characteristic_class(x.c)
    verdicts.append(("klein: flat class of order 2", order == 2, "exact order 2 in H^2_D(K; Z(3))",
                     {"order": order}))
    verdicts.append(("klein: onto Tors H^2", group.torsion == (2,) and any(coords), "char_class hits Z/2",
                     {"coordinates": coords, "group": str(group)}))
    verdicts.append(("klein: double is trivial", class_is_trivial(x.scale(2)).trivial, "2·x = d(b, ζ, η)", None))

    rp2 = standard_space("rp2")
    orders = [flat_class_order(flat_normal_form(flat_cocycle_from_torsion(g, 3))) for g in integral_generators(rp2, 2)]
    divides = bool(orders) and all(order is not None and 2 % order == 0 for order in orders)
    verdicts.append(("rp2: torsion classes are flat of order dividing 2", divides,
                     "every torsion generator of H^2(RP^2; Z) in H^2_D(RP^2; Z(3))", {"orders": orders}))

    torus = standard_space("torus")
    verdicts.append(("torus: no torsion", characteristic_class(integral_generators(torus, 2)[0])[1].torsion == (),
                     "Tors H^2(T; Z) = 0", None))
    mismatched = []
    for k, scale in enumerate((Fraction(1, 2), Fraction(1), Fraction(2, 3), Fraction(0))):
        theta = integral_generators(torus, 1)[0].to_ring(Ring.Q).scale(scale)
        y = DeligneCocycle.from_parts(torus, 2, 3, theta=theta)
        if flat_class_is_trivial(flat_normal_form(y)) != class_is_trivial(y).trivial:
            mismatched.append(k)
    verdicts.append(("torus: u = 0 membership", not mismatched, "u exact in Q/Z ⇔ class trivial",
                     mismatched or None))
    return verdicts


def characteristic_suite(sizes, rng):
    verdicts = []
    for name in ("torus", "sphere(2)"):
        X = standard_space(name)
        generators = integral_generators(X, 2)
        surjective = []
        for i, generator in enumerate(generators):
            coords, _ = characteristic_class(weil_kostant_lift(generator, 2).c)
            surjective.append(coords == [int(i == j) for j in range(len(generators))])
        verdicts.append((f"{name}: char_class onto H^2", all(surjective), "lifts of all generators", surjective))

        bad = []
        for k in range(sizes.cocycles):
            a = rng.randint(-1, 1)
            omega = generators[0].to_ring(Ring.Q).scale(a) if generators else None
            x = random_exact(X, 2, 2, rng)
            if omega is not None and a:
                x = x + weil_kostant_lift(omega, 2)
            coords, _ = characteristic_class(x.c)
            if (remove_integral_part(x) is not None) != (not any(coords)):
                bad.append(k)
        verdicts.append((f"{name}: kernel of char_class", not bad, "c removable ⇔ char_class = 0", bad or None))
    return verdicts


def tower_suite(sizes, rng):
    verdicts = []
    for label, x in _lift_corpus():
        T = localize(x)
        report = tower_check(T)
        equivalent = class_is_trivial(tower_collapse(T) - x).trivial
        verdicts.append((f"{label}: localized tower", report.valid and equivalent,
                         "tower_check passes and collapse ~ x", report.defect))

    chain_map, preserved = [], []
    for k in range(sizes.towers):
        X = standard_space(rng.choice(("torus", "sphere(2)")))
        cover = star_cover(X)
        T = random_tower(cover, 2, 2, rng)
        if tower_collapse(tower_differential(T), check=False) != deligne_differential(tower_collapse(T, check=False)):
            chain_map.append(k)
        boundary = tower_differential(random_tower(cover, 1, 2, rng))
        collapsed = tower_collapse(boundary)
        if not (cocycle_check(collapsed).valid and class_is_trivial(collapsed).trivial):
            preserved.append(k)
    verdicts.append(("collapse is a chain map", not chain_map, "collapse(D T) = d collapse(T)", chain_map or None))
    verdicts.append(("collapse preserves triviality", not preserved, "collapse(D T') is a coboundary",
                     preserved or None))

    sphere2 = standard_space("sphere(2)")
    trivial = []
    for k in range(max(1, sizes.towers // 10)):
        x = DeligneCocycle.from_parts(sphere2, 3, 2, theta=random_cochain(sphere2, 2, Ring.Q, rng))
        if not class_is_trivial(tower_collapse(localize(x))).trivial:
            trivial.append(k)
    verdicts.append(("sphere(2): degree 3 towers collapse to trivial classes", not trivial,
                     "H^3 = 0 on the 2-sphere", trivial or None))

    sphere3 = standard_space("sphere(3)")
    gerbe = gerbe_view(localize(weil_kostant_lift(integral_generators(sphere3, 3)[0], 3)))
    periods = integral_periods(gerbe.curvature)
    total = periods.periods[0] if periods.periods else None
    verdicts.append(("sphere(3): gerbe curvature", total in (1, -1), "total period ±1",
                     None if total is None else str(total)))
    return verdicts


def determinism_suite(render):
    first, second = render(), render()
    if first == second:
        return [("rendered report rerun", True, "byte-identical corpus report for identical seeds, timing excluded",
                 {"bytes": len(first.encode("utf-8"))})]
    offset = next((i for i, (a, b) in enumerate(zip(first, second)) if a != b), min(len(first), len(second)))
    return [("rendered report rerun", False, None, {"first_difference": offset, "context": first[offset:offset + 80]})]
