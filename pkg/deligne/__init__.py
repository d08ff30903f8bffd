"""
Discrete smooth Deligne cohomology

Cone-model cocycles over a simplicial complex, class arithmetic and
triviality, scalar curvature, Weil-Kostant lifts, flat classes, Čech
towers over the star cover and their gerbe reading in degree 3.
"""

from deligne.cocycles import (
    CocycleReport,
    DeligneCocycle,
    TrivialityReport,
    characteristic_class,
    class_is_trivial,
    coboundary_matrix,
    coboundary_of,
    cocycle_check,
    deligne_complex,
    deligne_differential,
    random_cochain,
    random_exact,
    remove_integral_part,
    require_valid,
)
from deligne.curvature import (
    FlatClassData,
    dlog_consistency,
    exp_cochain,
    flat_class_is_trivial,
    flat_class_order,
    flat_cocycle_from_torsion,
    flat_normal_form,
    free_generators,
    integral_generators,
    scalar_curvature,
    weil_kostant_lift,
)
from deligne.gerbes import GerbeData, gerbe_view
from deligne.towers import (
    CechTower,
    TowerReport,
    localize,
    random_tower,
    tower_bidegrees,
    tower_check,
    tower_collapse,
    tower_differential,
)
