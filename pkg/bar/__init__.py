"""
Bar construction package

Simplicial abelian groups EG, BG and B^sG in non-homogeneous coordinates,
their normalized chains and Eilenberg-MacLane homology, the Milnor join
and Dold-Lashof models, point-level shuffle arithmetic, and degreewise
exactness of the bar resolution.
"""

from bar.chains import DEFAULT_RANK_BUDGET, em_chain_complex, em_homology, normalized_chains
from bar.joins import JoinModel, coinvariant_complex, join_of_group, milnor_join_homology
from bar.points import (
    AbelianLetters,
    BarPoint,
    DLPoint,
    JoinPoint,
    MapDirection,
    PermutationLetters,
    VectorLetters,
    act,
    basepoint,
    contraction_point,
    dl_join_maps,
    letter_group,
    negate_point,
    project_to_b,
    random_bar_point,
    random_cone_point,
    scale_point,
    shuffle_add,
    splitting_value,
)
from bar.resolution import BarResolutionData, ExactnessReport, bar_resolution_check, bar_resolution_data
from bar.simplicial_groups import SimAbGroup, b_of, constant, e_of, iterate_b
