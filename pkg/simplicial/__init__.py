"""
Simplicial complexes package

Finite abstract simplicial complexes with sorted-vertex orientation, their
chain and cochain complexes, cochains over Z, Q and Q/Z, closed-star
covers, joins, period pairings and the built-in corpus of test spaces.
"""

from simplicial.chains import boundary_matrix, chain_complex, cochain_complex, cohomology, simplicial_homology
from simplicial.cochains import Cochain, coboundary
from simplicial.complexes import Complex, build_complex, format_key, join_complex, parse_key, simplex_key
from simplicial.corpus import SPACE_NAMES, discrete_points, sphere, standard_space
from simplicial.covers import Cover, star_cover
from simplicial.periods import PeriodReport, integral_periods, period_cycles
