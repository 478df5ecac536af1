"""
Orbit simulators for composition operators.
"""

from .orbits import (
    LiYorkePairReport,
    OrbitClassification,
    OrbitReport,
    apply_power,
    classify_sequence,
    intersection_orbit_probe,
    li_yorke_pair_probe,
    orbit_norms,
)
from .search import SearchHit, block_candidates, construct_block_vector, search_semi_irregular

__all__ = [
    'OrbitClassification',
    'OrbitReport',
    'LiYorkePairReport',
    'SearchHit',
    'apply_power',
    'classify_sequence',
    'orbit_norms',
    'intersection_orbit_probe',
    'li_yorke_pair_probe',
    'construct_block_vector',
    'block_candidates',
    'search_semi_irregular',
]
