"""Crystallizations of generalized lens spaces as quotients of a sphere."""

from .action import (
    LensCrystallization,
    NotGoodAction,
    OrbitPartition,
    PosetAutomorphism,
    build_rho,
    is_good_action,
    lens_crystallization,
    orbits,
    quotient,
)
from .builders import InvalidParameters, LensParams, VertexLabel, build_sigma, cycle_complex, join
from .gem import ColoredGraph, check_crystallization, colored_isomorphic, dual_graph, lens_gem_direct
from .homology import HomologyGroups, chain_complex, homology, homology_via_derived, smith_normal_form
from .poset import SimplicialPoset, derived_subdivision, euler_characteristic, f_vector, validate

__version__ = "0.1.0"
