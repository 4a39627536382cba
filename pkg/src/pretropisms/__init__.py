"""Exact computation of pretropisms of Newton polytopes."""

from .cone import (
    Cone,
    canonical_key,
    cone_from_constraints,
    cone_from_rays,
    contains,
    interior_ray,
    intersect,
    is_trivial,
)
from .engine import (
    PretropismResult,
    Stats,
    cost_bound,
    degree_sum,
    explore_edge_skeleton,
    find_pretropisms,
    horizontal_prune,
    sort_polytopes,
)
from .oracle import (
    brute_force_skeleton,
    check_pretropism_graph_connected,
    definitional_pretropisms,
)
from .polytope import Polytope, build_polytope, edges_touching, initial_face
from .systems import (
    SystemSpec,
    gen_cyclic,
    gen_generic_simplices,
    gen_nbody,
    gen_nvortex,
    parse_polynomials,
    read_system,
)

__version__ = "0.1.0"
