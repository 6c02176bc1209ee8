"""Graph polytopes, mirrored gluings, coloured subdivisions and the
covering certificates that tie them together.

The layers build on each other: ``graphs`` fixes the combinatorics of
connected vertex subsets, ``nestohedron`` turns a building set into a
simple polytope with exact coordinates, ``cellcomplex`` provides the
simplicial machinery and homology, ``smallcover`` glues mirror copies
through a GF(2) matrix, ``subdivision`` colours closed complexes by
graph vertices, ``realization`` certifies branched-covering data on
top, and ``formulas`` holds the closed-form sequences the suites check
everything against.
"""

from .errors import BudgetExceeded, ValidationError
from .graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    graph_building_set,
    path_graph,
    star_graph,
)
from .nestohedron import face_poset, face_vectors, pi_degree
from .cellcomplex import (
    SimplicialCellComplex,
    homology,
    homology_z2,
    orient,
    simplex_sphere,
    torus7,
)
from .smallcover import (
    lambda_can,
    lambda_star_as3,
    lambda_tomei,
    orientation_cover_via_eta,
    real_moment_angle,
    small_cover,
)
from .subdivision import (
    condition_star_check,
    lemma_subdivision,
    subdivide_pseudomanifold,
    verify_lemma_conditions,
)
from .realization import build_covering, realize

__all__ = [
    "BudgetExceeded",
    "ValidationError",
    "Graph",
    "complete_graph",
    "cycle_graph",
    "graph_building_set",
    "path_graph",
    "star_graph",
    "face_poset",
    "face_vectors",
    "pi_degree",
    "SimplicialCellComplex",
    "homology",
    "homology_z2",
    "orient",
    "simplex_sphere",
    "torus7",
    "lambda_can",
    "lambda_star_as3",
    "lambda_tomei",
    "orientation_cover_via_eta",
    "real_moment_angle",
    "small_cover",
    "condition_star_check",
    "lemma_subdivision",
    "subdivide_pseudomanifold",
    "verify_lemma_conditions",
    "build_covering",
    "realize",
]

__version__ = "0.1.0"
