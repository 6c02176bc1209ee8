"""Graph-coloured subdivisions of simplices and closed complexes."""

from fractions import Fraction

import pytest

from nestotope.errors import ValidationError
from nestotope.cellcomplex import (
    SimplicialCellComplex,
    homology,
    homology_z2,
    klein_bottle,
    orient,
    simplex_sphere,
    torus7,
)
from nestotope.graphs import Graph, cycle_graph, path_graph, star_graph
from nestotope.subdivision import (
    condition_star_check,
    lemma_subdivision,
    subdivide_pseudomanifold,
    verify_lemma_conditions,
)

# frozen top-cell counts of the simplex subdivision, spot-checked by hand:
# the segment splits in two; the triangle with a middle apex needs only
# the four corner-to-centre triangles, with an end apex the reflected
# recursion doubles everything twice more
_SIZES = [
    (path_graph(2), 0, 2),
    (path_graph(3), 1, 4),
    (path_graph(3), 0, 8),
    (path_graph(4), 0, 64),
    (star_graph(4), 0, 8),
    (star_graph(4), 2, 32),
]


@pytest.mark.parametrize("g,apex,tops", _SIZES)
def test_lemma_subdivision_sizes(g, apex, tops):
    k = lemma_subdivision(g, apex)
    assert k.complex.n_cells(g.n_vertices - 1) == tops
    assert k.mode == "simplex"
    assert k.apex == apex


@pytest.mark.parametrize("g,apex,tops", _SIZES)
def test_lemma_certificates(g, apex, tops):
    k = lemma_subdivision(g, apex)
    cert = verify_lemma_conditions(k, g, apex)
    assert cert.ok, cert.failures
    assert set(cert.checks) == {"valid", "rainbow_tops", "apex_interior",
                                "coords_injective", "volumes", "four_cofacets"}


def test_lemma_single_vertex():
    g = Graph(1, [])
    cert = verify_lemma_conditions(lemma_subdivision(g, 0), g, 0)
    assert cert.ok


def test_lemma_coordinates_are_barycentric():
    k = lemma_subdivision(path_graph(3), 0)
    for point in k.coords:
        assert sum(point) == 1
        assert all(isinstance(x, Fraction) and 0 <= x <= 1 for x in point)


def test_lemma_rejects_bad_input():
    with pytest.raises(ValidationError, match="apex"):
        lemma_subdivision(path_graph(3), 3)
    with pytest.raises(ValidationError, match="connected"):
        lemma_subdivision(Graph(3, [(0, 1)]), 0)


def test_middle_apex_triangle_geometry():
    k = lemma_subdivision(path_graph(3), 1)
    c = k.complex
    assert c.n_cells(2) == 4
    centre = [v for v in range(c.n_cells(0))
              if k.colours[v] == 1 and all(x != 0 for x in k.coords[v])]
    assert len(centre) == 1
    cofacets = sum(1 for verts in c.vertices_of[2] if centre[0] in verts)
    assert cofacets == 4


def test_subdivide_path_mode():
    y = subdivide_pseudomanifold(torus7(), path_graph(3))
    assert y.mode == "path"
    assert y.complex.cell_counts() == (42, 126, 84)
    assert y.orientation is not None
    assert homology_z2(y.complex) == (1, 2, 1)
    # colours count one per barycentric level
    from collections import Counter
    counts = Counter(y.colours)
    assert counts == Counter({0: 7, 1: 21, 2: 14})


def test_subdivide_relabelled_path_uses_path_order():
    zigzag = Graph(3, [(1, 0), (0, 2)])  # path 1-0-2
    y = subdivide_pseudomanifold(simplex_sphere(2), zigzag)
    assert y.mode == "path"
    # middle colour of the path is 0, carried by the edge barycentres
    from collections import Counter
    assert Counter(y.colours)[0] == simplex_sphere(2).n_cells(1)


def test_subdivide_substitution_mode():
    y = subdivide_pseudomanifold(simplex_sphere(2), cycle_graph(3))
    assert y.mode == "substitution"
    assert homology(y.complex).betti_q == (1, 0, 1)
    cert = condition_star_check(y, cycle_graph(3))
    assert cert.ok, cert.failures


def test_subdivide_forced_apex_leaves_path_shortcut():
    y = subdivide_pseudomanifold(simplex_sphere(1), path_graph(2), apex=1)
    assert y.mode == "substitution"
    assert homology(y.complex).betti_q == (1, 1)


def test_subdivide_rejects_bad_input():
    with pytest.raises(ValidationError, match="dimension mismatch"):
        subdivide_pseudomanifold(simplex_sphere(2), path_graph(4))
    with pytest.raises(ValidationError, match="non-orientable input"):
        subdivide_pseudomanifold(klein_bottle(), path_graph(3))
    disc = SimplicialCellComplex.from_top_simplices([(0, 1, 2)])
    with pytest.raises(ValidationError, match="pseudo-manifold"):
        subdivide_pseudomanifold(disc, path_graph(3))
    with pytest.raises(ValidationError, match="connected"):
        subdivide_pseudomanifold(simplex_sphere(2), Graph(3, [(0, 1)]))


def test_condition_star_counts():
    y = subdivide_pseudomanifold(torus7(), path_graph(3))
    cert = condition_star_check(y, path_graph(3))
    assert cert.ok and cert.cells_checked == 21

    y = subdivide_pseudomanifold(simplex_sphere(3), path_graph(4))
    cert = condition_star_check(y, path_graph(4))
    assert cert.ok and cert.cells_checked == 90

    y = subdivide_pseudomanifold(simplex_sphere(3), star_graph(4))
    cert = condition_star_check(y, star_graph(4))
    assert cert.ok and cert.cells_checked == 720


def test_substituted_sphere_stays_oriented():
    y = subdivide_pseudomanifold(simplex_sphere(3), star_graph(4))
    assert y.mode == "substitution"
    assert y.orientation is not None
    assert homology_z2(y.complex) == (1, 0, 0, 1)
