"""Graph-driven rainbow subdivisions.

``lemma_subdivision`` cuts the standard simplex on a connected graph's
vertex set into simplices whose vertices carry graph-vertex colours,
every top cell showing every colour once.  The recursion deletes an
apex vertex, subdivides each remaining component, reflects those
pieces over all sign patterns so they tile the boundary of a
cross-polytope, joins the tiled spheres, cones at the origin, and
finally straightens the cross-polytope onto the simplex orthant by
orthant.

``subdivide_pseudomanifold`` pushes the same colouring onto any closed
orientable complex: barycentric vertices are coloured through the
graph, either directly along a path or by substituting the simplex
subdivision into every barycentric cell.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import ValidationError
from .graphs import components_minus_vertex, members, path_order
from .cellcomplex import (
    SimplicialCellComplex,
    barycentric_subdivide,
    orient,
)
from .nestohedron import _int_det


@dataclass
class ColouredSubdivision:
    """A complex whose vertices carry graph-vertex colours.

    ``coords`` is set for simplex subdivisions (exact rational points),
    ``orientation`` for closed subdivided pseudo-manifolds.
    """
    graph: object
    complex: SimplicialCellComplex
    colours: tuple
    apex: object = None
    coords: tuple = None
    orientation: tuple = None
    mode: str = ""


def lemma_subdivision(g, a):
    """Colour-subdivide the simplex on the graph's vertices, apex first."""
    if not 0 <= a < g.n_vertices:
        raise ValidationError(f"apex {a} out of range")
    if not g.is_connected():
        raise ValidationError("graph must be connected")
    tops = _lemma_tops(g, a)
    complex_ = SimplicialCellComplex.from_top_simplices(tops)
    coords = tuple(lbl[0] for lbl in complex_.vertex_labels)
    colours = tuple(lbl[1] for lbl in complex_.vertex_labels)
    return ColouredSubdivision(g, complex_, colours, apex=a, coords=coords,
                               mode="simplex")


def _lemma_tops(g, a):
    """Top simplices as tuples of (coords, colour) labels; coordinates are
    barycentric over the graph's own vertex list."""
    nv = g.n_vertices
    if nv == 1:
        return [(((Fraction(1),), 0),)]
    blocks = []
    for sub, labels in components_minus_vertex(g, a):
        adjacent = g.adjacency[a]
        b_old = min(v for v in labels if (adjacent >> v) & 1)
        sub_tops = _lemma_tops(sub, labels.index(b_old))
        blocks.append((_reflect_block(sub_tops, len(labels)), labels))

    ambient = [v for v in range(nv) if v != a]
    slot_of = {v: j for j, v in enumerate(ambient)}
    joined = [()]
    for tops, labels in blocks:
        positions = [slot_of[v] for v in labels]
        grown = []
        for top in tops:
            emb = tuple((_embed(c, positions, len(ambient)), labels[col])
                        for c, col in top)
            for prefix in joined:
                grown.append(prefix + emb)
        joined = grown

    origin = (tuple(Fraction(0) for _ in ambient), a)
    phi = _straightening(g, a)
    out = []
    seen_pre = set()
    seen_post = set()
    for top in joined:
        mapped = []
        for c, col in top + (origin,):
            seen_pre.add((c, col))
            image = (phi(c), col)
            seen_post.add(image)
            mapped.append(image)
        out.append(tuple(mapped))
    if len(seen_post) != len(seen_pre):
        raise ValidationError("straightening map collapsed two vertices")
    return out


def _flip(coords, pattern):
    return tuple(-c if (pattern >> j) & 1 else c for j, c in enumerate(coords))


def _embed(coords, positions, width):
    out = [Fraction(0)] * width
    for c, j in zip(coords, positions):
        out[j] = c
    return tuple(out)


def _reflect_block(tops, k):
    """All 2^k sign-reflected copies; they must tile a (k-1)-sphere."""
    out = []
    for pattern in range(1 << k):
        for top in tops:
            out.append(tuple((_flip(c, pattern), col) for c, col in top))
    sphere = SimplicialCellComplex.from_top_simplices(out)
    cert = orient(sphere)
    if not cert.is_pseudo or cert.orientation == "non-orientable":
        raise ValidationError("reflected copies do not close up into a sphere")
    if sphere.euler_characteristic() != 1 + (-1) ** (k - 1):
        raise ValidationError("reflected copies have the wrong Euler number")
    return out


def _straightening(g, a):
    """Affine-per-orthant bijection from the cross-polytope onto the simplex.

    The positive endpoint of every axis stays put; the negative endpoint
    of the i-th axis (apex first, the rest in increasing order) goes to
    the barycentre of the first i simplex corners; the origin goes to
    the overall barycentre.
    """
    nv = g.n_vertices
    order = [a] + [v for v in range(nv) if v != a]
    whole = tuple(Fraction(1, nv) for _ in range(nv))

    def corner(v):
        return tuple(Fraction(1) if u == v else Fraction(0) for u in range(nv))

    plus_target = []
    minus_target = []
    for i in range(1, nv):
        plus_target.append(corner(order[i]))
        head = order[:i]
        minus_target.append(tuple(
            Fraction(1, i) if u in head else Fraction(0) for u in range(nv)))

    def phi(x):
        slack = 1 - sum(abs(c) for c in x)
        acc = [slack * w for w in whole]
        for j, c in enumerate(x):
            if c == 0:
                continue
            target = plus_target[j] if c > 0 else minus_target[j]
            mag = abs(c)
            for u in range(nv):
                acc[u] += mag * target[u]
        return tuple(acc)

    return phi


# ---------------------------------------------------------------------------
# Certificates for the simplex subdivision.


@dataclass
class LemmaCertificate:
    ok: bool
    checks: dict
    failures: list


def _fraction_det(rows):
    denoms = []
    scaled = []
    for row in rows:
        d = lcm(*(f.denominator for f in row))
        denoms.append(d)
        scaled.append([int(f * d) for f in row])
    det = _int_det(scaled)
    out = Fraction(det)
    for d in denoms:
        out /= d
    return out


def verify_lemma_conditions(k, g, a):
    """All structural guarantees of the simplex subdivision at once.

    The certificate covers: complex validity, rainbow tops, apex colour
    confined to the interior, distinct vertex coordinates, nonzero cell
    volumes adding up to the whole simplex, and the four-cofacet rule
    for codimension-2 cells missing two non-adjacent colours.
    """
    c = k.complex
    nv = g.n_vertices
    n = nv - 1
    checks = {}
    failures = []

    checks["valid"] = c.validate()
    if not checks["valid"]:
        failures.append("complex fails validation")

    rainbow = True
    for verts in c.vertices_of[n]:
        if sorted(k.colours[v] for v in verts) != list(range(nv)):
            rainbow = False
            failures.append(f"top cell {verts} is not rainbow")
            break
    checks["rainbow_tops"] = rainbow

    interior_apex = True
    for vid in range(c.n_cells(0)):
        if k.colours[vid] == a and any(x == 0 for x in k.coords[vid]):
            interior_apex = False
            failures.append(f"apex colour on boundary vertex {vid}")
    checks["apex_interior"] = interior_apex

    checks["coords_injective"] = len(set(k.coords)) == c.n_cells(0)
    if not checks["coords_injective"]:
        failures.append("two vertices share coordinates")

    total = Fraction(0)
    volumes_ok = True
    for verts in c.vertices_of[n]:
        det = _fraction_det([list(k.coords[v]) for v in verts])
        if det == 0:
            volumes_ok = False
            failures.append(f"degenerate cell {verts}")
            break
        total += abs(det)
    checks["volumes"] = volumes_ok and total == 1
    if volumes_ok and total != 1:
        failures.append(f"cell volumes add to {total}, not 1")

    checks["four_cofacets"] = _codim2_rule(c, k.colours, k.coords, g, failures)

    ok = all(checks.values())
    return LemmaCertificate(ok, checks, failures)


def _codim2_rule(c, colours, coords, g, failures):
    """Codimension-2 cells missing two non-adjacent colours: four top
    cofacets when interior, two on a boundary facet, nothing deeper."""
    n = c.n
    if n < 2:
        return True
    nv = g.n_vertices
    counts = {}
    for t in range(c.n_cells(n)):
        hits = set()
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                keep = [s for s in range(n + 1) if s not in (i, j)]
                hits.add(c.subface(n, t, keep))
        for key in hits:
            counts[key] = counts.get(key, 0) + 1
    ok = True
    for (kk, cid), cnt in counts.items():
        verts = c.vertices_of[kk][cid] if kk else (cid,)
        missing = set(range(nv)) - {colours[v] for v in verts}
        if len(missing) != 2:
            ok = False
            failures.append(f"cell ({kk},{cid}) misses {sorted(missing)} colours")
            continue
        u, w = sorted(missing)
        if g.has_edge(u, w):
            continue
        if coords is not None:
            support = set()
            for v in verts:
                support.update(j for j, x in enumerate(coords[v]) if x != 0)
            depth = nv - len(support)
        else:
            depth = 0
        want = {0: 4, 1: 2}.get(depth)
        if want is None:
            ok = False
            failures.append(
                f"cell ({kk},{cid}) missing {u},{w} sits {depth} levels deep")
        elif cnt != want:
            ok = False
            failures.append(
                f"cell ({kk},{cid}) missing {u},{w} has {cnt} cofacets, wants {want}")
    return ok


# ---------------------------------------------------------------------------
# Subdividing a closed complex through a graph.


def subdivide_pseudomanifold(z, g, apex=None):
    """Refine an oriented closed complex so its vertices are graph-coloured.

    The barycentric subdivision colours vertices by the dimension of the
    cell they subdivide.  Along a path graph, dimensions map straight
    onto path positions.  Any other graph is routed through the simplex
    subdivision, substituted into every barycentric cell by carrier.
    """
    if z.n + 1 != g.n_vertices:
        raise ValidationError(
            f"dimension mismatch: a {z.n}-complex needs a graph "
            f"on {z.n + 1} vertices, got {g.n_vertices}")
    if not g.is_connected():
        raise ValidationError("graph must be connected")
    cert = orient(z)
    if not cert.is_pseudo:
        raise ValidationError("input is not a pseudo-manifold: "
                              + "; ".join(cert.failures))
    if cert.orientation == "non-orientable":
        raise ValidationError("non-orientable input")

    bar = barycentric_subdivide(z)
    po = path_order(g)
    if po is not None and apex is None:
        colours = tuple(po[lbl[0]] for lbl in bar.vertex_labels)
        y, mode = bar, "path"
    else:
        a = 0 if apex is None else apex
        k = lemma_subdivision(g, a)
        y, colours = _substitute(bar, k, g)
        mode = "substitution"

    ocert = orient(y)
    if not ocert.is_pseudo or ocert.orientation == "non-orientable":
        raise ValidationError("subdivision did not stay an oriented "
                              "pseudo-manifold")
    return ColouredSubdivision(g, y, colours, apex=apex,
                               orientation=ocert.orientation, mode=mode)


def _substitute(bar, k, g):
    """Replace every barycentric cell by the matching piece of the simplex
    subdivision, matching graph vertices to barycentric dimensions.

    A piece is used inside the smallest barycentric cell whose dimension
    set equals its coordinate support, so pieces on a common boundary
    are shared and the copies glue.
    """
    n = bar.n
    kc = k.complex
    support = []
    for vid in range(kc.n_cells(0)):
        support.append(tuple(j for j, x in enumerate(k.coords[vid]) if x != 0))
    carrier = [support]
    for kk in range(1, n + 1):
        row = []
        for verts in kc.vertices_of[kk]:
            acc = set()
            for v in verts:
                acc.update(support[v])
            row.append(tuple(sorted(acc)))
        carrier.append(row)

    by_carrier = [dict() for _ in range(n + 1)]
    for kk in range(n + 1):
        for cid in range(kc.n_cells(kk)):
            by_carrier[kk].setdefault(carrier[kk][cid], []).append(cid)

    dimset = []
    for kk in range(n + 1):
        row = []
        for verts in bar.vertices_of[kk]:
            row.append(tuple(bar.vertex_labels[v][0] for v in verts))
        dimset.append(row)

    def host(kk, bid, dims, sub):
        keep = [dims.index(d) for d in sub]
        return bar.subface(kk, bid, keep)

    ids = [dict() for _ in range(n + 1)]
    labels = []
    colours = []
    for bk in range(n + 1):
        for bid in range(bar.n_cells(bk)):
            dims = dimset[bk][bid]
            for u in by_carrier[0].get(dims, ()):
                ids[0][(bk, bid, u)] = len(labels)
                labels.append(((bk, bid), u))
                colours.append(k.colours[u])
    cell_vertices = [None] * (n + 1)
    cell_faces = [None] * (n + 1)
    for kk in range(1, n + 1):
        verts_out = []
        faces_out = []
        for bk in range(kk, n + 1):
            for bid in range(bar.n_cells(bk)):
                dims = dimset[bk][bid]
                if len(dims) != bk + 1:
                    raise ValidationError("barycentric cell with repeated dims")
                for cid in by_carrier[kk].get(dims, ()):
                    ids[kk][(bk, bid, cid)] = len(verts_out)
                    vv = []
                    for u in kc.vertices_of[kk][cid]:
                        hk, hid = host(bk, bid, dims, support[u])
                        vv.append(ids[0][(hk, hid, u)])
                    ff = []
                    for fid in kc.faces_of[kk][cid]:
                        hk, hid = host(bk, bid, dims, carrier[kk - 1][fid])
                        ff.append(ids[kk - 1][(hk, hid, fid)])
                    verts_out.append(tuple(vv))
                    faces_out.append(tuple(ff))
        cell_vertices[kk] = verts_out
        cell_faces[kk] = faces_out
    out = SimplicialCellComplex(n, len(labels), cell_vertices, cell_faces,
                                vertex_labels=labels)
    if not out.validate():
        raise ValidationError("substitution produced an invalid complex")
    return out, tuple(colours)


@dataclass
class StarCertificate:
    ok: bool
    cells_checked: int
    failures: list


def condition_star_check(y, g):
    """Every codimension-2 cell missing two non-adjacent colours must lie
    in exactly four top cells."""
    c = y.complex
    n = c.n
    nv = g.n_vertices
    failures = []
    checked = 0
    if n >= 2:
        counts = {}
        for t in range(c.n_cells(n)):
            hits = set()
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    keep = [s for s in range(n + 1) if s not in (i, j)]
                    hits.add(c.subface(n, t, keep))
            for key in hits:
                counts[key] = counts.get(key, 0) + 1
        for (kk, cid), cnt in counts.items():
            verts = c.vertices_of[kk][cid] if kk else (cid,)
            missing = sorted(set(range(nv)) - {y.colours[v] for v in verts})
            if len(missing) != 2:
                failures.append(f"cell ({kk},{cid}) misses colours {missing}")
                continue
            u, w = missing
            if g.has_edge(u, w):
                continue
            checked += 1
            if cnt != 4:
                failures.append(
                    f"cell ({kk},{cid}) missing {u},{w} has {cnt} top cofacets")
    return StarCertificate(not failures, checked, failures)
