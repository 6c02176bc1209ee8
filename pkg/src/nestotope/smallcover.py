"""Manifolds glued from copies of a graph-associahedron.

A GF(2) matrix with one column per facet prescribes how 2^rank mirror
copies of the polytope are joined: two copies agree over a face exactly
when their labels differ by an element of the span of that face's
columns.  Identity columns give the real moment-angle manifold; a
matrix whose columns at every vertex form a basis gives a small cover;
adjoining an extra always-on row to a non-orientable small cover's
matrix gives its orientation cover.
"""

from dataclasses import dataclass, field

from .errors import BudgetExceeded, CELL_BUDGET, ValidationError
from .graphs import bits_of, members
from .nestohedron import barycentric_complex
from .cellcomplex import (
    SimplicialCellComplex,
    homology,
    homology_z2,
    orient,
    pseudo_manifold_check,
)


class CharacteristicFunction:
    """GF(2) matrix whose columns follow the canonical facet order.

    Columns are stored as integers with bit i meaning row i.  Validity
    (a basis at every vertex) is a property of the pair (polytope,
    matrix) and is checked separately by ``validate_characteristic``.
    """

    def __init__(self, building_set, rows, columns):
        columns = tuple(columns)
        if len(columns) != len(building_set.proper_tubes):
            raise ValidationError(
                f"need one column per facet: got {len(columns)}, "
                f"expected {len(building_set.proper_tubes)}")
        top = 1 << rows
        if any(not 0 <= c < top for c in columns):
            raise ValidationError(f"column does not fit in {rows} rows")
        self.b = building_set
        self.rows = rows
        self.columns = columns

    def column(self, tube_mask):
        return self.columns[self.b.proper_index[tube_mask]]

    def apply(self, g):
        """Image of a group element: XOR of the columns picked by its bits."""
        out = 0
        for j in bits_of(g):
            out ^= self.columns[j]
        return out

    def __eq__(self, other):
        return (isinstance(other, CharacteristicFunction)
                and self.rows == other.rows
                and self.columns == other.columns
                and self.b.tubes == other.b.tubes)

    def __repr__(self):
        return f"CharacteristicFunction(rows={self.rows}, columns={self.columns})"


def lambda_can(b):
    """The matrix induced by the coordinate-simplex normal fan.

    The column of a facet not containing vertex 0 is the sum of the
    basis vectors of its members; otherwise the sum over the complement.
    """
    n = b.n_vertices - 1
    cols = []
    for t in b.proper_tubes:
        if t & 1:
            t = b.ground_mask & ~t
        cols.append(sum(1 << (v - 1) for v in members(t)))
    return CharacteristicFunction(b, n, cols)


def lambda_tomei(n):
    """On the polytope of the complete graph: each facet's column is the
    basis vector indexed by the facet's cardinality."""
    from .graphs import complete_graph, graph_building_set
    b = graph_building_set(complete_graph(n + 1))
    cols = [1 << (t.bit_count() - 1) for t in b.proper_tubes]
    return CharacteristicFunction(b, n, cols)


def lambda_star_as3():
    """A hand-picked matrix on the 3-dimensional path polytope whose glued
    manifold is orientable (the canonical one never is in low dimensions)."""
    from .graphs import graph_building_set, path_graph
    b = graph_building_set(path_graph(4))
    cols = [1, 1, 2, 2, 4, 4, 4, 7, 7]
    return CharacteristicFunction(b, 3, cols)


def validate_characteristic(p, lam):
    """Columns at every vertex's facet set must be linearly independent."""
    if lam.b.tubes != p.b.tubes:
        raise ValidationError("matrix indexed by a different facet list")
    n = p.dim
    if lam.rows != n:
        return False
    for vertex in p.vertices:
        if _rank([lam.columns[i] for i in vertex]) != n:
            return False
    return True


def is_orientable_smallcover(lam):
    """Whether some GF(2) functional sends every column to 1.

    Equivalently the all-ones row lies in the row space, which is the
    combinatorial criterion for the glued manifold to be orientable.
    """
    # Solve x . col = 1 for all columns by elimination on (col, 1) rows.
    pivots = []
    for col in lam.columns:
        row = (col << 1) | 1
        for piv in pivots:
            if row >> (piv.bit_length() - 1) & 1:
                row ^= piv
        if row == 1:
            return False  # 0 . x = 1 is unsatisfiable
        if row:
            pivots.append(row)
            pivots.sort(key=int.bit_length, reverse=True)
    return True


def _rank(vectors):
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def _echelon(vectors):
    """Reduced echelon basis, sorted by decreasing leading bit."""
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return tuple(basis)


def _reduce(g, basis):
    for b in basis:
        g = min(g, g ^ b)
    return g


@dataclass
class GluedManifold:
    """A complex assembled from mirror copies of one polytope.

    ``copy_of_top`` remembers which group element each top simplex came
    from; ``chamber(face, g)`` resolves a polytope face and a group
    element to the vertex cell they were merged into.
    """
    poset: object
    rank: int
    columns: tuple
    complex: SimplicialCellComplex
    bar: SimplicialCellComplex
    copy_of_top: tuple
    _ids: list = field(repr=False)          # per dim: (bar cell, reduced g) -> cell
    _cell_basis: list = field(repr=False)   # per dim, per bar cell: echelon basis
    _face_vertex: dict = field(repr=False)  # polytope face -> bar vertex id

    def n_copies(self):
        return 1 << self.rank

    def reduce(self, k, bar_cid, g):
        return _reduce(g, self._cell_basis[k][bar_cid])

    def cell_id(self, k, bar_cid, g):
        return self._ids[k][(bar_cid, self.reduce(k, bar_cid, g))]

    def chamber(self, face, g):
        vid = self._face_vertex[tuple(face)]
        return self.cell_id(0, vid, g)

    def cell_key(self, k, cell):
        """Inverse of ``cell_id``: the (bar cell, reduced g) pair of a cell."""
        return self._key_of[k][cell]

    def homology(self):
        return homology(self.complex)

    def betti_z2(self):
        return homology_z2(self.complex)


def _glue(p, columns, rank, what):
    bar = barycentric_complex(p)
    n = bar.n
    n_tops = bar.n_cells(n) << rank
    if n_tops > CELL_BUDGET:
        raise BudgetExceeded(
            f"{what} needs {n_tops} top simplices, over the {CELL_BUDGET} budget")

    face_basis = {}
    for level in p.faces_by_size:
        for face in level:
            face_basis[face] = _echelon([columns[i] for i in face])
    face_vertex = {}
    for vid, (_, face) in enumerate(bar.vertex_labels):
        face_vertex[face] = vid
    # Each chain cell is pinned by its largest face (the last vertex of the
    # sorted simplex): that face's span is the smallest along the chain.
    cell_basis = []
    for k in range(n + 1):
        row = []
        for cid in range(bar.n_cells(k)):
            last = bar.vertices_of[k][cid][-1]
            row.append(face_basis[bar.vertex_labels[last][1]])
        cell_basis.append(row)

    ids = [dict() for _ in range(n + 1)]
    key_of = [[] for _ in range(n + 1)]
    labels = []
    cell_vertices = [None] * (n + 1)
    cell_faces = [None] * (n + 1)
    for g in range(1 << rank):
        for vid in range(bar.n_cells(0)):
            key = (vid, _reduce(g, cell_basis[0][vid]))
            if key not in ids[0]:
                ids[0][key] = len(labels)
                key_of[0].append(key)
                labels.append((bar.vertex_labels[vid][1], key[1]))
    for k in range(1, n + 1):
        verts = []
        faces = []
        for g in range(1 << rank):
            for cid in range(bar.n_cells(k)):
                key = (cid, _reduce(g, cell_basis[k][cid]))
                if key in ids[k]:
                    continue
                ids[k][key] = len(verts)
                key_of[k].append(key)
                verts.append(tuple(
                    ids[0][(v, _reduce(g, cell_basis[0][v]))]
                    for v in bar.vertices_of[k][cid]))
                faces.append(tuple(
                    ids[k - 1][(f, _reduce(g, cell_basis[k - 1][f]))]
                    for f in bar.faces_of[k][cid]))
        cell_vertices[k] = verts
        cell_faces[k] = faces
    complex_ = SimplicialCellComplex(n, len(labels), cell_vertices, cell_faces,
                                     vertex_labels=labels)
    copy_of_top = tuple(g for (_, g) in key_of[n])
    glued = GluedManifold(p, rank, tuple(columns), complex_, bar, copy_of_top,
                          ids, cell_basis, face_vertex)
    glued._key_of = key_of
    cert = pseudo_manifold_check(complex_)
    if not cert.is_pseudo:
        raise ValidationError(f"{what} gluing failed: " + "; ".join(cert.failures))
    return glued


def real_moment_angle(p):
    """Glue one copy per subset of facets (identity columns).

    The result is always orientable; that is asserted here.
    """
    m = len(p.b.proper_tubes)
    glued = _glue(p, [1 << j for j in range(m)], m, "moment-angle manifold")
    cert = orient(glued.complex)
    if cert.orientation == "non-orientable":
        raise ValidationError("moment-angle gluing came out non-orientable")
    return glued


def small_cover(p, lam):
    """Glue 2^n copies through a valid characteristic matrix."""
    if not validate_characteristic(p, lam):
        raise ValidationError("matrix is not characteristic: "
                              "columns at some vertex are dependent")
    return _glue(p, lam.columns, lam.rows, "small cover")


@dataclass
class CoveringMap:
    source: GluedManifold
    target: GluedManifold
    maps: tuple   # per dim, cell of source -> cell of target
    fold: int


def covering_projection(r, lam):
    """Collapse the full mirror family onto a small cover's copies.

    Cells map along the matrix itself; every target cell must gain
    exactly 2^(m-n) preimages, and the kernel of the matrix must act
    freely on each top-cell fiber.
    """
    m = r.rank
    cover = small_cover(r.poset, lam)
    n = r.complex.n
    maps = []
    for k in range(n + 1):
        row = [None] * r.complex.n_cells(k)
        for (cid, g), rid in r._ids[k].items():
            row[rid] = cover.cell_id(k, cid, lam.apply(g))
        maps.append(tuple(row))
    fold = 1 << (m - lam.rows)
    for k in range(n + 1):
        counts = [0] * cover.complex.n_cells(k)
        for image in maps[k]:
            counts[image] += 1
        if min(counts) == 0:
            raise ValidationError("projection misses a cell")
        if k == n and any(c != fold for c in counts):
            raise ValidationError("top fibers are not uniform")
    kernel = [g for g in range(1 << m) if lam.apply(g) == 0]
    if len(kernel) != fold:
        raise ValidationError("kernel size disagrees with the fold count")
    for h in kernel[1:]:
        for k in range(n + 1):
            seen = set()
            for (cid, g), rid in r._ids[k].items():
                other = r.cell_id(k, cid, g ^ h)
                if maps[k][other] != maps[k][rid]:
                    raise ValidationError("deck motion does not cover the identity")
                if k == n:
                    if other == rid:
                        raise ValidationError("deck motion fixes a top cell")
                    seen.add(other)
            if k == n and len(seen) != r.complex.n_cells(n):
                raise ValidationError("deck motion is not a top-cell bijection")
    return CoveringMap(r, cover, tuple(maps), fold)


def orientation_cover_via_eta(p, lam):
    """Orientation cover of a non-orientable small cover, built directly.

    The matrix gains one extra row that is 1 on every facet, so twice as
    many copies are glued.  Orientable input would split the result into
    two components, which is refused.
    """
    if not validate_characteristic(p, lam):
        raise ValidationError("matrix is not characteristic: "
                              "columns at some vertex are dependent")
    if is_orientable_smallcover(lam):
        raise ValidationError("orientation cover is disconnected; use two copies")
    n = lam.rows
    cols = [c | (1 << n) for c in lam.columns]
    glued = _glue(p, cols, n + 1, "orientation cover")
    cert = orient(glued.complex)
    if cert.orientation == "non-orientable":
        raise ValidationError("orientation cover came out non-orientable")
    return glued


def betti_z2_matches_h(p, lam):
    """Mod-2 Betti numbers of the glued manifold against the h-vector."""
    from .nestohedron import face_vectors
    got = small_cover(p, lam).betti_z2()
    return tuple(got) == tuple(face_vectors(p).h)


def cover_betti_match(base_q, cover_q):
    """Rational Betti relation between a manifold and its orientation
    cover: each degree gains the complementary degree of the base."""
    n = len(base_q) - 1
    return all(cover_q[i] == base_q[i] + base_q[n - i] for i in range(n + 1))


def enumerate_characteristics(p):
    """Every valid matrix on the polytope, by brute force over columns.

    Only sensible for tiny facet counts; refuses anything larger.
    """
    n = p.dim
    m = len(p.b.proper_tubes)
    total = (2 ** n - 1) ** m
    if total > 1_000_000:
        raise BudgetExceeded(f"{total} candidate matrices is over the "
                             "1000000 enumeration budget")
    out = []
    def rec(cols):
        j = len(cols)
        if j == m:
            lam = CharacteristicFunction(p.b, n, cols)
            if validate_characteristic(p, lam):
                out.append(lam)
            return
        for c in range(1, 2 ** n):
            # prune: any vertex fully inside cols so far must stay independent
            cols.append(c)
            ok = True
            for vertex in p.vertices:
                if all(i < j + 1 for i in vertex):
                    if _rank([cols[i] for i in vertex]) != n:
                        ok = False
                        break
            if ok:
                rec(cols)
            cols.pop()
    rec([])
    return out


def lambda_to_json_dict(lam):
    cols = {}
    for t, j in zip(lam.b.proper_tubes, range(len(lam.columns))):
        key = ",".join(str(v) for v in members(t))
        cols[key] = [(lam.columns[j] >> i) & 1 for i in range(lam.rows)]
    return {"rows": lam.rows, "columns": cols}


def lambda_from_json_dict(b, data):
    try:
        rows = int(data["rows"])
        raw = data["columns"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"matrix JSON needs rows and columns: {exc}")
    cols = []
    seen = set()
    for t in b.proper_tubes:
        key = ",".join(str(v) for v in members(t))
        if key not in raw:
            raise ValidationError(f"matrix JSON misses facet {{{key}}}")
        bits = raw[key]
        if len(bits) != rows or any(x not in (0, 1) for x in bits):
            raise ValidationError(f"facet {{{key}}} column is not {rows} bits")
        seen.add(key)
        cols.append(sum(bit << i for i, bit in enumerate(bits)))
    extra = set(raw) - seen
    if extra:
        raise ValidationError(f"matrix JSON names unknown facets: {sorted(extra)}")
    return CharacteristicFunction(b, rows, cols)


def lambda_from_spec(b, text):
    """Named matrix or a JSON file path."""
    if text == "can":
        return lambda_can(b)
    if text == "tomei":
        lam = lambda_tomei(b.n_vertices - 1)
        if lam.b.tubes != b.tubes:
            raise ValidationError("tomei matrix lives on the complete graph")
        return lam
    if text == "star":
        lam = lambda_star_as3()
        if lam.b.tubes != b.tubes:
            raise ValidationError("star matrix lives on the 4-vertex path")
        return lam
    import json
    from pathlib import Path
    path = Path(text)
    if not path.is_file():
        raise ValidationError(f"no such matrix file: {text}")
    return lambda_from_json_dict(b, json.loads(path.read_text()))
