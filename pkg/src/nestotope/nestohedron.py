"""Face structure of nestohedra built from building sets.

Proper tubes become facets; a set of tubes spans a face exactly when the
tubes are pairwise compatible, where compatibility means nested, or disjoint
with union outside the building set.  Faces are enumerated as cliques of the
compatibility relation and the clique property is verified against the
stored structure by ``check_simple_and_flag`` rather than taken on faith.

Vertex coordinates come from the support-count equations: at a vertex, each
tube S of its tubing pins the coordinate sum over S to the number of tubes
inside S, and the ground set pins the total.  The resulting points are
integral, and an independent oracle recovers the same vertex set by
maximizing every strict linear order over the Minkowski summands.

The last third of the module studies the simplicial projection onto the
simplex spanned by the ground set: barycentres of faces map to barycentres
of complementary coordinate simplices, and the mapping degree is computed by
signed counting of nondegenerate flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm

from .errors import ValidationError
from .graphs import BuildingSet, bits_of, mask_of, members

_MAX_POSET_VERTICES = 10  # clique enumeration above this is not worth having


def support_constant(b, s):
    """Number of tubes contained in the vertex subset ``s`` (a bitmask)."""
    if s & ~b.ground_mask:
        raise ValidationError("subset outside the ground set")
    return sum(1 for t in b.tubes if t & ~s == 0)


def compatible(b, s, t):
    """Whether two distinct tubes span an edge of the compatibility graph:
    nested, or disjoint with union not itself a tube."""
    if s == t:
        raise ValidationError("compatibility needs two distinct tubes")
    if s not in b.tube_index or t not in b.tube_index:
        raise ValidationError("arguments must be tubes of the building set")
    if s & ~t == 0 or t & ~s == 0:
        return True
    if s & t:
        return False
    return (s | t) not in b.tube_index


class FacePoset:
    """Faces of the nestohedron of a building set, graded by tubing size.

    ``faces_by_size[k]`` lists the k-tubings as sorted tuples of indexes into
    ``building_set.proper_tubes``; size 0 is the whole polytope and size
    ``dim`` the vertices.  The raw constructor trusts its input; use
    ``face_poset`` to build from scratch.
    """

    def __init__(self, building_set, faces_by_size):
        self.b = building_set
        self.dim = building_set.n_vertices - 1
        proper = building_set.proper_tubes
        pairs = set()
        for i in range(len(proper)):
            for j in range(i + 1, len(proper)):
                if compatible(building_set, proper[i], proper[j]):
                    pairs.add((i, j))
        self.compat = tuple(
            sum(1 << j for j in range(len(proper))
                if j != i and ((min(i, j), max(i, j)) in pairs))
            for i in range(len(proper)))
        self.faces_by_size = tuple(tuple(level) for level in faces_by_size)
        self.face_sets = tuple(set(level) for level in self.faces_by_size)

    @property
    def vertices(self):
        return self.faces_by_size[self.dim]

    def f_counts(self):
        return tuple(len(level) for level in self.faces_by_size)

    def __repr__(self):
        return (f"FacePoset(dim={self.dim}, "
                f"f={self.f_counts()})")


def face_poset(b):
    """Enumerate all tubings of the building set as compatibility cliques.

    Requires the ground set to be a tube (connected graph, in the graphical
    case).  Every maximal tubing must have full size; anything else means the
    input was not a building set and raises.
    """
    if not b.contains_ground:
        raise ValidationError("face poset needs the ground set among the tubes")
    if b.n_vertices > _MAX_POSET_VERTICES:
        raise ValidationError(
            f"face enumeration is capped at {_MAX_POSET_VERTICES} vertices")
    n = b.n_vertices - 1
    proper = b.proper_tubes
    m = len(proper)
    compat = []
    for i in range(m):
        mask = 0
        for j in range(m):
            if j != i and compatible(b, proper[i], proper[j]):
                mask |= 1 << j
        compat.append(mask)
    faces = [[] for _ in range(n + 1)]
    full = (1 << m) - 1

    def rec(members_tup, cand, ext):
        k = len(members_tup)
        faces[k].append(members_tup)
        if k == n:
            if ext:
                raise ValidationError(
                    "found more pairwise compatible tubes than the dimension")
            return
        if ext == 0:
            raise ValidationError(
                "maximal tubing smaller than the dimension; not a building set")
        c = cand
        while c:
            low = c & -c
            i = low.bit_length() - 1
            higher = ~((1 << (i + 1)) - 1)
            rec(members_tup + (i,), cand & compat[i] & higher, ext & compat[i])
            c ^= low
    rec((), full, full)
    return FacePoset(b, faces)


def check_simple_and_flag(p):
    """Verify the stored face list against the clique model.

    True when faces are subset-closed, coincide with the cliques of the
    stored pair relation, and every maximal face is a full-size tubing.  A
    hand-built poset missing the top of a clique (three mutually compatible
    tubes with no triple face) fails here.
    """
    n = p.dim
    stored = [set(level) for level in p.faces_by_size]
    if stored[0] != {()}:
        return False
    for k in range(1, n + 1):
        for face in stored[k]:
            if len(face) != k or list(face) != sorted(set(face)):
                return False
            for drop in range(k):
                if face[:drop] + face[drop + 1:] not in stored[k - 1]:
                    return False
    # adjacency as recorded by the 2-faces
    m = len(p.b.proper_tubes)
    adj = [0] * m
    if n >= 2:
        for (i, j) in stored[2]:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    elif n == 1:
        pass
    cliques = [set() for _ in range(n + 2)]

    def rec(members_tup, cand, ext):
        k = len(members_tup)
        if k > n + 1:
            return False
        if k <= n:
            cliques[k].add(members_tup)
        else:
            return False
        if ext == 0 and k < n:
            return False
        c = cand
        ok = True
        while c:
            low = c & -c
            i = low.bit_length() - 1
            higher = ~((1 << (i + 1)) - 1)
            if not rec(members_tup + (i,), cand & adj[i] & higher, ext & adj[i]):
                ok = False
            c ^= low
        return ok

    full = (1 << m) - 1
    singles = {f[0] for f in stored[1]} if n >= 1 else set()
    start = sum(1 << i for i in singles)
    if not rec((), start, start if n >= 1 else 0):
        return False
    for k in range(n + 1):
        if cliques[k] != stored[k]:
            return False
    return True


@dataclass
class FaceVectors:
    f: tuple      # counts of tubings of size 0..dim (whole polytope first)
    h: tuple
    gamma: tuple


def face_vectors(p):
    """f-, h- and gamma-vectors from the graded face counts.

    h is extracted as the coefficient list of sum_k f_k (x-1)^(dim-k) and is
    checked to be palindromic before the gamma expansion in the basis
    t^i (1+t)^(dim-2i) is peeled off.
    """
    n = p.dim
    f = p.f_counts()
    # expand sum_k f[k] * (x-1)^(n-k)
    coeffs = [0] * (n + 1)  # coeffs[j] multiplies x^(n-j)
    binom = _binomials(n)
    for k in range(n + 1):
        d = n - k
        for j in range(d + 1):
            coeffs[n - d + j] += f[k] * binom[d][j] * (-1) ** j
    h = tuple(coeffs)
    if h[0] != 1 or any(c < 0 for c in h):
        raise ValidationError(f"h-vector {h} is not of polytope shape")
    if h != h[::-1]:
        raise ValidationError(f"h-vector {h} is not palindromic")
    gamma = []
    work = list(h)
    for i in range(n // 2 + 1):
        g = work[i]
        gamma.append(g)
        # subtract g * t^i (1+t)^(n-2i)
        for j in range(n - 2 * i + 1):
            work[i + j] -= g * binom[n - 2 * i][j]
    if any(work):
        raise ValidationError("gamma expansion left a remainder")
    return FaceVectors(f, h, tuple(gamma))


def _binomials(n):
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1])
    return rows


# ---------------------------------------------------------------------------
# Coordinates.


def vertex_coordinates(p, vertex):
    """Integer coordinates of a vertex given as a tuple of tube indexes.

    Solves the support-count equations of the vertex's tubes plus the total
    over the ground set, then confirms the point satisfies every remaining
    tube inequality strictly.  Coordinates of nestohedra are integral and the
    result is returned as a tuple of ints.
    """
    b = p.b
    if vertex not in p.face_sets[p.dim]:
        raise ValidationError("not a vertex of this face poset")
    proper = b.proper_tubes
    nv = b.n_vertices
    rows = []
    for i in vertex:
        s = proper[i]
        rows.append([Fraction(1) if (s >> j) & 1 else Fraction(0)
                     for j in range(nv)] + [Fraction(support_constant(b, s))])
    rows.append([Fraction(1)] * nv + [Fraction(len(b.tubes))])
    x = _solve_exact(rows, nv)
    for idx, s in enumerate(proper):
        total = sum(x[j] for j in bits_of(s))
        k_s = support_constant(b, s)
        if idx in vertex:
            if total != k_s:
                raise ValidationError("vertex equations failed to hold")
        elif total <= k_s:
            raise ValidationError(
                "support inequality not strict off the vertex's own tubes")
    out = []
    for v in x:
        if v.denominator != 1:
            raise ValidationError("vertex came out non-integral")
        out.append(int(v))
    return tuple(out)


def _solve_exact(rows, n):
    """Gaussian elimination over Fractions for an (n x n+1) augmented system."""
    a = [row[:] for row in rows]
    if len(a) != n:
        # consistent overdetermined systems are reduced first
        pass
    m = len(a)
    piv = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            raise ValidationError("singular vertex system")
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    if len(piv) != n:
        raise ValidationError("singular vertex system")
    for i in range(r, m):
        if a[i][n] != 0:
            raise ValidationError("inconsistent vertex system")
    return [a[i][n] for i in range(n)]


def all_vertex_coordinates(p):
    """Map every vertex tubing to its coordinate tuple."""
    return {v: vertex_coordinates(p, v) for v in p.vertices}


def minkowski_vertex_oracle(b):
    """Vertex set recovered without the face poset: every strict order on
    the ground set selects, in each Minkowski summand simplex, the top
    coordinate; summing indicator vectors over the tubes gives a vertex, and
    ranging over all orders gives all of them."""
    if not b.contains_ground:
        raise ValidationError("oracle needs the ground set among the tubes")
    nv = b.n_vertices
    out = set()
    for perm in permutations(range(nv)):
        rank = [0] * nv
        for pos, v in enumerate(perm):
            rank[v] = pos
        point = [0] * nv
        for s in b.tubes:
            best = max(bits_of(s), key=lambda j: rank[j])
            point[best] += 1
        out.add(tuple(point))
    return out


# ---------------------------------------------------------------------------
# Barycentric model and the projection to the coordinate simplex.


def _flags(p):
    """All complete chains of faces, listed from vertex up to the whole
    polytope, as tuples of face tuples."""
    n = p.dim
    out = []

    def rec(chain):
        face = chain[-1]
        if not face:
            out.append(tuple(chain))
            return
        for drop in range(len(face)):
            rec(chain + [face[:drop] + face[drop + 1:]])

    for v in p.vertices:
        rec([v])
    return out


def barycentric_complex(p):
    """Simplicial complex of all face chains, one vertex per face of the
    polytope (the whole polytope included), labelled (dimension, tubing).
    Sorted labels put each simplex's vertices in increasing face dimension.
    """
    n = p.dim
    tops = []
    for flag in _flags(p):
        tops.append(tuple((n - len(face), face) for face in flag))
    from .cellcomplex import SimplicialCellComplex
    return SimplicialCellComplex.from_top_simplices(tops)


def pi_map(p):
    """Barycentre images of all faces: a face with tubing T goes to the
    barycentre of the coordinate simplex on the vertices not covered by T."""
    b = p.b
    proper = b.proper_tubes
    out = {}
    for level in p.faces_by_size:
        for face in level:
            covered = 0
            for i in face:
                covered |= proper[i]
            u = b.ground_mask & ~covered
            if u == 0:
                raise ValidationError("tubing covers the whole ground set")
            size = u.bit_count()
            out[face] = tuple(
                Fraction(1, size) if (u >> j) & 1 else Fraction(0)
                for j in range(b.n_vertices))
    return out


def _int_det(rows):
    """Fraction-free Bareiss determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _det_sign_of_points(points):
    """Orientation sign of n+1 rational points spanning a simplex in the
    positive-sum hyperplane, via the ambient coordinate determinant."""
    rows = []
    for pt in points:
        denom = lcm(*(v.denominator for v in pt))
        rows.append([int(v * denom) for v in pt])
    d = _int_det(rows)
    return (d > 0) - (d < 0)


def pi_degree(p):
    """Degree of the barycentric projection onto the ground-set simplex.

    Every complete face chain maps to a chain of coordinate subsets; chains
    whose subset sizes fail to grow one by one are degenerate and count
    zero.  For the rest, the product of the two orientation signs is
    accumulated per image flag.  The count must come out the same for every
    image flag, the image flags must exhaust all orderings of the ground
    set, and face barycentres must land in the subsimplex missing their
    tubes; any failure raises.
    """
    b = p.b
    n = p.dim
    nv = b.n_vertices
    proper = b.proper_tubes
    coords = all_vertex_coordinates(p)
    images = pi_map(p)

    # containment guard: image support avoids every tube of the face
    for level in p.faces_by_size:
        for face in level:
            img = images[face]
            for i in face:
                if any(img[j] != 0 for j in bits_of(proper[i])):
                    raise ValidationError(
                        "face image meets a coordinate its tube forbids")

    # barycentres of faces in the source polytope
    bary = {}
    vert_sets = [frozenset(v) for v in p.vertices]
    vert_pts = [coords[v] for v in p.vertices]
    for level in p.faces_by_size:
        for face in level:
            fs = set(face)
            pts = [pt for vs, pt in zip(vert_sets, vert_pts) if fs <= vs]
            if not pts:
                raise ValidationError("face with no vertices")
            count = len(pts)
            bary[face] = tuple(
                Fraction(sum(pt[j] for pt in pts), count) for j in range(nv))

    def u_mask(face):
        covered = 0
        for i in face:
            covered |= proper[i]
        return b.ground_mask & ~covered

    acc = {}
    boundary_keys = set()
    for flag in _flags(p):
        key = tuple(u_mask(face) for face in flag)
        degenerate = any(key[i].bit_count() != i + 1 for i in range(n + 1))
        if degenerate:
            continue
        boundary_keys.add(key[:-1])
        sdom = _det_sign_of_points([bary[face] for face in flag])
        if sdom == 0:
            raise ValidationError("degenerate source flag with nondegenerate image")
        acc[key] = acc.get(key, 0) + sdom

    expected = set()
    for perm in permutations(range(nv)):
        m = 0
        chain = []
        for v in perm:
            m |= 1 << v
            chain.append(m)
        expected.add(tuple(chain))
    if set(acc) != expected:
        raise ValidationError("projection misses some full flags of the simplex")
    if boundary_keys != {key[:-1] for key in expected}:
        raise ValidationError("projection misses part of the boundary")

    degs = set()
    for key, total in acc.items():
        simg = _det_sign_of_points(
            [tuple(Fraction(1, m.bit_count()) if (m >> j) & 1 else Fraction(0)
                   for j in range(nv)) for m in key])
        if simg == 0:
            raise ValidationError("degenerate image flag slipped through")
        degs.add(total * simg)
    if len(degs) != 1:
        raise ValidationError(f"local degrees disagree: {sorted(degs)}")
    return degs.pop()
