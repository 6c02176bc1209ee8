"""Simplicial cell complexes with explicit face structure, and their homology.

A simplicial cell complex is assembled from closed simplices glued along
faces.  Unlike a simplicial complex, a cell is not determined by its vertex
set: a circle can be built from two arcs on the same two vertices.  What is
forbidden is identifying two faces of one and the same simplex, so a circle
made of a single self-glued arc is not allowed.

Each k-cell stores an ordered (k+1)-tuple of vertex ids and a (k+1)-tuple of
references to (k-1)-cells.  The convention throughout: the face at slot i
carries the cell's vertices with slot i deleted, order preserved.  Gluings
are therefore order-preserving on stored vertex tuples, boundary maps use the
usual alternating slot signs, and the double-face identities are checked by
``validate`` rather than assumed.

Homology is computed from integer Smith normal forms of the boundary
matrices: sparse elimination over unit pivots chosen Markowitz-style, with a
dense textbook pass for whatever core remains.  Rational and mod-2 Betti
numbers both fall out of the elementary divisors; an independent GF(2)
row-reduction is kept alongside as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import BudgetExceeded, ValidationError


class SimplicialCellComplex:
    def __init__(self, dim, vertex_count, cell_vertices, cell_faces, vertex_labels=None):
        """Raw constructor; prefer the ``from_*`` builders.

        cell_vertices[k] lists, for every k-cell, its ordered vertex ids;
        cell_faces[k] lists the ids of its facets by slot (empty for k=0).
        """
        self.n = dim
        self.vertices_of = [[(i,) for i in range(vertex_count)]]
        self.faces_of = [[() for _ in range(vertex_count)]]
        for k in range(1, dim + 1):
            self.vertices_of.append([tuple(v) for v in cell_vertices[k]])
            self.faces_of.append([tuple(f) for f in cell_faces[k]])
        self.vertex_labels = list(vertex_labels) if vertex_labels is not None else None
        self._subface_cache = {}

    # -- basic queries ------------------------------------------------------

    def n_cells(self, k):
        if k < 0 or k > self.n:
            return 0
        return len(self.vertices_of[k])

    def cell_counts(self):
        return tuple(self.n_cells(k) for k in range(self.n + 1))

    def total_cells(self):
        return sum(self.cell_counts())

    def euler_characteristic(self):
        return sum((-1) ** k * self.n_cells(k) for k in range(self.n + 1))

    def subface(self, k, cid, keep):
        """The subcell spanned by the slots in ``keep`` (iterable of slot ids)."""
        keep = tuple(sorted(keep))
        key = (k, cid, keep)
        got = self._subface_cache.get(key)
        if got is not None:
            return got
        cur_k, cur = k, cid
        for s in sorted(set(range(k + 1)) - set(keep), reverse=True):
            cur = self.faces_of[cur_k][cur][s]
            cur_k -= 1
        self._subface_cache[key] = (cur_k, cur)
        return (cur_k, cur)

    def facet_incidences(self):
        """For every (n-1)-cell, the list of (top cell, slot) hits."""
        inc = [[] for _ in range(self.n_cells(self.n - 1))]
        for t, faces in enumerate(self.faces_of[self.n]):
            for slot, f in enumerate(faces):
                inc[f].append((t, slot))
        return inc

    def boundary_entries(self, k):
        """Sparse integer boundary matrix of degree k as {(row, col): coef}."""
        entries = {}
        for c, faces in enumerate(self.faces_of[k]):
            for slot, f in enumerate(faces):
                key = (f, c)
                entries[key] = entries.get(key, 0) + (-1) ** slot
        return {key: v for key, v in entries.items() if v != 0}

    # -- validity -----------------------------------------------------------

    def validate(self):
        """Cell-complex conditions: distinct vertices per cell, consistent
        face/vertex bookkeeping, and the double-face identities.  Returns
        True or False."""
        for k in range(1, self.n + 1):
            n_below = self.n_cells(k - 1)
            for cid, verts in enumerate(self.vertices_of[k]):
                if len(set(verts)) != k + 1:
                    return False
                faces = self.faces_of[k][cid]
                if len(faces) != k + 1:
                    return False
                for slot, f in enumerate(faces):
                    if not 0 <= f < n_below:
                        return False
                    expect = verts[:slot] + verts[slot + 1:]
                    if self.vertices_of[k - 1][f] != expect:
                        return False
        for k in range(2, self.n + 1):
            for cid, faces in enumerate(self.faces_of[k]):
                for i in range(k + 1):
                    for j in range(i + 1, k + 1):
                        a = self.faces_of[k - 1][faces[j]][i]
                        b = self.faces_of[k - 1][faces[i]][j - 1]
                        if a != b:
                            return False
        return True

    def is_pure(self):
        reachable = [set() for _ in range(self.n + 1)]
        reachable[self.n] = set(range(self.n_cells(self.n)))
        for k in range(self.n, 0, -1):
            for cid in reachable[k]:
                reachable[k - 1].update(self.faces_of[k][cid])
        return all(len(reachable[k]) == self.n_cells(k) for k in range(self.n + 1))

    def is_vertex_determined(self):
        """No two distinct cells share the same vertex set."""
        for k in range(1, self.n + 1):
            seen = set()
            for verts in self.vertices_of[k]:
                key = tuple(sorted(verts))
                if key in seen:
                    return False
                seen.add(key)
        return True

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_top_simplices(cls, tops, vertex_labels=None):
        """Vertex-determined build: lower cells are identified exactly when
        their (sorted) vertex sets agree; top cells stay distinct per list
        entry, so doubled entries model doubled cells."""
        tops = [tuple(t) for t in tops]
        if not tops:
            raise ValidationError("no top cells given")
        dim = len(tops[0]) - 1
        if any(len(t) != dim + 1 for t in tops):
            raise ValidationError("top cells of mixed dimension")
        for t in tops:
            if len(set(t)) != dim + 1:
                raise ValidationError(f"repeated vertex in top cell {t}")
        if vertex_labels is None:
            vertex_labels = sorted({v for t in tops for v in t})
        vid = {lab: i for i, lab in enumerate(vertex_labels)}
        levels = [None] * (dim + 1)
        levels[dim] = [tuple(sorted(vid[v] for v in t)) for t in tops]
        index = [None] * (dim + 1)
        for k in range(dim - 1, 0, -1):
            idx = {}
            for verts in levels[k + 1]:
                for slot in range(k + 2):
                    sub = verts[:slot] + verts[slot + 1:]
                    if sub not in idx:
                        idx[sub] = len(idx)
            pairs = sorted(idx.items(), key=lambda kv: kv[1])
            levels[k] = [verts for verts, _ in pairs]
            index[k] = idx
        cell_vertices = [None] * (dim + 1)
        cell_faces = [None] * (dim + 1)
        for k in range(1, dim + 1):
            cell_vertices[k] = levels[k]
            faces = []
            for verts in levels[k]:
                row = []
                for slot in range(k + 1):
                    sub = verts[:slot] + verts[slot + 1:]
                    row.append(sub[0] if k == 1 else index[k - 1][sub])
                faces.append(tuple(row))
            cell_faces[k] = faces
        return cls(dim, len(vertex_labels), cell_vertices, cell_faces, vertex_labels)


# ---------------------------------------------------------------------------
# Quotients of disjoint simplices by order-preserving facet identifications.
# Instances (t, A) with A a nonempty slot mask of top simplex t are merged by
# the transitive closure of the listed facet gluings; the classes become the
# cells.  This is the engine behind orientation double covers and the loader
# for emitted non-vertex-determined complexes.


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _slot_correspondence(n, i1, i2):
    """Map slot j != i1 of one facet to the matching slot of the other."""
    table = [None] * (n + 1)
    for j in range(n + 1):
        if j == i1:
            continue
        pos = j - (1 if j > i1 else 0)
        table[j] = pos + (1 if pos >= i2 else 0)
    return table


def complex_from_gluings(dim, n_tops, gluings):
    """Glue ``n_tops`` copies of the dim-simplex along the listed facet pairs.

    ``gluings`` is an iterable of ((t1, i1), (t2, i2)) meaning facet i1 of top
    t1 is identified with facet i2 of top t2, matching remaining slots in
    order.  Returns (complex, instance_cell) where instance_cell maps
    (t, slot_mask) to the (k, cell_id) it became.
    """
    full = (1 << (dim + 1)) - 1
    per_top = full  # masks 1..full
    uf = _UnionFind(n_tops * per_top)

    def iid(t, mask):
        return t * per_top + (mask - 1)

    corr_cache = {}
    for (t1, i1), (t2, i2) in gluings:
        key = (i1, i2)
        table = corr_cache.get(key)
        if table is None:
            table = _slot_correspondence(dim, i1, i2)
            corr_cache[key] = table
        avail = full & ~(1 << i1)
        sub = avail
        while sub:
            mapped = 0
            m = sub
            while m:
                low = m & -m
                mapped |= 1 << table[low.bit_length() - 1]
                m ^= low
            uf.union(iid(t1, sub), iid(t2, mapped))
            sub = (sub - 1) & avail

    # Number the classes, graded by |A| - 1.
    cell_of_root = {}
    counts = [0] * (dim + 1)
    order = []
    for t in range(n_tops):
        for mask in range(1, full + 1):
            root = uf.find(iid(t, mask))
            if root not in cell_of_root:
                k = mask.bit_count() - 1
                cell_of_root[root] = (k, counts[k])
                counts[k] += 1
                order.append((t, mask, root))

    def instance_cell(t, mask):
        return cell_of_root[uf.find(iid(t, mask))]

    cell_vertices = [None] + [[None] * counts[k] for k in range(1, dim + 1)]
    cell_faces = [None] + [[None] * counts[k] for k in range(1, dim + 1)]
    for t, mask, _root in order:
        k = mask.bit_count() - 1
        if k == 0:
            continue
        _, cid = instance_cell(t, mask)
        verts = []
        faces = []
        m = mask
        while m:
            low = m & -m
            verts.append(instance_cell(t, low)[1])
            faces.append(instance_cell(t, mask ^ low)[1])
            m ^= low
        cell_vertices[k][cid] = tuple(verts)
        cell_faces[k][cid] = tuple(faces)
    cx = SimplicialCellComplex(dim, counts[0], cell_vertices, cell_faces)
    return cx, instance_cell


# ---------------------------------------------------------------------------
# Pseudo-manifold structure and orientation.


@dataclass
class PseudoManifoldCertificate:
    dim: int
    is_pseudo: bool
    failures: list = field(default_factory=list)
    orientation: object = None  # tuple of +-1 per top cell, or "non-orientable"


def pseudo_manifold_check(c):
    """Pure + every (n-1)-cell in exactly two top cells, counted with slots."""
    failures = []
    if not c.validate():
        failures.append("not a valid simplicial cell complex")
    elif not c.is_pure():
        failures.append("not pure: some cell lies in no top cell")
    else:
        for f, inc in enumerate(c.facet_incidences()):
            if len(inc) != 2:
                failures.append(
                    f"(n-1)-cell {f} lies in {len(inc)} top cells, expected 2"
                )
                if len(failures) > 20:
                    failures.append("...")
                    break
    return PseudoManifoldCertificate(c.n, not failures, failures)


def orient(c):
    """Propagate top-cell signs across facets; detect non-orientability.

    Two top cells sharing a facet must induce opposite orientations on it,
    which fixes their relative sign as (-1)^(slot1+slot2+1).  The certificate
    carries the sign vector on success and the string "non-orientable" when
    propagation hits a contradiction.  Signs on each facet-connected
    component are fixed only up to a global flip.
    """
    cert = pseudo_manifold_check(c)
    if not cert.is_pseudo:
        return cert
    n_top = c.n_cells(c.n)
    adj = [[] for _ in range(n_top)]
    ok = True
    for inc in c.facet_incidences():
        (t1, s1), (t2, s2) = inc
        # induced orientations must cancel: sign2 = sign1 * (-1)^(s1+s2+1)
        flip = (s1 + s2 + 1) & 1
        if t1 == t2:
            if flip:  # a self-gluing needs slots of opposite parity
                ok = False
            continue
        adj[t1].append((t2, flip))
        adj[t2].append((t1, flip))
    sign = [0] * n_top
    for start in range(n_top):
        if not ok:
            break
        if sign[start]:
            continue
        sign[start] = 1
        stack = [start]
        while stack and ok:
            t = stack.pop()
            for u, flip in adj[t]:
                want = -sign[t] if flip else sign[t]
                if sign[u] == 0:
                    sign[u] = want
                    stack.append(u)
                elif sign[u] != want:
                    ok = False
                    break
    if not ok:
        cert.orientation = "non-orientable"
        return cert
    # The fundamental cycle must vanish under the integer boundary map.
    if c.n >= 1:
        acc = {}
        for t, faces in enumerate(c.faces_of[c.n]):
            for slot, f in enumerate(faces):
                acc[f] = acc.get(f, 0) + sign[t] * (-1) ** slot
        if any(v != 0 for v in acc.values()):
            cert.is_pseudo = False
            cert.failures.append("signed boundary of the fundamental cycle is nonzero")
            return cert
    cert.orientation = tuple(sign)
    return cert


def facet_connected_components(c):
    """Top cells grouped by walks across shared facets."""
    n_top = c.n_cells(c.n)
    uf = _UnionFind(n_top)
    for inc in c.facet_incidences():
        base = inc[0][0]
        for t, _ in inc[1:]:
            uf.union(base, t)
    comps = {}
    for t in range(n_top):
        comps.setdefault(uf.find(t), []).append(t)
    return sorted(comps.values())


def orientation_double_cover(c):
    """The two-sheeted cover trivializing the orientation character.

    Top cells are doubled into sheets; crossing a facet keeps or swaps the
    sheet according to whether the two induced orientations already cancel.
    Lower cells follow by transitive closure.  Returns (cover, projection)
    where projection lists, per dimension, the base cell under each cover
    cell.  The cover of a non-orientable connected pseudo-manifold is
    connected; of an orientable one, two disjoint copies.
    """
    cert = pseudo_manifold_check(c)
    if not cert.is_pseudo:
        raise ValidationError("orientation double cover needs a pseudo-manifold: "
                              + "; ".join(cert.failures))
    n = c.n
    n_top = c.n_cells(n)

    def sheet_top(t, s):
        return 2 * t + s

    gluings = []
    for inc in c.facet_incidences():
        (t1, s1), (t2, s2) = inc
        flip = (s1 + s2 + 1) & 1
        for s in (0, 1):
            gluings.append(((sheet_top(t1, s), s1), (sheet_top(t2, s ^ flip), s2)))
    cover, instance_cell = complex_from_gluings(n, 2 * n_top, gluings)
    if not cover.validate():
        raise ValidationError("double cover produced an invalid complex")
    projection = [[None] * cover.n_cells(k) for k in range(n + 1)]
    full = (1 << (n + 1)) - 1
    for t in range(n_top):
        for s in (0, 1):
            mask = full
            sub = full
            while sub:
                k, cid = instance_cell(sheet_top(t, s), sub)
                bk, bid = c.subface(n, t, tuple(bits_of_mask(sub)))
                projection[k][cid] = bid
                sub = (sub - 1) & mask
    for k in range(n + 1):
        if any(b is None for b in projection[k]):
            raise ValidationError("double cover projection left a cell unmapped")
    return cover, projection


def bits_of_mask(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def barycentric_subdivide(c):
    """Barycentric subdivision; always a true simplicial complex.

    Vertices are the cells of ``c`` labelled (dim, id); top simplices are the
    complete flags of iterated faces inside each top cell, one per permutation
    of its slots.  Each bar vertex is naturally coloured by the dimension of
    the cell it subdivides, and sorted labels list a simplex's vertices in
    increasing colour, which downstream code relies on.
    """
    n = c.n
    tops = []
    slot_sets = [tuple(sorted(p[: i + 1])) for p in permutations(range(n + 1))
                 for i in range(n + 1)]
    # regroup: per permutation a chain of n+1 slot subsets
    chains = [slot_sets[i * (n + 1):(i + 1) * (n + 1)]
              for i in range(len(slot_sets) // (n + 1))]
    for t in range(c.n_cells(n)):
        for chain in chains:
            tops.append(tuple(c.subface(n, t, keep) for keep in chain))
    return SimplicialCellComplex.from_top_simplices(tops)


# ---------------------------------------------------------------------------
# Smith normal form and homology.


def smith_normal_form(entries, nrows, ncols):
    """(rank, elementary divisors) of an integer matrix given sparsely.

    Unit pivots are eliminated first, chosen by Markowitz fill count, which
    keeps the arithmetic integral and the matrix sparse; whatever core
    survives without unit entries goes through a dense textbook reduction.
    Divisors come back positive, each dividing the next.
    """
    rows = {}
    cols = {}
    for (r, ch), v in entries.items():
        if v:
            rows.setdefault(r, {})[ch] = v
            cols.setdefault(ch, set()).add(r)
    ones = 0
    while True:
        best = None
        for r, row in rows.items():
            rl = len(row)
            for ch, v in row.items():
                if v == 1 or v == -1:
                    cost = (rl - 1) * (len(cols[ch]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, ch)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pr, pc = best
        pv = rows[pr][pc]
        prow = rows.pop(pr)
        for ch in prow:
            cols[ch].discard(pr)
            if not cols[ch]:
                del cols[ch]
        for r in list(cols.get(pc, ())):
            row = rows[r]
            mult = row[pc] * pv  # pv in {1,-1} so this is row[pc]/pv
            for ch, v in prow.items():
                if ch == pc:
                    continue
                nv = row.get(ch, 0) - mult * v
                if nv:
                    if ch not in row:
                        cols.setdefault(ch, set()).add(r)
                    row[ch] = nv
                else:
                    if ch in row:
                        del row[ch]
                        cols[ch].discard(r)
                        if not cols[ch]:
                            del cols[ch]
            del row[pc]
            cols[pc].discard(r)
            if not row:
                del rows[r]
        if pc in cols and not cols[pc]:
            del cols[pc]
        ones += 1
    # Dense leftover.
    if rows:
        row_ids = sorted(rows)
        col_ids = sorted({ch for row in rows.values() for ch in row})
        cindex = {ch: j for j, ch in enumerate(col_ids)}
        dense = [[0] * len(col_ids) for _ in row_ids]
        for i, r in enumerate(row_ids):
            for ch, v in rows[r].items():
                dense[i][cindex[ch]] = v
        core = _dense_snf(dense)
    else:
        core = []
    divisors = [1] * ones + core
    return (len(divisors), tuple(divisors))


def _dense_snf(a):
    """Textbook Smith reduction of a small dense integer matrix.

    Returns the nonzero diagonal entries, positive, in divisibility order.
    """
    a = [row[:] for row in a]
    nr, nc = len(a), len(a[0]) if a else 0
    out = []
    top = 0
    while top < nr and top < nc:
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(best[0])):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        # clear row and column; restart if a remainder creates a smaller entry
        again = False
        p = a[top][top]
        for i in range(top + 1, nr):
            if a[i][top]:
                q = a[i][top] // p
                for j in range(top, nc):
                    a[i][j] -= q * a[top][j]
                if a[i][top]:
                    again = True
        for j in range(top + 1, nc):
            if a[top][j]:
                q = a[top][j] // p
                for i in range(top, nr):
                    a[i][j] -= q * a[i][top]
                if a[top][j]:
                    again = True
        if again:
            continue
        # ensure p divides everything below-right
        p = a[top][top]
        fixed = True
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if a[i][j] % p:
                    for jj in range(top, nc):
                        a[top][jj] += a[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        out.append(abs(p))
        top += 1
    return out


def gf2_rank(columns):
    """Rank over GF(2) of columns given as int bitmasks."""
    pivots = {}
    rank = 0
    for col in columns:
        while col:
            h = col.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = col
                rank += 1
                break
            col ^= p
    return rank


def _gf2_boundary_columns(c, k):
    cols = []
    for faces in c.faces_of[k]:
        m = 0
        for f in faces:
            m ^= 1 << f
        cols.append(m)
    return cols


@dataclass
class HomologyProfile:
    betti_q: tuple
    betti_z2: tuple
    torsion: tuple  # per degree, the elementary divisors > 1 of H_k
    euler: int


def homology(c):
    """Integral homology data in all degrees via Smith normal forms."""
    n = c.n
    ranks = [0] * (n + 2)
    odd_ranks = [0] * (n + 2)
    divisors = [()] * (n + 2)
    for k in range(1, n + 1):
        entries = c.boundary_entries(k)
        rank, divs = smith_normal_form(entries, c.n_cells(k - 1), c.n_cells(k))
        ranks[k] = rank
        divisors[k] = divs
        odd_ranks[k] = sum(1 for d in divs if d % 2 == 1)
    betti_q = []
    betti_z2 = []
    torsion = []
    for k in range(n + 1):
        dim_k = c.n_cells(k)
        betti_q.append(dim_k - ranks[k] - ranks[k + 1])
        betti_z2.append(dim_k - odd_ranks[k] - odd_ranks[k + 1])
        torsion.append(tuple(d for d in divisors[k + 1] if d > 1))
    prof = HomologyProfile(tuple(betti_q), tuple(betti_z2), tuple(torsion),
                           c.euler_characteristic())
    alt = sum((-1) ** k * b for k, b in enumerate(prof.betti_q))
    if alt != prof.euler:
        raise ValidationError("Betti numbers violate the Euler relation")
    return prof


def homology_z2(c):
    """Mod-2 Betti numbers by direct GF(2) elimination (fast path; also the
    independent cross-check for the Smith-normal-form route)."""
    n = c.n
    ranks = [0] * (n + 2)
    for k in range(1, n + 1):
        ranks[k] = gf2_rank(_gf2_boundary_columns(c, k))
    return tuple(c.n_cells(k) - ranks[k] - ranks[k + 1] for k in range(n + 1))


# ---------------------------------------------------------------------------
# Stock complexes and JSON input/output.


def simplex_sphere(k):
    """Boundary of the (k+1)-simplex: the minimal triangulated k-sphere."""
    if k < 1:
        raise ValidationError("sphere dimension must be at least 1")
    tops = list(combinations(range(k + 2), k + 1))
    return SimplicialCellComplex.from_top_simplices(tops)


def torus7():
    """The classical 7-vertex torus (cyclic Moebius-Kantor triangulation)."""
    tops = []
    for i in range(7):
        tops.append((i, (i + 1) % 7, (i + 3) % 7))
        tops.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialCellComplex.from_top_simplices(tops)


def klein_bottle():
    """A 9-vertex Klein bottle: 3x3 torus grid with one seam reflected."""
    def w(i, j):
        if j == 3:
            return (-i) % 3
        return 3 * j + (i % 3)

    tops = []
    for i in range(3):
        for j in range(3):
            a = w(i, j)
            b = w(i + 1, j)
            cc = w(i, j + 1)
            d = w(i + 1, j + 1)
            tops.append((a, b, d))
            tops.append((a, d, cc))
    return SimplicialCellComplex.from_top_simplices(tops)


def projective_plane():
    """The 6-vertex triangulation of the real projective plane."""
    tops = [(0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
            (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5)]
    return SimplicialCellComplex.from_top_simplices(tops)


def complex_to_json_dict(c, orientation=None):
    out = {"schema": "nestotope/1", "kind": "pseudomanifold", "dim": c.n}
    labels = c.vertex_labels or list(range(c.n_cells(0)))
    str_labels = [str(l) for l in labels]
    tops = [[str_labels[v] for v in verts] for verts in c.vertices_of[c.n]]
    out["top_cells"] = tops
    if orientation is not None and not isinstance(orientation, str):
        out["orientation"] = list(orientation)
    if not c.is_vertex_determined():
        inst = []
        full = (1 << (c.n + 1)) - 1
        for t in range(c.n_cells(c.n)):
            sub = full
            while sub:
                k, cid = c.subface(c.n, t, tuple(bits_of_mask(sub)))
                inst.append([t, bits_of_mask(sub), cid])
                sub = (sub - 1) & full
        out["instances"] = inst
    return out


def complex_from_json_dict(data):
    if "top_cells" not in data or "dim" not in data:
        raise ValidationError("pseudomanifold JSON needs 'dim' and 'top_cells'")
    dim = int(data["dim"])
    tops = [tuple(t) for t in data["top_cells"]]
    if any(len(t) != dim + 1 for t in tops):
        raise ValidationError("top cell arity does not match 'dim'")
    if "instances" in data:
        # Cell classes are listed explicitly; rebuild the arrays from them.
        by_key = {}
        counts = [0] * (dim + 1)
        for t, slots, cid in data["instances"]:
            k = len(slots) - 1
            by_key[(int(t), tuple(int(s) for s in slots))] = int(cid)
            counts[k] = max(counts[k], int(cid) + 1)
        cell_vertices = [None] + [[None] * counts[k] for k in range(1, dim + 1)]
        cell_faces = [None] + [[None] * counts[k] for k in range(1, dim + 1)]
        for (t, slots), cid in by_key.items():
            k = len(slots) - 1
            if k == 0:
                continue
            cell_vertices[k][cid] = tuple(by_key[(t, (s,))] for s in slots)
            cell_faces[k][cid] = tuple(
                by_key[(t, slots[:i] + slots[i + 1:])] for i in range(k + 1))
        for k in range(1, dim + 1):
            if any(v is None for v in cell_vertices[k]):
                raise ValidationError("instance list leaves a cell undefined")
        cx = SimplicialCellComplex(dim, counts[0], cell_vertices, cell_faces)
        if not cx.validate():
            raise ValidationError("instance list does not describe a valid complex")
    else:
        cx = SimplicialCellComplex.from_top_simplices(tops)
    orientation = data.get("orientation")
    if orientation is not None:
        if len(orientation) != cx.n_cells(dim):
            raise ValidationError("orientation list length mismatch")
        acc = {}
        for t, faces in enumerate(cx.faces_of[dim]):
            for slot, f in enumerate(faces):
                acc[f] = acc.get(f, 0) + orientation[t] * (-1) ** slot
        if any(v != 0 for v in acc.values()):
            raise ValidationError("supplied orientation is not compatible")
    return cx, orientation


_PRESET_COMPLEXES = {
    "torus7": torus7,
    "klein": klein_bottle,
    "rp2": projective_plane,
}


def pseudomanifold_from_spec(text):
    """Parse 'sphere:k', a named preset, or a JSON file path."""
    import json as _json

    if text.startswith("sphere:"):
        return simplex_sphere(int(text.split(":", 1)[1]))
    if text in _PRESET_COMPLEXES:
        return _PRESET_COMPLEXES[text]()
    try:
        with open(text) as fh:
            data = _json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read complex {text!r}: {exc}") from exc
    except _json.JSONDecodeError as exc:
        raise ValidationError(f"malformed complex JSON in {text!r}: {exc}") from exc
    cx, _ = complex_from_json_dict(data)
    return cx
