"""Covering-space certificates over glued polytope manifolds.

A coloured subdivision of an oriented closed complex induces, per
colour, an involution on its top cells: step across the facet missing
that colour.  Words in these involutions, closed under conjugation
tube by tube, label the sheets of a covering of the glued manifold.
This module builds that bookkeeping and certifies the properties that
make the covering work: the steps are sign-swapping involutions, they
commute where the graph says they must, faces act with full orbits,
and the resulting degree does not depend on the probe cell.
"""

import random
from dataclasses import dataclass

from .errors import BudgetExceeded, CLOSURE_BUDGET, OMEGA_BUDGET, ValidationError
from .graphs import bits_of, graph_building_set, members
from .nestohedron import compatible, face_poset
from .subdivision import subdivide_pseudomanifold

_SAMPLE_SEED = 29
_SAMPLE_SIZE = 10_000
_PROBE_LIMIT = 100


def compose(p, q):
    """Permutation product, q applied first."""
    return tuple(p[x] for x in q)


@dataclass
class SigmaSystem:
    """Top cells of a coloured subdivision with their sign split and the
    per-colour crossing involutions."""
    y: object
    size: int
    n_colours: int
    plus: tuple   # True where orientation sign matches colour-order parity
    xi: tuple     # per colour, a permutation of the top cells


def build_sigma_system(y):
    c = y.complex
    n = c.n
    colours = y.colours
    orientation = y.orientation
    if orientation is None:
        from .cellcomplex import orient
        cert = orient(c)
        if not cert.is_pseudo or cert.orientation == "non-orientable":
            raise ValidationError("need an oriented closed pseudo-manifold")
        orientation = cert.orientation
    size = c.n_cells(n)
    xi = [[None] * size for _ in range(n + 1)]
    for inc in c.facet_incidences():
        if len(inc) != 2:
            raise ValidationError("facet without exactly two top cells")
        (t1, s1), (t2, s2) = inc
        col = colours[c.vertices_of[n][t1][s1]]
        if colours[c.vertices_of[n][t2][s2]] != col:
            raise ValidationError("facet misses different colours on its sides")
        xi[col][t1] = t2
        xi[col][t2] = t1
    plus = []
    for t in range(size):
        seq = [colours[v] for v in c.vertices_of[n][t]]
        inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
                  if seq[i] > seq[j])
        sign = -1 if inv & 1 else 1
        plus.append(sign * orientation[t] > 0)
    for col in range(n + 1):
        if any(x is None for x in xi[col]):
            raise ValidationError(f"colour {col} misses some top cell")
    if 2 * sum(plus) != size:
        raise ValidationError("sign split is not half and half")
    return SigmaSystem(y, size, n + 1, tuple(plus), tuple(map(tuple, xi)))


@dataclass
class InvolutionSet:
    tube: int
    perms: tuple
    words: tuple
    index: dict

    def __len__(self):
        return len(self.perms)


def involution_closure(sys, colour_set):
    """Conjugation closure of the smallest colour's involution.

    Returns (perms, words): each permutation with one witness word over
    the given colours.
    """
    cols = sorted(colour_set)
    seed = sys.xi[cols[0]]
    words = {seed: (cols[0],)}
    queue = [seed]
    while queue:
        mu = queue.pop()
        for i in cols:
            conj = compose(sys.xi[i], compose(mu, sys.xi[i]))
            if conj not in words:
                words[conj] = (i,) + words[mu] + (i,)
                queue.append(conj)
    perms = tuple(words)
    return perms, tuple(words[p] for p in perms)


def enumerate_involution_sets(sys, b):
    """One conjugation-closed involution family per facet tube."""
    sets = {}
    total = 0
    for tube in b.proper_tubes:
        perms, words = involution_closure(sys, members(tube))
        total += len(perms)
        if total > CLOSURE_BUDGET:
            raise BudgetExceeded(
                f"involution closures passed {CLOSURE_BUDGET} permutations")
        for mu in perms:
            for x in range(sys.size):
                if mu[mu[x]] != x:
                    raise ValidationError("closure member is not an involution")
                if sys.plus[mu[x]] == sys.plus[x]:
                    raise ValidationError("closure member keeps a sign fixed")
        sets[tube] = InvolutionSet(tube, perms, words,
                                   {p: i for i, p in enumerate(perms)})
    return sets


@dataclass(frozen=True)
class OmegaElement:
    sigma: int
    mu: tuple   # per tube (canonical order), an index into that tube's set
    g: int


def phi_action(b, sets, s, omega):
    """The face involution of one tube on a sheet label.

    The tube's own involution moves the cell; families at larger tubes
    are conjugated; the group coordinate flips the tube's bit.
    """
    j = b.proper_index[s]
    tube_set = sets[s]
    mu_s = tube_set.perms[omega.mu[j]]
    new_mu = list(omega.mu)
    for t_idx, t in enumerate(b.proper_tubes):
        if t != s and (t & s) == s:
            bigger = sets[t]
            conj = compose(mu_s, compose(bigger.perms[omega.mu[t_idx]], mu_s))
            idx = bigger.index.get(conj)
            if idx is None:
                raise ValidationError("conjugation leaves the involution set")
            new_mu[t_idx] = idx
    return OmegaElement(mu_s[omega.sigma], tuple(new_mu), omega.g ^ (1 << j))


def epsilon(sys, omega):
    """Sign of a sheet label: cell sign times group-coordinate parity."""
    sign = 1 if sys.plus[omega.sigma] else -1
    if omega.g.bit_count() & 1:
        sign = -sign
    return sign


@dataclass
class CoveringCertificate:
    r: int
    s: int
    m: int
    sigma_count: int
    i_sizes: dict
    fiber_histogram: dict
    checks: dict
    mode: str
    omega: object = None


def _mu_space(b, sets):
    ranges = [range(len(sets[t])) for t in b.proper_tubes]
    out = [()]
    for rng in ranges:
        out = [mu + (i,) for mu in out for i in rng]
    return out


def _orbit_check(b, sets, sys, omega, face):
    """Face orbit must have size 2^k and hit each group coset element once."""
    tubes = [b.proper_tubes[i] for i in face]
    k = len(tubes)
    seen = {omega}
    frontier = [omega]
    while frontier:
        w = frontier.pop()
        for s in tubes:
            nxt = phi_action(b, sets, s, w)
            if nxt not in seen:
                if len(seen) >= (1 << k):
                    return False
                seen.add(nxt)
                frontier.append(nxt)
    if len(seen) != (1 << k):
        return False
    span = {0}
    for s in tubes:
        bit = 1 << b.proper_index[s]
        span |= {g ^ bit for g in span}
    return {w.g for w in seen} == {omega.g ^ d for d in span}


def build_covering(b, sets, sys, budget=None):
    """Certify that the sheet labels assemble into a covering.

    Within budget every label is visited; otherwise the checks run on
    the fiber over one base copy, or on seeded random samples, and the
    certificate is flagged "sampled".
    """
    if budget is None:
        budget = OMEGA_BUDGET
    p = face_poset(b)
    m = len(b.proper_tubes)
    prod_i = 1
    for t in b.proper_tubes:
        prod_i *= len(sets[t])
    r = sys.size * prod_i
    s_value = (1 << (m - 1)) * prod_i
    omega_total = r << m
    checks = {}

    checks["xi_involutions"] = all(
        compose(x, x) == tuple(range(sys.size))
        and all(sys.plus[x[t]] != sys.plus[t] for t in range(sys.size))
        for x in sys.xi)
    graph = sys.y.graph
    checks["xi_commutation"] = all(
        compose(sys.xi[i], sys.xi[j]) == compose(sys.xi[j], sys.xi[i])
        for i in range(sys.n_colours) for j in range(i + 1, sys.n_colours)
        if not graph.has_edge(i, j))

    faces = [face for level in p.faces_by_size for face in level]
    rng = random.Random(_SAMPLE_SEED)

    if omega_total <= budget:
        mode = "full"
        omegas = [OmegaElement(sg, mu, g)
                  for g in range(1 << m)
                  for mu in _mu_space(b, sets)
                  for sg in range(sys.size)]
    elif r <= budget:
        mode = "sampled"
        omegas = [OmegaElement(sg, mu, 0)
                  for mu in _mu_space(b, sets)
                  for sg in range(sys.size)]
    else:
        mode = "sampled"
        omegas = []
        for _ in range(min(_SAMPLE_SIZE, budget)):
            mu = tuple(rng.randrange(len(sets[t])) for t in b.proper_tubes)
            omegas.append(OmegaElement(rng.randrange(sys.size), mu, 0))

    exhaustive = mode == "full" and omega_total * m <= budget * 4
    if exhaustive:
        pool = [(w, s) for w in omegas for s in b.proper_tubes]
    else:
        pool = [(rng.choice(omegas),
                 b.proper_tubes[rng.randrange(m)])
                for _ in range(_SAMPLE_SIZE)]
    checks["phi_involutions"] = all(
        phi_action(b, sets, s, phi_action(b, sets, s, w)) == w
        for w, s in pool)
    checks["epsilon_class_constant"] = all(
        epsilon(sys, phi_action(b, sets, s, w)) == epsilon(sys, w)
        for w, s in pool)

    compat_pairs = [(s, t)
                    for i, s in enumerate(b.proper_tubes)
                    for t in b.proper_tubes[i + 1:]
                    if compatible(b, s, t)]
    if exhaustive and compat_pairs:
        pair_pool = [(w, pair) for w in omegas for pair in compat_pairs]
    elif compat_pairs:
        pair_pool = [(rng.choice(omegas), compat_pairs[rng.randrange(len(compat_pairs))])
                     for _ in range(_SAMPLE_SIZE)]
    else:
        pair_pool = []
    checks["phi_commutation"] = all(
        phi_action(b, sets, s, phi_action(b, sets, t, w))
        == phi_action(b, sets, t, phi_action(b, sets, s, w))
        for w, (s, t) in pair_pool)

    if mode == "full":
        fibers = {}
        ok = True
        for face in faces:
            classes = {}
            for w in omegas:
                key = w.g
                for i in face:
                    key &= ~(1 << i)
                classes[key] = classes.get(key, 0) + 1
            k = len(face)
            for cnt in classes.values():
                fib = cnt >> k
                if cnt != fib << k:
                    ok = False
                fibers[fib] = fibers.get(fib, 0) + 1
        orbit_pool = [(w, face) for w in omegas for face in faces]
        checks["covering_fibers"] = ok and all(
            _orbit_check(b, sets, sys, w, face) for w, face in orbit_pool)
        histogram = fibers
    else:
        orbit_pool = [(rng.choice(omegas), faces[rng.randrange(len(faces))])
                      for _ in range(_SAMPLE_SIZE)]
        checks["covering_fibers"] = all(
            _orbit_check(b, sets, sys, w, face) for w, face in orbit_pool)
        histogram = {r: sum(1 << (m - len(face)) for face in faces)}

    degree, independent = _degree_counts(b, sets, sys, m, prod_i)
    checks["degree_independent"] = independent and degree == s_value

    i_sizes = {",".join(str(v) for v in members(t)): len(sets[t])
               for t in b.proper_tubes}
    return CoveringCertificate(r, degree, m, sys.size, i_sizes, histogram,
                               checks, mode,
                               omega=omegas if mode == "full" else None)


def _degree_counts(b, sets, sys, m, prod_i):
    """Count positive-sign labels over probe cells; must agree everywhere."""
    parity_count = [0, 0]
    for g in range(1 << m):
        parity_count[g.bit_count() & 1] += 1
    probes = range(sys.size) if sys.size <= _PROBE_LIMIT else (0,)
    counts = set()
    for probe in probes:
        need = 0 if sys.plus[probe] else 1
        counts.add(prod_i * parity_count[need])
    only = counts.pop()
    return only, not counts


def gamma_degree(b, sets, sys):
    """Positive-sign labels over one probe cell: the covering degree."""
    m = len(b.proper_tubes)
    prod_i = 1
    for t in b.proper_tubes:
        prod_i *= len(sets[t])
    degree, independent = _degree_counts(b, sets, sys, m, prod_i)
    if not independent:
        raise ValidationError("degree depends on the probe cell")
    expect = (1 << (m - 1)) * prod_i
    if degree != expect:
        raise ValidationError(f"degree {degree} differs from {expect}")
    return degree


def realize(z, g, budget=None, apex=None):
    """Full pipeline from a closed oriented complex and a graph."""
    y = subdivide_pseudomanifold(z, g, apex=apex)
    sys = build_sigma_system(y)
    b = graph_building_set(g)
    sets = enumerate_involution_sets(sys, b)
    return build_covering(b, sets, sys, budget)


def certificate_to_json_dict(cert):
    return {
        "schema": "nestotope/1",
        "r": cert.r,
        "s": cert.s,
        "m": cert.m,
        "sigma_count": cert.sigma_count,
        "I_sizes": cert.i_sizes,
        "fiber_histogram": {str(k): v for k, v in sorted(cert.fiber_histogram.items())},
        "checks": dict(sorted(cert.checks.items())),
        "mode": cert.mode,
    }
