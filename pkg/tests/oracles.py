"""Independent reference computations used only by the tests.

None of these share code paths with the implementations they check:
the Conway polynomial comes from skein recursion on crossing data, the
binary icosahedral group from 2x2 matrices over GF(5), and form
signatures from floating-point eigenvalues.
"""
from __future__ import annotations

import itertools

import numpy as np

from surgerykit.laurent import LaurentPoly


# Conway polynomial by the skein relation  C(L+) - C(L-) = z C(L0).
# A diagram is a tuple of crossings (ui, uo, oi, oo, sign) plus a count of
# crossingless loops.  Diagrams that are descending from chosen base points
# are unlinks.


def _walk(crossings):
    """Components as lists of (crossing index, role) passages, in traversal order."""
    enter = {}
    for k, (ui, uo, oi, oo, _) in enumerate(crossings):
        enter[ui] = (k, "under", uo)
        enter[oi] = (k, "over", oo)
    seen, comps = set(), []
    for start in sorted(enter):
        if start in seen:
            continue
        comp, e = [], start
        while e not in seen:
            seen.add(e)
            k, role, nxt = enter[e]
            comp.append((k, role))
            e = nxt
        comps.append(comp)
    return comps


def _poly_add(a, b, scale=1, shift=0):
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def conway(crossings, free_loops=0):
    crossings = tuple(crossings)
    comps = _walk(crossings)
    visited = set()
    bad = None
    for comp in comps:
        for k, role in comp:
            if k in visited:
                continue
            visited.add(k)
            if role == "under":
                bad = k
                break
        if bad is not None:
            break
    if bad is None:
        return {0: 1} if len(comps) + free_loops == 1 else {}
    ui, uo, oi, oo, s = crossings[bad]
    switched = crossings[:bad] + ((oi, oo, ui, uo, -s),) + crossings[bad + 1:]
    rest = crossings[:bad] + crossings[bad + 1:]
    # smoothing joins ui -> oo and oi -> uo
    ren = {oo: ui, uo: oi}

    def r(e):
        seen = set()
        while e in ren and e not in seen:
            seen.add(e)
            e = ren[e]
        return e

    smoothed = tuple((r(a), r(b), r(c), r(d), t) for a, b, c, d, t in rest)
    used = {e for c in smoothed for e in c[:4]}
    loops = {r(e) for e in (ui, uo, oi, oo)} - used
    c_sw = conway(switched, free_loops)
    c_sm = conway(smoothed, free_loops + len(loops))
    # D = D_switched + s z D_smoothed
    return _poly_add(c_sw, c_sm, scale=s, shift=1)


def conway_of_diagram(d):
    data = [(c.under_in, c.under_out, c.over_in, c.over_out, c.sign) for c in d.crossings]
    free = sum(1 for edges in d.component_edges if not edges)
    return conway(data, free)


def sublink(d, keep):
    """Crossing data and free-loop count of the sublink on components ``keep``."""
    keep = set(keep)
    parent = {}

    def r(e):
        while parent.get(e, e) != e:
            e = parent[e]
        return e

    def join(a, b):
        ra, rb = r(a), r(b)
        if ra != rb:
            parent[ra] = rb

    kept = []
    for c in d.crossings:
        u, o = c.under_component in keep, c.over_component in keep
        if u and o:
            kept.append(c)
        elif u:
            join(c.under_out, c.under_in)
        elif o:
            join(c.over_out, c.over_in)
    data = [(r(c.under_in), r(c.under_out), r(c.over_in), r(c.over_out), c.sign) for c in kept]
    used = {e for x in data for e in x[:4]}
    loops = 0
    for k in keep:
        edges = d.component_edges[k]
        if not edges or not any(r(e) in used for e in edges):
            loops += 1
    return data, loops


def alexander_from_conway(cz: dict) -> LaurentPoly:
    """Delta(t) = C(t^(1/2) - t^(-1/2)) for knots (even powers of z only)."""
    assert all(k % 2 == 0 for k in cz), cz
    z2 = LaurentPoly(("t",), {(1,): 1, (0,): -2, (-1,): 1})
    out = LaurentPoly.zero(("t",))
    for k, v in cz.items():
        out = out + z2 ** (k // 2) * v
    return out


def one_variable_reduction(cz: dict, n: int) -> LaurentPoly:
    """For an n-component link with C(z) = z^(n-1) f(z^2), the polynomial
    (t-1)^(n-2) f(t - 2 + t^-1), which equals Delta_L(t,...,t) up to units."""
    assert n >= 2 and all(k >= n - 1 and (k - n + 1) % 2 == 0 for k in cz), cz
    z2 = LaurentPoly(("t",), {(1,): 1, (0,): -2, (-1,): 1})
    out = LaurentPoly.zero(("t",))
    for k, v in cz.items():
        out = out + z2 ** ((k - n + 1) // 2) * v
    return out * LaurentPoly(("t",), {(1,): 1, (0,): -1}) ** (n - 2)


# Binary icosahedral group as SL(2, 5)

P = 5


def mat_mul(a, b):
    return ((a[0] * b[0] + a[1] * b[2]) % P, (a[0] * b[1] + a[1] * b[3]) % P,
            (a[2] * b[0] + a[3] * b[2]) % P, (a[2] * b[1] + a[3] * b[3]) % P)


def mat_inv(a):
    return (a[3], (-a[1]) % P, (-a[2]) % P, a[0])  # det 1


def mat_pow(a, k):
    out = (1, 0, 0, 1)
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def sl25():
    return [m for m in itertools.product(range(P), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % P == 1]


def closure(gens):
    elems, frontier = {(1, 0, 0, 1)}, [(1, 0, 0, 1)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(a, g)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def icosahedral_model():
    """Matrices (X, Y) in SL(2,5) with X^5 = (XY)^3 = (XYX)^2 generating all 120 elements."""
    G = sl25()
    for X in G:
        x5 = mat_pow(X, 5)
        if x5 == (1, 0, 0, 1):
            continue
        for Y in G:
            XY = mat_mul(X, Y)
            if mat_pow(XY, 3) == x5 and mat_pow(mat_mul(XY, X), 2) == x5:
                if len(closure([X, Y])) == 120:
                    return X, Y
    raise AssertionError("no model found")


def eval_matrix_word(word, X, Y):
    gens = {"x": X, "y": Y}
    out = (1, 0, 0, 1)
    for g, e in word:
        m = gens[g] if e == 1 else mat_inv(gens[g])
        out = mat_mul(out, m)
    return out


def matrix_order(m):
    k, a = 1, m
    while a != (1, 0, 0, 1):
        a = mat_mul(a, m)
        k += 1
    return k


def matrix_classes(elems):
    elems = sorted(elems)
    seen, out = set(), []
    for a in elems:
        if a in seen:
            continue
        cls = {mat_mul(mat_mul(mat_inv(g), a), g) for g in elems}
        seen |= cls
        out.append(cls)
    return out


def matrices_conjugate(a, b, elems):
    return any(mat_mul(mat_mul(mat_inv(g), a), g) == b for g in elems)


# Forms

def float_signature(matrix) -> tuple[int, int]:
    """(rank, signature) from eigenvalues; fine for small integer matrices."""
    if len(matrix) == 0:
        return 0, 0
    w = np.linalg.eigvalsh(np.array(matrix, dtype=float))
    pos = int((w > 1e-7).sum())
    neg = int((w < -1e-7).sum())
    return pos + neg, pos - neg
