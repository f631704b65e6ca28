"""Alexander polynomials via Wirtinger presentations and Fox calculus.

The Alexander matrix has one row per crossing relator and one column per
arc generator, with entries the abelianized Fox derivatives.  Deleting the
column of an arc on component j, the gcd of the maximal minors is
(t_j - 1) * Delta_L for links of two or more components and Delta_K for
knots.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DegenerateMatrix, IndexOutOfRange, NotDivisible
from .groups import Presentation, Word, check_word, free_reduce
from .laurent import LaurentPoly, lp_divexact, lp_eval_one, lp_gcd_all, lp_normalize
from .linkdiag import LinkDiagram


@dataclass(frozen=True)
class WirtingerData:
    presentation: Presentation
    arc_component: tuple[int, ...]  # generator index -> component index
    variables: tuple[str, ...]


def link_variables(n_components: int) -> tuple[str, ...]:
    return ("t",) if n_components == 1 else tuple(f"t{k + 1}" for k in range(n_components))


def _arcs(d: LinkDiagram) -> tuple[dict[int, int], list[int]]:
    """Map each edge to its arc; return also the component of every arc."""
    starts = {c.under_out for c in d.crossings}
    edge_arc: dict[int, int] = {}
    arc_comp: list[int] = []
    for comp, edges in enumerate(d.component_edges):
        if not edges:
            arc_comp.append(comp)
            continue
        first = next((k for k, e in enumerate(edges) if e in starts), 0)
        order = edges[first:] + edges[:first]
        for k, e in enumerate(order):
            if k == 0 or e in starts:
                arc_comp.append(comp)
            edge_arc[e] = len(arc_comp) - 1
    return edge_arc, arc_comp


def wirtinger(d: LinkDiagram) -> WirtingerData:
    """One generator per arc and, at each crossing of sign s with over-arc x,
    the relator x^s a x^-s b^-1 where a, b are the incoming and outgoing
    under-arcs."""
    edge_arc, arc_comp = _arcs(d)
    names = tuple(f"a{k + 1}" for k in range(len(arc_comp)))
    rels = []
    for c in d.crossings:
        x = names[edge_arc[c.over_in]]
        if edge_arc[c.over_out] != edge_arc[c.over_in]:
            raise DegenerateMatrix("over-strand changes arc at a crossing")
        a, b = names[edge_arc[c.under_in]], names[edge_arc[c.under_out]]
        s = c.sign
        rels.append(((x, s), (a, 1), (x, -s), (b, -1)))
    return WirtingerData(Presentation(names, tuple(rels)), tuple(arc_comp),
                         link_variables(d.n_components))


def fox_derivative(w: Word, g: str, generators=None) -> dict[Word, int]:
    """Free derivative d w / d g as a group-ring element {reduced word: coefficient}."""
    if generators is not None:
        check_word(w, generators)
        check_word(((g, 1),), generators)
    out: dict = {}
    for k, (h, e) in enumerate(w):
        if h != g:
            continue
        key = free_reduce(w[:k] if e == 1 else w[:k + 1])
        out[key] = out.get(key, 0) + e
    return {k: v for k, v in out.items() if v}


def abelianize(elem: dict[Word, int], generator_var: dict[str, int], variables) -> LaurentPoly:
    terms: dict = {}
    n = len(variables)
    for w, c in elem.items():
        e = [0] * n
        for g, s in w:
            e[generator_var[g]] += s
        e = tuple(e)
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(variables, terms)


def alexander_matrix(W: WirtingerData) -> list[list[LaurentPoly]]:
    p = W.presentation
    var_of = {g: W.arc_component[k] for k, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        rows.append([abelianize(fox_derivative(r, g), var_of, W.variables) for g in p.generators])
    check_fundamental_identity(W, rows)
    return rows


def check_fundamental_identity(W: WirtingerData, rows) -> None:
    """sum_g (dr/dg)(t_{c(g)} - 1) = r - 1 vanishes after abelianizing."""
    units = [LaurentPoly.var(W.variables[c], W.variables) - 1 for c in W.arc_component]
    for k, row in enumerate(rows):
        total = LaurentPoly.zero(W.variables)
        for entry, u in zip(row, units):
            total = total + entry * u
        if not total.is_zero():
            raise DegenerateMatrix(f"relator {k} violates the fundamental identity")


def determinant(m: list[list[LaurentPoly]], variables) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant over the Laurent ring."""
    n = len(m)
    if n == 0:
        return LaurentPoly.one(variables)
    a = [list(row) for row in m]
    sign = 1
    prev = LaurentPoly.one(variables)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(variables)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = lp_divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def minors_gcd(A: list[list[LaurentPoly]], ncols: int, column: int, variables) -> LaurentPoly:
    """gcd of the maximal minors of A with ``column`` deleted."""
    k = ncols - 1
    keep = [j for j in range(ncols) if j != column]
    if k == 0:
        return LaurentPoly.one(variables)
    if len(A) < k:
        return LaurentPoly.zero(variables)
    minors = []
    for rows in combinations(range(len(A)), k):
        minors.append(determinant([[A[i][j] for j in keep] for i in rows], variables))
    return lp_gcd_all(minors, variables)


def alexander_polynomial(d: LinkDiagram, column: int = 0, raw: bool = False) -> LaurentPoly:
    """Normalized Alexander polynomial; knots get Delta(1) = 1.

    ``raw`` returns the minor gcd before dividing out (t_j - 1) and
    normalizing.  A link with a split component gives 0.
    """
    W = wirtinger(d)
    A = alexander_matrix(W)
    ncols = len(W.presentation.generators)
    if not 0 <= column < ncols:
        raise IndexOutOfRange(f"column {column} not in 0..{ncols - 1}")
    g = minors_gcd(A, ncols, column, W.variables)
    if raw:
        return g
    n = d.n_components
    if g.is_zero():
        if n == 1:
            raise DegenerateMatrix("knot Alexander matrix has vanishing minors")
        return g
    if n >= 2:
        comp = W.arc_component[column]
        try:
            g = lp_divexact(g, LaurentPoly.var(W.variables[comp], W.variables) - 1)
        except NotDivisible:
            raise DegenerateMatrix("minor gcd is not divisible by (t_j - 1)") from None
    delta = lp_normalize(g)
    if n == 1 and lp_eval_one(delta) != 1:
        raise DegenerateMatrix(f"knot polynomial {delta} does not satisfy Delta(1) = +-1")
    return delta
