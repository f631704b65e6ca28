"""Oriented link diagrams given as PD codes or braid closures.

PD convention: in ``X(a,b,c,d)`` the labels run counterclockwise, the
under-strand enters at ``a`` and leaves at ``c``, and the over-strand
occupies ``b`` and ``d``.  A crossing is positive when the over-strand
passes from the left of the under-strand to its right (``d -> b``).

Braid convention: ``BR[s: w1 w2 ...]`` with strands running upward; the
letter ``i`` is a positive crossing in which strand ``i`` passes over
strand ``i+1``, and ``-i`` is its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (IndexOutOfRange, InvalidDiagram, ParseError, SameComponent,
                     TooFewStrands, UnknownComponent)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise InvalidDiagram("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise InvalidDiagram(f"letter {x} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        """perm[p] = bottom position of the strand that ends at top position p (0-based)."""
        pos = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        return pos

    def cycles(self) -> list[list[int]]:
        """Strand cycles of the closure, each starting at its smallest strand."""
        top = self.permutation()
        # strand starting at bottom b ends at the top position p with top[p] == b,
        # then the closure carries it back to bottom p.
        nxt = {b: p for p, b in enumerate(top)}
        seen, out = set(), []
        for s in range(self.strands):
            if s in seen:
                continue
            cyc, p = [], s
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = nxt[p]
            out.append(cyc)
        return out

    def free_reduce(self) -> "BraidWord":
        stack: list[int] = []
        for x in self.letters:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return BraidWord(self.strands, tuple(stack))

    def __str__(self):
        return format_braid(self)


@dataclass(frozen=True)
class Crossing:
    """One crossing with its orientation resolved.

    ``pd`` keeps the original X(a,b,c,d) labels; ``over_in``/``over_out``
    are the over-strand edges in the direction of travel.
    """
    pd: tuple[int, int, int, int]
    over_in: int
    over_out: int
    sign: int
    under_component: int
    over_component: int

    @property
    def under_in(self) -> int:
        return self.pd[0]

    @property
    def under_out(self) -> int:
        return self.pd[2]

    @property
    def components(self) -> tuple[int, int]:
        return (self.under_component, self.over_component)


@dataclass(frozen=True)
class LinkDiagram:
    source: object  # tuple of PD quadruples, or a BraidWord
    crossings: tuple[Crossing, ...]
    component_edges: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def n_components(self) -> int:
        return len(self.component_edges)

    @property
    def components(self) -> list[int]:
        return list(range(self.n_components))

    @property
    def is_braid(self) -> bool:
        return isinstance(self.source, BraidWord)

    def edge_component(self) -> dict[int, int]:
        return {e: k for k, edges in enumerate(self.component_edges) for e in edges}

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def __str__(self):
        return format_link(self)


@dataclass(frozen=True)
class ParityVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        if sum(self.bits) % 2:
            raise InvalidDiagram(f"parity vector {self.bits} has odd weight")

    def all_zero(self) -> bool:
        return not any(self.bits)


# Construction from PD data


def _resolve_pd(quads: list[tuple[int, int, int, int]]) -> tuple[tuple[Crossing, ...], tuple]:
    if not quads:
        raise InvalidDiagram("PD code has no crossings")
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, q in enumerate(quads):
        if len(q) != 4:
            raise InvalidDiagram(f"crossing {q} does not have four labels")
        for slot, e in enumerate(q):
            if e < 1:
                raise InvalidDiagram(f"edge label {e} is not positive")
            occ.setdefault(e, []).append((ci, slot))
    for e, where in occ.items():
        if len(where) != 2:
            raise InvalidDiagram(f"edge {e} appears {len(where)} times")

    # partner slot: a<->c, b<->d
    partner = {0: 2, 2: 0, 1: 3, 3: 1}

    # Walk each component as an unoriented cycle of (edge, crossing, slot-of-exit).
    seen: set[int] = set()
    comps: list[list[int]] = []
    orient: dict[int, tuple[int, int]] = {}  # crossing -> (over_in, over_out)
    for start in sorted(occ):
        if start in seen:
            continue
        # travel: leave edge `e` into crossing via occurrence `o`
        cyc = []
        e = start
        o = occ[e][1]
        steps = []  # (crossing, entry slot, exit slot)
        while True:
            seen.add(e)
            cyc.append(e)
            ci, slot = o
            exit_slot = partner[slot]
            steps.append((ci, slot, exit_slot))
            e2 = quads[ci][exit_slot]
            # the occurrence of e2 we leave through is the other one
            a, b = occ[e2]
            o = b if a == (ci, exit_slot) else a
            e = e2
            if e == start and o == occ[start][1]:
                break
            if len(cyc) > 4 * len(quads) + 4:
                raise InvalidDiagram("edge labels do not close up into cycles")
        # direction consistency from under-passages
        fwd = [st for st in steps if st[1] in (0, 2)]
        votes = {st[1] == 0 for st in fwd}
        if len(votes) > 1:
            raise InvalidDiagram(f"component through edge {start} is not consistently oriented")
        if votes:
            forward = votes.pop()
        else:
            # over-only component: labels increase along the direction of travel
            forward = _succession_forward(cyc)
        if not forward:
            cyc = [cyc[0]] + cyc[:0:-1]
            steps = [(ci, ex, en) for ci, en, ex in reversed(steps)]
        for ci, entry, exit_slot in steps:
            if entry in (1, 3):
                orient[ci] = (quads[ci][entry], quads[ci][exit_slot])
        comps.append(cyc)

    comps.sort(key=min)
    # orient the cycle listing so it starts at the smallest label
    comps = [_rotate_to_min(c) for c in comps]
    comp_of = {e: k for k, c in enumerate(comps) for e in c}
    crossings = []
    for ci, q in enumerate(quads):
        over_in, over_out = orient[ci]
        sign = 1 if (over_in, over_out) == (q[3], q[1]) else -1
        crossings.append(Crossing(tuple(q), over_in, over_out, sign, comp_of[q[0]], comp_of[q[1]]))
    return tuple(crossings), tuple(tuple(c) for c in comps)


def _succession_forward(cyc: list[int]) -> bool:
    n = len(cyc)
    if n < 3:
        return cyc[0] < cyc[-1] if n == 2 else True
    ups = sum(1 for k in range(n) if cyc[(k + 1) % n] == cyc[k] + 1)
    downs = sum(1 for k in range(n) if cyc[(k + 1) % n] == cyc[k] - 1)
    return ups >= downs


def _rotate_to_min(c: list[int]) -> list[int]:
    k = c.index(min(c))
    return c[k:] + c[:k]


def link_from_pd(quads) -> LinkDiagram:
    quads = [tuple(int(x) for x in q) for q in quads]
    crossings, comps = _resolve_pd(quads)
    return LinkDiagram(tuple(quads), crossings, comps)


def _braid_crossings(b: BraidWord):
    """Oriented crossings of the closure, with edges relabelled 1, 2, ... along components."""
    s = b.strands
    nxt_label = s
    current = list(range(s))  # provisional edge at each position; bottom edges are 0..s-1
    raw = []  # (under_in, over_out, under_out, over_in) in provisional labels
    for x in b.letters:
        i = abs(x) - 1
        left, right = current[i], current[i + 1]
        new_left, new_right = nxt_label, nxt_label + 1
        nxt_label += 2
        if x > 0:
            # over: left -> top right; under: right -> top left
            raw.append(((right, new_right, new_left, left), left, new_right))
        else:
            # over: right -> top left; under: left -> top right
            raw.append(((left, right, new_right, new_left), right, new_left))
        current[i], current[i + 1] = new_left, new_right
    # closing arcs identify the top edge at position p with the bottom edge p
    alias = {current[p]: p for p in range(s)}

    def canon(e):
        return alias.get(e, e)

    raw = [(tuple(canon(e) for e in q), canon(oi), canon(oo)) for q, oi, oo in raw]
    # successor along the orientation
    succ = {}
    for q, oi, oo in raw:
        succ[q[0]] = q[2]
        succ[oi] = oo
    comps_prov = []
    for cyc in b.cycles():
        start = cyc[0]
        if start not in succ:
            comps_prov.append([])
            continue
        edges, e = [], start
        while True:
            edges.append(e)
            e = succ[e]
            if e == start:
                break
        comps_prov.append(edges)
    relabel, k = {}, 1
    for edges in comps_prov:
        for e in edges:
            relabel[e] = k
            k += 1
    comp_of = {relabel[e]: ci for ci, edges in enumerate(comps_prov) for e in edges}
    crossings = []
    for q, oi, oo in raw:
        q2 = tuple(relabel[e] for e in q)
        oi2, oo2 = relabel[oi], relabel[oo]
        sign = 1 if (oi2, oo2) == (q2[3], q2[1]) else -1
        crossings.append(Crossing(q2, oi2, oo2, sign, comp_of[q2[0]], comp_of[q2[1]]))
    comps = tuple(tuple(relabel[e] for e in edges) for edges in comps_prov)
    return tuple(crossings), comps


def link_from_braid(b: BraidWord) -> LinkDiagram:
    crossings, comps = _braid_crossings(b)
    return LinkDiagram(b, crossings, comps)


def braid_to_pd(b: BraidWord):
    """PD quadruples of the closure, or None if some component has no crossing."""
    d = link_from_braid(b)
    if any(not edges for edges in d.component_edges):
        return None
    return tuple(c.pd for c in d.crossings)


# Text form

_PD_RE = re.compile(r"^\s*PD\s*\[(.*)\]\s*$", re.S)
_X_RE = re.compile(r"\s*X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]\s*")
_BR_RE = re.compile(r"^\s*BR\s*\[\s*(\d+)\s*:(.*)\]\s*$", re.S)


def parse_link(text: str) -> LinkDiagram:
    m = _PD_RE.match(text)
    if m:
        body = m.group(1).strip()
        quads = []
        if body:
            for piece in _split_top(body):
                mx = _X_RE.fullmatch(piece)
                if not mx:
                    raise ParseError(f"cannot read crossing {piece.strip()!r}")
                quads.append(tuple(int(g) for g in mx.groups()))
        return link_from_pd(quads)
    m = _BR_RE.match(text)
    if m:
        strands = int(m.group(1))
        try:
            letters = tuple(int(tok) for tok in m.group(2).replace(",", " ").split())
        except ValueError:
            raise ParseError(f"braid letters must be integers: {m.group(2)!r}") from None
        return link_from_braid(BraidWord(strands, letters))
    raise ParseError(f"expected PD[...] or BR[s: ...], got {text!r}")


def _split_top(body: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_braid(text: str) -> BraidWord:
    d = parse_link(text)
    if not d.is_braid:
        raise ParseError("expected a braid BR[s: ...]")
    return d.source


def format_pd(quads) -> str:
    return "PD[" + ", ".join("X(%d,%d,%d,%d)" % tuple(q) for q in quads) + "]"


def format_braid(b: BraidWord) -> str:
    return f"BR[{b.strands}: " + " ".join(str(x) for x in b.letters) + "]"


def format_link(d: LinkDiagram) -> str:
    return format_braid(d.source) if d.is_braid else format_pd(d.source)


# Invariants


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    n = d.n_components
    for k in (i, j):
        if not 0 <= k < n:
            raise UnknownComponent(f"component {k} not in 0..{n - 1}")
    if i == j:
        raise SameComponent("linking number needs two distinct components")
    total = sum(c.sign for c in d.crossings if {c.under_component, c.over_component} == {i, j})
    if total % 2:
        raise InvalidDiagram("odd signed crossing count between two components")
    return total // 2


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    n = d.n_components
    m = [[0] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        m[i][j] = m[j][i] = linking_number(d, i, j)
    return m


def parity_vector(d: LinkDiagram) -> ParityVector:
    m = linking_matrix(d)
    return ParityVector(tuple(sum(row) % 2 for row in m))


def delta_class(d: LinkDiagram) -> tuple[tuple[int, ...], int]:
    """Sorted parity vector and the number 2^(n-1) of ordered delta-move classes."""
    bits = tuple(sorted(parity_vector(d).bits, reverse=True))
    return bits, 2 ** (d.n_components - 1)


def full_twist_letters(i: int, sign: int) -> tuple[int, ...]:
    if sign == 1:
        return (i, i + 1) * 3
    if sign == -1:
        return (-(i + 1), -i) * 3
    raise ValueError("twist sign must be +1 or -1")


def apply_three_strand_twist(b: BraidWord, position: int, i: int, sign: int) -> BraidWord:
    """Insert a +-1 full twist on strands i, i+1, i+2 before letter ``position``."""
    if b.strands < 3:
        raise TooFewStrands("a three-strand twist needs at least three strands")
    if not 1 <= i <= b.strands - 2:
        raise IndexOutOfRange(f"strand index {i} not in 1..{b.strands - 2}")
    if not 0 <= position <= len(b.letters):
        raise IndexOutOfRange(f"position {position} not in 0..{len(b.letters)}")
    ins = full_twist_letters(i, sign)
    return BraidWord(b.strands, b.letters[:position] + ins + b.letters[position:])
