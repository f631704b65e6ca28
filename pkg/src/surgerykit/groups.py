"""Finite groups from presentations by Todd-Coxeter coset enumeration.

Enumeration is over the trivial subgroup, so cosets are group elements and
the completed coset table is the right regular representation.  The HLT
strategy is used (scan each relator at each coset, defining new cosets as
needed) with immediate coincidence processing.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import EmptyPresentation, EnumerationLimitExceeded, ParseError, UnknownGenerator

DEFAULT_MAX_COSETS = 10 ** 6

Word = tuple  # tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        for r in self.relators:
            check_word(r, self.generators)

    def __str__(self):
        return "< " + ", ".join(self.generators) + " | " + ", ".join(format_word(r) for r in self.relators) + " >"


def check_word(w: Word, generators) -> None:
    for g, e in w:
        if g not in generators:
            raise UnknownGenerator(f"{g!r} is not one of {tuple(generators)!r}")
        if e not in (1, -1):
            raise ParseError(f"word letters carry exponent +-1, got {e}")


def inverse_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def free_reduce(w: Word) -> Word:
    out: list = []
    for g, e in w:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts, k = [], 0
    while k < len(w):
        g, e = w[k]
        n = 1
        while k + n < len(w) and w[k + n] == (g, e):
            n += 1
        p = n * e
        parts.append(g if p == 1 else f"{g}^{p}")
        k += n
    return " ".join(parts)


# Parsing

_WTOK = re.compile(r"\s*(?:(?P<id>[A-Za-z_]\w*)|(?P<num>[-+]?\d+)|(?P<sym>[()^*=]))")


def parse_word(text: str, generators) -> Word:
    """Read ``x^5 (x y)^-3``; a run like ``xy`` splits into single-letter generators."""
    generators = tuple(generators)
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _WTOK.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot read word {text!r} at {pos}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
        pos = m.end()
    if toks in ([("num", "1")], [("num", "+1")]):
        return ()

    i = 0

    def atom():
        nonlocal i
        kind, val = toks[i]
        if kind == "sym" and val == "(":
            i += 1
            inner = seq()
            if i >= len(toks) or toks[i] != ("sym", ")"):
                raise ParseError(f"unbalanced parenthesis in {text!r}")
            i += 1
            base = inner
        elif kind == "id":
            i += 1
            if val in generators:
                base = ((val, 1),)
            elif all(ch in generators for ch in val):
                base = tuple((ch, 1) for ch in val)
            else:
                raise UnknownGenerator(f"{val!r} is not one of {generators!r}")
        else:
            raise ParseError(f"unexpected {val!r} in {text!r}")
        if i < len(toks) and toks[i] == ("sym", "^"):
            i += 1
            if i >= len(toks) or toks[i][0] != "num":
                raise ParseError(f"expected exponent in {text!r}")
            k = int(toks[i][1])
            i += 1
            base = (inverse_word(base) if k < 0 else base) * abs(k)
        return base

    def seq():
        nonlocal i
        out = ()
        while i < len(toks) and toks[i][1] not in (")", "="):
            if toks[i] == ("sym", "*"):
                i += 1
                continue
            out += atom()
        return out

    w = seq()
    if i != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return w


def parse_presentation(text: str) -> Presentation:
    """Read ``< x, y | r1, r2 >``; ``a = b = c`` chains become ``a b^-1, b c^-1``."""
    m = re.fullmatch(r"\s*<(.*)\|(.*)>\s*", text, re.S)
    if not m:
        raise ParseError(f"expected '< generators | relators >', got {text!r}")
    gens = tuple(g.strip() for g in m.group(1).split(",") if g.strip())
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_]\w*", g):
            raise ParseError(f"bad generator name {g!r}")
    rels = []
    body = m.group(2).strip()
    if body:
        for item in body.split(","):
            sides = [parse_word(s, gens) for s in item.split("=")]
            if len(sides) == 1:
                rels.append(sides[0])
            else:
                rels.extend(a + inverse_word(b) for a, b in zip(sides, sides[1:]))
    return Presentation(gens, tuple(rels))


# Coset enumeration


class _CosetTable:
    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.table: list[list] = [[None] * ncols]
        self.parent = [0]

    def define(self, c: int, x: int) -> None:
        n = len(self.table)
        if n >= self.max_cosets:
            raise EnumerationLimitExceeded(
                f"coset enumeration exceeded {self.max_cosets} cosets "
                "(group may be infinite or the limit too small)")
        self.table.append([None] * self.ncols)
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][x ^ 1] = c

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def coincidence(self, a: int, b: int) -> None:
        table, queue = self.table, []

        def merge(k, l):
            f, g = self.rep(k), self.rep(l)
            if f != g:
                lo, hi = min(f, g), max(f, g)
                self.parent[hi] = lo
                queue.append(hi)

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self, relators: list[list[int]]) -> None:
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                for r in relators:
                    if self.parent[c] != c:
                        break
                    self.scan_and_fill(c, r)
                for x in range(self.ncols):
                    if self.parent[c] != c:
                        break
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1

    def standardized(self) -> list[list[int]]:
        """Live cosets renumbered in order of first appearance from coset 0."""
        order, index = [0], {0: 0}
        k = 0
        while k < len(order):
            row = self.table[order[k]]
            for x in range(self.ncols):
                d = self.rep(row[x])
                if d not in index:
                    index[d] = len(order)
                    order.append(d)
            k += 1
        return [[index[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in order]


class GroupTable:
    """A finite group with elements 0..order-1; 0 is the identity.

    ``gen_table[c][x]`` is the right action of column x, where column 2k is
    generator k and column 2k+1 its inverse.
    """

    def __init__(self, presentation: Presentation, gen_table: list[list[int]]):
        self.presentation = presentation
        self.generators = presentation.generators
        self.gen_table = tuple(tuple(row) for row in gen_table)
        self.order = len(gen_table)
        self.identity = 0

    def column(self, g: str, e: int) -> int:
        try:
            k = self.generators.index(g)
        except ValueError:
            raise UnknownGenerator(f"{g!r} is not one of {self.generators!r}") from None
        return 2 * k + (0 if e == 1 else 1)

    @cached_property
    def words(self) -> tuple[Word, ...]:
        """A shortest word for each element, from the breadth-first numbering."""
        words: list = [None] * self.order
        words[0] = ()
        frontier = [0]
        while frontier:
            nxt = []
            for c in frontier:
                for x in range(2 * len(self.generators)):
                    d = self.gen_table[c][x]
                    if words[d] is None:
                        words[d] = words[c] + ((self.generators[x // 2], 1 if x % 2 == 0 else -1),)
                        nxt.append(d)
            frontier = nxt
        return tuple(words)

    @cached_property
    def mul(self) -> tuple[tuple[int, ...], ...]:
        """Cayley table: mul[a][b] is the product a*b."""
        n = self.order
        cols: list = [None] * n
        cols[0] = list(range(n))
        for b in sorted(range(1, n), key=lambda e: len(self.words[e])):
            w = self.words[b]
            prev = self._element_of(w[:-1])
            x = self.column(*w[-1])
            cols[b] = [self.gen_table[a][x] for a in cols[prev]]
        return tuple(tuple(cols[b][a] for b in range(n)) for a in range(n))

    def _element_of(self, w: Word) -> int:
        c = 0
        for g, e in w:
            c = self.gen_table[c][self.column(g, e)]
        return c

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.mul)

    def product(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conjugate(self, e: int, g: int) -> int:
        """g^-1 e g."""
        return self.mul[self.mul[self.inverse[g]][e]][g]

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        gens = [self.gen_table[0][2 * k] for k in range(len(self.generators))]
        seen: set[int] = set()
        out = []
        for e in range(self.order):
            if e in seen:
                continue
            orbit, frontier = {e}, [e]
            while frontier:
                nxt = []
                for a in frontier:
                    for g in gens:
                        b = self.conjugate(a, g)
                        if b not in orbit:
                            orbit.add(b)
                            nxt.append(b)
                frontier = nxt
            seen |= orbit
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        idx = [0] * self.order
        for k, cl in enumerate(self.classes):
            for e in cl:
                idx[e] = k
        return tuple(idx)

    def __repr__(self):
        return f"GroupTable(order={self.order}, generators={self.generators!r})"


def coset_enumerate(p: Presentation, max_cosets: int | None = None) -> GroupTable:
    if max_cosets is None:
        max_cosets = default_max_cosets()
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    if not p.generators:
        raise EmptyPresentation("presentation has no generators")
    ct = _CosetTable(2 * len(p.generators), max_cosets)
    rels = []
    for r in p.relators:
        r = free_reduce(r)
        if r:
            rels.append([2 * p.generators.index(g) + (0 if e == 1 else 1) for g, e in r])
    ct.run(rels)
    return GroupTable(p, ct.standardized())


def default_max_cosets() -> int:
    env = os.environ.get("SURGERYKIT_MAX_COSETS")
    return int(env) if env else DEFAULT_MAX_COSETS


def evaluate_word(g: GroupTable, w: Word) -> int:
    check_word(w, g.generators)
    return g._element_of(w)


def element_order(g: GroupTable, e: int) -> int:
    k, a = 1, e
    while a != g.identity:
        a = g.mul[a][e]
        k += 1
    return k


def conjugacy_classes(g: GroupTable) -> tuple[tuple[int, ...], ...]:
    return g.classes


def is_conjugate(g: GroupTable, w1: Word, w2: Word) -> bool:
    a, b = evaluate_word(g, w1), evaluate_word(g, w2)
    return g.class_index[a] == g.class_index[b]


def normal_closure(g: GroupTable, e: int) -> frozenset[int]:
    cls = g.classes[g.class_index[e]]
    closure, frontier = {g.identity}, [g.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for c in cls:
                b = g.mul[a][c]
                if b not in closure:
                    closure.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(closure)


def normally_generates(g: GroupTable, e: int) -> bool:
    return len(normal_closure(g, e)) == g.order


# pi_1 of (-1)-surgery on the trefoil: the binary icosahedral group.
BINARY_ICOSAHEDRAL = parse_presentation("< x, y | x^5 (x y)^-3, (x y)^3 (x y x)^-2 >")

# Representative words for the nine classes, with their element orders.
NAMED_CLASSES = (
    ("e", 1), ("x^5", 2), ("x y x", 4), ("x", 10), ("x^2", 5),
    ("x^3", 10), ("x^4", 5), ("x y", 6), ("(x y)^2", 3),
)


@lru_cache(maxsize=None)
def binary_icosahedral_table() -> GroupTable:
    return coset_enumerate(BINARY_ICOSAHEDRAL, DEFAULT_MAX_COSETS)


def named_class(g: GroupTable, name: str) -> int:
    """Index of the conjugacy class of a representative word like ``x y x``."""
    w = () if name == "e" else parse_word(name, g.generators)
    return g.class_index[evaluate_word(g, w)]
